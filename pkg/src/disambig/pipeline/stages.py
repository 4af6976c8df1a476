"""The pipeline stages, each reading and writing on-disk artifacts.

Artifact files under the output directory:

    dedup.csv        removed_id -> surviving record_id
    blocks.csv       block_key, record_id membership
    pairs.csv        block_key, record_id_a, record_id_b (canonical order)
    tensors.bin      rendered comparison-map tensors (+labels where known)
    model.bin        trained classifier
    training_report.csv  per-epoch loss/accuracy
    probs.csv        pair_id, record ids, match probability
    assignment.csv   record_id -> inventor UID (duplicates included)
    metrics.txt      evaluation report
    metrics_sweep.csv  one row per (p, l) threshold combination

CSV artifacts start with two comment lines naming the stage and its
config digest; stages verify the digest of everything they consume.
"""

from __future__ import annotations

import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .. import blocking as blocking_mod
from .. import classifier, cluster, dedup, ingest, metrics
from ..errors import ConfigDigestMismatch, StageInputMissing
from ..render import layout_registry, render_comparison_map
from ..render.batchfile import TensorBatchReader, TensorBatchWriter, UNLABELED
from ..render.png import export_png
from .config import DigestChain, PipelineConfig


def _write_csv(path: Path, stage: str, digest: str, header: list[str],
               rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(f"# disambig-artifact: {stage}\n")
        fh.write(f"# config-digest: {digest}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _read_csv(path: Path, stage: str, expected_digest: str) -> list[list[str]]:
    if not path.exists():
        raise StageInputMissing(stage, path)
    with open(path, "r", newline="") as fh:
        head = fh.readline()
        digest_line = fh.readline()
        if not head.startswith("# disambig-artifact:"):
            raise ConfigDigestMismatch(f"{path}: not a pipeline artifact")
        found = digest_line.split(":", 1)[-1].strip()
        if found != expected_digest:
            raise ConfigDigestMismatch(
                f"{path} was produced under config {found}, expected "
                f"{expected_digest}; re-run its stage")
        reader = csv.reader(fh)
        next(reader)  # header
        return [row for row in reader]


def _load_corpus(cfg: PipelineConfig) -> ingest.LabeledCorpus:
    path = Path(cfg.corpus_path)
    if not path.exists():
        raise StageInputMissing("load-corpus", path)
    return ingest.load_corpus(path, cfg.corpus_format)


# --- stages -----------------------------------------------------------------

def stage_synth(cfg: PipelineConfig) -> Path:
    corpus = ingest.generate_synthetic_corpus(cfg.synth, cfg.synth_seed)
    path = Path(cfg.corpus_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ingest.save_corpus(corpus, path, cfg.corpus_format)
    print(f"synth: wrote {len(corpus)} records "
          f"({len(set(corpus.entity_ids.values()))} entities) to {path}")
    return path


def stage_dedup(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    corpus = _load_corpus(cfg)
    result = dedup.remove_duplicates(corpus.records)
    out = cfg.path("dedup.csv")
    _write_csv(out, "dedup", chain.dedup(), ["removed_id", "survivor_id"],
               sorted(result.duplicate_of.items()))
    print(f"dedup: {len(result.survivors)} survivors, "
          f"{len(result.duplicate_of)} duplicates removed")
    return out


def _read_dedup(cfg: PipelineConfig, chain: DigestChain) -> dedup.DedupResult:
    rows = _read_csv(cfg.path("dedup.csv"), "dedup", chain.dedup())
    duplicate_of = {removed: survivor for removed, survivor in rows}
    corpus = _load_corpus(cfg)
    survivors = [r for r in corpus.records if r.record_id not in duplicate_of]
    return dedup.DedupResult(survivors=survivors, duplicate_of=duplicate_of)


def stage_block(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    result = _read_dedup(cfg, chain)
    blocks = blocking_mod.build_blocks(result.survivors, cfg.max_block_size)
    digest = chain.block()
    out = cfg.path("blocks.csv")
    _write_csv(out, "block", digest, ["block_key", "record_id"],
               ((key, rid) for key, ids in blocks.blocks.items() for rid in ids))
    _write_csv(cfg.path("pairs.csv"), "block", digest,
               ["block_key", "record_id_a", "record_id_b"],
               _iter_block_pairs(blocks))
    sizes = sorted(blocks.sizes().values())
    print(f"block: {len(sizes)} blocks, largest {sizes[-1] if sizes else 0}, "
          f"{blocking_mod.pair_count(blocks)} within-block pairs")
    return out


def _iter_block_pairs(blocks: blocking_mod.Blocking):
    for key in blocks.blocks:
        members = blocks.blocks[key]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                a, b = members[i], members[j]
                if b < a:
                    a, b = b, a
                yield key, a, b


def _read_blocking(cfg: PipelineConfig, chain: DigestChain) -> blocking_mod.Blocking:
    rows = _read_csv(cfg.path("blocks.csv"), "block", chain.block())
    blocks: dict[str, list[str]] = {}
    for key, rid in rows:
        blocks.setdefault(key, []).append(rid)
    return blocking_mod.Blocking(blocks=blocks, max_block_size=cfg.max_block_size)


def _render_chunk(args) -> list[bytes]:
    """Worker: render a chunk of pairs to raw float32 tensor bytes."""
    layout_name, records, pairs = args
    layout = layout_registry()[layout_name]
    by_id = {r.record_id: r for r in records}
    out = []
    for a, b in pairs:
        tensor = render_comparison_map(by_id[a], by_id[b], layout)
        out.append(tensor.data.tobytes())
    return out


def stage_render(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    corpus = _load_corpus(cfg)
    by_id = corpus.by_id()
    entity = corpus.entity_ids
    pair_rows = _read_csv(cfg.path("pairs.csv"), "block", chain.block())
    pairs = [(a, b) for _, a, b in pair_rows]
    layout = layout_registry()[cfg.layout_name]
    digest = chain.render()

    out = cfg.path("tensors.bin")
    out.parent.mkdir(parents=True, exist_ok=True)
    workers = cfg.effective_workers()
    chunks = _chunked(pairs, max(1, len(pairs) // (workers * 4) + 1))
    tasks = [(cfg.layout_name,
              [by_id[rid] for pair in chunk for rid in pair],
              chunk) for chunk in chunks]
    if workers > 1 and len(pairs) > 200:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk_blobs = list(pool.map(_render_chunk, tasks))
    else:
        chunk_blobs = [_render_chunk(task) for task in tasks]

    shape = (3, layout.canvas_height, layout.canvas_width)
    with TensorBatchWriter(out, cfg.layout_name, layout.version,
                           layout.canvas_height, layout.canvas_width,
                           count=len(pairs), config_digest=digest) as writer:
        for chunk, blobs in zip(chunks, chunk_blobs):
            for (a, b), blob in zip(chunk, blobs):
                if a in entity and b in entity:
                    label = int(entity[a] == entity[b])
                else:
                    label = UNLABELED
                writer.add(a, b, label,
                           np.frombuffer(blob, dtype=np.float32).reshape(shape))

    if cfg.png_samples > 0:
        png_dir = cfg.path("png")
        png_dir.mkdir(parents=True, exist_ok=True)
        for a, b in pairs[:cfg.png_samples]:
            tensor = render_comparison_map(by_id[a], by_id[b], layout)
            export_png(tensor, png_dir / f"{a}_{b}.png")
    print(f"render: {len(pairs)} comparison maps "
          f"({layout.canvas_width}x{layout.canvas_height}, {cfg.layout_name})")
    return out


def _chunked(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _read_tensors(cfg: PipelineConfig, chain: DigestChain,
                  stage: str) -> TensorBatchReader:
    path = cfg.path("tensors.bin")
    if not path.exists():
        raise StageInputMissing(stage, path)
    reader = TensorBatchReader(str(path))
    if reader.header["config_digest"] != chain.render():
        raise ConfigDigestMismatch(
            f"{path}: rendered under a different configuration")
    return reader


def stage_train(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    corpus = _load_corpus(cfg)
    reader = _read_tensors(cfg, chain, "train")
    train_entities, val_entities, _ = metrics.split_entities(corpus, cfg.split)
    pool = train_entities | val_entities  # the 80% side of the 80/20 split
    entity = corpus.entity_ids

    tensors, labels = [], []
    for a, b, label, tensor in reader:
        if label == UNLABELED:
            continue
        if entity.get(a) in pool and entity.get(b) in pool:
            tensors.append(tensor.copy())
            labels.append(label)
    if not tensors:
        raise StageInputMissing("train", "no labeled training pairs; "
                                         "is the corpus labeled?")
    x = np.stack(tensors)
    y = np.asarray(labels)
    layout = layout_registry()[cfg.layout_name]
    arch = classifier.Architecture.default_for(layout.canvas_height,
                                               layout.canvas_width)
    model, report = classifier.train(x, y, cfg.train, arch, cfg.layout_name)
    model.train_config_digest = chain.train()

    out = cfg.path("model.bin")
    classifier.save_model(model, out)
    report.to_csv(cfg.path("training_report.csv"))
    print(f"train: {len(x)} pairs ({int(y.sum())} matches), "
          f"final val accuracy {report.final_val_accuracy:.4f}")
    return out


def stage_infer(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    reader = _read_tensors(cfg, chain, "infer")
    model_path = cfg.path("model.bin")
    if not model_path.exists():
        raise StageInputMissing("infer", model_path)
    model = classifier.load_model(model_path)
    if model.train_config_digest != chain.train():
        raise ConfigDigestMismatch(
            f"{model_path}: trained under a different configuration "
            f"(layout or training parameters changed?)")
    if model.layout_name != reader.layout_name:
        raise ConfigDigestMismatch(
            f"model layout {model.layout_name!r} != tensors layout "
            f"{reader.layout_name!r}")

    stream = ((str(i), a, b, tensor)
              for i, (a, b, _, tensor) in enumerate(reader))
    pair_meta = [(a, b) for a, b, _, _ in reader]
    rows = []
    for (pair_id, p), (a, b) in zip(
            classifier.predict_pairs(model, stream, reader.layout_name),
            pair_meta):
        rows.append((pair_id, a, b, f"{p:.8f}"))
    out = cfg.path("probs.csv")
    _write_csv(out, "infer", chain.infer(),
               ["pair_id", "record_id_a", "record_id_b", "p_match"], rows)
    print(f"infer: scored {len(rows)} pairs")
    return out


def _assignment_for(cfg: PipelineConfig, chain: DigestChain,
                    p: float, l: float) -> dict[str, str]:
    prob_rows = _read_csv(cfg.path("probs.csv"), "infer", chain.infer())
    blocks = _read_blocking(cfg, chain)
    dedup_result = _read_dedup(cfg, chain)

    probs: dict[tuple[str, str], float] = {}
    for _, a, b, p_str in prob_rows:
        probs[(a, b)] = float(p_str)

    params = cluster.ClusterParams(p_threshold=p, l_threshold=l)
    per_block = []
    for key in sorted(blocks.blocks):
        nodes = blocks.blocks[key]
        edges = {}
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                a, b = nodes[i], nodes[j]
                if b < a:
                    a, b = b, a
                edges[(a, b)] = probs[(a, b)]
        graph = cluster.MatchGraph(block_key=key, nodes=list(nodes), edges=edges)
        per_block.append(cluster.cluster_block(graph, params))
    return cluster.assign_uids(per_block, dedup_result)


def stage_cluster(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    p, l = cfg.p_thresholds[0], cfg.l_thresholds[0]
    assignment = _assignment_for(cfg, chain, p, l)
    out = cfg.path("assignment.csv")
    _write_csv(out, "cluster", chain.cluster(p, l), ["record_id", "uid"],
               sorted(assignment.items()))
    print(f"cluster: {len(assignment)} records in "
          f"{len(set(assignment.values()))} groups (p={p}, l={l})")
    return out


def _evaluate_assignment(cfg: PipelineConfig, assignment: dict[str, str]
                         ) -> tuple[metrics.Metrics, dict]:
    chain = DigestChain(cfg)
    corpus = _load_corpus(cfg)
    blocks = _read_blocking(cfg, chain)
    _, _, test_entities = metrics.split_entities(corpus, cfg.split)
    test_ids = {rid for rid, e in corpus.entity_ids.items()
                if e in test_entities}

    if cfg.eval_universe == "block":
        universe = [(a, b) for a, b in blocking_mod.within_block_pairs(blocks)
                    if a in test_ids and b in test_ids]
    else:
        ids = sorted(test_ids)
        universe = [(a, b) for i, a in enumerate(ids) for b in ids[i + 1:]]
    counts = metrics.count_pairs(corpus.subset(test_ids), assignment, universe)
    result = metrics.compute_metrics(counts)
    # blocking ceiling over the records that went through blocking
    blocked_test = test_ids & set(blocks.block_of())
    ceiling = blocking_mod.estimate_max_recall(corpus.subset(blocked_test), blocks)
    extra = {
        "universe": cfg.eval_universe,
        "pairs": len(universe),
        "test_entities": len(test_entities),
        "blocking_recall_ceiling": f"{ceiling:.6f}",
    }
    return result, extra


def stage_evaluate(cfg: PipelineConfig) -> Path:
    chain = DigestChain(cfg)
    p, l = cfg.p_thresholds[0], cfg.l_thresholds[0]
    rows = _read_csv(cfg.path("assignment.csv"), "cluster", chain.cluster(p, l))
    assignment = {rid: uid for rid, uid in rows}
    result, extra = _evaluate_assignment(cfg, assignment)
    extra["p_threshold"] = p
    extra["l_threshold"] = l
    report = metrics.format_report(result, extra)
    out = cfg.path("metrics.txt")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report)
    sys.stdout.write(report)
    return out


def run_pipeline(cfg: PipelineConfig) -> Path:
    """All stages in order; sweeps the threshold grid when lists given."""
    stage_dedup(cfg)
    stage_block(cfg)
    stage_render(cfg)
    stage_train(cfg)
    stage_infer(cfg)
    stage_cluster(cfg)
    out = stage_evaluate(cfg)

    combos = [(p, l) for p in cfg.p_thresholds for l in cfg.l_thresholds]
    if len(combos) > 1:
        chain = DigestChain(cfg)
        sweep_rows = []
        for p, l in combos:
            assignment = _assignment_for(cfg, chain, p, l)
            result, _ = _evaluate_assignment(cfg, assignment)
            c = result.counts
            sweep_rows.append((p, l, f"{result.precision:.6f}",
                               f"{result.recall:.6f}", f"{result.f1:.6f}",
                               c.tp, c.fp, c.tn, c.fn))
        _write_csv(cfg.path("metrics_sweep.csv"), "evaluate", chain.infer(),
                   ["p_threshold", "l_threshold", "precision", "recall",
                    "f1", "tp", "fp", "tn", "fn"], sweep_rows)
        print(f"sweep: wrote {len(combos)} rows to metrics_sweep.csv")
    return out
