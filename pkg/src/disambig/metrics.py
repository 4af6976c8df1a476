"""Pairwise evaluation metrics and entity-level corpus splitting."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InvalidConfig, MissingPrediction
from .ingest import LabeledCorpus


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    splitting: float
    lumping: float
    f1: float
    counts: ConfusionCounts
    degenerate: tuple[str, ...] = ()  # which fields fell back to convention


def count_pairs(truth: LabeledCorpus, predicted: Mapping[str, str],
                universe: Iterable[tuple[str, str]]) -> ConfusionCounts:
    """Classify every pair of the universe against truth and prediction.

    Both records of every pair must be labeled in the corpus and have a
    predicted UID; the universe is normally the within-block pairs of
    the labeled test records.
    """
    tp = fp = tn = fn = 0
    entity = truth.entity_ids
    for a, b in universe:
        try:
            same_truth = entity[a] == entity[b]
        except KeyError as exc:
            raise MissingPrediction(f"record {exc.args[0]} has no entity label")
        if a not in predicted or b not in predicted:
            missing = a if a not in predicted else b
            raise MissingPrediction(f"record {missing} has no predicted UID")
        same_pred = predicted[a] == predicted[b]
        if same_truth and same_pred:
            tp += 1
        elif same_truth:
            fn += 1
        elif same_pred:
            fp += 1
        else:
            tn += 1
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def compute_metrics(c: ConfusionCounts) -> Metrics:
    """Precision/recall/splitting/lumping/F1 from pairwise counts.

    0/0 ratios fall back to convention (1.0 for precision/recall, 0.0
    for splitting/lumping/F1) and are flagged in `degenerate`.
    """
    degenerate = []
    if c.tp + c.fp > 0:
        precision = c.tp / (c.tp + c.fp)
    else:
        precision = 1.0
        degenerate.append("precision")
    if c.tp + c.fn > 0:
        recall = c.tp / (c.tp + c.fn)
        splitting = c.fn / (c.tp + c.fn)
        lumping = c.fp / (c.tp + c.fn)
    else:
        recall, splitting, lumping = 1.0, 0.0, 0.0
        degenerate += ["recall", "splitting", "lumping"]
    if precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        degenerate.append("f1")
    return Metrics(precision=precision, recall=recall, splitting=splitting,
                   lumping=lumping, f1=f1, counts=c,
                   degenerate=tuple(degenerate))


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    validation_fraction_of_train: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise InvalidConfig("train_fraction must be in (0, 1)")
        if not 0.0 < self.validation_fraction_of_train < 1.0:
            raise InvalidConfig("validation_fraction_of_train must be in (0, 1)")


def split_entities(corpus: LabeledCorpus, spec: SplitSpec
                   ) -> tuple[set[str], set[str], set[str]]:
    """Shuffle entity ids and cut into (train, validation, test) sets.

    Splitting by entity, not record, keeps every record of one inventor
    on a single side, so no pairwise information leaks across the
    train/test boundary.
    """
    entities = sorted(set(corpus.entity_ids.values()))
    random.Random(spec.seed).shuffle(entities)
    n_pool = int(round(len(entities) * spec.train_fraction))
    pool, test = entities[:n_pool], entities[n_pool:]
    n_val = int(round(len(pool) * spec.validation_fraction_of_train))
    return set(pool[n_val:]), set(pool[:n_val]), set(test)


def split_corpus(corpus: LabeledCorpus, spec: SplitSpec
                 ) -> tuple[LabeledCorpus, LabeledCorpus, LabeledCorpus]:
    """Entity-level (train, validation, test) split of a labeled corpus."""
    train_e, val_e, test_e = split_entities(corpus, spec)

    def pick(entity_set):
        ids = [rid for rid, e in corpus.entity_ids.items() if e in entity_set]
        return corpus.subset(ids)

    return pick(train_e), pick(val_e), pick(test_e)


def format_report(m: Metrics, extra: Mapping[str, object] | None = None) -> str:
    """Text table plus machine-readable key=value lines."""
    c = m.counts
    lines = [
        "metric      value",
        "---------   --------",
        f"precision   {m.precision:.6f}",
        f"recall      {m.recall:.6f}",
        f"splitting   {m.splitting:.6f}",
        f"lumping     {m.lumping:.6f}",
        f"f1          {m.f1:.6f}",
        "",
        f"precision={m.precision:.10f}",
        f"recall={m.recall:.10f}",
        f"splitting={m.splitting:.10f}",
        f"lumping={m.lumping:.10f}",
        f"f1={m.f1:.10f}",
        f"tp={c.tp}", f"fp={c.fp}", f"tn={c.tn}", f"fn={c.fn}",
        f"degenerate={','.join(m.degenerate) or 'none'}",
    ]
    for key, value in (extra or {}).items():
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"
