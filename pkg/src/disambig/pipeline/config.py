"""Pipeline configuration: one INI file, overridable by --set flags.

Every stage artifact embeds a digest derived from the slice of the
configuration that influenced it (chained through its upstream
artifacts), so a stage refuses inputs produced under different
parameters instead of silently mixing runs.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..classifier import TrainConfig
from ..cluster import ClusterParams
from ..errors import InvalidConfig
from ..ingest import SynthConfig
from ..metrics import SplitSpec
from ..render import layout_registry

_SYNTH_INT_FIELDS = {"n_entities", "records_per_entity", "records_per_entity_max"}


@dataclass
class PipelineConfig:
    corpus_path: str = "corpus.jsonl"
    corpus_format: str = "jsonl"
    outdir: str = "artifacts"
    workers: int = 0  # 0 = use available parallelism

    synth: SynthConfig = field(default_factory=SynthConfig)
    synth_seed: int = 7

    max_block_size: int = 100
    layout_name: str = "heuristic"

    train: TrainConfig = field(default_factory=TrainConfig)
    split: SplitSpec = field(default_factory=SplitSpec)

    # threshold sweeps: first entry of each list is the primary run
    p_thresholds: tuple[float, ...] = (0.03,)
    l_thresholds: tuple[float, ...] = (0.05,)

    eval_universe: str = "block"  # or "all": every labeled pair
    png_samples: int = 0  # debug: export the first N comparison maps

    def __post_init__(self):
        if self.layout_name not in layout_registry():
            raise InvalidConfig(f"unknown layout {self.layout_name!r}")
        if self.max_block_size < 1:
            raise InvalidConfig("max_block_size must be positive")
        if self.eval_universe not in ("block", "all"):
            raise InvalidConfig("eval_universe must be 'block' or 'all'")
        for p in self.p_thresholds:
            if not 0.0 < p < 1.0:
                raise InvalidConfig("p_threshold must be in (0, 1)")
        for l in self.l_thresholds:
            if not 0.0 < l <= 1.0:
                raise InvalidConfig("l_threshold must be in (0, 1]")
        if not self.p_thresholds or not self.l_thresholds:
            raise InvalidConfig("need at least one p/l threshold")

    @property
    def cluster_params(self) -> ClusterParams:
        return ClusterParams(self.p_thresholds[0], self.l_thresholds[0])

    def effective_workers(self) -> int:
        return self.workers if self.workers > 0 else min(4, os.cpu_count() or 1)

    def path(self, name: str) -> Path:
        return Path(self.outdir) / name


def _coerce(current, text: str):
    if isinstance(current, bool):
        if text.lower() in ("1", "true", "yes", "on"):
            return True
        if text.lower() in ("0", "false", "no", "off"):
            return False
        raise InvalidConfig(f"expected a boolean, got {text!r}")
    if isinstance(current, int):
        return int(text)
    if isinstance(current, float):
        return float(text)
    return text


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.replace(",", " ").split())


def load_config(path: str | None, overrides: list[str] = ()) -> PipelineConfig:
    """Read the INI file (if any), then apply section.key=value overrides."""
    parser = configparser.ConfigParser()
    if path is not None:
        read = parser.read(path)
        if not read:
            raise InvalidConfig(f"config file not found: {path}")
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise InvalidConfig(f"--set needs section.key=value, got {item!r}")
        key, value = item.split("=", 1)
        section, option = key.split(".", 1)
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section.strip(), option.strip(), value.strip())

    def section(name) -> dict:
        return dict(parser[name]) if parser.has_section(name) else {}

    try:
        io_sec = section("io")
        synth_sec = section("synth")
        synth_seed = int(synth_sec.pop("seed", 7))
        synth_kwargs = {}
        for key, value in synth_sec.items():
            if key in _SYNTH_INT_FIELDS:
                synth_kwargs[key] = None if value == "none" else int(value)
            else:
                synth_kwargs[key] = float(value)
        train_sec = section("train")
        train_kwargs = {}
        defaults = TrainConfig()
        for key, value in train_sec.items():
            if not hasattr(defaults, key):
                raise InvalidConfig(f"unknown train option {key!r}")
            train_kwargs[key] = _coerce(getattr(defaults, key), value)
        split_sec = section("split")
        split_kwargs = {k: _coerce(getattr(SplitSpec(), k), v)
                        for k, v in split_sec.items()}
        cluster_sec = section("cluster")
        block_sec = section("blocking")
        render_sec = section("render")
        eval_sec = section("evaluate")

        return PipelineConfig(
            corpus_path=io_sec.get("corpus", "corpus.jsonl"),
            corpus_format=io_sec.get("format", "jsonl"),
            outdir=io_sec.get("outdir", "artifacts"),
            workers=int(io_sec.get("workers", 0)),
            synth=SynthConfig(**synth_kwargs),
            synth_seed=synth_seed,
            max_block_size=int(block_sec.get("max_block_size", 100)),
            layout_name=render_sec.get("layout", "heuristic"),
            png_samples=int(render_sec.get("png_samples", 0)),
            train=TrainConfig(**train_kwargs),
            split=SplitSpec(**split_kwargs),
            p_thresholds=_float_list(cluster_sec.get("p_threshold", "0.03")),
            l_thresholds=_float_list(cluster_sec.get("l_threshold", "0.05")),
            eval_universe=eval_sec.get("pairs", "block"),
        )
    except (ValueError, TypeError) as exc:
        raise InvalidConfig(str(exc)) from exc


# --- digest chaining --------------------------------------------------------

def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


def file_digest(path) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            sha.update(chunk)
    return sha.hexdigest()[:16]


class DigestChain:
    """Expected digest of each stage's artifact under a configuration."""

    def __init__(self, cfg: PipelineConfig):
        self.cfg = cfg

    def corpus(self) -> str:
        return file_digest(self.cfg.corpus_path)

    def dedup(self) -> str:
        return _digest({"stage": "dedup", "corpus": self.corpus()})

    def block(self) -> str:
        return _digest({"stage": "block", "upstream": self.dedup(),
                        "max_block_size": self.cfg.max_block_size})

    def render(self) -> str:
        layout = layout_registry()[self.cfg.layout_name]
        return _digest({"stage": "render", "upstream": self.block(),
                        "layout": self.cfg.layout_name,
                        "layout_version": layout.version})

    def train(self) -> str:
        return _digest({"stage": "train", "upstream": self.render(),
                        "train": self.cfg.train.digest(),
                        "split": [self.cfg.split.train_fraction,
                                  self.cfg.split.validation_fraction_of_train,
                                  self.cfg.split.seed]})

    def infer(self) -> str:
        return _digest({"stage": "infer", "model": self.train(),
                        "tensors": self.render()})

    def cluster(self, p: float, l: float) -> str:
        return _digest({"stage": "cluster", "upstream": self.infer(),
                        "p": p, "l": l})
