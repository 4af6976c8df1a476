"""SGD training with a sigmoid learning-rate decay schedule."""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import EmptyTrainingSet, InvalidConfig, NonBinaryLabel
from .arch import Architecture
from .network import ClassifierModel

# Steepness of the sigmoid decay: the schedule sits within 0.25% of its
# endpoints at step 0 and at the final step.
LR_DECAY_STEEPNESS = 12.0


@dataclass(frozen=True)
class TrainConfig:
    """Solver settings: SGD, batch 100, 30 epochs, lr 0.01 -> 0.001 on a
    sigmoid schedule. Momentum defaults to 0.9, the stock setting of the
    reference solvers this mirrors; set 0 for plain SGD."""

    batch_size: int = 100
    epochs: int = 30
    lr_start: float = 0.01
    lr_end: float = 0.001
    seed: int = 0
    validation_fraction: float = 0.25
    momentum: float = 0.9
    weight_decay: float = 0.0

    def __post_init__(self):
        if not self.lr_start > self.lr_end > 0:
            raise InvalidConfig("need lr_start > lr_end > 0")
        if not 0.0 <= self.validation_fraction < 1.0:
            raise InvalidConfig("validation_fraction must be in [0, 1)")
        if self.batch_size < 1 or self.epochs < 1:
            raise InvalidConfig("batch_size and epochs must be positive")

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def lr_at(step: int, total_steps: int, cfg: TrainConfig,
          steepness: float = LR_DECAY_STEEPNESS) -> float:
    """Learning rate at a given step of a run with total_steps steps.

    Sigmoid interpolation from lr_start down to lr_end: monotone
    non-increasing, halfway exactly at the midpoint.
    """
    z = steepness * (0.5 - step / total_steps)
    sigma = 1.0 / (1.0 + math.exp(-z))
    return cfg.lr_end + (cfg.lr_start - cfg.lr_end) * sigma


@dataclass
class EpochStats:
    epoch: int
    train_loss: float
    val_loss: float
    val_accuracy: float


@dataclass
class TrainingReport:
    epochs: list[EpochStats] = field(default_factory=list)

    @property
    def final_val_accuracy(self) -> float:
        return self.epochs[-1].val_accuracy if self.epochs else float("nan")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["epoch", "train_loss", "val_loss", "val_accuracy"])
            for e in self.epochs:
                writer.writerow([e.epoch, f"{e.train_loss:.6f}",
                                 f"{e.val_loss:.6f}", f"{e.val_accuracy:.6f}"])


def _validate(model: ClassifierModel, x: np.ndarray, y: np.ndarray,
              batch_size: int) -> tuple[float, float]:
    if len(x) == 0:
        return float("nan"), float("nan")
    losses = []
    correct = 0
    for lo in range(0, len(x), batch_size):
        probs = model.forward(x[lo:lo + batch_size])
        labels = y[lo:lo + batch_size]
        eps = np.finfo(probs.dtype).tiny
        losses.append(-np.log(probs[np.arange(len(labels)), labels] + eps).sum())
        correct += int((probs.argmax(axis=1) == labels).sum())
    return float(sum(losses) / len(x)), correct / len(x)


def train(tensors: np.ndarray, labels: np.ndarray, cfg: TrainConfig,
          arch: Architecture, layout_name: str
          ) -> tuple[ClassifierModel, TrainingReport]:
    """Train from scratch on labeled comparison-map tensors.

    Holds out cfg.validation_fraction of the pairs for per-epoch
    validation. Deterministic per cfg.seed: one RNG stream drives the
    weight init, the holdout split, and every epoch's shuffle. No input
    transforms (mirroring/cropping/mean subtraction) are applied.
    """
    tensors = np.ascontiguousarray(tensors, dtype=np.float32)
    labels = np.asarray(labels)
    if tensors.ndim != 4 or len(tensors) != len(labels):
        raise InvalidConfig("tensors must be (N,3,H,W) with one label each")
    if len(tensors) == 0:
        raise EmptyTrainingSet("no labeled pairs")
    bad = set(np.unique(labels)) - {0, 1}
    if bad:
        raise NonBinaryLabel(f"labels must be 0/1, saw {sorted(bad)}")
    labels = labels.astype(np.int64)

    model = ClassifierModel(arch, layout_name, seed=cfg.seed,
                            train_config_digest=cfg.digest())
    rng = np.random.default_rng(cfg.seed)

    perm = rng.permutation(len(tensors))
    n_val = int(round(len(tensors) * cfg.validation_fraction))
    val_idx, train_idx = perm[:n_val], perm[n_val:]
    if len(train_idx) == 0:
        raise EmptyTrainingSet("validation holdout consumed every pair")
    x_val, y_val = tensors[val_idx], labels[val_idx]
    x_train, y_train = tensors[train_idx], labels[train_idx]

    steps_per_epoch = math.ceil(len(x_train) / cfg.batch_size)
    total_steps = cfg.epochs * steps_per_epoch
    velocity = ([np.zeros_like(arr) for arr in model.weight_arrays()]
                if cfg.momentum else None)

    report = TrainingReport()
    step = 0
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(len(x_train))
        epoch_loss = 0.0
        for lo in range(0, len(order), cfg.batch_size):
            batch = order[lo:lo + cfg.batch_size]
            loss = model.loss_and_backward(x_train[batch], y_train[batch])
            epoch_loss += loss * len(batch)
            lr = np.float32(lr_at(step, total_steps, cfg))
            params = list(model.parameters())
            grads = list(model.gradients())
            for k, ((i, name, w), (_, _, g)) in enumerate(zip(params, grads)):
                if cfg.weight_decay and name == "w":
                    g = g + np.float32(cfg.weight_decay) * w
                if velocity is not None:
                    velocity[k] = np.float32(cfg.momentum) * velocity[k] - lr * g
                    update = velocity[k]
                else:
                    update = -lr * g
                setattr(model.layers[i], name, w + update)
            step += 1
        val_loss, val_acc = _validate(model, x_val, y_val, cfg.batch_size)
        report.epochs.append(EpochStats(
            epoch=epoch,
            train_loss=epoch_loss / len(x_train),
            val_loss=val_loss,
            val_accuracy=val_acc,
        ))
    return model, report
