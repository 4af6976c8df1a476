"""From-scratch 2-class CNN over comparison-map tensors."""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from ..errors import LayoutMismatch
from .arch import Architecture, ConvSpec
from .gradcheck import backward_check
from .modelfile import load_model, save_model
from .network import ClassifierModel
from .train import EpochStats, TrainConfig, TrainingReport, lr_at, train

__all__ = [
    "Architecture", "ConvSpec", "ClassifierModel",
    "TrainConfig", "TrainingReport", "EpochStats",
    "train", "lr_at", "backward_check",
    "save_model", "load_model", "predict_pairs",
]


def predict_pairs(model: ClassifierModel,
                  stream: Iterable[tuple[str, str, str, np.ndarray]],
                  layout_name: str,
                  batch_size: int = 256) -> Iterator[tuple[str, float]]:
    """Match probabilities for a rendered pair stream, order preserved.

    stream yields (pair_id, record_id_a, record_id_b, tensor); raises
    LayoutMismatch when the stream's layout is not the model's.
    """
    if layout_name != model.layout_name:
        raise LayoutMismatch(
            f"model expects {model.layout_name!r}, stream is {layout_name!r}")
    pending_ids: list[str] = []
    pending: list[np.ndarray] = []

    def flush():
        if pending:
            probs = model.forward(np.stack(pending))
            for pid, p in zip(pending_ids, probs[:, 1]):
                yield pid, float(p)
            pending_ids.clear()
            pending.clear()

    for pair_id, _, _, tensor in stream:
        pending_ids.append(pair_id)
        pending.append(tensor)
        if len(pending) >= batch_size:
            yield from flush()
    yield from flush()
