"""Finite-difference verification of the analytic gradients.

The check runs in float64 regardless of the model's training width:
central differences at epsilon ~1e-4 would drown in float32 rounding.

ReLU and max-pooling make the loss piecewise smooth. A perturbation
that flips an activation mask or a pool argmax crosses a kink, where
central differences measure the wrong one-sided thing no matter how
correct the analytic gradient is. Such samples are detected (the two
probe passes disagree on the activation pattern) and skipped; the
skip count is bounded and every parameter array keeps real coverage.
"""

from __future__ import annotations

import numpy as np

from .layers import MaxPool2, ReLU
from .network import ClassifierModel


def _activation_pattern(model: ClassifierModel) -> tuple:
    """Hashable snapshot of every ReLU mask and pool argmax of the last
    forward pass."""
    parts = []
    for layer in model.layers:
        if isinstance(layer, ReLU):
            parts.append(layer._mask.tobytes())
        elif isinstance(layer, MaxPool2):
            parts.append(layer._idx.tobytes())
    return tuple(parts)


def backward_check(model: ClassifierModel, x: np.ndarray,
                   epsilon: float = 1e-4, min_samples: int = 200,
                   seed: int = 0) -> float:
    """Max relative error between analytic and numeric loss gradients.

    Samples at least min_samples weights, spread proportionally across
    every parameter array (at least three per array, so every layer is
    covered). Labels for the probe loss are pseudo-random but fixed by
    the seed.
    """
    if not 1e-6 <= epsilon <= 1e-3:
        raise ValueError("epsilon out of the supported range [1e-6, 1e-3]")
    m = model.cast(np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, size=len(x))

    m.loss_and_backward(x, labels)
    analytic = [g.copy() for _, _, g in m.gradients()]
    arrays = list(m.parameters())
    total = sum(arr.size for _, _, arr in arrays)

    def probe() -> tuple[float, tuple]:
        probs = m.forward(x)
        tiny = np.finfo(np.float64).tiny
        loss = float(-np.log(probs[np.arange(len(labels)), labels] + tiny).mean())
        return loss, _activation_pattern(m)

    worst = 0.0
    for (i, name, arr), grad in zip(arrays, analytic):
        want = min(arr.size, max(3, round(min_samples * arr.size / total)))
        candidates = rng.permutation(arr.size)
        flat = arr.reshape(-1)
        checked = 0
        for idx in candidates:
            original = flat[idx]
            flat[idx] = original + epsilon
            up, pattern_up = probe()
            flat[idx] = original - epsilon
            down, pattern_down = probe()
            flat[idx] = original
            if pattern_up != pattern_down:
                continue  # kink between the probes: central diff is invalid
            numeric = (up - down) / (2.0 * epsilon)
            a = grad.reshape(-1)[idx]
            worst = max(worst, abs(a - numeric) / max(abs(a) + abs(numeric), 1e-6))
            checked += 1
            if checked >= want:
                break
        if checked < min(want, max(3, want // 2)):
            raise RuntimeError(
                f"layer {i} {name}: only {checked} kink-free samples at "
                f"epsilon={epsilon}; try a smaller epsilon")
    return worst
