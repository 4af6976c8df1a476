"""The 2-class comparison-map classifier."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatch
from .arch import Architecture
from .layers import (
    Conv2D,
    Dense,
    Flatten,
    Layer,
    MaxPool2,
    ReLU,
    cross_entropy_grad,
    softmax,
)


def _build_layers(arch: Architecture, rng: np.random.Generator,
                  dtype) -> list[Layer]:
    layers: list[Layer] = []
    channels = arch.input_channels
    for spec in arch.conv:
        layers.append(Conv2D(channels, spec.out_channels, rng, dtype))
        layers.append(ReLU())
        if spec.pool:
            layers.append(MaxPool2())
        channels = spec.out_channels
    layers.append(Flatten())
    features = arch.flat_features()
    for width in arch.hidden:
        layers.append(Dense(features, width, rng, dtype))
        layers.append(ReLU())
        features = width
    layers.append(Dense(features, arch.n_classes, rng, dtype))
    return layers


class ClassifierModel:
    """Architecture + weights + the render layout they were trained for."""

    def __init__(self, arch: Architecture, layout_name: str,
                 seed: int = 0, dtype=np.float32,
                 train_config_digest: str = ""):
        self.arch = arch
        self.layout_name = layout_name
        self.train_config_digest = train_config_digest
        self.dtype = np.dtype(dtype)
        rng = np.random.default_rng(seed)
        self.layers = _build_layers(arch, rng, self.dtype)

    # --- parameter access --------------------------------------------------

    def parameters(self):
        """Yields (layer_index, attr_name, array) over all weights."""
        for i, layer in enumerate(self.layers):
            for name, arr in layer.params():
                yield i, name, arr

    def gradients(self):
        for i, layer in enumerate(self.layers):
            for name, arr in layer.grads():
                yield i, name, arr

    def weight_arrays(self) -> list[np.ndarray]:
        return [arr for _, _, arr in self.parameters()]

    def set_weights(self, arrays) -> None:
        own = list(self.parameters())
        arrays = list(arrays)
        if len(arrays) != len(own):
            raise ShapeMismatch(f"expected {len(own)} arrays, got {len(arrays)}")
        for (i, name, current), new in zip(own, arrays):
            if current.shape != new.shape:
                raise ShapeMismatch(f"layer {i} {name}: {new.shape} != {current.shape}")
            setattr(self.layers[i], name, np.array(new, dtype=self.dtype))
            setattr(self.layers[i], "d" + name,
                    np.zeros(current.shape, dtype=self.dtype))

    def cast(self, dtype) -> "ClassifierModel":
        """Copy of this model with weights in another float width."""
        clone = ClassifierModel(self.arch, self.layout_name, dtype=dtype,
                                train_config_digest=self.train_config_digest)
        clone.set_weights(arr.astype(dtype) for arr in self.weight_arrays())
        return clone

    # --- passes --------------------------------------------------------

    def _check_input(self, x: np.ndarray):
        expected = (self.arch.input_channels, self.arch.input_height,
                    self.arch.input_width)
        if x.ndim != 4 or x.shape[1:] != expected:
            raise ShapeMismatch(f"batch shape {x.shape}, expected (N,) + {expected}")

    def logits(self, x: np.ndarray) -> np.ndarray:
        self._check_input(x)
        out = np.ascontiguousarray(x, dtype=self.dtype)
        for layer in self.layers:
            out = layer.forward(out)
        return out

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Class probabilities, shape (N, 2); rows sum to 1."""
        return softmax(self.logits(x))

    def loss_and_backward(self, x: np.ndarray, labels: np.ndarray) -> float:
        """Cross-entropy loss; leaves parameter gradients on the layers."""
        probs = softmax(self.logits(x))
        loss, delta = cross_entropy_grad(probs, labels)
        for layer in reversed(self.layers):
            delta = layer.backward(delta)
        return loss
