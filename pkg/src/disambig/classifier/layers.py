"""Network layers with explicit forward/backward passes.

Each layer caches what its backward pass needs, returns dx, and stores
parameter gradients on itself. Heavy lifting (convolution, pooling)
goes through the selected kernel backend; dense layers are single BLAS
calls and stay here.
"""

from __future__ import annotations

import numpy as np

from .. import backend
from .arch import KERNEL


class Layer:
    def params(self):
        """Yields (attr_name, array) for trainable parameters."""
        return ()

    def grads(self):
        return ()


class Conv2D(Layer):
    def __init__(self, in_channels: int, out_channels: int, rng: np.random.Generator,
                 dtype=np.float32):
        fan_in = in_channels * KERNEL * KERNEL
        limit = np.sqrt(6.0 / fan_in)
        self.w = rng.uniform(-limit, limit,
                             (out_channels, in_channels, KERNEL, KERNEL)).astype(dtype)
        self.b = np.zeros(out_channels, dtype=dtype)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    def forward(self, x):
        self._x = x
        return backend.conv2d_forward(x, self.w, self.b)

    def backward(self, dy):
        dx, self.dw, self.db = backend.conv2d_backward(self._x, self.w, dy)
        return dx

    def params(self):
        yield "w", self.w
        yield "b", self.b

    def grads(self):
        yield "w", self.dw
        yield "b", self.db


class ReLU(Layer):
    def forward(self, x):
        self._mask = x > 0
        return x * self._mask

    def backward(self, dy):
        return dy * self._mask


class MaxPool2(Layer):
    def forward(self, x):
        self._shape = x.shape
        y, self._idx = backend.maxpool2_forward(x)
        return y

    def backward(self, dy):
        return backend.maxpool2_backward(dy, self._idx,
                                         self._shape[2], self._shape[3])


class Flatten(Layer):
    def forward(self, x):
        self._shape = x.shape
        return np.ascontiguousarray(x).reshape(x.shape[0], -1)

    def backward(self, dy):
        return dy.reshape(self._shape)


class Dense(Layer):
    def __init__(self, in_features: int, out_features: int,
                 rng: np.random.Generator, dtype=np.float32):
        limit = np.sqrt(6.0 / in_features)
        self.w = rng.uniform(-limit, limit, (in_features, out_features)).astype(dtype)
        self.b = np.zeros(out_features, dtype=dtype)
        self.dw = np.zeros_like(self.w)
        self.db = np.zeros_like(self.b)
        self._x = None

    def forward(self, x):
        self._x = x
        return x @ self.w + self.b

    def backward(self, dy):
        self.dw = self._x.T @ dy
        self.db = dy.sum(axis=0)
        return dy @ self.w.T

    def params(self):
        yield "w", self.w
        yield "b", self.b

    def grads(self):
        yield "w", self.dw
        yield "b", self.db


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def cross_entropy_grad(probs: np.ndarray, labels: np.ndarray
                       ) -> tuple[float, np.ndarray]:
    """Mean NLL of the true class and the gradient w.r.t. the logits."""
    n = probs.shape[0]
    eps = np.finfo(probs.dtype).tiny
    loss = float(-np.log(probs[np.arange(n), labels] + eps).mean())
    dlogits = probs.copy()
    dlogits[np.arange(n), labels] -= 1
    return loss, dlogits / probs.dtype.type(n)
