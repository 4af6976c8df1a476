"""Pure-Python (numpy) kernels: im2col convolution and reshape pooling.

Same call signatures as the compiled extension; used when the extension
is unavailable or explicitly selected. Works in float32 or float64.
"""

from __future__ import annotations

import numpy as np


def _im2col(x: np.ndarray, kh: int, kw: int) -> np.ndarray:
    """(N, C, H, W) -> (N*HO*WO, C*kh*kw) patch matrix (copy)."""
    n = x.shape[0]
    windows = np.lib.stride_tricks.sliding_window_view(x, (kh, kw), axis=(2, 3))
    # windows: (N, C, HO, WO, kh, kw)
    cols = windows.transpose(0, 2, 3, 1, 4, 5)
    return np.ascontiguousarray(cols).reshape(n * cols.shape[1] * cols.shape[2], -1)


def conv2d_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Valid cross-correlation, stride 1. x (N,C,H,W), w (F,C,kh,kw)."""
    n, _, h, width = x.shape
    f, _, kh, kw = w.shape
    ho, wo = h - kh + 1, width - kw + 1
    cols = _im2col(x, kh, kw)
    y = cols @ w.reshape(f, -1).T + b
    return np.ascontiguousarray(y.reshape(n, ho, wo, f).transpose(0, 3, 1, 2))


def conv2d_backward(x: np.ndarray, w: np.ndarray, dy: np.ndarray
                    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradients (dx, dw, db) of conv2d_forward."""
    n, c, h, width = x.shape
    f, _, kh, kw = w.shape
    ho, wo = dy.shape[2], dy.shape[3]
    dy_flat = np.ascontiguousarray(dy.transpose(0, 2, 3, 1)).reshape(-1, f)

    db = dy.sum(axis=(0, 2, 3))
    cols = _im2col(x, kh, kw)
    dw = (dy_flat.T @ cols).reshape(w.shape)

    dcols = dy_flat @ w.reshape(f, -1)
    dcols = dcols.reshape(n, ho, wo, c, kh, kw)
    dx = np.zeros_like(x)
    for ki in range(kh):
        for kj in range(kw):
            dx[:, :, ki:ki + ho, kj:kj + wo] += dcols[:, :, :, :, ki, kj].transpose(0, 3, 1, 2)
    return dx, dw, db


def maxpool2_forward(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """2x2 max pooling, stride 2, floor semantics (odd edges dropped).

    Returns (pooled, argmax) where argmax holds the in-window index
    0..3 (row-major) of the first maximum.
    """
    n, c, h, w = x.shape
    ho, wo = h // 2, w // 2
    windows = x[:, :, :ho * 2, :wo * 2].reshape(n, c, ho, 2, wo, 2)
    flat = np.ascontiguousarray(windows.transpose(0, 1, 2, 4, 3, 5)).reshape(n, c, ho, wo, 4)
    idx = flat.argmax(axis=-1).astype(np.uint8)
    y = np.take_along_axis(flat, idx[..., None].astype(np.intp), axis=-1)[..., 0]
    return np.ascontiguousarray(y), idx


def maxpool2_backward(dy: np.ndarray, idx: np.ndarray, h: int, w: int) -> np.ndarray:
    """Scatter pooled gradients back to the input positions."""
    n, c, ho, wo = dy.shape
    dx = np.zeros((n, c, h, w), dtype=dy.dtype)
    rows = idx >> 1
    cols = idx & 1
    base_i = np.arange(ho) * 2
    base_j = np.arange(wo) * 2
    ii = base_i[None, None, :, None] + rows
    jj = base_j[None, None, None, :] + cols
    nn = np.arange(n)[:, None, None, None]
    cc = np.arange(c)[None, :, None, None]
    np.add.at(dx, (nn, cc, ii, jj), dy)
    return dx
