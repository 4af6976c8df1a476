"""Minimal 8-bit RGB PNG writer for debug visualization of tensors."""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .maps import ImageTensor

_SIGNATURE = bytes([137, 80, 78, 71, 13, 10, 26, 10])


def _chunk(out, kind: bytes, payload: bytes):
    out.write(struct.pack(">L", len(payload)))
    out.write(kind)
    out.write(payload)
    out.write(struct.pack(">L", zlib.crc32(payload, zlib.crc32(kind))))


def export_png(tensor: ImageTensor, path) -> None:
    """Write a tensor as an RGB PNG; intensity v maps to round(v * 255)."""
    rgb = np.rint(np.clip(tensor.data, 0.0, 1.0) * 255.0).astype(np.uint8)
    rows = rgb.transpose(1, 2, 0)  # (height, width, 3)
    raw = bytearray()
    for row in rows:
        raw.append(0)  # filter type: none
        raw.extend(row.tobytes())
    with open(path, "wb") as out:
        out.write(_SIGNATURE)
        _chunk(out, b"IHDR",
               struct.pack(">2L5B", tensor.width, tensor.height, 8, 2, 0, 0, 0))
        _chunk(out, b"IDAT", zlib.compress(bytes(raw)))
        _chunk(out, b"IEND", b"")
