"""Versioned binary model container.

magic | version | header-length | JSON header | weight blobs | sha256

The header carries the architecture descriptor, the render layout the
model expects, the training-config digest, and per-array shapes/dtypes,
so a load is fully self-describing and bit-exact.
"""

from __future__ import annotations

import hashlib
import json
import struct

import numpy as np

from ..errors import ChecksumMismatch, VersionMismatch
from .arch import Architecture
from .network import ClassifierModel

MAGIC = b"DSBGMDL\x00"
VERSION = 1


def save_model(model: ClassifierModel, path) -> None:
    arrays = model.weight_arrays()
    header = json.dumps({
        "arch": model.arch.to_dict(),
        "layout": model.layout_name,
        "train_config_digest": model.train_config_digest,
        "dtype": model.dtype.str,
        "shapes": [list(a.shape) for a in arrays],
    }, sort_keys=True).encode("utf-8")
    sha = hashlib.sha256()
    with open(path, "wb") as fh:
        def emit(raw: bytes):
            fh.write(raw)
            sha.update(raw)
        emit(MAGIC)
        emit(struct.pack("<II", VERSION, len(header)))
        emit(header)
        for arr in arrays:
            emit(np.ascontiguousarray(arr).tobytes())
        fh.write(sha.digest())


def load_model(path, expect_arch: Architecture | None = None,
               expect_layout: str | None = None) -> ClassifierModel:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(MAGIC) + 8 + 32 or blob[:len(MAGIC)] != MAGIC:
        raise VersionMismatch(f"{path}: not a model file")
    if hashlib.sha256(blob[:-32]).digest() != blob[-32:]:
        raise ChecksumMismatch(str(path))
    version, header_len = struct.unpack_from("<II", blob, len(MAGIC))
    if version != VERSION:
        raise VersionMismatch(f"{path}: format version {version}")
    offset = len(MAGIC) + 8
    header = json.loads(blob[offset:offset + header_len])
    offset += header_len

    arch = Architecture.from_dict(header["arch"])
    if expect_arch is not None and arch != expect_arch:
        raise VersionMismatch(f"{path}: file holds a different architecture")
    if expect_layout is not None and header["layout"] != expect_layout:
        raise VersionMismatch(f"{path}: trained for layout {header['layout']!r}")

    dtype = np.dtype(header["dtype"])
    model = ClassifierModel(arch, header["layout"], dtype=dtype,
                            train_config_digest=header["train_config_digest"])
    arrays = []
    for shape in header["shapes"]:
        n = int(np.prod(shape, dtype=np.int64)) if shape else 1
        raw = blob[offset:offset + n * dtype.itemsize]
        if len(raw) != n * dtype.itemsize:
            raise ChecksumMismatch(f"{path}: truncated weight blob")
        arrays.append(np.frombuffer(raw, dtype=dtype).reshape(shape).copy())
        offset += n * dtype.itemsize
    if offset != len(blob) - 32:
        raise VersionMismatch(f"{path}: trailing bytes after weights")
    model.set_weights(arrays)
    return model
