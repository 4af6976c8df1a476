"""Binary container for rendered comparison-map tensors.

Layout: magic, format version, a JSON header (layout name/version,
tensor shape, pair count, config digest), then one fixed-layout entry
per pair, then a SHA-256 of everything before it. Entries hold the two
record ids, a label byte (1 match / 0 non-match / -1 unlabeled), and
the raw float32 tensor.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..errors import ChecksumMismatch, VersionMismatch

MAGIC = b"DSBGTEN\x00"
VERSION = 1

UNLABELED = -1


def _pack_str(s: str) -> bytes:
    raw = s.encode("utf-8")
    return struct.pack("<H", len(raw)) + raw


class TensorBatchWriter:
    def __init__(self, path, layout_name: str, layout_version: str,
                 height: int, width: int, count: int, config_digest: str = ""):
        self.header = {
            "layout": layout_name,
            "layout_version": layout_version,
            "height": height,
            "width": width,
            "count": count,
            "config_digest": config_digest,
        }
        self._expected = count
        self._written = 0
        self._fh = open(path, "wb")
        self._sha = hashlib.sha256()
        header = json.dumps(self.header, sort_keys=True).encode("utf-8")
        self._write(MAGIC)
        self._write(struct.pack("<II", VERSION, len(header)))
        self._write(header)

    def _write(self, raw: bytes):
        self._fh.write(raw)
        self._sha.update(raw)

    def add(self, record_id_a: str, record_id_b: str, label: int,
            tensor: np.ndarray):
        expected = (3, self.header["height"], self.header["width"])
        if tensor.shape != expected:
            raise ValueError(f"tensor shape {tensor.shape}, expected {expected}")
        self._write(_pack_str(record_id_a))
        self._write(_pack_str(record_id_b))
        self._write(struct.pack("<b", label))
        self._write(np.ascontiguousarray(tensor, dtype=np.float32).tobytes())
        self._written += 1

    def close(self):
        if self._written != self._expected:
            raise ValueError(
                f"declared {self._expected} tensors, wrote {self._written}")
        self._fh.write(self._sha.digest())
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, *rest):
        if exc_type is None:
            self.close()
        else:
            self._fh.close()


@dataclass
class TensorBatchReader:
    """Reads a tensor batch file; verifies magic, version, and checksum."""

    path: str

    def __post_init__(self):
        with open(self.path, "rb") as fh:
            blob = fh.read()
        if len(blob) < len(MAGIC) + 8 + 32 or blob[:len(MAGIC)] != MAGIC:
            raise VersionMismatch(f"{self.path}: not a tensor batch file")
        if hashlib.sha256(blob[:-32]).digest() != blob[-32:]:
            raise ChecksumMismatch(self.path)
        version, header_len = struct.unpack_from("<II", blob, len(MAGIC))
        if version != VERSION:
            raise VersionMismatch(f"{self.path}: format version {version}")
        offset = len(MAGIC) + 8
        self.header = json.loads(blob[offset:offset + header_len])
        self._body = blob[offset + header_len:-32]

    @property
    def layout_name(self) -> str:
        return self.header["layout"]

    @property
    def count(self) -> int:
        return self.header["count"]

    @property
    def shape(self) -> tuple[int, int, int]:
        return (3, self.header["height"], self.header["width"])

    def __iter__(self) -> Iterator[tuple[str, str, int, np.ndarray]]:
        tensor_bytes = 4 * 3 * self.header["height"] * self.header["width"]
        pos = 0
        body = self._body
        for _ in range(self.count):
            (alen,) = struct.unpack_from("<H", body, pos)
            a = body[pos + 2:pos + 2 + alen].decode("utf-8")
            pos += 2 + alen
            (blen,) = struct.unpack_from("<H", body, pos)
            b = body[pos + 2:pos + 2 + blen].decode("utf-8")
            pos += 2 + blen
            (label,) = struct.unpack_from("<b", body, pos)
            pos += 1
            tensor = np.frombuffer(body, dtype=np.float32,
                                   count=tensor_bytes // 4, offset=pos)
            pos += tensor_bytes
            yield a, b, label, tensor.reshape(self.shape)
        if pos != len(body):
            raise ChecksumMismatch(f"{self.path}: trailing bytes")

    def load_all(self) -> tuple[list[tuple[str, str]], np.ndarray, np.ndarray]:
        """Materialize (pairs, stacked tensors, labels)."""
        pairs, tensors, labels = [], [], []
        for a, b, label, tensor in self:
            pairs.append((a, b))
            tensors.append(tensor)
            labels.append(label)
        shape = (len(pairs),) + self.shape
        stacked = (np.stack(tensors) if pairs
                   else np.empty(shape, dtype=np.float32))
        return pairs, stacked, np.asarray(labels, dtype=np.int64)
