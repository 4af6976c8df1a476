"""Rendering of words, records, and record pairs into image tensors.

A word is drawn on a string-map by adding colour at its first and last
letters and along the rasterized segment of every consecutive-character
bi-gram; the first bi-gram is additionally drawn in blue. Characters a
map does not define (including spaces) are skipped, with segments
bridging to the next mapped character.

Internally everything is counted in integers (how many times each pixel
was marked) and converted to intensity once, as min(1, count * increment).
That makes overlays exactly order-independent and channel-symmetric,
float arithmetic notwithstanding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import OffsetOutOfBounds
from ..ingest import Record
from .layout import FIELD_ROLES, LayoutSpec, RecordMapLayout
from .raster import rasterize_segment

RED, GREEN, BLUE = 0, 1, 2
_CHANNELS = {"red": RED, "green": GREEN}


@dataclass
class ImageTensor:
    """H x W x 3 image as a channel-first float32 array in [0, 1]."""

    data: np.ndarray  # shape (3, height, width)

    def __post_init__(self):
        if self.data.ndim != 3 or self.data.shape[0] != 3:
            raise ValueError("expected shape (3, height, width)")

    @classmethod
    def zeros(cls, width: int, height: int) -> "ImageTensor":
        return cls(np.zeros((3, height, width), dtype=np.float32))

    @property
    def width(self) -> int:
        return self.data.shape[2]

    @property
    def height(self) -> int:
        return self.data.shape[1]


@lru_cache(maxsize=200_000)
def word_mark_counts(word: str, spec: LayoutSpec) -> tuple[np.ndarray, np.ndarray]:
    """Integer mark counts for one word on one string-map.

    Returns (primary, blue) arrays of shape (grid_height, grid_width),
    read-only. Cached per (word, spec identity); specs are registry
    singletons.
    """
    primary = np.zeros((spec.grid_height, spec.grid_width), dtype=np.int32)
    blue = np.zeros_like(primary)
    seq = [spec.char_coords[ch] for ch in word if ch in spec.char_coords]
    if seq:
        if len(seq) == 1:
            primary[seq[0][1], seq[0][0]] += 1
            if spec.use_blue_leading_bigram:
                blue[seq[0][1], seq[0][0]] += 1
        else:
            primary[seq[0][1], seq[0][0]] += 1
            primary[seq[-1][1], seq[-1][0]] += 1
            for p, q in zip(seq, seq[1:]):
                for x, y in rasterize_segment(p, q):
                    primary[y, x] += 1
            if spec.use_blue_leading_bigram:
                for x, y in rasterize_segment(seq[0], seq[1]):
                    blue[y, x] += 1
    primary.flags.writeable = False
    blue.flags.writeable = False
    return primary, blue


def render_string_map(word: str, spec: LayoutSpec, canvas: ImageTensor,
                      offset: tuple[int, int], primary_channel: str) -> ImageTensor:
    """Add one word's string-map to a canvas in place and return the canvas.

    primary_channel is "red" or "green"; the leading bi-gram goes to
    blue when the spec enables it. Values saturate at 1.0.
    """
    ox, oy = offset
    if (ox < 0 or oy < 0 or ox + spec.grid_width > canvas.width
            or oy + spec.grid_height > canvas.height):
        raise OffsetOutOfBounds(f"{spec.name} at ({ox},{oy}) on "
                                f"{canvas.width}x{canvas.height} canvas")
    channel = _CHANNELS[primary_channel]
    primary, blue = word_mark_counts(word, spec)
    inc = np.float32(spec.per_pixel_increment)
    view = canvas.data[:, oy:oy + spec.grid_height, ox:ox + spec.grid_width]
    np.minimum(view[channel] + primary * inc, np.float32(1.0), out=view[channel])
    np.minimum(view[BLUE] + blue * inc, np.float32(1.0), out=view[BLUE])
    return canvas


def _field_values(record: Record, role: str) -> tuple[str, ...]:
    if role == "first":
        return (record.first_name,) if record.first_name else ()
    if role == "middle":
        return (record.middle_name,) if record.middle_name else ()
    if role == "last":
        return (record.last_name,)
    if role == "city":
        return (record.city,) if record.city else ()
    if role == "ipc":
        return record.ipc_codes
    if role == "co_inventors":
        return record.co_inventor_last_names
    return record.assignees


def record_mark_counts(record: Record, layout: RecordMapLayout
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Canvas-sized integer mark counts (primary, blue) for one record."""
    shape = (layout.canvas_height, layout.canvas_width)
    primary = np.zeros(shape, dtype=np.int32)
    blue = np.zeros(shape, dtype=np.int32)
    for role in FIELD_ROLES:
        slot = layout.slots[role]
        h, w = slot.spec.grid_height, slot.spec.grid_width
        for value in _field_values(record, role):
            wp, wb = word_mark_counts(value, slot.spec)
            primary[slot.y:slot.y + h, slot.x:slot.x + w] += wp
            blue[slot.y:slot.y + h, slot.x:slot.x + w] += wb
    return primary, blue


@lru_cache(maxsize=None)
def _increment_map(layout: RecordMapLayout) -> np.ndarray:
    """Per-pixel colour increment, constant within each slot rectangle."""
    inc = np.zeros((layout.canvas_height, layout.canvas_width), dtype=np.float32)
    for slot in layout.slots.values():
        inc[slot.y:slot.y + slot.spec.grid_height,
            slot.x:slot.x + slot.spec.grid_width] = slot.spec.per_pixel_increment
    return inc


def _intensity(counts: np.ndarray, layout: RecordMapLayout) -> np.ndarray:
    return np.minimum(counts.astype(np.float32) * _increment_map(layout),
                      np.float32(1.0))


def render_record_map(record: Record, layout: RecordMapLayout,
                      primary_channel: str = "red") -> ImageTensor:
    """Render one record onto a fresh canvas-sized tensor."""
    primary, blue = record_mark_counts(record, layout)
    tensor = ImageTensor.zeros(layout.canvas_width, layout.canvas_height)
    tensor.data[_CHANNELS[primary_channel]] = _intensity(primary, layout)
    tensor.data[BLUE] = _intensity(blue, layout)
    return tensor


def render_comparison_map(a: Record, b: Record,
                          layout: RecordMapLayout) -> ImageTensor:
    """Stack two record-maps into one RGB image: a in red, b in green,
    both leading bi-grams sharing (and accumulating in) blue."""
    pa, ba = record_mark_counts(a, layout)
    pb, bb = record_mark_counts(b, layout)
    tensor = ImageTensor.zeros(layout.canvas_width, layout.canvas_height)
    tensor.data[RED] = _intensity(pa, layout)
    tensor.data[GREEN] = _intensity(pb, layout)
    tensor.data[BLUE] = _intensity(ba + bb, layout)
    return tensor


def yellow_overlap(tensor: ImageTensor) -> float:
    """Sum of pixelwise min(red, green): the "yellow mass" of a comparison."""
    return float(np.minimum(tensor.data[RED], tensor.data[GREEN]).sum())
