"""Text-to-image rendering: string-maps, record-maps, comparison-maps."""

from .layout import FIELD_ROLES, LayoutSpec, RecordMapLayout, Slot, layout_registry
from .maps import (
    BLUE,
    GREEN,
    RED,
    ImageTensor,
    render_comparison_map,
    render_record_map,
    render_string_map,
    word_mark_counts,
    yellow_overlap,
)
from .png import export_png
from .raster import rasterize_segment

__all__ = [
    "FIELD_ROLES", "LayoutSpec", "RecordMapLayout", "Slot", "layout_registry",
    "ImageTensor", "RED", "GREEN", "BLUE",
    "render_string_map", "render_record_map", "render_comparison_map",
    "word_mark_counts", "yellow_overlap", "rasterize_segment", "export_png",
]
