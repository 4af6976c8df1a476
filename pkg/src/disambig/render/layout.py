"""String-map and record-map layout definitions.

Layouts live in data/layouts.ini (human-readable, versioned). The
registry exposes five record-map layouts: the hand-placed "heuristic"
tables plus four variants with shuffled character order and/or shuffled
pixel coordinates, all derived deterministically from the seed stored
in the data file.
"""

from __future__ import annotations

import configparser
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping

FIELD_ROLES = ("first", "middle", "last", "city", "ipc", "co_inventors", "assignees")


@dataclass(frozen=True, eq=False)
class LayoutSpec:
    """One character->pixel table plus rendering parameters.

    eq/hash are identity-based: specs come from the registry and are
    shared, which lets per-word render results be cached per spec.
    """

    name: str
    grid_width: int
    grid_height: int
    char_coords: Mapping[str, tuple[int, int]]
    per_pixel_increment: float
    use_blue_leading_bigram: bool = True

    def __post_init__(self):
        seen = set()
        for ch, (x, y) in self.char_coords.items():
            if len(ch) != 1:
                raise ValueError(f"{self.name}: multi-character key {ch!r}")
            if not (0 <= x < self.grid_width and 0 <= y < self.grid_height):
                raise ValueError(f"{self.name}: {ch} at ({x},{y}) outside grid")
            if (x, y) in seen:
                raise ValueError(f"{self.name}: two characters share pixel ({x},{y})")
            seen.add((x, y))
        if not 0.0 < self.per_pixel_increment <= 1.0:
            raise ValueError(f"{self.name}: increment must be in (0, 1]")


@dataclass(frozen=True, eq=False)
class Slot:
    spec: LayoutSpec
    x: int
    y: int


@dataclass(frozen=True, eq=False)
class RecordMapLayout:
    """Placement of one string-map per record field on a canvas."""

    name: str
    version: str
    canvas_width: int
    canvas_height: int
    slots: Mapping[str, Slot]  # keyed by FIELD_ROLES

    def __post_init__(self):
        rects = []
        for role in FIELD_ROLES:
            if role not in self.slots:
                raise ValueError(f"layout {self.name}: missing slot {role}")
        for role, slot in self.slots.items():
            x0, y0 = slot.x, slot.y
            x1 = x0 + slot.spec.grid_width
            y1 = y0 + slot.spec.grid_height
            if x0 < 0 or y0 < 0 or x1 > self.canvas_width or y1 > self.canvas_height:
                raise ValueError(f"layout {self.name}: slot {role} leaves the canvas")
            for (ox0, oy0, ox1, oy1, other) in rects:
                if x0 < ox1 and ox0 < x1 and y0 < oy1 and oy0 < y1:
                    raise ValueError(
                        f"layout {self.name}: slots {role} and {other} overlap")
            rects.append((x0, y0, x1, y1, role))


def _parse_char_table(section) -> dict[str, tuple[int, int]]:
    width = section.getint("width")
    height = section.getint("height")
    coords: dict[str, tuple[int, int]] = {}
    for y in range(height):
        cells = section.get(f"row{y}", "").split()
        if len(cells) != width:
            raise ValueError(f"row{y}: expected {width} cells, got {len(cells)}")
        for x, cell in enumerate(cells):
            if cell == ".":
                continue
            if cell in coords:
                raise ValueError(f"character {cell} defined twice")
            coords[cell] = (x, y)
    return coords


def _shuffle_spec(spec: LayoutSpec, mode: str, seed: int, salt: str) -> LayoutSpec:
    """Reassign characters (and optionally coordinates) pseudo-randomly.

    Seeding by string keeps the result independent of PYTHONHASHSEED.
    """
    rng = random.Random(f"{seed}:{salt}:{spec.name}:{mode}")
    chars = sorted(spec.char_coords)
    if mode == "order":
        coords = [spec.char_coords[c] for c in chars]
    elif mode == "order-and-coords":
        cells = [(x, y) for y in range(spec.grid_height)
                 for x in range(spec.grid_width)]
        coords = rng.sample(cells, len(chars))
    else:
        raise ValueError(f"unknown shuffle mode {mode!r}")
    shuffled = chars[:]
    rng.shuffle(shuffled)
    return LayoutSpec(
        name=f"{spec.name}:{salt}",
        grid_width=spec.grid_width,
        grid_height=spec.grid_height,
        char_coords=dict(zip(shuffled, coords)),
        per_pixel_increment=spec.per_pixel_increment,
        use_blue_leading_bigram=spec.use_blue_leading_bigram,
    )


def _load_config() -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    text = resources.files("disambig.render").joinpath("data/layouts.ini").read_text()
    parser.read_string(text)
    return parser


def _build_layout(name: str, parser: configparser.ConfigParser,
                  maps: dict[str, LayoutSpec], version: str, seed: int) -> RecordMapLayout:
    section = parser[f"layout.{name}"]
    base_name = section.get("derive_from")
    base = parser[f"layout.{base_name}"] if base_name else section
    shuffle = section.get("shuffle")
    use_blue = section.getboolean(
        "blue_leading_bigram",
        fallback=base.getboolean("blue_leading_bigram", fallback=True))

    specs: dict[str, LayoutSpec] = {}
    slots: dict[str, Slot] = {}
    for role in FIELD_ROLES:
        map_name, xs, ys = base.get(role).split()
        spec = maps[map_name]
        if spec.use_blue_leading_bigram != use_blue:
            spec = LayoutSpec(spec.name, spec.grid_width, spec.grid_height,
                              spec.char_coords, spec.per_pixel_increment, use_blue)
        if shuffle:
            if map_name not in specs:
                specs[map_name] = _shuffle_spec(spec, shuffle, seed, name)
            spec = specs[map_name]
        slots[role] = Slot(spec=spec, x=int(xs), y=int(ys))
    return RecordMapLayout(
        name=name, version=version,
        canvas_width=base.getint("canvas_width"),
        canvas_height=base.getint("canvas_height"),
        slots=slots,
    )


@lru_cache(maxsize=1)
def layout_registry() -> dict[str, RecordMapLayout]:
    """All named record-map layouts, loaded once. Deterministic."""
    parser = _load_config()
    version = parser["meta"]["version"]
    seed = parser["meta"].getint("shuffle_seed")
    maps = {
        sec.split(".", 1)[1]: LayoutSpec(
            name=sec.split(".", 1)[1],
            grid_width=parser[sec].getint("width"),
            grid_height=parser[sec].getint("height"),
            char_coords=_parse_char_table(parser[sec]),
            per_pixel_increment=parser[sec].getfloat("increment"),
        )
        for sec in parser.sections() if sec.startswith("map.")
    }
    registry = {}
    for sec in parser.sections():
        if sec.startswith("layout."):
            name = sec.split(".", 1)[1]
            registry[name] = _build_layout(name, parser, maps, version, seed)
    return registry


def layout_version() -> str:
    return _load_config()["meta"]["version"]
