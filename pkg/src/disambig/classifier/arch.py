"""Network architecture descriptor.

The first convolution is fixed at 3x3xC_in with stride 1 and the output
layer at 2 softmax units; depth and widths are data, so deeper variants
stay configurable without code changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

KERNEL = 3  # first-layer kernel is 3x3xC_in, stride 1
STRIDE = 1


@dataclass(frozen=True)
class ConvSpec:
    out_channels: int
    pool: bool = True  # 2x2 stride-2 max pool after the ReLU


@dataclass(frozen=True)
class Architecture:
    input_height: int
    input_width: int
    input_channels: int = 3
    conv: tuple[ConvSpec, ...] = (ConvSpec(16), ConvSpec(32))
    hidden: tuple[int, ...] = (128,)
    n_classes: int = 2

    def __post_init__(self):
        if self.n_classes != 2:
            raise ValueError("this classifier is strictly 2-way")
        self.flat_features()  # validates the shape chain

    def feature_shapes(self) -> list[tuple[int, int, int]]:
        """(channels, height, width) after each conv block."""
        c, h, w = self.input_channels, self.input_height, self.input_width
        shapes = []
        for spec in self.conv:
            h, w = h - KERNEL + 1, w - KERNEL + 1
            c = spec.out_channels
            if spec.pool:
                h, w = h // 2, w // 2
            if h < 1 or w < 1:
                raise ValueError("input too small for this conv stack")
            shapes.append((c, h, w))
        return shapes

    def flat_features(self) -> int:
        if not self.conv:
            return self.input_channels * self.input_height * self.input_width
        c, h, w = self.feature_shapes()[-1]
        return c * h * w

    def to_dict(self) -> dict:
        return {
            "input": [self.input_channels, self.input_height, self.input_width],
            "conv": [[s.out_channels, s.pool] for s in self.conv],
            "hidden": list(self.hidden),
            "n_classes": self.n_classes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Architecture":
        c, h, w = d["input"]
        return cls(
            input_height=h, input_width=w, input_channels=c,
            conv=tuple(ConvSpec(out, bool(pool)) for out, pool in d["conv"]),
            hidden=tuple(d["hidden"]),
            n_classes=d["n_classes"],
        )

    @classmethod
    def default_for(cls, height: int, width: int) -> "Architecture":
        return cls(input_height=height, input_width=width)
