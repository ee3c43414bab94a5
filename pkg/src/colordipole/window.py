"""Window geometry: size, anchoring, border policy, charge mode, divisor."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import OutsideInteriorError


class Border(enum.Enum):
    REPLICATE = "replicate"
    INTERIOR = "interior"


class ChargeMode(enum.Enum):
    # every window member is centered on the evaluated window's own mean
    CENTER_MEAN = "center"
    # every member carries the charge computed in its own neighborhood
    OWN_MEAN = "own"


class Normalization(enum.Enum):
    PIXEL_COUNT = "count"
    FOUR_DELTA_PRODUCT = "fourdelta"


@dataclass(frozen=True)
class WindowSpec:
    """An ``rows x cols`` neighborhood attached to every pixel.

    A window of ``n`` pixels centered on index ``i`` spans
    ``[i - (n - 1) // 2, i + n // 2]``: symmetric for odd ``n``, and for even
    ``n`` extending one pixel further down/right, so a 2x2 window at
    ``(i, j)`` covers ``{i, i+1} x {j, j+1}``.
    """

    rows: int = 2
    cols: int = 2
    border: Border = Border.REPLICATE
    charge_mode: ChargeMode = ChargeMode.CENTER_MEAN
    normalization: Normalization = Normalization.PIXEL_COUNT

    def __post_init__(self):
        for name in ("rows", "cols"):
            n = getattr(self, name)
            if not isinstance(n, (int, np.integer)) or n < 2:
                raise ValueError(f"window {name} must be an integer >= 2, got {n!r}")
        object.__setattr__(self, "border", Border(self.border))
        object.__setattr__(self, "charge_mode", ChargeMode(self.charge_mode))
        object.__setattr__(self, "normalization", Normalization(self.normalization))

    @classmethod
    def square(cls, n: int, **kwargs) -> "WindowSpec":
        return cls(rows=n, cols=n, **kwargs)

    @property
    def count(self) -> int:
        return self.rows * self.cols

    @property
    def divisor(self) -> float:
        if self.normalization is Normalization.PIXEL_COUNT:
            return float(self.count)
        # half-widths n/2, so 4 * (rows/2) * (cols/2)
        return 4.0 * (self.rows / 2.0) * (self.cols / 2.0)

    @property
    def row_extent(self) -> tuple[int, int]:
        """Pixels the window reaches (above, below) its anchor row."""
        return (self.rows - 1) // 2, self.rows // 2

    @property
    def col_extent(self) -> tuple[int, int]:
        return (self.cols - 1) // 2, self.cols // 2

    def label(self) -> str:
        return f"{self.rows}" if self.rows == self.cols else f"{self.rows}x{self.cols}"


def window_indices(spec: WindowSpec, i: int, j: int, w: int, h: int) -> list[tuple[int, int]]:
    """Row-major list of the ``(k, l)`` pixels in the window of pixel ``(i, j)``.

    Under the replicate border, out-of-frame indices are clamped to the frame
    (so the list may contain duplicates).  Under the interior border a window
    that overhangs the frame raises :class:`OutsideInteriorError`.
    """
    if not (0 <= i < h and 0 <= j < w):
        raise IndexError(f"pixel ({i}, {j}) outside {h}x{w} frame")
    above, below = spec.row_extent
    left, right = spec.col_extent
    ks = range(i - above, i + below + 1)
    ls = range(j - left, j + right + 1)
    if spec.border is Border.INTERIOR:
        if ks[0] < 0 or ks[-1] >= h or ls[0] < 0 or ls[-1] >= w:
            raise OutsideInteriorError(
                f"{spec.rows}x{spec.cols} window at ({i}, {j}) overhangs {h}x{w} frame")
        return [(k, l) for k in ks for l in ls]
    return [(min(max(k, 0), h - 1), min(max(l, 0), w - 1)) for k in ks for l in ls]


def output_shape(spec: WindowSpec, h: int, w: int) -> tuple[int, int]:
    """Shape of a windowed result over an ``h x w`` frame."""
    if spec.border is Border.REPLICATE:
        return h, w
    oh, ow = h - spec.rows + 1, w - spec.cols + 1
    if oh < 1 or ow < 1:
        raise OutsideInteriorError(
            f"{spec.rows}x{spec.cols} window does not fit in a {h}x{w} frame")
    return oh, ow


def output_origin(spec: WindowSpec) -> tuple[int, int]:
    """Frame coordinates of element ``[0, 0]`` of a windowed result."""
    if spec.border is Border.REPLICATE:
        return 0, 0
    return spec.row_extent[0], spec.col_extent[0]
