"""Reference (direct summation) windowed mean, charge and dipole moments.

Every windowed quantity here is an explicit sum over the members of each
pixel's window, visiting one window offset at a time.  Cost is
O(h * w * rows * cols); :mod:`colordipole.sat` computes the same values in
O(h * w).

Pixel coordinates are absolute frame indices: ``x = k`` (row) and ``y = l``
(column).  Under the replicate border a clamped member takes the coordinates
of the pixel it was clamped to.  Under the interior border results are
cropped to the anchors whose windows fit; ``DipoleField.origin`` records the
frame position of element ``[0, 0]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import as_field
from .window import Border, ChargeMode, WindowSpec, output_origin, output_shape


@dataclass(frozen=True)
class DipoleField:
    """Per-pixel dipole moment components ``(px, py)`` for one channel."""

    px: np.ndarray
    py: np.ndarray
    origin: tuple[int, int] = (0, 0)

    def __post_init__(self):
        if self.px.shape != self.py.shape or self.px.ndim != 2:
            raise ValueError("px and py must be 2-D arrays of equal shape")

    @property
    def shape(self) -> tuple[int, int]:
        return self.px.shape

    def magnitude(self) -> np.ndarray:
        return magnitude_field(self)


def _members(values: np.ndarray, spec: WindowSpec, origin=(0, 0)):
    """Yield ``(v, x, y)`` for each window offset, broadcast over all anchors.

    ``v`` holds the member value for every anchor, ``x``/``y`` its absolute
    row/column coordinate (column and row vectors respectively).
    """
    h, w = values.shape
    oh, ow = output_shape(spec, h, w)
    above, below = spec.row_extent
    left, right = spec.col_extent
    if spec.border is Border.REPLICATE:
        rows, cols = np.arange(h), np.arange(w)
    else:
        rows, cols = np.arange(above, above + oh), np.arange(left, left + ow)
    for dk in range(-above, below + 1):
        k = np.clip(rows + dk, 0, h - 1)[:, None]
        for dl in range(-left, right + 1):
            l = np.clip(cols + dl, 0, w - 1)[None, :]
            yield values[k, l], k + origin[0], l + origin[1]


class _CompensatedSum:
    """Elementwise Neumaier summation.

    Any rounding left in the window mean reappears multiplied by the
    coordinate origin in the moments, so both sums are kept compensated.
    """

    def __init__(self, shape):
        self.total = np.zeros(shape)
        self._carry = np.zeros(shape)

    def add(self, term: np.ndarray) -> None:
        t = self.total + term
        big = np.abs(self.total) >= np.abs(term)
        self._carry += np.where(big, (self.total - t) + term, (term - t) + self.total)
        self.total = t

    def result(self) -> np.ndarray:
        return self.total + self._carry


def _anchor_values(values: np.ndarray, spec: WindowSpec) -> np.ndarray:
    oh, ow = output_shape(spec, *values.shape)
    r0, c0 = output_origin(spec)
    return values[r0:r0 + oh, c0:c0 + ow]


def _local_mean(values: np.ndarray, spec: WindowSpec) -> np.ndarray:
    total = _CompensatedSum(output_shape(spec, *values.shape))
    for v, _, _ in _members(values, spec):
        total.add(v)
    return total.result() / spec.divisor


def local_mean(field, spec: WindowSpec) -> np.ndarray:
    """Windowed mean ``M(i, j)``: window sum over the spec's divisor."""
    return _local_mean(as_field(field), spec)


def charge_field(field, spec: WindowSpec) -> np.ndarray:
    """Charge ``q(i, j) = b(i, j) - M(i, j)`` of each pixel in its own window."""
    field = as_field(field)
    return _anchor_values(field, spec) - _local_mean(field, spec)


def dipole_field(field, spec: WindowSpec, offset: tuple[float, float] = (0.0, 0.0)) -> DipoleField:
    """First moments of the window charge distribution at every pixel.

    ``px(i, j) = sum(q(k, l) * x) / divisor`` and ``py`` likewise with ``y``,
    the sum running over the window of ``(i, j)``, where ``x = k + offset[0]``
    and ``y = l + offset[1]``.  The charge ``q`` depends on
    ``spec.charge_mode``:

    * center mean: ``q(k, l) = b(k, l) - M(i, j)``, so the window holds zero
      net charge and the moment does not depend on the coordinate origin;
    * own mean: ``q(k, l) = b(k, l) - M(k, l)``, each member carrying the
      charge of its own neighborhood.
    """
    field = as_field(field)
    div = spec.divisor
    if spec.charge_mode is ChargeMode.CENTER_MEAN:
        mean = _local_mean(field, spec)
        px, py = _CompensatedSum(mean.shape), _CompensatedSum(mean.shape)
        for v, x, y in _members(field, spec, offset):
            q = v - mean
            px.add(q * x)
            py.add(q * y)
        return DipoleField(px.result() / div, py.result() / div, output_origin(spec))

    q = charge_field(field, spec)
    q_origin = output_origin(spec)
    shape = output_shape(spec, *q.shape)
    px, py = _CompensatedSum(shape), _CompensatedSum(shape)
    shifted = (q_origin[0] + offset[0], q_origin[1] + offset[1])
    for v, x, y in _members(q, spec, shifted):
        px.add(v * x)
        py.add(v * y)
    r0, c0 = output_origin(spec)
    return DipoleField(px.result() / div, py.result() / div,
                       (q_origin[0] + r0, q_origin[1] + c0))


def magnitude_field(d: DipoleField) -> np.ndarray:
    """``P = (px^2 + py^2)^(1/2)``."""
    return np.sqrt(d.px * d.px + d.py * d.py)
