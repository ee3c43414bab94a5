"""Summed-area tables and O(1)-per-pixel windowed means and dipole moments.

Each windowed sum is four table lookups, so the cost of a mean or a dipole
field does not depend on the window size.  The dipole moment of a window is
rebuilt from three tables (values, values * row index, values * column
index)::

    sum(q * k) = sum(b * k) - M * sum(k)          (center-mean charges)

The replicate border is realized by padding the field with clamped copies
(and the coordinate grids with clamped indices) before building the tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dipole import DipoleField
from .errors import InvalidRectError
from .image import as_field
from .window import Border, ChargeMode, WindowSpec, output_origin, output_shape


@dataclass(frozen=True)
class SummedAreaTable:
    """``table[..., i, j]`` is the field's sum over rows < i and cols < j.

    Leading axes, if any, index a stack of independent fields.
    """

    table: np.ndarray

    @property
    def height(self) -> int:
        return self.table.shape[-2] - 1

    @property
    def width(self) -> int:
        return self.table.shape[-1] - 1


def _empty_table(shape) -> tuple[np.ndarray, np.ndarray]:
    *lead, h, w = shape
    table = np.empty((*lead, h + 1, w + 1))
    table[..., 0, :] = 0.0
    table[..., :, 0] = 0.0
    return table, table[..., 1:, 1:]


def _accumulate(table: np.ndarray, body: np.ndarray) -> SummedAreaTable:
    np.cumsum(body, axis=-2, out=body)
    np.cumsum(body, axis=-1, out=body)
    return SummedAreaTable(table)


def build_sat(field) -> SummedAreaTable:
    field = np.asarray(field, dtype=np.float64)
    if field.ndim < 2:
        raise ValueError("summed-area table needs a 2-D field")
    table, body = _empty_table(field.shape)
    body[...] = field
    return _accumulate(table, body)


def box_sum(sat: SummedAreaTable, r0: int, r1: int, c0: int, c1: int) -> float:
    """Sum of the field over the half-open rectangle ``[r0, r1) x [c0, c1)``."""
    if sat.table.ndim != 2:
        raise ValueError("box_sum needs a single-field table")
    if not (0 <= r0 <= r1 <= sat.height and 0 <= c0 <= c1 <= sat.width):
        raise InvalidRectError(
            f"rectangle [{r0},{r1})x[{c0},{c1}) invalid for "
            f"{sat.height}x{sat.width} table")
    t = sat.table
    return float(t[r1, c1] - t[r0, c1] - t[r1, c0] + t[r0, c0])


def window_sums(sat: SummedAreaTable, rows: int, cols: int) -> np.ndarray:
    """Sums over every ``rows x cols`` window lying inside the table's field."""
    t = sat.table
    band = np.subtract(t[..., rows:, :], t[..., :-rows, :])
    return np.subtract(band[..., cols:], band[..., :-cols])


def _extend(values: np.ndarray, spec: WindowSpec) -> np.ndarray:
    if spec.border is Border.INTERIOR:
        return values
    return np.pad(values, (spec.row_extent, spec.col_extent), mode="edge")


def _coordinates(n: int, extent: tuple[int, int], spec: WindowSpec, offset: int):
    idx = np.arange(n, dtype=np.float64)
    if spec.border is Border.REPLICATE:
        idx = np.pad(idx, extent, mode="edge")
    return idx + offset


def _coordinate_sum(coords: np.ndarray, n: int, repeat: int) -> np.ndarray:
    # window sums of a 1-D coordinate grid, times the window's other side
    c = np.concatenate(([0.0], np.cumsum(coords)))
    return (c[n:] - c[:-n]) * repeat


def _baseline(values: np.ndarray) -> float:
    # Removing an integer offset keeps integer inputs exact and shrinks the
    # prefix sums for real inputs.  Callers add it back where it matters.
    return float(np.round(values.mean())) if values.size else 0.0


def fast_local_mean(field, spec: WindowSpec) -> np.ndarray:
    field = as_field(field)
    output_shape(spec, *field.shape)
    shift = _baseline(field)
    sums = window_sums(build_sat(_extend(field - shift, spec)), spec.rows, spec.cols)
    return (sums + shift * spec.count) / spec.divisor


def fast_charge_field(field, spec: WindowSpec) -> np.ndarray:
    field = as_field(field)
    mean = fast_local_mean(field, spec)
    r0, c0 = output_origin(spec)
    oh, ow = mean.shape
    return field[r0:r0 + oh, c0:c0 + ow] - mean


def _first_moments(values: np.ndarray, spec: WindowSpec, origin: tuple[int, int]):
    """Window sums of ``v``, ``v * x`` and ``v * y`` plus the coordinate sums."""
    h, w = values.shape
    xs = _coordinates(h, spec.row_extent, spec, origin[0])
    ys = _coordinates(w, spec.col_extent, spec, origin[1])
    ext = _extend(values, spec)
    table, body = _empty_table((3, *ext.shape))
    body[0] = ext
    np.multiply(ext, xs[:, None], out=body[1])
    np.multiply(ext, ys[None, :], out=body[2])
    s_v, s_vx, s_vy = window_sums(_accumulate(table, body), spec.rows, spec.cols)
    s_x = _coordinate_sum(xs, spec.rows, spec.cols)[:, None]
    s_y = _coordinate_sum(ys, spec.cols, spec.rows)[None, :]
    return s_v, s_vx, s_vy, s_x, s_y


def fast_dipole_field(field, spec: WindowSpec, offset: tuple[float, float] = (0.0, 0.0)) -> DipoleField:
    """Summed-area-table version of :func:`colordipole.dipole.dipole_field`."""
    field = as_field(field)
    output_shape(spec, *field.shape)
    div = spec.divisor
    r0, c0 = output_origin(spec)

    if spec.charge_mode is ChargeMode.CENTER_MEAN:
        # q = b - M is unchanged by a constant shift of b when divisor == count
        shift = _baseline(field) if spec.divisor == spec.count else 0.0
        shifted = field - shift
        s_v, s_vx, s_vy, s_x, s_y = _first_moments(shifted, spec, (0, 0))
        mean = s_v / div
        s_vx -= mean * s_x
        s_vy -= mean * s_y
        if offset != (0.0, 0.0):
            # shifted coordinates add offset * (net window charge)
            net = s_v - mean * spec.count
            s_vx += offset[0] * net
            s_vy += offset[1] * net
        s_vx /= div
        s_vy /= div
        return DipoleField(s_vx, s_vy, (r0, c0))

    q = fast_charge_field(field, spec)
    output_shape(spec, *q.shape)
    _, s_qx, s_qy, _, _ = _first_moments(q, spec, (r0 + offset[0], c0 + offset[1]))
    return DipoleField(s_qx / div, s_qy / div, (2 * r0, 2 * c0))
