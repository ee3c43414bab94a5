"""Image-level detectors: per-channel dipole fields rendered to edge maps."""

from __future__ import annotations

import enum

import numpy as np

from . import dipole, sat
from .dipole import DipoleField, magnitude_field
from .image import as_bitmap, as_gray, channel_plane
from .render import RenderParams, render_map
from .window import WindowSpec


class Engine(enum.Enum):
    NAIVE = "naive"
    FAST = "fast"


def dipole_engine(engine: Engine | str = Engine.FAST):
    """The ``dipole_field`` implementation behind ``engine``."""
    if Engine(engine) is Engine.NAIVE:
        return dipole.dipole_field
    return sat.fast_dipole_field


def color_dipole_fields(image, spec: WindowSpec = WindowSpec(),
                        engine: Engine | str = Engine.FAST) -> list[DipoleField]:
    """Dipole field of each color channel, red first."""
    image = as_bitmap(image)
    compute = dipole_engine(engine)
    return [compute(channel_plane(image, c), spec) for c in (1, 2, 3)]


def run_color_dipole(image, spec: WindowSpec = WindowSpec(),
                     params: RenderParams = RenderParams(),
                     engine: Engine | str = Engine.FAST) -> np.ndarray:
    """Color edge map: one dipole magnitude per channel, tone-mapped per channel."""
    fields = color_dipole_fields(image, spec, engine)
    return render_map([magnitude_field(d) for d in fields], params)


def run_gray_dipole(image, spec: WindowSpec = WindowSpec(),
                    params: RenderParams = RenderParams(),
                    engine: Engine | str = Engine.FAST) -> np.ndarray:
    gray = as_gray(image).astype(np.float64)
    d = dipole_engine(engine)(gray, spec)
    return render_map([magnitude_field(d)], params)[..., 0]
