"""Edge detection with per-channel color dipole moments."""

__version__ = "0.1.0"

from .baselines import (
    Detector,
    convolve3,
    gradient_magnitude,
    laplace_response,
    run_baseline,
    sobel_magnitude,
)
from .dipole import DipoleField, charge_field, dipole_field, local_mean, magnitude_field
from .dump import read_dump, write_dump
from .errors import (
    ColorDipoleError,
    CorruptDumpError,
    CorruptImageError,
    InvalidChannelError,
    InvalidRectError,
    OutsideInteriorError,
    UnsupportedFormatError,
    UsageError,
)
from .image import channel_plane, load_image, quantize_gray, save_image
from .pipeline import Engine, color_dipole_fields, run_color_dipole, run_gray_dipole
from .render import PMaxPolicy, RenderParams, render_map, render_values
from .sat import (
    SummedAreaTable,
    box_sum,
    build_sat,
    fast_charge_field,
    fast_dipole_field,
    fast_local_mean,
)
from .window import Border, ChargeMode, Normalization, WindowSpec, window_indices
