"""Classical 3x3 edge detectors for side-by-side comparison.

All responses use replicate borders and go through the same tone map as the
dipole detector so the rendered maps are directly comparable.
"""

from __future__ import annotations

import enum

import numpy as np

from .image import as_bitmap, as_field, channel_plane
from .render import RenderParams, render_map

SOBEL_X = np.array([[-1.0, 0.0, 1.0],
                    [-2.0, 0.0, 2.0],
                    [-1.0, 0.0, 1.0]])
SOBEL_Y = SOBEL_X.T.copy()
LAPLACE = np.array([[0.0, 1.0, 0.0],
                    [1.0, -4.0, 1.0],
                    [0.0, 1.0, 0.0]])
IDENTITY = np.array([[0.0, 0.0, 0.0],
                     [0.0, 1.0, 0.0],
                     [0.0, 0.0, 0.0]])


class Detector(enum.Enum):
    SOBEL = "sobel"
    LAPLACE = "laplace"
    GRADIENT = "gradient"


def as_kernel3(k) -> np.ndarray:
    k = np.asarray(k, dtype=np.float64)
    if k.shape != (3, 3) or not np.all(np.isfinite(k)):
        raise ValueError("kernel must be a finite 3x3 array")
    return k


def convolve3(field, k) -> np.ndarray:
    """Correlate ``field`` with the 3x3 kernel ``k`` (no kernel flip)."""
    field = as_field(field)
    k = as_kernel3(k)
    h, w = field.shape
    padded = np.pad(field, 1, mode="edge")
    out = np.zeros_like(field)
    for di in range(3):
        for dj in range(3):
            if k[di, dj] != 0.0:
                out += k[di, dj] * padded[di:di + h, dj:dj + w]
    return out


def sobel_magnitude(field) -> np.ndarray:
    gx = convolve3(field, SOBEL_X)
    gy = convolve3(field, SOBEL_Y)
    return np.sqrt(gx * gx + gy * gy)


def laplace_response(field) -> np.ndarray:
    return np.abs(convolve3(field, LAPLACE))


def gradient_magnitude(field) -> np.ndarray:
    """Central-difference gradient magnitude, replicate borders."""
    field = as_field(field)
    p = np.pad(field, 1, mode="edge")
    gx = (p[2:, 1:-1] - p[:-2, 1:-1]) / 2.0
    gy = (p[1:-1, 2:] - p[1:-1, :-2]) / 2.0
    return np.sqrt(gx * gx + gy * gy)


_RESPONSES = {
    Detector.SOBEL: sobel_magnitude,
    Detector.LAPLACE: laplace_response,
    Detector.GRADIENT: gradient_magnitude,
}


def detector_response(field, detector: Detector | str) -> np.ndarray:
    return _RESPONSES[Detector(detector)](field)


def run_baseline(image, detector: Detector | str,
                 params: RenderParams = RenderParams()) -> np.ndarray:
    image = as_bitmap(image)
    mags = [detector_response(channel_plane(image, c), detector) for c in (1, 2, 3)]
    return render_map(mags, params)
