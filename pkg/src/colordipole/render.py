"""Map magnitude fields to 8-bit tones: ``255 * (P / P_max) ** alpha``."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .image import quantize


class PMaxPolicy(enum.Enum):
    PER_CHANNEL = "channel"
    GLOBAL = "global"


@dataclass(frozen=True)
class RenderParams:
    """Exponent, contrast (``gain``) and brightness (``bias``) of the tone map."""

    alpha: float = 0.5
    gain: float = 1.0
    bias: float = 0.0
    pmax_policy: PMaxPolicy = PMaxPolicy.PER_CHANNEL

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if not (np.isfinite(self.gain) and self.gain > 0):
            raise ValueError(f"gain must be positive, got {self.gain!r}")
        if not np.isfinite(self.bias):
            raise ValueError(f"bias must be finite, got {self.bias!r}")
        object.__setattr__(self, "pmax_policy", PMaxPolicy(self.pmax_policy))


def channel_maxima(mags: Sequence[np.ndarray], policy: PMaxPolicy) -> list[float]:
    maxima = [float(m.max()) if m.size else 0.0 for m in mags]
    if PMaxPolicy(policy) is PMaxPolicy.GLOBAL:
        top = max(maxima, default=0.0)
        maxima = [top] * len(maxima)
    return maxima


def render_values(mags: Sequence[np.ndarray], params: RenderParams = RenderParams()) -> np.ndarray:
    """Real-valued tones, shape ``(h, w, channels)``, before clamping/rounding.

    A channel whose maximum is zero renders as zero everywhere, whatever the
    gain and bias.
    """
    mags = [np.asarray(m, dtype=np.float64) for m in mags]
    if not mags:
        raise ValueError("need at least one magnitude field")
    shape = mags[0].shape
    for m in mags:
        if m.shape != shape:
            raise ValueError("magnitude fields must share one shape")
        if m.size and m.min() < 0:
            raise ValueError("magnitude fields must be nonnegative")
    out = np.empty((*shape, len(mags)))
    for c, (m, pmax) in enumerate(zip(mags, channel_maxima(mags, params.pmax_policy))):
        if pmax == 0:
            out[..., c] = 0.0
            continue
        ratio = m / pmax
        tone = np.sqrt(ratio) if params.alpha == 0.5 else ratio ** params.alpha
        out[..., c] = params.gain * 255.0 * tone + params.bias
    return out


def render_map(mags: Sequence[np.ndarray], params: RenderParams = RenderParams()) -> np.ndarray:
    """Quantized tone map: an RGB bitmap for three fields, ``(h, w, n)`` otherwise."""
    return quantize(render_values(mags, params))
