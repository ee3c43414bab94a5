"""Bitmaps, channel planes and lossless PPM/PGM/PNG I/O.

A color bitmap is a ``(height, width, 3)`` uint8 array indexed by
``(row, col, channel)`` with the origin at the top-left corner; a gray bitmap
is ``(height, width)`` uint8.  Scalar fields are ``(height, width)`` float64
arrays.  Channels are numbered 1 (red), 2 (green), 3 (blue) in the public API.
"""

from __future__ import annotations

import os
import re
import struct
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image

from .errors import (
    CorruptImageError,
    InvalidChannelError,
    UnsupportedFormatError,
)

PathLike = Union[str, os.PathLike]

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

_WS = b" \t\n\r\x0b\x0c"
_INT = re.compile(rb"\d+")


def as_bitmap(arr) -> np.ndarray:
    """Validate ``arr`` as an RGB bitmap and return it as uint8."""
    arr = np.asarray(arr)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"bitmap must have shape (h, w, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("bitmap must be at least 1x1")
    return _to_uint8(arr)


def as_gray(arr) -> np.ndarray:
    arr = np.asarray(arr)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"gray bitmap must have shape (h, w), got {arr.shape}")
    return _to_uint8(arr)


def as_field(arr) -> np.ndarray:
    """Validate ``arr`` as a finite 2-D scalar field; returns float64."""
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"scalar field must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("scalar field contains NaN or infinity")
    return arr


def _to_uint8(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype.kind not in "iu" or arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("samples must be integers in [0, 255]")
    return arr.astype(np.uint8)


def promote_gray(gray) -> np.ndarray:
    """Triplicate a gray bitmap into three equal channels."""
    gray = as_gray(gray)
    return np.repeat(gray[:, :, None], 3, axis=2)


def to_gray(bitmap) -> np.ndarray:
    """Reduce an RGB bitmap to one plane.

    Bitmaps whose channels are already equal (e.g. promoted PGM input) return
    that plane unchanged; otherwise ITU-R 601 luma is used, rounded half up.
    """
    bitmap = as_bitmap(bitmap)
    r, g, b = (bitmap[:, :, c].astype(np.int64) for c in range(3))
    if np.array_equal(r, g) and np.array_equal(g, b):
        return bitmap[:, :, 0].copy()
    luma = (r * 299 + g * 587 + b * 114 + 500) // 1000
    return luma.astype(np.uint8)


def channel_plane(bitmap, c: int) -> np.ndarray:
    """Real-valued copy of channel ``c`` (1=red, 2=green, 3=blue)."""
    if not isinstance(c, (int, np.integer)) or isinstance(c, bool) or not 1 <= c <= 3:
        raise InvalidChannelError(f"channel must be 1, 2 or 3, got {c!r}")
    bitmap = as_bitmap(bitmap)
    return bitmap[:, :, c - 1].astype(np.float64)


def quantize(values) -> np.ndarray:
    """Clamp to [0, 255] and round to nearest, ties away from zero."""
    values = np.clip(np.asarray(values, dtype=np.float64), 0.0, 255.0)
    # everything is nonnegative after the clamp
    return np.floor(values + 0.5).astype(np.uint8)


def quantize_gray(field) -> np.ndarray:
    return quantize(as_field(field))


# -- decoding ---------------------------------------------------------------


def load_image(path: PathLike) -> np.ndarray:
    """Decode a PNG, binary PPM (P6) or binary PGM (P5) file to an RGB bitmap.

    PGM input is promoted to three equal channels; PNG alpha is dropped.
    16-bit images are rejected rather than truncated.
    """
    path = Path(path)
    data = path.read_bytes()
    if data.startswith(PNG_SIGNATURE):
        return _decode_png(path, data)
    if data[:2] in (b"P5", b"P6"):
        return _decode_pnm(data)
    if data[:2] in (b"P1", b"P2", b"P3", b"P4", b"P7"):
        raise UnsupportedFormatError(f"{path}: only binary P5/P6 netpbm files are supported")
    raise UnsupportedFormatError(f"{path}: unrecognized image format")


def _decode_pnm(data: bytes) -> np.ndarray:
    magic = data[:2]
    pos = 2
    fields = []
    while len(fields) < 3:
        # header tokens are separated by whitespace; '#' comments run to end of line
        while pos < len(data) and data[pos] in _WS:
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            end = data.find(b"\n", pos)
            if end < 0:
                raise CorruptImageError("unterminated comment in header")
            pos = end + 1
            continue
        m = _INT.match(data, pos)
        if m is None:
            raise CorruptImageError("malformed header")
        fields.append(int(m.group()))
        pos = m.end()
    if pos >= len(data) or data[pos] not in _WS:
        raise CorruptImageError("missing whitespace after maxval")
    pos += 1

    width, height, maxval = fields
    if width < 1 or height < 1:
        raise CorruptImageError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedFormatError(f"maxval {maxval} not supported (must be 255)")

    channels = 3 if magic == b"P6" else 1
    need = width * height * channels
    payload = data[pos:pos + need]
    if len(payload) != need:
        raise CorruptImageError(
            f"payload has {len(payload)} bytes, header implies {need}")
    pixels = np.frombuffer(payload, dtype=np.uint8)
    if channels == 1:
        return promote_gray(pixels.reshape(height, width))
    return pixels.reshape(height, width, 3).copy()


def _decode_png(path: Path, data: bytes) -> np.ndarray:
    # Pillow silently narrows 16-bit RGB to 8 bits, so read the depth from IHDR
    if len(data) < 33 or data[12:16] != b"IHDR":
        raise CorruptImageError(f"{path}: missing IHDR chunk")
    width, height, depth = struct.unpack(">IIB", data[16:25])
    if depth == 16:
        raise UnsupportedFormatError(f"{path}: 16-bit PNG is not supported")
    try:
        with Image.open(path) as img:
            img.load()
            mode = img.mode
            if mode in ("L", "1", "LA"):
                gray = np.asarray(img.convert("L"), dtype=np.uint8)
                out = promote_gray(gray)
            elif mode in ("RGB", "RGBA", "P", "PA"):
                out = np.asarray(img.convert("RGB"), dtype=np.uint8).copy()
            else:
                raise UnsupportedFormatError(f"{path}: unsupported PNG mode {mode}")
    except (OSError, SyntaxError, struct.error) as exc:
        raise CorruptImageError(f"{path}: {exc}") from exc
    if out.shape[:2] != (height, width):
        raise CorruptImageError(f"{path}: decoded size does not match header")
    return out


# -- encoding ---------------------------------------------------------------

FORMATS = ("png", "ppm", "pgm")


def format_from_path(path: PathLike) -> str:
    ext = Path(path).suffix.lower().lstrip(".")
    if ext not in FORMATS:
        raise UnsupportedFormatError(f"cannot infer image format from {str(path)!r}")
    return ext


def save_image(bitmap, path: PathLike, format: str | None = None) -> None:
    """Write a bitmap losslessly.

    ``bitmap`` may be RGB ``(h, w, 3)`` or gray ``(h, w)``.  ``format`` is one
    of ``"png"``, ``"ppm"``, ``"pgm"``; when omitted it is taken from the file
    extension.  Gray data written as PPM is triplicated; RGB data cannot be
    written as PGM.
    """
    path = Path(path)
    fmt = (format or format_from_path(path)).lower()
    arr = np.asarray(bitmap)
    gray = arr.ndim == 2
    arr = as_gray(arr) if gray else as_bitmap(arr)

    if fmt == "png":
        img = Image.fromarray(np.ascontiguousarray(arr), mode="L" if gray else "RGB")
        with open(path, "wb") as fh:
            img.save(fh, format="PNG")
    elif fmt == "ppm":
        if gray:
            arr = promote_gray(arr)
        _write_pnm(path, b"P6", arr)
    elif fmt == "pgm":
        if not gray:
            raise ValueError("PGM output needs a single-channel bitmap")
        _write_pnm(path, b"P5", arr)
    else:
        raise UnsupportedFormatError(f"unknown output format {fmt!r}")


def _write_pnm(path: Path, magic: bytes, arr: np.ndarray) -> None:
    h, w = arr.shape[:2]
    header = magic + b"\n%d %d\n255\n" % (w, h)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(arr).tobytes())
