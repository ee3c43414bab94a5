"""Binary dump of raw dipole fields.

Layout, little-endian::

    b"CDMF"  u32 version=1  u32 width  u32 height  u32 channels
    then for each channel: px, py, P planes of float64, row-major
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dipole import DipoleField, magnitude_field
from .errors import CorruptDumpError

MAGIC = b"CDMF"
VERSION = 1
_HEADER = struct.Struct("<4sIIII")
_F64 = np.dtype("<f8")


@dataclass(frozen=True)
class FieldDump:
    """Planes read back from a dump: ``planes[c]`` is ``(px, py, P)``."""

    width: int
    height: int
    planes: list[tuple[np.ndarray, np.ndarray, np.ndarray]]

    @property
    def channels(self) -> int:
        return len(self.planes)


def write_dump(fields: Sequence[DipoleField], path) -> None:
    if not fields:
        raise ValueError("nothing to dump")
    h, w = fields[0].shape
    if h == 0 or w == 0:
        raise ValueError("cannot dump empty fields")
    for d in fields:
        if d.shape != (h, w):
            raise ValueError("all channels must share one shape")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, w, h, len(fields)))
        for d in fields:
            for plane in (d.px, d.py, magnitude_field(d)):
                fh.write(np.ascontiguousarray(plane, dtype=_F64).tobytes())


def read_dump(path) -> FieldDump:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise CorruptDumpError("file shorter than header")
    magic, version, w, h, channels = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise CorruptDumpError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptDumpError(f"unsupported dump version {version}")
    expected = _HEADER.size + channels * 3 * w * h * _F64.itemsize
    if len(data) != expected:
        raise CorruptDumpError(f"expected {expected} bytes, found {len(data)}")
    flat = np.frombuffer(data, dtype=_F64, offset=_HEADER.size)
    cube = flat.reshape(channels, 3, h, w).astype(np.float64)
    planes = [(cube[c, 0], cube[c, 1], cube[c, 2]) for c in range(channels)]
    return FieldDump(w, h, planes)
