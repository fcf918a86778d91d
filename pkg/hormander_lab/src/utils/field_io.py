"""HLAB1 binary field dumps.

Header: magic b"HLAB1", u32 dim, u32 M, f64 L, u8 space tag (0 physical,
1 frequency); body: little-endian interleaved (re, im) f64 pairs, row-major.
"""

import struct
from pathlib import Path

import numpy as np

from hormander_lab.src.models.fields import Grid, SampledField
from hormander_lab.src.utils.errors import GridError

MAGIC = b"HLAB1"
_HEADER = struct.Struct("<5sIIdB")
_SPACE_TAGS = {"physical": 0, "frequency": 1}


def encode_field(f: SampledField) -> bytes:
    header = _HEADER.pack(
        MAGIC,
        f.grid.dim,
        f.grid.points_per_axis,
        f.grid.half_width,
        _SPACE_TAGS[f.space],
    )
    return header + np.ascontiguousarray(f.values, dtype="<c16").tobytes()


def decode_field(data: bytes) -> SampledField:
    if len(data) < _HEADER.size:
        raise GridError("truncated field dump header")
    magic, dim, m, half_width, tag = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise GridError(f"not an HLAB1 dump (magic {magic!r})")
    spaces = {v: k for k, v in _SPACE_TAGS.items()}
    if tag not in spaces:
        raise GridError(f"unknown space tag {tag}")
    grid = Grid(dim=dim, half_width=half_width, points_per_axis=m)
    itemsize = np.dtype("<c16").itemsize
    if (len(data) - _HEADER.size) % itemsize:
        raise GridError(f"dump body is not a whole number of {itemsize}-byte samples")
    body = np.frombuffer(data, dtype="<c16", offset=_HEADER.size)
    if body.size != grid.samples:
        raise GridError(f"dump holds {body.size} samples, header announces {grid.samples}")
    return SampledField(grid=grid, values=body.reshape(grid.shape).copy(), space=spaces[tag])


def dump_field(f: SampledField, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_field(f))
    return path


def load_field(path: str | Path) -> SampledField:
    return decode_field(Path(path).read_bytes())
