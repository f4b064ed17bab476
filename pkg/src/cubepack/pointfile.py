"""Text point files.

Format::

    cubepack v1 dim=<n> count=<N>
    <denom_exp> <num_1> ... <num_n>
    ...

Each point is written in normalized form, so the file is canonical for a
given point order.
"""

from __future__ import annotations

import io
import re
from pathlib import Path

import numpy as np

from .errors import InvalidParameter
from .packing import PointSet, PointStream, coord_dtype

HEADER_RE = re.compile(r"^cubepack v1 dim=(\d+) count=(\d+)$")


def _write_block(fh, block: PointSet) -> None:
    exps, nums = block.normalized_arrays()
    table = np.column_stack([exps, nums])
    buf = io.StringIO()
    np.savetxt(buf, table, fmt="%d", delimiter=" ")
    fh.write(buf.getvalue())


def write_points(path: str | Path, points: PointSet | PointStream) -> int:
    """Write points and return how many were written."""
    blocks = points.blocks() if isinstance(points, PointStream) else [points]
    with open(path, "w") as fh:
        fh.write(f"cubepack v1 dim={points.dim} count={len(points)}\n")
        written = 0
        for b in blocks:
            _write_block(fh, b)
            written += len(b)
    if written != len(points):
        raise InvalidParameter(f"wrote {written} points, header says {len(points)}")
    return written


def read_points(path: str | Path) -> PointSet:
    with open(path) as fh:
        header = fh.readline().strip()
        body = fh.read()
    m = HEADER_RE.match(header)
    if not m:
        raise InvalidParameter(f"not a cubepack v1 file: {header!r}")
    dim, count = int(m.group(1)), int(m.group(2))
    values = np.array(body.split(), dtype=np.int64) if body.strip() else np.zeros(0, np.int64)
    if values.size != count * (dim + 1):
        raise InvalidParameter(f"expected {count} rows of {dim + 1} integers, got {values.size} values")
    table = values.reshape(count, dim + 1)
    exps, nums = table[:, 0], table[:, 1:]
    if count and (exps.min() < 0 or nums.min() < 0 or np.any(nums > (np.int64(1) << exps)[:, None])):
        raise InvalidParameter("coordinate outside [0, 1] or negative exponent")
    e = int(exps.max()) if count else 0
    dt = coord_dtype(e)
    coords = (nums << (e - exps)[:, None]).astype(dt)
    return PointSet(dim, e, coords)
