"""Built-in scalar fields for the command line and for experiments."""

from __future__ import annotations

import math
import random

from .complex import CellComplex, ScalarField, make_field, torus_vertex_id
from .errors import InputFormatError

# Random fields use dyadic values k / 2^20 with distinct k, so sums and
# differences of field values stay exact in binary64.
_DENOM_BITS = 20


def random_field(cx: CellComplex, rng: random.Random) -> ScalarField:
    ks = rng.sample(range(1 << _DENOM_BITS), cx.n_vertices)
    return make_field(cx, [k / float(1 << _DENOM_BITS) for k in ks])


def _torus_bump(cx: CellComplex, centers) -> ScalarField:
    shape = cx.torus_shape
    if shape is None:
        raise InputFormatError("bump fields are defined for torus grids only")
    nx, ny = shape
    vals = [0.0] * (nx * ny)
    for j in range(ny):
        for i in range(nx):
            total = 0.0
            for (cx0, cy0, height, width) in centers:
                dx = min(abs(i - cx0), nx - abs(i - cx0))
                dy = min(abs(j - cy0), ny - abs(j - cy0))
                total += height * math.exp(-(dx * dx + dy * dy) / (2.0 * width * width))
            vals[torus_vertex_id(cx, i, j)] = total
    return make_field(cx, vals)


def bump_field(cx: CellComplex) -> ScalarField:
    """One smooth bump centered on the grid."""
    nx, ny = cx.torus_shape if cx.torus_shape else (0, 0)
    return _torus_bump(cx, [(nx / 2.0, ny / 2.0, 1.0, max(nx, ny) / 4.0)])


def twobump_field(cx: CellComplex) -> ScalarField:
    """Two bumps of different heights on opposite quarters of the grid."""
    nx, ny = cx.torus_shape if cx.torus_shape else (0, 0)
    return _torus_bump(
        cx,
        [
            (nx / 4.0, ny / 4.0, 1.0, max(nx, ny) / 6.0),
            (3.0 * nx / 4.0, 3.0 * ny / 4.0, 0.6, max(nx, ny) / 6.0),
        ],
    )


def translate_field(fld: ScalarField, dx: int, dy: int) -> ScalarField:
    """Pull the field back along a grid translation of the torus."""
    cx = fld.complex
    shape = cx.torus_shape
    if shape is None:
        raise InputFormatError("translate requires a torus-grid complex")
    nx, ny = shape
    vals = [0.0] * (nx * ny)
    for j in range(ny):
        for i in range(nx):
            vals[torus_vertex_id(cx, i, j)] = fld.vertex_values[
                torus_vertex_id(cx, i - dx, j - dy)
            ]
    return make_field(cx, vals)


def expression_field(cx: CellComplex, name: str) -> ScalarField:
    """Resolve an ``expr:NAME`` field: bump, twobump, or random:SEED."""
    if name == "bump":
        return bump_field(cx)
    if name == "twobump":
        return twobump_field(cx)
    if name.startswith("random:"):
        try:
            seed = int(name.split(":", 1)[1])
        except ValueError:
            raise InputFormatError(f"bad random field seed in {name!r}") from None
        return random_field(cx, random.Random(seed))
    raise InputFormatError(f"unknown field expression {name!r}")
