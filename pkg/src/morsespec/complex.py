"""Cell complexes and scalar fields.

Two builders are provided: a cubical grid on the flat 2-torus and the closure
of a list of maximal simplices.  Both produce :class:`CellComplex` objects
whose incidence data is purely combinatorial and taken mod 2 (no orientation
signs are stored).

A :class:`ScalarField` assigns one real value per vertex.  Values extend to
higher cells by taking the maximum over the cell's vertices, so sublevel sets
of the extension are subcomplexes.  Ties are resolved by the deterministic
total order (value, dimension, id), which makes every field behave like an
injective one.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    ComplexBuildError,
    ComplexMismatchError,
    FieldError,
    InputFormatError,
)


@dataclass(frozen=True)
class Cell:
    """One cell: dense id, dimension, codimension-1 face ids, vertex ids."""

    id: int
    dim: int
    faces: tuple[int, ...]
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class CellComplex:
    """A finite regular cell complex with mod-2 incidence.

    cells are ordered by id (ids are dense, 0..len-1).  ``descriptor`` records
    provenance: ``"torus:NX:NY"`` for grid builds, ``"simplicial"`` otherwise.
    """

    cells: tuple[Cell, ...]
    top_dim: int
    descriptor: str
    _cofaces: tuple[tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self._cofaces:
            cof: list[list[int]] = [[] for _ in self.cells]
            for c in self.cells:
                for f in c.faces:
                    cof[f].append(c.id)
            object.__setattr__(self, "_cofaces", tuple(tuple(x) for x in cof))

    def __len__(self) -> int:
        return len(self.cells)

    def cofaces(self, cell_id: int) -> tuple[int, ...]:
        return self._cofaces[cell_id]

    def cells_of_dim(self, dim: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == dim]

    @property
    def n_vertices(self) -> int:
        return sum(1 for c in self.cells if c.dim == 0)

    def euler_characteristic(self) -> int:
        chi = 0
        for c in self.cells:
            chi += 1 if c.dim % 2 == 0 else -1
        return chi

    @property
    def torus_shape(self) -> tuple[int, int] | None:
        if self.descriptor.startswith("torus:"):
            _, nx, ny = self.descriptor.split(":")
            return int(nx), int(ny)
        return None

    def validate(self) -> None:
        """Check the structural invariants; raise ComplexBuildError on failure.

        Checks: dense ids, duplicate-free face lists, faces of a d-cell have
        dimension d-1, and every (d, d-2) cell pair has an even number of
        (d-1)-cells between them (the mod-2 boundary-of-boundary condition).
        """
        for i, c in enumerate(self.cells):
            if c.id != i:
                raise ComplexBuildError(f"cell ids not dense at position {i}")
            if len(set(c.faces)) != len(c.faces):
                raise ComplexBuildError(f"duplicate face in cell {c.id}")
            for f in c.faces:
                if self.cells[f].dim != c.dim - 1:
                    raise ComplexBuildError(
                        f"cell {c.id} (dim {c.dim}) lists face {f} "
                        f"of dim {self.cells[f].dim}"
                    )
            if c.dim >= 2:
                counts: dict[int, int] = {}
                for f in c.faces:
                    for g in self.cells[f].faces:
                        counts[g] = counts.get(g, 0) + 1
                odd = [g for g, n in counts.items() if n % 2]
                if odd:
                    raise ComplexBuildError(
                        f"odd face-of-face incidence between cell {c.id} and {odd}"
                    )


def build_torus_grid(nx: int, ny: int) -> CellComplex:
    """Cubical complex of the flat 2-torus with an nx-by-ny vertex grid.

    Id layout (row-major, i runs over x in [0,nx), j over y in [0,ny)):

    * vertex  v(i,j)            id = j*nx + i
    * h-edge  v(i,j)-v(i+1,j)   id = V + j*nx + i
    * v-edge  v(i,j)-v(i,j+1)   id = V + E_h + j*nx + i
    * square with corner v(i,j) id = V + 2*E_h + j*nx + i

    All index arithmetic wraps around, so the complex is closed:
    nx*ny vertices, 2*nx*ny edges, nx*ny squares.
    """
    if nx < 2 or ny < 2:
        raise ComplexBuildError(f"torus grid needs nx, ny >= 2, got ({nx}, {ny})")
    nv = nx * ny
    vid = lambda i, j: (j % ny) * nx + (i % nx)
    hid = lambda i, j: nv + (j % ny) * nx + (i % nx)
    uid = lambda i, j: 2 * nv + (j % ny) * nx + (i % nx)
    sid = lambda i, j: 3 * nv + (j % ny) * nx + (i % nx)

    cells: list[Cell] = []
    for j in range(ny):
        for i in range(nx):
            v = vid(i, j)
            cells.append(Cell(v, 0, (), (v,)))
    for j in range(ny):
        for i in range(nx):
            ends = tuple(sorted({vid(i, j), vid(i + 1, j)}))
            cells.append(Cell(hid(i, j), 1, ends, ends))
    for j in range(ny):
        for i in range(nx):
            ends = tuple(sorted({vid(i, j), vid(i, j + 1)}))
            cells.append(Cell(uid(i, j), 1, ends, ends))
    for j in range(ny):
        for i in range(nx):
            faces = (hid(i, j), hid(i, j + 1), uid(i, j), uid(i + 1, j))
            corners = tuple(
                sorted({vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)})
            )
            cells.append(Cell(sid(i, j), 2, faces, corners))
    return CellComplex(tuple(cells), 2, f"torus:{nx}:{ny}")


def torus_vertex_id(cx: CellComplex, i: int, j: int) -> int:
    nx, ny = cx.torus_shape
    return (j % ny) * nx + (i % nx)


def torus_h_edge_id(cx: CellComplex, i: int, j: int) -> int:
    nx, ny = cx.torus_shape
    return nx * ny + (j % ny) * nx + (i % nx)


def torus_v_edge_id(cx: CellComplex, i: int, j: int) -> int:
    nx, ny = cx.torus_shape
    return 2 * nx * ny + (j % ny) * nx + (i % nx)


def build_from_simplicial(spec: list[list[int]]) -> CellComplex:
    """Close a list of maximal simplices under faces.

    ``spec`` lists each maximal simplex as a collection of vertex labels
    (arbitrary ints).  Labels are remapped to dense ids with the 0-cells
    first, ordered by label; higher cells follow dimension by dimension in
    lexicographic vertex order.
    """
    if not spec:
        raise ComplexBuildError("empty simplex list")
    simplices: set[tuple[int, ...]] = set()
    for s in spec:
        vs = tuple(s)
        if len(set(vs)) != len(vs):
            raise ComplexBuildError(f"simplex {list(s)} repeats a vertex")
        simplices.add(tuple(sorted(vs)))
    # close under subsets
    stack = list(simplices)
    while stack:
        s = stack.pop()
        if len(s) == 1:
            continue
        for k in range(len(s)):
            f = s[:k] + s[k + 1 :]
            if f not in simplices:
                simplices.add(f)
                stack.append(f)

    labels = sorted({v for s in simplices for v in s})
    vmap = {lab: i for i, lab in enumerate(labels)}
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in simplices:
        mapped = tuple(sorted(vmap[v] for v in s))
        by_dim.setdefault(len(s) - 1, []).append(mapped)

    ids: dict[tuple[int, ...], int] = {}
    cells: list[Cell] = []
    top = max(by_dim)
    for d in range(top + 1):
        for s in sorted(by_dim.get(d, [])):
            cid = len(cells)
            ids[s] = cid
            if d == 0:
                cells.append(Cell(cid, 0, (), s))
            else:
                faces = tuple(ids[s[:k] + s[k + 1 :]] for k in range(len(s)))
                cells.append(Cell(cid, d, faces, s))
    return CellComplex(tuple(cells), top, "simplicial")


@dataclass(frozen=True)
class ScalarField:
    """Vertex values with max-extension to cells and a strict total order.

    ``cell_values[c]`` is the maximum vertex value over cell c, and
    ``order_rank[c]`` is the position of c in the lexicographic order
    (cell value, dimension, id).  Faces never rank above their cofaces.
    """

    complex: CellComplex
    vertex_values: tuple[float, ...]
    cell_values: tuple[float, ...]
    order_rank: tuple[int, ...]

    def value(self, cell_id: int) -> float:
        return self.cell_values[cell_id]

    def order_key(self, cell_id: int) -> tuple[float, int, int]:
        c = self.complex.cells[cell_id]
        return (self.cell_values[cell_id], c.dim, cell_id)

    def precedes(self, a: int, b: int) -> bool:
        return self.order_rank[a] < self.order_rank[b]

    def cells_in_order(self) -> list[int]:
        order = [0] * len(self.complex)
        for cid, r in enumerate(self.order_rank):
            order[r] = cid
        return order


def make_field(cx: CellComplex, values) -> ScalarField:
    """Build the scalar field with lower-star extension over ``cx``.

    ``values`` gives one finite real per 0-cell, in id order.
    """
    vals = [float(v) for v in values]
    if len(vals) != cx.n_vertices:
        raise FieldError(
            f"expected {cx.n_vertices} vertex values, got {len(vals)}"
        )
    for i, v in enumerate(vals):
        if not math.isfinite(v):
            raise FieldError(f"non-finite value {v!r} at vertex {i}")
    cell_values = tuple(max(vals[u] for u in c.vertices) for c in cx.cells)
    by_order = sorted(
        range(len(cx)), key=lambda cid: (cell_values[cid], cx.cells[cid].dim, cid)
    )
    rank = [0] * len(cx)
    for r, cid in enumerate(by_order):
        rank[cid] = r
    return ScalarField(cx, tuple(vals), cell_values, tuple(rank))


def c0_distance(f: ScalarField, g: ScalarField) -> float:
    """Max over vertices of |f - g| (the sup norm of the difference)."""
    if f.complex is not g.complex:
        raise ComplexMismatchError("fields live on different complexes")
    return max(
        abs(a - b) for a, b in zip(f.vertex_values, g.vertex_values)
    )


# ---------------------------------------------------------------------------
# text input formats


def load_simplicial(path: str | Path) -> CellComplex:
    """Read maximal simplices, one per line, whitespace-separated vertex ids."""
    spec = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            spec.append([int(tok) for tok in line.split()])
        except ValueError:
            raise InputFormatError(f"bad vertex id in {line!r}", lineno) from None
    if not spec:
        raise InputFormatError("no simplices in file")
    try:
        return build_from_simplicial(spec)
    except ComplexBuildError as e:
        raise InputFormatError(str(e)) from e


def load_field(path: str | Path, cx: CellComplex) -> ScalarField:
    """Read vertex values for ``cx`` from a text file.

    Plain format: one real per vertex in id order (any whitespace layout).
    For torus grids a CSV of shape ny rows x nx columns is also accepted;
    row j column i is the value at grid vertex (i, j).
    """
    text = Path(path).read_text()
    if "," in text:
        shape = cx.torus_shape
        if shape is None:
            raise InputFormatError("CSV grid input requires a torus-grid complex")
        nx, ny = shape
        rows = [r for r in csv.reader(text.splitlines()) if any(t.strip() for t in r)]
        if len(rows) != ny:
            raise InputFormatError(f"expected {ny} CSV rows, got {len(rows)}")
        vals = [0.0] * (nx * ny)
        for j, row in enumerate(rows):
            cells = [t for t in row if t.strip()]
            if len(cells) != nx:
                raise InputFormatError(f"expected {nx} columns, got {len(cells)}", j + 1)
            for i, tok in enumerate(cells):
                try:
                    vals[j * nx + i] = float(tok)
                except ValueError:
                    raise InputFormatError(f"bad number {tok!r}", j + 1) from None
        return make_field(cx, vals)
    toks = text.split()
    try:
        vals = [float(t) for t in toks]
    except ValueError as e:
        raise InputFormatError(f"bad number in field file: {e}") from None
    try:
        return make_field(cx, vals)
    except FieldError as e:
        raise InputFormatError(str(e)) from e
