"""Weight systems and circle-valued Morse data.

A weight system assigns a nonzero integer to every generator and encodes a
circle-valued Morse function on the complex: the vertex maps to the base
point and each generator loop wraps the circle weight-many times.  The
function extends over a square exactly when the boundary weights sum to
zero and opposite letters carry negated signed weights (the affine
condition); corner heights then have a unique minimum and maximum at
opposite corners.

From an admissible weight system we read off:

* ascending / descending links (one min- resp. max-corner edge per square),
  whose tree property certifies a free-by-cyclic splitting;
* the fiber graph over the base point, built explicitly with subdivision
  points on the edges and one arc per integer level crossing each square;
* the kernel rank 1 - chi(fiber) when both links are trees and the fiber
  is connected.

The integer lattice of zero-sum weight systems is computed exactly (Smith
diagonalization over the integers, then Hermite reduction of the basis).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .complexes import Square, SquareComplex
from .errors import InputError
from .links import CornerEdge, End, square_corners
from .words import generator_stem, signed_weight

WeightSystem = dict[str, int]


def parse_weight_spec(spec: str, c: SquareComplex) -> WeightSystem:
    """Parse ``"a=1,b=2,a0=5"``: stems assign every generator sharing the
    stem, exact names override."""
    stem_values: dict[str, int] = {}
    exact_values: dict[str, int] = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        try:
            number = int(value.strip())
        except ValueError:
            raise InputError(f"bad weight {item!r}") from None
        if key in c.generators:
            exact_values[key] = number
        elif key in c.stems():
            stem_values[key] = number
        else:
            raise InputError(f"{key!r} is neither a generator nor a stem of the complex")
    ws: WeightSystem = {}
    for g in c.generators:
        if g in exact_values:
            ws[g] = exact_values[g]
        elif generator_stem(g) in stem_values:
            ws[g] = stem_values[generator_stem(g)]
        else:
            raise InputError(f"no weight given for generator {g!r}")
    return ws


def unit_weights(c: SquareComplex) -> WeightSystem:
    return {g: 1 for g in c.generators}


@dataclass(frozen=True)
class CornerHeights:
    square: int
    heights: tuple[int, int, int, int]  # relative to corner 0
    min_corner: int
    max_corner: int

    @property
    def span(self) -> int:
        return self.heights[self.max_corner] - self.heights[self.min_corner]


def corner_heights(sq: Square, ws: WeightSystem) -> CornerHeights:
    letters = sq.boundary.letters
    w = [s * ws[g] for g, s in letters]
    heights = (0, w[0], w[0] + w[1], w[0] + w[1] + w[2])
    min_corner = min(range(4), key=lambda i: heights[i])
    max_corner = max(range(4), key=lambda i: heights[i])
    # admissibility puts min and max at unique, opposite corners
    assert sorted(heights)[0] < sorted(heights)[1] and sorted(heights)[2] < sorted(heights)[3], sq
    assert (max_corner - min_corner) % 4 == 2, sq
    return CornerHeights(sq.index, heights, min_corner, max_corner)


@dataclass
class AdmissibilityReport:
    admissible: bool
    problems: list[str]
    heights: list[CornerHeights] | None


def check_admissible(c: SquareComplex, ws: WeightSystem) -> AdmissibilityReport:
    problems = []
    for g in c.generators:
        if g not in ws:
            problems.append(f"no weight for generator {g}")
        elif ws[g] == 0:
            problems.append(f"zero weight on generator {g}")
    if not problems:
        for sq in c.squares:
            total = signed_weight(sq.boundary, ws)
            if total != 0:
                problems.append(f"square {sq.index}: boundary weight sum {total} != 0")
                continue
            letters = sq.boundary.letters
            w = [s * ws[g] for g, s in letters]
            if w[0] + w[2] != 0:
                problems.append(
                    f"square {sq.index}: opposite letters carry weights {w[0]} and {w[2]}"
                    " (no affine extension)"
                )
    if problems:
        return AdmissibilityReport(False, problems, None)
    heights = [corner_heights(sq, ws) for sq in c.squares]
    return AdmissibilityReport(True, [], heights)


def require_admissible(c: SquareComplex, ws: WeightSystem) -> list[CornerHeights]:
    report = check_admissible(c, ws)
    if not report.admissible:
        raise InputError("inadmissible weight system: " + "; ".join(report.problems))
    assert report.heights is not None
    return report.heights


@dataclass
class DirectionalLink:
    side: str  # "ascending" or "descending"
    vertices: list[End]
    edges: list[CornerEdge]
    is_tree: bool
    components: int


def _graph_stats(vertices: list[End], edges: list[CornerEdge]) -> tuple[bool, int]:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    acyclic = True
    for e in edges:
        a, b = e.ends
        ra, rb = find(a), find(b)
        if ra == rb:
            acyclic = False
        else:
            parent[ra] = rb
    components = len({find(v) for v in vertices})
    return (acyclic and components == 1), components


def directional_links(c: SquareComplex, ws: WeightSystem) -> tuple[DirectionalLink, DirectionalLink]:
    """Ascending and descending links of the vertex.

    A direction-end ascends when moving into it increases the Morse height:
    (g, start) for positive weight, (g, end) for negative.  Each square
    contributes its min-corner edge to the ascending link and its max-corner
    edge to the descending link.
    """
    heights = require_admissible(c, ws)
    asc_vertices = [(g, "-") if ws[g] > 0 else (g, "+") for g in c.generators]
    desc_vertices = [(g, "+") if ws[g] > 0 else (g, "-") for g in c.generators]
    asc_edges, desc_edges = [], []
    for sq, h in zip(c.squares, heights):
        corners = square_corners(sq)
        asc_edges.append(corners[h.min_corner])
        desc_edges.append(corners[h.max_corner])
    for e in asc_edges:
        assert set(e.ends) <= set(asc_vertices), e
    for e in desc_edges:
        assert set(e.ends) <= set(desc_vertices), e
    asc_tree, asc_comp = _graph_stats(asc_vertices, asc_edges)
    desc_tree, desc_comp = _graph_stats(desc_vertices, desc_edges)
    return (
        DirectionalLink("ascending", asc_vertices, asc_edges, asc_tree, asc_comp),
        DirectionalLink("descending", desc_vertices, desc_edges, desc_tree, desc_comp),
    )


BASE_VERTEX = ("*", 0)  # the unique vertex of the complex, as a fiber vertex

FiberVertex = tuple[str, int]


@dataclass
class FiberGraph:
    vertices: list[FiberVertex]
    edges: list[tuple[FiberVertex, FiberVertex, int, int]]  # (u, v, square, level)
    chi: int
    connected: bool
    components: int


def _point_on_path(path, level: int) -> FiberVertex:
    """Locate the fiber point at the given height on a monotone two-letter
    boundary path.  ``path`` lists (letter, from_height, to_height)."""
    (l1, a1, b1), (l2, a2, b2) = path
    if level == b1:
        return BASE_VERTEX  # the intermediate corner is the vertex
    if level < b1:
        (g, s), ha, hb = l1, a1, b1
    else:
        (g, s), ha, hb = l2, a2, b2
    g_weight = s * (hb - ha)  # the weight of g itself
    sign = 1 if g_weight > 0 else -1
    # index the point along the oriented edge g: (g, i) sits at height
    # i * sign(weight) relative to the start of g
    if s > 0:
        i = (level - ha) * sign
    else:
        i = (level - ha + g_weight) * sign
    assert 1 <= i <= abs(g_weight) - 1, ((g, s), level, i)
    return (g, i)


def fiber_graph(c: SquareComplex, ws: WeightSystem) -> FiberGraph:
    """The preimage of the base point: one vertex per subdivision point of
    the edges plus the vertex itself, and one arc per integer level strictly
    between each square's min and max corner heights."""
    heights = require_admissible(c, ws)
    vertices: list[FiberVertex] = [BASE_VERTEX]
    for g in c.generators:
        for i in range(1, abs(ws[g])):
            vertices.append((g, i))
    edges = []
    for sq, h in zip(c.squares, heights):
        letters = sq.boundary.letters
        m = h.min_corner
        up = [
            (letters[m], h.heights[m], h.heights[(m + 1) % 4]),
            (letters[(m + 1) % 4], h.heights[(m + 1) % 4], h.heights[h.max_corner]),
        ]
        down = [
            ((letters[(m + 3) % 4][0], -letters[(m + 3) % 4][1]), h.heights[m], h.heights[(m + 3) % 4]),
            ((letters[(m + 2) % 4][0], -letters[(m + 2) % 4][1]), h.heights[(m + 3) % 4], h.heights[h.max_corner]),
        ]
        for level in range(h.heights[m] + 1, h.heights[h.max_corner]):
            edges.append((_point_on_path(up, level), _point_on_path(down, level), sq.index, level))

    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v, _, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    components = len({find(v) for v in vertices})
    chi = len(vertices) - len(edges)
    return FiberGraph(vertices, edges, chi, components == 1, components)


def kernel_rank(c: SquareComplex, ws: WeightSystem) -> int:
    """Rank of the free kernel of the weight homomorphism: 1 - chi(fiber).

    Requires an admissible weight system whose ascending and descending
    links are trees and whose fiber is connected; failures name the broken
    condition.
    """
    heights = require_admissible(c, ws)
    del heights
    asc, desc = directional_links(c, ws)
    if not asc.is_tree:
        raise InputError(f"ascending link is not a tree ({asc.components} components)")
    if not desc.is_tree:
        raise InputError(f"descending link is not a tree ({desc.components} components)")
    fiber = fiber_graph(c, ws)
    if not fiber.connected:
        raise InputError(f"fiber is disconnected ({fiber.components} components)")
    return 1 - fiber.chi


# ----------------------------------------------------------------------
# integer lattice of zero-sum weight systems


def _kernel_basis_int(rows: list[list[int]], n: int) -> list[list[int]]:
    """Basis of the integer kernel of the matrix with the given rows.

    Diagonalizes A*V by integer row and column operations, tracking V;
    kernel = columns of V hitting zero diagonal entries.  The result is a
    saturated lattice (every integer solution is an integer combination).
    """
    a = [row[:] for row in rows]
    m = len(a)
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # smallest-magnitude pivot in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            swap_cols(t, pj)
        for i in range(t + 1, m):
            q = a[i][t] // a[t][t]
            if q:
                for j in range(n):
                    a[i][j] -= q * a[t][j]
        for j in range(t + 1, n):
            q = a[t][j] // a[t][t]
            if q:
                add_col(j, t, q)
        if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            continue  # remainders survive; repick a (strictly smaller) pivot
        t += 1

    basis = []
    for j in range(t, n):
        assert all(row[j] == 0 for row in a), "diagonalization left a nonzero column"
        basis.append([v[i][j] for i in range(n)])
    return _hermite_rows(basis, n)


def _hermite_rows(rows: list[list[int]], n: int) -> list[list[int]]:
    """Row-style Hermite normal form: canonical basis for the row lattice."""
    mat = [row[:] for row in rows if any(row)]
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(r + 1, len(mat)):
            while mat[i][col] != 0:
                q = mat[r][col] // mat[i][col]
                mat[r] = [x - q * y for x, y in zip(mat[r], mat[i])]
                mat[r], mat[i] = mat[i], mat[r]
        if mat[r][col] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            q = mat[i][col] // mat[r][col]
            if q:
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[r])]
        r += 1
    return [row for row in mat[:r]]


def weight_lattice(c: SquareComplex) -> list[WeightSystem]:
    """Basis of the lattice of integer weight systems with zero sum on every
    square boundary (zero weights allowed here; admissibility is separate)."""
    index = {g: i for i, g in enumerate(c.generators)}
    rows = []
    for sq in c.squares:
        row = [0] * len(c.generators)
        for g, s in sq.boundary:
            row[index[g]] += s
        rows.append(row)
    if not rows:
        rows = [[0] * len(c.generators)]
    basis = _kernel_basis_int(rows, len(c.generators))
    return [{g: vec[index[g]] for g in c.generators} for vec in basis]


def _combine_basis(basis: list[WeightSystem], coords: tuple[int, ...], c: SquareComplex) -> WeightSystem:
    return {g: sum(k * b[g] for k, b in zip(coords, basis)) for g in c.generators}


def fibering_scan(c: SquareComplex, bound: int) -> list[dict]:
    """One row per lattice vector with coordinates in [-bound, bound]
    (zero-weight vectors excluded), in lexicographic coordinate order."""
    if bound < 1:
        raise InputError("scan bound must be >= 1")
    basis = weight_lattice(c)
    rows = []
    for coords in product(range(-bound, bound + 1), repeat=len(basis)):
        if all(k == 0 for k in coords):
            continue
        ws = _combine_basis(basis, coords, c)
        if any(w == 0 for w in ws.values()):
            continue
        row: dict = {"coords": list(coords), "weights": dict(ws)}
        report = check_admissible(c, ws)
        row["admissible"] = report.admissible
        row["primitive"] = gcd(*coords) == 1
        if not report.admissible:
            row.update({"asc_tree": None, "desc_tree": None, "chi": None,
                        "components": None, "rank": None})
            rows.append(row)
            continue
        asc, desc = directional_links(c, ws)
        fiber = fiber_graph(c, ws)
        row["asc_tree"] = asc.is_tree
        row["desc_tree"] = desc.is_tree
        row["chi"] = fiber.chi  # direct count from the explicit fiber graph
        row["components"] = fiber.components
        if asc.is_tree and desc.is_tree and fiber.connected:
            row["rank"] = 1 - fiber.chi
        else:
            row["rank"] = None
            if not fiber.connected:
                row["note"] = (
                    f"disconnected fiber ({fiber.components} components);"
                    " chi is the direct count, no rank claim"
                )
        rows.append(row)
    return rows


def infinite_fibering_verdict(c: SquareComplex) -> dict:
    """Does the complex fiber in infinitely many ways?

    YES when the weight lattice has rank >= 2 and some sign pattern
    (orthant) admits weight systems whose ascending and descending links
    are trees.  Tree-ness depends only on the signs, so one representative
    per orthant decides the whole orthant.
    """
    basis = weight_lattice(c)
    rank = len(basis)
    out: dict = {"lattice_rank": rank, "infinite_fibering": False, "orthant": None}
    if rank < 2:
        out["reason"] = "weight lattice has rank < 2"
        return out
    # the affine condition is linear, so it holds lattice-wide iff it holds
    # on every basis vector (zero weights are fine for this check)
    for sq in c.squares:
        letters = sq.boundary.letters
        for b in basis:
            w = [s * b[g] for g, s in letters]
            if w[0] + w[2] != 0:
                out["reason"] = f"square {sq.index} admits no affine extension on the lattice"
                return out
    for signs in product((1, -1), repeat=rank):
        representative = None
        for coeffs in product(range(1, 4), repeat=rank):
            ws = _combine_basis(basis, tuple(s * k for s, k in zip(signs, coeffs)), c)
            if all(w != 0 for w in ws.values()):
                representative = ws
                break
        if representative is None:
            continue
        if not check_admissible(c, representative).admissible:
            continue
        asc, desc = directional_links(c, representative)
        if asc.is_tree and desc.is_tree:
            out["infinite_fibering"] = True
            out["orthant"] = ["+" if s > 0 else "-" for s in signs]
            return out
    out["reason"] = "no orthant yields tree ascending and descending links"
    return out
