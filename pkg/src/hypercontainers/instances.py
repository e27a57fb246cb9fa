"""Builders for the application hypergraphs.

Every builder returns a Hypergraph on a dense vertex set [v], with the
vertex labelling documented here so callers can decode ids:

* ap_hypergraph, poly_ap_hypergraph: vertex i is the integer i.
* homothetic_hypergraph: point (x_1, ..., x_l) in the grid [n]^l gets
  id 1 + sum (x_t - 1) * n^(l - t)  (row-major).
* copies_hypergraph: the t-subsets of [n] in lexicographic order get
  ids 1, 2, ...; subset_labels recovers the subset for an id.
* blowup_copies_hypergraph: edge number j (0-based, edges of the
  pattern in sorted order) owns the block of ids j*n^2 + (a-1)*n + b
  for a pair (a, b) in [n]^2.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence, Union

from .errors import InputError, LimitError, PreconditionError
from .hypergraph import Hypergraph, ids_from

Point = Union[int, Sequence[int]]


def ap_hypergraph(n: int, k: int) -> Hypergraph:
    """Arithmetic progressions of length k inside [n], as a k-uniform
    hypergraph on [n].  Independent sets are exactly the k-AP-free sets."""
    if k < 3:
        raise InputError(f"progression length must be >= 3, got {k}")
    if n < k:
        raise InputError(f"need n >= {k} to fit a progression, got {n}")
    edges = []
    d = 1
    while 1 + (k - 1) * d <= n:
        for a in range(1, n - (k - 1) * d + 1):
            edges.append(tuple(a + i * d for i in range(k)))
        d += 1
    return Hypergraph(k, n, edges)


def poly_ap_hypergraph(n: int, k: int, r: int) -> Hypergraph:
    """Progressions a, a + d^r, ..., a + k * d^r inside [n] with d >= 1,
    as a (k+1)-uniform hypergraph on [n]."""
    if k < 1:
        raise InputError(f"progression step count must be >= 1, got {k}")
    if r < 1:
        raise InputError(f"power must be >= 1, got {r}")
    if n < k + 1:
        raise InputError(f"need n >= {k + 1} to fit a progression, got {n}")
    edges = []
    d = 1
    while 1 + k * d**r <= n:
        gap = d**r
        for a in range(1, n - k * gap + 1):
            edges.append(tuple(a + i * gap for i in range(k + 1)))
        d += 1
    return Hypergraph(k + 1, n, edges)


def _normalize_pattern(pattern: Iterable[Point]) -> list[tuple[int, ...]]:
    points = []
    for point in pattern:
        if isinstance(point, int):
            point = (point,)
        else:
            point = tuple(int(x) for x in point)
        points.append(point)
    if len(points) < 2:
        raise InputError("pattern needs at least two points")
    dims = {len(pt) for pt in points}
    if len(dims) != 1:
        raise InputError("pattern points have mixed dimensions")
    if len(set(points)) != len(points):
        raise InputError("pattern points must be distinct")
    return points


def grid_id(n: int, point: Sequence[int]) -> int:
    """Row-major id of a grid point in [n]^l."""
    vid = 0
    for x in point:
        if not 1 <= x <= n:
            raise InputError(f"grid point coordinate {x} outside [1, {n}]")
        vid = vid * n + (x - 1)
    return vid + 1


def homothetic_hypergraph(pattern: Iterable[Point], n: int) -> Hypergraph:
    """Homothetic images a + b * F of a finite pattern F of lattice points,
    inside the grid [n]^l, as a |F|-uniform hypergraph.

    The translate a ranges over all integer vectors and the scale b over
    all nonzero integers that keep the image in the grid; images equal
    as sets are identified, so the hypergraph is simple.
    """
    if n < 1:
        raise InputError(f"grid side must be >= 1, got {n}")
    points = _normalize_pattern(pattern)
    dim = len(points[0])
    k = len(points)

    spans = [
        max(pt[t] for pt in points) - min(pt[t] for pt in points) for t in range(dim)
    ]
    if max(spans) == 0:
        raise InputError("pattern is a single point in every coordinate")
    b_cap = min((n - 1) // s for s in spans if s > 0)

    edge_sets = set()
    for mag in range(1, b_cap + 1):
        for b in (mag, -mag):
            los = [min(b * pt[t] for pt in points) for t in range(dim)]
            his = [max(b * pt[t] for pt in points) for t in range(dim)]
            ranges = [range(1 - los[t], n - his[t] + 1) for t in range(dim)]
            shifts = [()]
            for rng in ranges:
                shifts = [s + (a,) for s in shifts for a in rng]
            for a in shifts:
                image = frozenset(
                    grid_id(n, tuple(a[t] + b * pt[t] for t in range(dim)))
                    for pt in points
                )
                edge_sets.add(image)
    edges = [tuple(sorted(img)) for img in edge_sets]
    return Hypergraph(k, n**dim, edges)


def subset_labels(n: int, t: int) -> tuple[tuple[int, ...], ...]:
    """The t-subsets of [n] in lexicographic order; index + 1 is the id
    used by copies_hypergraph."""
    if not 1 <= t <= n:
        raise InputError(f"subset size {t} outside [1, {n}]")
    return tuple(combinations(range(1, n + 1), t))


def copies_hypergraph(pattern: Hypergraph, n: int) -> Hypergraph:
    """Copies of a simple t-uniform pattern with vertex set [w] inside the
    complete t-uniform hypergraph on [n]: one vertex per t-subset of [n],
    one hyperedge per image edge set of an injective map [w] -> [n].

    Independent sets correspond to pattern-free t-uniform hypergraphs
    on [n].  The result is e(pattern)-uniform and simple.
    """
    w = pattern.v
    if n < w:
        raise InputError(f"need n >= {w} to embed the pattern, got {n}")
    if pattern.e == 0:
        raise InputError("pattern has no edges")
    if any(mult != 1 for mult in pattern.edges.values()):
        raise InputError("pattern must be simple")
    t = pattern.k
    labels = subset_labels(n, t)
    index = {lab: i + 1 for i, lab in enumerate(labels)}
    pattern_edges = [ids for _, _, ids in pattern.edge_rows]
    pattern_vertices = ids_from(pattern.vertex_mask)

    edge_sets = set()
    for image in permutations(range(1, n + 1), w):
        phi = dict(zip(pattern_vertices, image))
        edge_sets.add(
            frozenset(
                index[tuple(sorted(phi[u] for u in ids))] for ids in pattern_edges
            )
        )
    edges = [tuple(sorted(es)) for es in edge_sets]
    return Hypergraph(pattern.e, len(labels), edges)


def blowup_copies_hypergraph(pattern: Hypergraph, n: int) -> Hypergraph:
    """The n-blow-up of a simple graph pattern: each pattern edge owns a
    block of n^2 vertices indexed by ordered pairs, and every map from
    the pattern vertices to [n] contributes the hyperedge selecting its
    induced pair in every block.  Edges are counted with multiplicity,
    so e = n^v(pattern) always."""
    if pattern.k != 2:
        raise InputError(f"blow-up pattern must be a graph, got uniformity {pattern.k}")
    if pattern.e == 0:
        raise InputError("pattern has no edges")
    if any(mult != 1 for mult in pattern.edges.values()):
        raise InputError("pattern must be simple")
    if n < 1:
        raise InputError(f"blow-up order must be >= 1, got {n}")
    pattern_edges = [ids for _, _, ids in pattern.edge_rows]
    verts = ids_from(pattern.vertex_mask)
    edges = []
    assignments = [()]
    for _ in verts:
        assignments = [s + (a,) for s in assignments for a in range(1, n + 1)]
    for sigma in assignments:
        val = dict(zip(verts, sigma))
        edge = tuple(
            j * n * n + (val[x] - 1) * n + val[y]
            for j, (x, y) in enumerate(pattern_edges)
        )
        edges.append(edge)
    return Hypergraph(pattern.e, pattern.e * n * n, edges)


def t_density(Hs: Hypergraph, t: int) -> Fraction:
    """max over vertex subsets U with at least one edge and |U| > t of
    (e(Hs[U]) - 1) / (|U| - t), by exhaustive vertex-subset enumeration.

    Maximizing over induced sub(hyper)graphs suffices: for a fixed U the
    ratio grows with the edge count, so the full induced edge set wins.
    A pattern whose every subgraph has at most one edge comes out 0.
    """
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")
    if Hs.k != t:
        raise InputError(f"pattern has arity {Hs.k}, expected {t}")
    verts = ids_from(Hs.vertex_mask)
    if len(verts) < t + 1:
        raise InputError(f"need more than {t} vertices, got {len(verts)}")
    if len(verts) > 22:
        raise LimitError(f"enumeration over {len(verts)} vertices is too large")
    if Hs.e == 0:
        raise PreconditionError("the pattern has no edges")
    best = None
    for size in range(t + 1, len(verts) + 1):
        for combo in combinations(verts, size):
            mask = 0
            for u in combo:
                mask |= 1 << (u - 1)
            sub_e = sum(
                mult for emask, mult, _ in Hs.edge_rows if not emask & ~mask
            )
            if sub_e == 0:
                continue
            ratio = Fraction(sub_e - 1, size - t)
            if best is None or ratio > best:
                best = ratio
    if best is None:
        raise PreconditionError(f"no subset of more than {t} vertices spans an edge")
    return best


def two_density(Hs: Hypergraph) -> Fraction:
    """t_density at t = 2, the graph case."""
    return t_density(Hs, 2)


def minimal_degree_constant(H: Hypergraph, p: Fraction) -> Fraction:
    """The least c for which every degree bound
    max_degree(s) <= c * p^(s-1) * e(H) / v(H) holds."""
    p = Fraction(p)
    if not 0 < p <= 1:
        raise InputError(f"p must lie in (0, 1], got {p}")
    if H.e == 0:
        raise PreconditionError("the hypergraph has no edges")
    return max(
        Fraction(H.max_degree(s)) * H.v / (p ** (s - 1) * H.e)
        for s in range(1, H.k + 1)
    )
