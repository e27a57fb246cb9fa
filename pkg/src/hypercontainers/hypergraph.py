"""k-uniform multihypergraphs on small integer vertex sets.

Vertices are 1-based integer ids and vertex subsets are plain ints used
as bitmasks, bit (i - 1) standing for vertex i.  Arbitrary-precision
ints make subset algebra exact and fast at the scales exhaustive
verification can reach.  A Hypergraph is frozen after construction
(internal caches included), so instances can be shared freely.

The induced subhypergraph of H on A keeps the ids of the parent: its
vertex set is A inside the same index space, and v(H[A]) = |A|.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable, Iterator, Mapping, Union

from .errors import InputError

VertexSet = Union[int, Iterable[int]]


def mask_from(ids: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based vertex ids."""
    mask = 0
    for i in ids:
        if i < 1:
            raise InputError(f"vertex ids are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def as_mask(vertices: VertexSet) -> int:
    """Accept either a ready-made bitmask or an iterable of ids."""
    if isinstance(vertices, int):
        if vertices < 0:
            raise InputError("negative int is not a vertex mask")
        return vertices
    return mask_from(vertices)


def ids_from(mask: int) -> tuple[int, ...]:
    """Sorted tuple of the 1-based ids present in a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def iter_ids(mask: int) -> Iterator[int]:
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Hypergraph:
    """A k-uniform multihypergraph with an explicit vertex set.

    Edges are stored as sorted id tuples mapped to multiplicities;
    e(H) counts edges with multiplicity throughout.  Edges with a
    repeated vertex are rejected.  k = 1 is allowed and behaves like
    any other uniformity.
    """

    __slots__ = ("k", "vertex_mask", "_mult", "_rows", "_e")

    def __init__(self, k: int, vertex_count: int, edges: Iterable[Iterable[int]] = ()):
        if vertex_count < 0:
            raise InputError("vertex count must be >= 0")
        self._init(k, (1 << vertex_count) - 1, edges)

    @classmethod
    def on_mask(cls, k: int, vertex_mask: int, edges: Iterable[Iterable[int]] = ()) -> "Hypergraph":
        """Build on an arbitrary vertex set given as a bitmask."""
        self = object.__new__(cls)
        self._init(k, vertex_mask, edges)
        return self

    def _init(self, k: int, vertex_mask: int, edges) -> None:
        if k < 1:
            raise InputError(f"uniformity must be >= 1, got {k}")
        if vertex_mask < 0:
            raise InputError("negative vertex mask")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "vertex_mask", vertex_mask)
        mult: dict[tuple[int, ...], int] = {}
        if isinstance(edges, Mapping):
            items = [(edge, m) for edge, m in edges.items()]
        else:
            items = [(edge, 1) for edge in edges]
        for edge, m in items:
            ids = tuple(sorted(edge))
            if len(ids) != k:
                raise InputError(f"edge {ids} has {len(ids)} vertices, expected {k}")
            if len(set(ids)) != k:
                raise InputError(f"edge {tuple(edge)} repeats a vertex")
            emask = mask_from(ids)
            if emask & ~vertex_mask:
                raise InputError(f"edge {ids} leaves the vertex set")
            if m < 1:
                raise InputError(f"multiplicity must be >= 1, got {m}")
            mult[ids] = mult.get(ids, 0) + m
        rows = tuple(
            (mask_from(ids), mult[ids], ids) for ids in sorted(mult)
        )
        object.__setattr__(self, "_mult", mult)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_e", sum(mult.values()))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Hypergraph is immutable")

    # -- basic accessors -------------------------------------------------

    @property
    def v(self) -> int:
        return self.vertex_mask.bit_count()

    @property
    def e(self) -> int:
        """Edge count, with multiplicity."""
        return self._e

    @property
    def edges(self) -> dict[tuple[int, ...], int]:
        """Sorted-tuple edge -> multiplicity (a copy; the graph stays frozen)."""
        return dict(self._mult)

    @property
    def edge_rows(self) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
        """(mask, multiplicity, ids) per distinct edge, in sorted edge order."""
        return self._rows

    def vertices(self) -> tuple[int, ...]:
        return ids_from(self.vertex_mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.k == other.k
            and self.vertex_mask == other.vertex_mask
            and self._mult == other._mult
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, v={self.v}, e={self.e})"

    # -- queries ----------------------------------------------------------

    def _check_subset(self, mask: int, what: str) -> None:
        if mask & ~self.vertex_mask:
            raise InputError(f"{what} {ids_from(mask & ~self.vertex_mask)} outside the vertex set")

    def degree(self, subset: VertexSet) -> int:
        """Number of edges containing `subset`, with multiplicity.

        The empty set has degree e(H).
        """
        smask = as_mask(subset)
        self._check_subset(smask, "degree query")
        return sum(m for emask, m, _ in self._rows if smask & ~emask == 0)

    def degree_index(self, size: int) -> Counter:
        """Degrees of every size-`size` subset that lies in at least one edge.

        Built by aggregating over the edges' subsets, never by walking
        all subsets of the vertex set; absent keys have degree 0.
        """
        if not 1 <= size <= self.k:
            raise InputError(f"subset size must be in [1, {self.k}], got {size}")
        counts: Counter = Counter()
        for _, m, ids in self._rows:
            for sub in itertools.combinations(ids, size):
                counts[sub] += m
        return counts

    def max_degree(self, size: int) -> int:
        """Largest degree over size-`size` subsets (0 for an edgeless graph)."""
        index = self.degree_index(size)
        return max(index.values(), default=0)

    def induced(self, vertices: VertexSet) -> "Hypergraph":
        """Subhypergraph on `vertices`, keeping ids and multiplicities."""
        amask = as_mask(vertices)
        self._check_subset(amask, "induced set")
        kept = {ids: m for emask, m, ids in self._rows if emask & ~amask == 0}
        return Hypergraph.on_mask(self.k, amask, kept)

    def is_independent(self, vertices: VertexSet) -> bool:
        """True iff no edge lies entirely inside `vertices`."""
        imask = as_mask(vertices)
        self._check_subset(imask, "independence query")
        return all(emask & ~imask for emask, _, _ in self._rows)

    def vertex_link(self, u: int) -> dict[tuple[int, ...], int]:
        """Multiset of (k-1)-sets completing u to an edge, as tuple -> mult."""
        ubit = 1 << (u - 1)
        self._check_subset(ubit, "link vertex")
        link: dict[tuple[int, ...], int] = {}
        for emask, m, ids in self._rows:
            if emask & ubit:
                rest = tuple(x for x in ids if x != u)
                # distinct parent edges have distinct remainders, so no merging
                link[rest] = m
        return link


# -- text format ----------------------------------------------------------
#
# Line-oriented: '#' lines are comments, the first data line is the header
# "k v e", then e lines of k space-separated ids.  Repeated lines add up
# as multiplicity, so e always equals e(H).


def load_hypergraph(source) -> Hypergraph:
    """Read the text format from a path or an open text file."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    data_lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        data_lines.append(line)
    if not data_lines:
        raise InputError("empty hypergraph file")
    header = data_lines[0].split()
    if len(header) != 3:
        raise InputError(f"header must be 'k v e', got {data_lines[0]!r}")
    try:
        k, v, e = (int(x) for x in header)
    except ValueError as exc:
        raise InputError(f"non-integer header {data_lines[0]!r}") from exc
    body = data_lines[1:]
    if len(body) != e:
        raise InputError(f"header promises {e} edges, file has {len(body)}")
    edges = []
    for line in body:
        parts = line.split()
        if len(parts) != k:
            raise InputError(f"edge line {line!r} does not have {k} ids")
        ids = tuple(int(x) for x in parts)
        if any(not 1 <= x <= v for x in ids):
            raise InputError(f"edge line {line!r} leaves [1, {v}]")
        edges.append(ids)
    return Hypergraph(k, v, edges)


def dump_hypergraph(H: Hypergraph, target, comments: Iterable[str] = ()) -> None:
    """Write the text format to a path or an open text file.

    Requires a dense vertex set 1..v, which is what every builder
    produces; multiplicities come out as repeated lines.
    """
    if H.vertex_mask != (1 << H.v) - 1:
        raise InputError("text format requires a dense vertex set 1..v")
    lines = [f"# {c}" for c in comments]
    lines.append(f"{H.k} {H.v} {H.e}")
    for _, m, ids in H.edge_rows:
        lines.extend(" ".join(str(x) for x in ids) for _ in range(m))
    payload = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(payload)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(payload)
