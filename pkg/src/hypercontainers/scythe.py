"""The Scythe reduction: one uniformity-lowering pass over a hypergraph.

Given an (i+1)-uniform hypergraph and an independent set I, the step
repeatedly picks the first vertex of I in the max-degree order of the
surviving hypergraph, accumulates that vertex's link into an i-uniform
level hypergraph, and prunes both the order prefix and every edge that
now contains a high-degree subset.  Degree thresholds come from a table
computed once at the top uniformity and shared by the whole descent.

All thresholds are exact rationals; every comparison here is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import ContractError, InputError
from .hypergraph import Hypergraph, VertexSet, as_mask, iter_ids


@dataclass(frozen=True)
class ThresholdTable:
    """Pruning threshold for every (subset size, level) pair.

    Row k holds the max degrees of the source hypergraph; each lower
    level takes max(2 * entry above-right, p * entry above), so every
    entry equals 2^d p^(k-i-d) times a source max degree for some d.
    """

    k: int
    p: Fraction
    entries: dict[tuple[int, int], Fraction]

    def get(self, size: int, level: int) -> Fraction:
        if not 1 <= size <= level <= self.k:
            raise InputError(f"no threshold for subset size {size} at level {level}")
        return self.entries[(size, level)]


def threshold_table(H: Hypergraph, p: Fraction) -> ThresholdTable:
    """Build the threshold table for H with sampling rate p in (0, 1)."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise InputError(f"p must lie strictly between 0 and 1, got {p}")
    k = H.k
    entries: dict[tuple[int, int], Fraction] = {}
    for size in range(1, k + 1):
        entries[(size, k)] = Fraction(H.max_degree(size))
    for level in range(k - 1, 0, -1):
        for size in range(1, level + 1):
            entries[(size, level)] = max(
                2 * entries[(size + 1, level + 1)],
                p * entries[(size, level + 1)],
            )
    return ThresholdTable(k=k, p=p, entries=entries)


def _greedy_prefix(rows, live_mask: int, stop_mask: int):
    """Pop max-degree vertices (ties to the smallest id) until one in stop_mask.

    rows are (mask, mult, ids) triples of edges lying inside live_mask.
    Degrees are taken in the hypergraph induced on the not-yet-popped
    vertices, so popping a vertex retires its edges from the counts.
    Returns (hit_vertex_or_None, popped_mask, popped_order).
    """
    remaining = {u: 0 for u in iter_ids(live_mask)}
    incidence: dict[int, list[int]] = {u: [] for u in remaining}
    alive = [True] * len(rows)
    for idx, (_, m, ids) in enumerate(rows):
        for u in ids:
            remaining[u] += m
            incidence[u].append(idx)
    order: list[int] = []
    popped = 0
    while remaining:
        u = max(remaining.items(), key=lambda kv: (kv[1], -kv[0]))[0]
        order.append(u)
        popped |= 1 << (u - 1)
        if stop_mask >> (u - 1) & 1:
            return u, popped, order
        del remaining[u]
        for idx in incidence[u]:
            if alive[idx]:
                alive[idx] = False
                _, m, ids = rows[idx]
                for w in ids:
                    if w in remaining:
                        remaining[w] -= m
    return None, popped, order


@dataclass(frozen=True)
class MaxDegreeOrder:
    """A full max-degree order; prefix(u) is the closed initial segment at u."""

    ordering: tuple[int, ...]

    def position(self, u: int) -> int:
        return self.ordering.index(u)

    def prefix(self, u: int) -> tuple[int, ...]:
        return self.ordering[: self.position(u) + 1]


def max_degree_order(G: Hypergraph, live: Optional[VertexSet] = None) -> MaxDegreeOrder:
    """Greedy max-degree order of G restricted to `live` (default: all of V).

    Ties break toward the smaller id, so the order depends only on the
    hypergraph and the live set, never on who asks.
    """
    live_mask = G.vertex_mask if live is None else as_mask(live)
    if live_mask & ~G.vertex_mask:
        raise InputError("live set leaves the vertex set")
    rows = [r for r in G.edge_rows if r[0] & ~live_mask == 0]
    _, _, order = _greedy_prefix(rows, live_mask, 0)
    return MaxDegreeOrder(tuple(order))


def high_degree_sets(
    G: Hypergraph, size: int, table: ThresholdTable, level: int
) -> set[tuple[int, ...]]:
    """Subsets of `size` vertices whose degree in G reaches half the threshold.

    G must be `level`-uniform.  A zero threshold is taken literally:
    every size-subset of V(G) qualifies (this only arises when the whole
    descent started from an edgeless hypergraph, where it is harmless).
    """
    if G.k != level:
        raise InputError(f"expected a {level}-uniform hypergraph, got k={G.k}")
    thr = table.get(size, level)
    if thr == 0:
        return set(itertools.combinations(G.vertices(), size))
    return {sub for sub, d in G.degree_index(size).items() if 2 * d >= thr}


@dataclass(frozen=True)
class ScytheResult:
    """Outcome of one reduction step.

    survivors: bitmask of the vertices still standing (the set A).
    picks: the fingerprint vertices chosen from I, in pick order (B).
    reduced: the accumulated i-uniform level hypergraph on the full
        input vertex set.
    stopped_early: True when I ran dry before all b iterations; then
        survivors is empty, reduced is edgeless and picks == I.
    """

    survivors: int
    picks: tuple[int, ...]
    reduced: Hypergraph
    stopped_early: bool

    @property
    def picks_mask(self) -> int:
        mask = 0
        for u in self.picks:
            mask |= 1 << (u - 1)
        return mask


def scythe_step(
    H_next: Hypergraph,
    ind_set: VertexSet,
    table: ThresholdTable,
    b: int,
    level: int,
) -> ScytheResult:
    """Run b pick-accumulate-prune iterations, landing one uniformity lower.

    H_next must be (level+1)-uniform and ind_set independent in it.  The
    result is a pure function of (H_next, ind_set, table, b); in
    particular it is determined by the picks it returns, which is what
    makes fingerprints reusable across different independent sets.
    """
    if not 1 <= level <= table.k - 1:
        raise InputError(f"level must be in [1, {table.k - 1}], got {level}")
    if H_next.k != level + 1:
        raise InputError(
            f"uniformity mismatch: level {level} needs a {level + 1}-uniform input, got k={H_next.k}"
        )
    if b < 1:
        raise InputError(f"b must be >= 1, got {b}")
    imask = as_mask(ind_set)
    if imask & ~H_next.vertex_mask:
        raise InputError("independent set leaves the vertex set")
    if not H_next.is_independent(imask):
        raise ContractError("scythe_step requires an independent set")

    ambient = H_next.vertex_mask
    rows = H_next.edge_rows
    alive = [True] * len(rows)
    live_mask = ambient
    thresholds = {s: table.get(s, level) for s in range(1, level + 1)}
    # a zero threshold makes every subset high-degree, emptying A outright
    kill_all = any(t == 0 for t in thresholds.values())
    counts: dict[int, dict[tuple[int, ...], int]] = {s: {} for s in range(1, level + 1)}
    flagged: dict[int, set[tuple[int, ...]]] = {s: set() for s in range(1, level + 1)}
    level_edges: dict[tuple[int, ...], int] = {}
    picks: list[int] = []

    for _ in range(b):
        if not imask & live_mask:
            return ScytheResult(
                survivors=0,
                picks=tuple(picks),
                reduced=Hypergraph.on_mask(level, ambient, {}),
                stopped_early=True,
            )
        live_rows = [rows[idx] for idx in range(len(rows)) if alive[idx]]
        u, w_mask, _ = _greedy_prefix(live_rows, live_mask, imask & live_mask)
        picks.append(u)
        ubit = 1 << (u - 1)

        # accumulate the link of u and track subsets crossing a threshold
        new_tmasks: list[int] = []
        for idx, (emask, m, ids) in enumerate(rows):
            if not alive[idx] or not emask & ubit:
                continue
            rest = tuple(x for x in ids if x != u)
            level_edges[rest] = level_edges.get(rest, 0) + m
            for s in range(1, level + 1):
                cnt_s, flag_s, thr_s = counts[s], flagged[s], thresholds[s]
                for sub in itertools.combinations(rest, s):
                    c = cnt_s.get(sub, 0) + m
                    cnt_s[sub] = c
                    if 2 * c >= thr_s and sub not in flag_s:
                        flag_s.add(sub)
                        tmask = 0
                        for x in sub:
                            tmask |= 1 << (x - 1)
                        new_tmasks.append(tmask)

        # shrink the vertex set by the order prefix, then prune edges that
        # meet it or contain a newly flagged subset (older flags already
        # emptied their edges on the iteration that raised them)
        live_mask &= ~w_mask
        for idx, (emask, _, _) in enumerate(rows):
            if not alive[idx]:
                continue
            if emask & w_mask or kill_all:
                alive[idx] = False
                continue
            for tmask in new_tmasks:
                if tmask & ~emask == 0:
                    alive[idx] = False
                    break

    return ScytheResult(
        survivors=live_mask,
        picks=tuple(picks),
        reduced=Hypergraph.on_mask(level, ambient, level_edges),
        stopped_early=False,
    )
