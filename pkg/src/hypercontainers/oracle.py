"""Brute-force ground truth, independent of the container machinery.

Everything here enumerates, so everything here is exact and slow.  The
exhaustive-limit guards (default 22 vertices) refuse oversized inputs
outright instead of silently sampling.  The test suite and the
verification paths use these as oracles for the clever code elsewhere.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator, Optional

from .errors import InputError, LimitError, PreconditionError
from .hypergraph import Hypergraph, ids_from
from .ratmath import E_LOWER, format_fraction, frac_ceil

GENERATOR = "python-random-mt19937"
EXHAUSTIVE_LIMIT = 22
SUBSET_SCAN_LIMIT = 5_000_000


def _check_size(H: Hypergraph, limit: int) -> None:
    if H.v > limit:
        raise LimitError(
            f"{H.v} vertices exceed the exhaustive limit {limit}; "
            f"raise the limit explicitly to insist"
        )


def _edge_buckets(H: Hypergraph) -> dict[int, list[int]]:
    """Edge masks grouped under their largest vertex, so a depth-first
    scan over increasing vertices checks each edge exactly once."""
    buckets: dict[int, list[int]] = {}
    for emask, _, ids in H.edge_rows:
        buckets.setdefault(ids[-1], []).append(emask)
    return buckets


def independent_sets(
    H: Hypergraph, limit: int = EXHAUSTIVE_LIMIT
) -> Iterator[int]:
    """Every independent set of H as a bitmask, the empty set included,
    in a fixed depth-first order (excluding each vertex before including)."""
    _check_size(H, limit)
    verts = ids_from(H.vertex_mask)
    buckets = _edge_buckets(H)

    def walk(idx: int, chosen: int) -> Iterator[int]:
        if idx == len(verts):
            yield chosen
            return
        u = verts[idx]
        yield from walk(idx + 1, chosen)
        extended = chosen | 1 << (u - 1)
        for emask in buckets.get(u, ()):
            if not emask & ~extended:
                return
        yield from walk(idx + 1, extended)

    yield from walk(0, 0)


def maximal_independent_sets(
    H: Hypergraph, limit: int = EXHAUSTIVE_LIMIT
) -> list[int]:
    """Independent sets that no single vertex extends."""
    _check_size(H, limit)
    by_vertex: dict[int, list[int]] = {}
    for emask, _, ids in H.edge_rows:
        for u in ids:
            by_vertex.setdefault(u, []).append(emask)
    out = []
    for mask in independent_sets(H, limit):
        free = H.vertex_mask & ~mask
        maximal = True
        while free:
            bit = free & -free
            free ^= bit
            u = bit.bit_length()
            extended = mask | bit
            if all(emask & ~extended for emask in by_vertex.get(u, ())):
                maximal = False
                break
        if maximal:
            out.append(mask)
    return out


def count_profile(H: Hypergraph, limit: int = EXHAUSTIVE_LIMIT) -> dict[int, int]:
    """Exact count of independent sets per size, for every size with a
    positive count."""
    counts: dict[int, int] = {}
    for mask in independent_sets(H, limit):
        size = mask.bit_count()
        counts[size] = counts.get(size, 0) + 1
    return dict(sorted(counts.items()))


def count_independent_sets(
    H: Hypergraph, m: int, limit: int = EXHAUSTIVE_LIMIT
) -> int:
    if m < 0:
        raise InputError(f"size must be >= 0, got {m}")
    return sum(1 for mask in independent_sets(H, limit) if mask.bit_count() == m)


def count_independent_sets_scan(H: Hypergraph, m: int, limit: int = 16) -> int:
    """The same count by scanning all 2^v bitmasks, as a cross-check for
    the backtracking enumeration."""
    if m < 0:
        raise InputError(f"size must be >= 0, got {m}")
    _check_size(H, limit)
    shift = H.vertex_mask.bit_length()
    total = 0
    for raw in range(1 << shift):
        mask = raw & H.vertex_mask
        if mask == raw and mask.bit_count() == m and H.is_independent(mask):
            total += 1
    return total


def _count_under_prefix(
    H: Hypergraph, m: int, fixed: int, pattern: int
) -> int:
    """Count independent sets of size m whose restriction to the first
    `fixed` vertices equals `pattern` (a mask over those vertices)."""
    verts = ids_from(H.vertex_mask)
    buckets = _edge_buckets(H)
    chosen = 0
    for idx in range(fixed):
        u = verts[idx]
        if not pattern >> idx & 1:
            continue
        chosen |= 1 << (u - 1)
        for emask in buckets.get(u, ()):
            if not emask & ~chosen:
                return 0

    def walk(idx: int, chosen: int, size: int) -> int:
        if size > m:
            return 0
        if idx == len(verts):
            return 1 if size == m else 0
        u = verts[idx]
        total = walk(idx + 1, chosen, size)
        extended = chosen | 1 << (u - 1)
        for emask in buckets.get(u, ()):
            if not emask & ~extended:
                return total
        return total + walk(idx + 1, extended, size + 1)

    return walk(fixed, chosen, chosen.bit_count())


def count_independent_sets_threaded(
    H: Hypergraph, m: int, threads: int, limit: int = EXHAUSTIVE_LIMIT
) -> int:
    """count_independent_sets with the subset space partitioned on the
    first few vertices and the parts summed across a thread pool.  The
    result is independent of the partitioning by construction."""
    if m < 0:
        raise InputError(f"size must be >= 0, got {m}")
    if threads < 1:
        raise InputError(f"threads must be >= 1, got {threads}")
    _check_size(H, limit)
    if threads == 1:
        return count_independent_sets(H, m, limit)
    fixed = 0
    while (1 << fixed) < threads and fixed < H.v:
        fixed += 1
    patterns = range(1 << fixed)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda pat: _count_under_prefix(H, m, fixed, pat), patterns)
        return sum(parts)


def independence_number(H: Hypergraph, limit: int = EXHAUSTIVE_LIMIT) -> int:
    """Largest independent set size, by branch and bound (include-first,
    prune when the remaining vertices cannot beat the incumbent)."""
    _check_size(H, limit)
    verts = ids_from(H.vertex_mask)
    n = len(verts)
    buckets = _edge_buckets(H)
    best = 0

    def walk(idx: int, chosen: int, size: int) -> None:
        nonlocal best
        if size + (n - idx) <= best:
            return
        if idx == n:
            best = size
            return
        u = verts[idx]
        extended = chosen | 1 << (u - 1)
        if all(emask & ~extended for emask in buckets.get(u, ())):
            walk(idx + 1, extended, size + 1)
        walk(idx + 1, chosen, size)

    walk(0, 0, 0)
    return best


def density_epsilon(
    H: Hypergraph, s: int, limit: int = EXHAUSTIVE_LIMIT
) -> Fraction:
    """min over vertex subsets A with |A| >= s of e(H[A]) / e(H).

    Induced edge counts are monotone in A, so scanning subsets of size
    exactly s suffices.  This is the exact density the min-size family
    with threshold s can honestly declare; 0 at this scale just means
    some s-set is independent, distinct from any precondition failure.
    """
    verts = ids_from(H.vertex_mask)
    if not 0 <= s <= len(verts):
        raise InputError(f"subset size {s} outside [0, {len(verts)}]")
    if H.e == 0:
        raise PreconditionError("the hypergraph has no edges")
    _check_size(H, limit)
    if comb(len(verts), s) > SUBSET_SCAN_LIMIT:
        raise LimitError(
            f"{comb(len(verts), s)} subsets of size {s} is too many to scan"
        )
    best = None
    for combo in combinations(verts, s):
        mask = 0
        for u in combo:
            mask |= 1 << (u - 1)
        sub_e = sum(mult for emask, mult, _ in H.edge_rows if not emask & ~mask)
        if best is None or sub_e < best:
            best = sub_e
            if best == 0:
                break
    return Fraction(best, H.e)


def varnavides_count(A: Iterable[int], k: int) -> int:
    """Number of k-term arithmetic progressions with difference d >= 1
    lying entirely inside the finite integer set A."""
    if k < 2:
        raise InputError(f"progression length must be >= 2, got {k}")
    elems = set(A)
    if len(elems) < k:
        return 0
    total = 0
    top = max(elems)
    for a in sorted(elems):
        d = 1
        while a + (k - 1) * d <= top:
            if all(a + i * d in elems for i in range(1, k)):
                total += 1
            d += 1
    return total


def szemeredi_check(
    A: Iterable[int],
    delta: Fraction,
    k: int,
    max_subsets: int = SUBSET_SCAN_LIMIT,
) -> bool:
    """True when every subset of A with at least delta * |A| elements
    contains a k-term AP.

    Containing an AP is monotone under supersets, so only subsets of
    size exactly s = ceil(delta * |A|) are scanned.  When s < k no
    subset of that size can contain one, so the answer is False.
    """
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise InputError(f"delta must lie in (0, 1], got {delta}")
    if k < 2:
        raise InputError(f"progression length must be >= 2, got {k}")
    elems = sorted(set(A))
    s = frac_ceil(delta * len(elems))
    if s < k:
        return False
    if comb(len(elems), s) > max_subsets:
        raise LimitError(
            f"{comb(len(elems), s)} subsets of size {s} is too many to scan"
        )
    for combo in combinations(elems, s):
        if varnavides_count(combo, k) == 0:
            return False
    return True


@dataclass(frozen=True)
class MCReport:
    n: int
    p: Fraction
    delta: Fraction
    k: int
    hits: int
    trials: int
    rate: Fraction
    seed: int
    generator: str = GENERATOR

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "p": format_fraction(self.p),
            "delta": format_fraction(self.delta),
            "k": self.k,
            "hits": self.hits,
            "trials": self.trials,
            "rate": format_fraction(self.rate),
            "seed": self.seed,
            "generator": self.generator,
        }


def mc_szemeredi(
    n: int, p: Fraction, delta: Fraction, k: int, trials: int, seed: int
) -> MCReport:
    """Monte Carlo rate at which a p-random subset of [n] passes
    szemeredi_check(sample, delta, k).

    Trial t uses random.Random(seed ^ t) and exact integer Bernoulli
    draws (randrange(denominator) < numerator), so runs are bit-exactly
    reproducible from (seed, trials) and trials are independent.  At
    p = 1 every sample is [n] and the rate equals the deterministic
    check; at p = 0 every sample is empty and the rate is 0.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InputError(f"p must lie in [0, 1], got {p}")
    if n < 1:
        raise InputError(f"ground set size must be >= 1, got {n}")
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    if seed < 0:
        raise InputError(f"seed must be >= 0, got {seed}")
    num, den = p.numerator, p.denominator
    hits = 0
    for t in range(trials):
        rng = random.Random(seed ^ t)
        sample = [u for u in range(1, n + 1) if rng.randrange(den) < num]
        if szemeredi_check(sample, delta, k):
            hits += 1
    return MCReport(
        n=n,
        p=p,
        delta=Fraction(delta),
        k=k,
        hits=hits,
        trials=trials,
        rate=Fraction(hits, trials),
        seed=seed,
    )


def automorphism_count(Hs: Hypergraph) -> int:
    """|Aut(Hs)| by checking every vertex permutation (patterns are tiny)."""
    verts = ids_from(Hs.vertex_mask)
    if len(verts) > 8:
        raise LimitError(f"{len(verts)}! permutations is too many to scan")
    edge_sets = {frozenset(ids) for _, _, ids in Hs.edge_rows}
    count = 0
    for perm in permutations(verts):
        relabel = dict(zip(verts, perm))
        if {frozenset(relabel[u] for u in es) for es in edge_sets} == edge_sets:
            count += 1
    return count


def extremal_number(
    n: int, Hs: Hypergraph, t: Optional[int] = None, limit: int = EXHAUSTIVE_LIMIT
) -> int:
    """Maximum edge count of a Hs-free t-uniform hypergraph on [n]: the
    independence number of the copies hypergraph."""
    from .instances import copies_hypergraph

    if t is not None and t != Hs.k:
        raise InputError(f"pattern has arity {Hs.k}, got t = {t}")
    return independence_number(copies_hypergraph(Hs, n), limit)


def count_free_graphs(
    n: int, m: int, Hs: Hypergraph, t: Optional[int] = None, limit: int = EXHAUSTIVE_LIMIT
) -> int:
    """Number of Hs-free t-uniform hypergraphs on [n] with exactly m
    edges: the size-m independent-set count of the copies hypergraph."""
    from .instances import copies_hypergraph

    if t is not None and t != Hs.k:
        raise InputError(f"pattern has arity {Hs.k}, got t = {t}")
    return count_independent_sets(copies_hypergraph(Hs, n), m, limit)


def exact_binomial(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise InputError(f"binomial arguments must be >= 0, got ({a}, {b})")
    return comb(a, b)


def check_binomial_inequalities(a: int, b: int, c: int) -> dict[str, bool]:
    """The four binomial-coefficient inequalities the counting bound
    leans on, each evaluated in cross-multiplied exact integer form for
    one triple a >= b >= c >= 0.

    entropy_bound uses a rational lower bound on e, which makes the
    checked inequality stronger than the real one, never weaker.
    """
    if not a >= b >= c >= 0:
        raise InputError(f"need a >= b >= c >= 0, got ({a}, {b}, {c})")
    e_num, e_den = E_LOWER.numerator, E_LOWER.denominator
    return {
        # C(a, b) <= (e * a / b)^b
        "entropy_bound": (
            comb(a, b) * (b * e_den) ** b <= (e_num * a) ** b if b else True
        ),
        # C(a, b - c) <= (b / (a - b))^c * C(a, b)
        "index_shift": comb(a, b - c) * (a - b) ** c <= b**c * comb(a, b),
        # C(b, c) <= (b / a)^c * C(a, c)
        "top_shrink": comb(b, c) * a**c <= b**c * comb(a, c),
        # C(a, c) <= ((a - c) / (b - c))^c * C(b, c)
        "top_swap": comb(a, c) * (b - c) ** c <= (a - c) ** c * comb(b, c),
    }


def binomial_inequality_violations(max_a: int) -> list[str]:
    """Audit the full grid 0 <= c <= b <= a <= max_a; returns the list of
    violations (empty when everything holds)."""
    if max_a < 0:
        raise InputError(f"max_a must be >= 0, got {max_a}")
    bad: list[str] = []
    for a in range(max_a + 1):
        for b in range(a + 1):
            for c in range(b + 1):
                for name, ok in check_binomial_inequalities(a, b, c).items():
                    if not ok:
                        bad.append(f"{name} a={a} b={b} c={c}")
    return bad


@dataclass
class CountReport:
    """Exact independent-set counts with the parameters that produced
    them.  Wall time is measured by the caller and deliberately kept out
    of the serialized payload so reruns are byte-identical."""

    params: dict
    counts: dict[int, int]
    wall_time_s: Optional[float] = field(default=None, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "params": self.params,
            "counts": [
                {"m": m, "count": self.counts[m]} for m in sorted(self.counts)
            ],
        }

    def to_csv_text(self) -> str:
        lines = ["m,count"]
        lines += [f"{m},{self.counts[m]}" for m in sorted(self.counts)]
        return "\n".join(lines) + "\n"
