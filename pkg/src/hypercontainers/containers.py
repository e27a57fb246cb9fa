"""Containers for independent sets, built by iterated Scythe descents.

One descent (fingerprint_descent) lowers uniformity level by level until
the surviving vertex set has dropped by a delta fraction, returning a
fingerprint g0 inside I and a container piece f0 with I <= g0 union f0.
The outer construction (build_container) re-runs descents on induced
subhypergraphs until the container leaves the target density family.
Everything is exact rational arithmetic and pure functions of inputs,
so equal inputs give byte-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

from . import oracle
from .errors import ContractError, InputError, PreconditionError
from .hypergraph import Hypergraph, VertexSet, as_mask, ids_from, mask_from
from .ratmath import format_fraction, frac_ceil, log_upper, parse_fraction
from .scythe import ScytheResult, ThresholdTable, scythe_step, threshold_table


class DensityFamily:
    """An increasing family of vertex sets with declared density data.

    member(mask) must be monotone: supersets of members are members.
    epsilon declares that members induce at least an epsilon fraction of
    the edges; min_fraction declares the size floor |A| >= min_fraction
    * v(H) and must be at least epsilon.  The declarations belong to the
    caller; the builder re-checks what it cheaply can where it matters.
    """

    def __init__(
        self,
        member: Callable[[int], bool],
        epsilon: Fraction,
        min_fraction: Fraction,
        description: str,
    ):
        epsilon = Fraction(epsilon)
        min_fraction = Fraction(min_fraction)
        if not 0 < epsilon <= 1:
            raise InputError(f"epsilon must lie in (0, 1], got {epsilon}")
        if min_fraction < epsilon:
            raise InputError("declared size floor below epsilon")
        self._member = member
        self.epsilon = epsilon
        self.min_fraction = min_fraction
        self.description = description

    def member(self, vertices: VertexSet) -> bool:
        return bool(self._member(as_mask(vertices)))

    def __repr__(self) -> str:
        return f"DensityFamily({self.description!r}, eps={self.epsilon})"


class MinSizeFamily(DensityFamily):
    """All vertex sets with at least `size` vertices."""

    def __init__(self, size: int, vertex_count: int, epsilon: Fraction):
        if size < 1:
            raise InputError(f"family size threshold must be >= 1, got {size}")
        if vertex_count < 1:
            raise InputError("vertex count must be >= 1")
        self.size = size
        super().__init__(
            member=lambda mask: mask.bit_count() >= size,
            epsilon=epsilon,
            min_fraction=Fraction(size, vertex_count),
            description=f"min-size:{size}",
        )


def parse_family(spec: str, H: Hypergraph, epsilon: Fraction) -> MinSizeFamily:
    """Parse a CLI family spec of the form 'min-size:<s>'."""
    if not spec.startswith("min-size:"):
        raise InputError(f"unknown family spec {spec!r}; expected 'min-size:<s>'")
    try:
        size = int(spec.split(":", 1)[1])
    except ValueError as exc:
        raise InputError(f"bad size in family spec {spec!r}") from exc
    return MinSizeFamily(size, H.v, epsilon)


def shrink_delta(k: int, c: Fraction) -> Fraction:
    """Guaranteed per-descent shrink fraction for uniformity k and constant c.

    Constants are derived from max(c, 1): the degree condition with a
    smaller c implies the one actually used, and the per-level constant
    chain needs c >= 1 to telescope.
    """
    c_eff = max(Fraction(c), Fraction(1))
    return (c_eff * k * 2 ** (k + 1)) ** (-k)


def size_constant(k: int, c: Fraction, eps: Fraction) -> Fraction:
    """The fingerprint size constant, with ln(1/eps) replaced by its
    certified rational upper bound (which only weakens the bound)."""
    eps = Fraction(eps)
    delta = shrink_delta(k, Fraction(c) / eps)
    return (k - 1) * (log_upper(1 / eps) / delta + 1)


@dataclass(frozen=True)
class DescentParams:
    """Constants governing one fingerprint descent.

    c is the degree-condition constant (clamped to >= 1 internally, see
    shrink_delta), p the sampling rate in (0, 1), k the uniformity.
    """

    k: int
    c: Fraction
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "p", Fraction(self.p))
        if self.k < 1:
            raise InputError(f"uniformity must be >= 1, got {self.k}")
        if self.c <= 0:
            raise InputError(f"degree constant must be positive, got {self.c}")
        if not 0 < self.p < 1:
            raise InputError(f"p must lie strictly between 0 and 1, got {self.p}")

    @property
    def effective_c(self) -> Fraction:
        return max(self.c, Fraction(1))

    @property
    def delta(self) -> Fraction:
        return shrink_delta(self.k, self.c)

    def level_const(self, level: int) -> Fraction:
        """The edge-survival constant for a level; 1 at the top level."""
        if not 0 <= level <= self.k:
            raise InputError(f"level must be in [0, {self.k}], got {level}")
        return (self.effective_c * self.k * 2 ** (self.k + 1)) ** (level - self.k)


class InvariantMonitor:
    """Records violations of the per-level descent guarantees (a test hook).

    Plug one into fingerprint_descent or build_container to check, on
    every Scythe invocation, the pick/cover containment, the early-stop
    shape, degree propagation between levels, and the edge-count
    dichotomy.  A correct implementation never appends a violation.
    """

    def __init__(self):
        self.steps = 0
        self.violations: list[str] = []

    def observe(self, H, params, table, b, level, H_next, imask, res: ScytheResult):
        self.steps += 1
        i = level
        k, p = params.k, params.p
        amask, bmask, reduced = res.survivors, res.picks_mask, res.reduced

        def bad(msg: str) -> None:
            self.violations.append(f"level {i}: {msg}")

        if reduced.k != i or reduced.vertex_mask != H.vertex_mask:
            bad("level hypergraph is not i-uniform on the full vertex set")
        if not reduced.is_independent(imask):
            bad("I is dependent in the level hypergraph")
        if bmask & ~imask:
            bad("picks leave I")
        if imask & ~(amask | bmask):
            bad("I is not covered by survivors and picks")
        if len(res.picks) > b:
            bad("more picks than iterations")
        if res.stopped_early and (amask != 0 or reduced.e != 0 or bmask != imask):
            bad("early stop must empty the survivors and return picks == I")

        # degree propagation, one subset size at a time
        for s in range(1, i + 1):
            if Fraction(H_next.max_degree(s + 1)) <= table.get(s + 1, i + 1):
                if Fraction(reduced.max_degree(s)) > table.get(s, i):
                    bad(f"degree bound fails for subsets of size {s}")

        # edge-count dichotomy: many edges survive or many vertices fall
        ci1 = params.level_const(i + 1)
        ci = params.level_const(i)
        pre_edges = Fraction(H_next.e) >= ci1 * p ** (k - i - 1) * H.e
        pre_degrees = all(
            Fraction(H_next.max_degree(s)) <= table.get(s, i + 1)
            for s in range(1, i + 2)
        )
        if pre_edges and pre_degrees:
            big_e = Fraction(reduced.e) >= ci * p ** (k - i) * H.e
            small_a = Fraction(amask.bit_count()) <= (1 - ci) * H.v
            if not (big_e or small_a):
                bad("edge-count dichotomy fails")


@dataclass(frozen=True)
class DescentResult:
    """One descent's fingerprint g0 and container piece f0.

    level_picks records the picks per executed level, top level first;
    stop_level is the last executed level, and ground is True when the
    run reached uniformity one without a small survivor set, so the
    container came from the degree-zero vertices of the final level.
    """

    fingerprint_mask: int
    container_mask: int
    level_picks: tuple[tuple[int, tuple[int, ...]], ...]
    stop_level: int
    ground: bool
    b: int


def fingerprint_descent(
    H: Hypergraph,
    ind_set: VertexSet,
    params: DescentParams,
    monitor: Optional[InvariantMonitor] = None,
    *,
    _table: Optional[ThresholdTable] = None,
) -> DescentResult:
    """Descend from uniformity k to the first level that sheds a delta
    fraction of the vertices, collecting picks into the fingerprint.

    Requires e(H) >= 1 and the degree condition
    max_degree(s) <= c * p^(s-1) * e(H) / v(H) for every s in [k].
    Guarantees g0 <= I <= f0 | g0, |f0| <= (1 - delta) v(H) and
    |g0| <= (k - 1) * b with b = ceil(p * v(H)).
    """
    if H.k != params.k:
        raise InputError(f"params are for uniformity {params.k}, hypergraph has {H.k}")
    if H.e == 0:
        raise PreconditionError("the hypergraph has no edges")
    imask = as_mask(ind_set)
    if imask & ~H.vertex_mask:
        raise InputError("independent set leaves the vertex set")
    if not H.is_independent(imask):
        raise ContractError("fingerprint_descent requires an independent set")

    k, p = params.k, params.p
    v, e = H.v, H.e
    c_eff = params.effective_c
    for s in range(1, k + 1):
        bound = c_eff * p ** (s - 1) * Fraction(e, v)
        if H.max_degree(s) > bound:
            raise PreconditionError(
                f"degree condition fails for subsets of size {s}: "
                f"max degree {H.max_degree(s)} > {bound}"
            )

    table = _table if _table is not None else threshold_table(H, p)
    b = frac_ceil(p * v)
    shrink_bound = (1 - params.delta) * v

    current = H
    level_picks: list[tuple[int, tuple[int, ...]]] = []
    container_mask = None
    stop_level = 1
    ground = False
    for i in range(k - 1, 0, -1):
        res = scythe_step(current, imask, table, b, i)
        if monitor is not None:
            monitor.observe(H, params, table, b, i, current, imask, res)
        level_picks.append((i, res.picks))
        stop_level = i
        if res.survivors.bit_count() <= shrink_bound:
            container_mask = res.survivors
            break
        current = res.reduced
    else:
        # every level kept nearly all vertices (at k = 1: no levels at all);
        # the container is the set of degree-zero vertices of the 1-uniform end
        ground = True
        occupied = 0
        for emask, _, _ in current.edge_rows:
            occupied |= emask
        container_mask = H.vertex_mask & ~occupied

    gmask = 0
    for _, picks in level_picks:
        for u in picks:
            gmask |= 1 << (u - 1)

    if gmask & ~imask:
        raise ContractError("fingerprint leaves the independent set")
    if imask & ~(container_mask | gmask):
        raise ContractError("independent set not covered by fingerprint and container")
    if container_mask.bit_count() > shrink_bound:
        raise ContractError("container did not shrink by the guaranteed fraction")
    if sum(len(picks) for _, picks in level_picks) > (k - 1) * b:
        raise ContractError("fingerprint exceeds its size budget")

    return DescentResult(
        fingerprint_mask=gmask,
        container_mask=container_mask,
        level_picks=tuple(level_picks),
        stop_level=stop_level,
        ground=ground,
        b=b,
    )


@dataclass(frozen=True)
class ContainerResult:
    """A fingerprint/container pair for one independent set.

    pieces holds the per-round fingerprints in round order; rounds is
    the number of descents run; size_bound is the constant C such that
    |fingerprint| <= C * ceil(p * v(H)) is enforced (and <= C * p * v(H)
    whenever p * v(H) is an integer or the rounding slack is absorbed,
    which verification re-checks per instance).
    """

    fingerprint_mask: int
    container_mask: int
    pieces: tuple[tuple[int, ...], ...]
    rounds: int
    size_bound: Fraction


def build_container(
    H: Hypergraph,
    ind_set: VertexSet,
    family: DensityFamily,
    c: Fraction,
    p: Fraction,
    *,
    monitor: Optional[InvariantMonitor] = None,
    check_density: bool = False,
    allow_edgeless: bool = False,
    _caches: Optional[dict] = None,
) -> ContainerResult:
    """Container construction for one independent set.

    Runs fingerprint descents on induced subhypergraphs with constant
    c / epsilon until the surviving set leaves the family.  Guarantees:
    the fingerprint is inside I, fingerprint union container covers I,
    the container is not a family member, and the number of rounds stays
    under ceil(L / delta) + 1 where L is the certified upper bound on
    ln(1 / epsilon).  Exceeding the round cap raises a ContractError and
    points at the density declaration, which is the only way to get
    that many rounds out of a correct descent.
    """
    c = Fraction(c)
    p = Fraction(p)
    if c <= 0:
        raise InputError(f"degree constant must be positive, got {c}")
    if not 0 < p < 1:
        raise InputError(f"p must lie strictly between 0 and 1, got {p}")
    if H.e == 0:
        if allow_edgeless:
            # any set is independent, so the trivial pair is the only honest one
            return ContainerResult(0, H.vertex_mask, (), 0, Fraction(0))
        raise PreconditionError(
            "the hypergraph has no edges; pass allow_edgeless for the trivial container"
        )
    imask = as_mask(ind_set)
    if imask & ~H.vertex_mask:
        raise InputError("independent set leaves the vertex set")
    if not H.is_independent(imask):
        raise ContractError("build_container requires an independent set")

    eps = family.epsilon
    params = DescentParams(k=H.k, c=c / eps, p=p)
    delta = params.delta
    log_bound = log_upper(1 / eps)
    round_cap = frac_ceil(log_bound / delta) + 1
    bound_c = (H.k - 1) * (log_bound / delta + 1)

    caches = _caches if _caches is not None else {}
    sub_cache = caches.setdefault("sub", {})
    descent_cache = caches.setdefault("descent", {})

    amask = H.vertex_mask
    pieces: list[tuple[int, ...]] = []
    while family.member(amask):
        if Fraction(amask.bit_count()) < family.min_fraction * H.v:
            raise ContractError(
                f"family member of {amask.bit_count()} vertices is below the "
                f"declared size floor {family.min_fraction} * v(H)"
            )
        if len(pieces) >= round_cap:
            raise PreconditionError(
                f"round cap {round_cap} exceeded: some family member induces "
                f"fewer than eps * e(H) = {eps * H.e} edges, so the declared "
                f"density eps = {eps} is violated"
            )
        cached = sub_cache.get(amask)
        if cached is None:
            sub = H.induced(amask)
            cached = (sub, threshold_table(sub, p))
            sub_cache[amask] = cached
        sub, table = cached
        if check_density and sub.e < eps * H.e:
            raise PreconditionError(
                f"density precondition fails: a family member induces {sub.e} "
                f"of {H.e} edges, below eps = {eps}"
            )
        key = (amask, imask & amask)
        res = descent_cache.get(key)
        if res is None or monitor is not None:
            res = fingerprint_descent(sub, imask & amask, params, monitor, _table=table)
            descent_cache[key] = res
        pieces.append(ids_from(res.fingerprint_mask))
        amask = res.container_mask

    gmask = 0
    for piece in pieces:
        for u in piece:
            gmask |= 1 << (u - 1)
    if gmask & ~imask:
        raise ContractError("fingerprint leaves the independent set")
    if (imask & ~gmask) & ~amask:
        raise ContractError("container misses part of the independent set")
    if gmask.bit_count() > bound_c * frac_ceil(p * H.v):
        raise ContractError("fingerprint exceeds its size bound")

    return ContainerResult(
        fingerprint_mask=gmask,
        container_mask=amask,
        pieces=tuple(pieces),
        rounds=len(pieces),
        size_bound=bound_c,
    )


@dataclass
class ContainerMap:
    """A finished fingerprint -> container map with its parameters."""

    k: int
    p: Fraction
    c: Fraction
    eps: Fraction
    bound: Fraction
    family: str
    records: dict[tuple[int, ...], tuple[int, ...]]

    def to_json_dict(self) -> dict:
        return {
            "params": {
                "k": self.k,
                "p": format_fraction(self.p),
                "c": format_fraction(self.c),
                "eps": format_fraction(self.eps),
                "C": format_fraction(self.bound),
                "family": self.family,
            },
            "records": [
                {"fingerprint": list(s), "container": list(self.records[s])}
                for s in sorted(self.records)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ContainerMap":
        def id_tuple(seq) -> tuple[int, ...]:
            out = tuple(seq)
            if not all(isinstance(u, int) and u >= 1 for u in out):
                raise InputError(f"vertex ids must be positive integers, got {out!r}")
            return out

        try:
            params = data["params"]
            records = {
                id_tuple(rec["fingerprint"]): id_tuple(rec["container"])
                for rec in data["records"]
            }
            return cls(
                k=int(params["k"]),
                p=parse_fraction(params["p"]),
                c=parse_fraction(params["c"]),
                eps=parse_fraction(params["eps"]),
                bound=parse_fraction(params["C"]),
                family=str(params["family"]),
                records=records,
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed container map: {exc}") from exc


Source = Union[str, Iterable[VertexSet]]


def build_container_family(
    H: Hypergraph,
    family: DensityFamily,
    c: Fraction,
    p: Fraction,
    source: Source = "all",
    *,
    limit: Optional[int] = None,
    monitor: Optional[InvariantMonitor] = None,
    check_density: bool = False,
) -> ContainerMap:
    """Containers for a whole family of independent sets, deduplicated by
    fingerprint.

    source may be "all" (every independent set, exhaustively),
    "maximal-closure" (every maximal independent set, then every
    fingerprint that produced, until closed under the fingerprint map),
    or any iterable of vertex sets.  Two witnesses sharing a fingerprint
    must share a container; anything else raises a ContractError.
    """
    cap = limit if limit is not None else oracle.EXHAUSTIVE_LIMIT
    if source == "all":
        witnesses = list(oracle.independent_sets(H, limit=cap))
        closure = False
    elif source == "maximal-closure":
        witnesses = list(oracle.maximal_independent_sets(H, limit=cap))
        closure = True
    elif isinstance(source, str):
        raise InputError(f"unknown source {source!r}")
    else:
        witnesses = [as_mask(w) for w in source]
        closure = False

    caches: dict = {}
    records: dict[tuple[int, ...], tuple[int, ...]] = {}
    seen: set[int] = set()
    queue = list(witnesses)
    while queue:
        w = queue.pop(0)
        if w in seen:
            continue
        seen.add(w)
        res = build_container(
            H, w, family, c, p,
            monitor=monitor, check_density=check_density, _caches=caches,
        )
        key = ids_from(res.fingerprint_mask)
        val = ids_from(res.container_mask)
        if key in records and records[key] != val:
            raise ContractError(
                f"consistency violated: fingerprint {key} maps to two containers"
            )
        records[key] = val
        if closure and res.fingerprint_mask not in seen:
            queue.append(res.fingerprint_mask)

    return ContainerMap(
        k=H.k,
        p=Fraction(p),
        c=Fraction(c),
        eps=family.epsilon,
        bound=size_constant(H.k, c, family.epsilon),
        family=family.description,
        records=records,
    )


def container_count_bound(cmap: ContainerMap, m: int) -> int:
    """Upper bound on the number of independent sets of size m: sum over
    records of C(|container|, m - |fingerprint|), exactly."""
    if m < 0:
        raise InputError(f"m must be >= 0, got {m}")
    total = 0
    for s, f in cmap.records.items():
        rest = m - len(s)
        if rest >= 0:
            total += math.comb(len(f), rest)
    return total


@dataclass
class ContractCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class VerificationReport:
    checks: list[ContractCheck]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in self.checks
        ]


def verify_containers(
    H: Hypergraph,
    cmap: ContainerMap,
    family: DensityFamily,
    witnesses: Iterable[VertexSet],
) -> VerificationReport:
    """Re-derive every contract of a container map against fresh builds.

    Checks parameter consistency, the cover contract on every witness,
    family avoidance and independence of the stored records, the
    fingerprint size bound, idempotence of the fingerprint map, and that
    rebuilding from the witnesses reproduces the stored records exactly.
    """
    witness_masks = [as_mask(w) for w in witnesses]
    checks: list[ContractCheck] = []
    caches: dict = {}

    expected_bound = size_constant(cmap.k, cmap.c, cmap.eps)
    param_problems = []
    if cmap.k != H.k:
        param_problems.append(f"map is for uniformity {cmap.k}, hypergraph has {H.k}")
    if cmap.bound != expected_bound:
        param_problems.append("stored size constant disagrees with its parameters")
    if family.epsilon != cmap.eps:
        param_problems.append("family epsilon disagrees with map epsilon")
    checks.append(
        ContractCheck(
            "parameter-consistency",
            not param_problems,
            "; ".join(param_problems)
            or f"k={cmap.k} p={cmap.p} eps={cmap.eps}; C evaluates the log "
            f"term as a certified rational upper bound on ln(1/eps)",
        )
    )

    fresh: dict[int, ContainerResult] = {}
    cover_problems = []
    for w in witness_masks:
        res = build_container(H, w, family, cmap.c, cmap.p, _caches=caches)
        fresh[w] = res
        key = ids_from(res.fingerprint_mask)
        if res.fingerprint_mask & ~w:
            cover_problems.append(f"fingerprint {key} leaves its witness")
            continue
        stored = cmap.records.get(key)
        if stored is None:
            cover_problems.append(f"fingerprint {key} missing from the map")
            continue
        fstored = mask_from(stored)
        if (w & ~res.fingerprint_mask) & ~fstored:
            cover_problems.append(f"container for {key} misses part of its witness")
    checks.append(
        ContractCheck(
            "cover",
            not cover_problems,
            cover_problems[0] if cover_problems else f"{len(witness_masks)} witnesses covered",
        )
    )

    avoid_problems = []
    indep_problems = []
    size_problems = []
    size_cap = cmap.bound * cmap.p * H.v
    for s, f in cmap.records.items():
        if family.member(mask_from(f)):
            avoid_problems.append(f"container for {s} is a family member")
        if not H.is_independent(mask_from(s)):
            indep_problems.append(f"fingerprint {s} is not independent")
        if len(s) > size_cap:
            size_problems.append(f"fingerprint {s} exceeds C * p * v = {size_cap}")
    checks.append(
        ContractCheck(
            "family-avoidance",
            not avoid_problems,
            avoid_problems[0] if avoid_problems else f"{len(cmap.records)} containers stay outside the family",
        )
    )
    checks.append(
        ContractCheck(
            "fingerprint-independence",
            not indep_problems,
            indep_problems[0] if indep_problems else "all fingerprints independent",
        )
    )
    checks.append(
        ContractCheck(
            "fingerprint-size",
            not size_problems,
            size_problems[0] if size_problems else f"all fingerprints within C * p * v = {size_cap}",
        )
    )

    idem_problems = []
    for s, f in cmap.records.items():
        try:
            res = build_container(H, mask_from(s), family, cmap.c, cmap.p, _caches=caches)
        except (ContractError, InputError) as exc:
            idem_problems.append(f"rebuilding from fingerprint {s} failed: {exc}")
            continue
        if ids_from(res.fingerprint_mask) != s:
            idem_problems.append(f"fingerprint map is not idempotent at {s}")
        elif ids_from(res.container_mask) != f:
            idem_problems.append(f"rebuilt container for {s} disagrees with the map")
    checks.append(
        ContractCheck(
            "consistency-idempotence",
            not idem_problems,
            idem_problems[0] if idem_problems else "fingerprints are fixed points",
        )
    )

    rebuilt: dict[tuple[int, ...], tuple[int, ...]] = {}
    rebuild_clash = None
    for w in witness_masks:
        res = fresh[w]
        key = ids_from(res.fingerprint_mask)
        val = ids_from(res.container_mask)
        if key in rebuilt and rebuilt[key] != val:
            rebuild_clash = key
        rebuilt[key] = val
    determinism_ok = rebuild_clash is None and rebuilt == cmap.records
    checks.append(
        ContractCheck(
            "determinism",
            determinism_ok,
            "rebuild from witnesses reproduces the map"
            if determinism_ok
            else "rebuild from witnesses disagrees with the stored records",
        )
    )

    return VerificationReport(checks)
