"""Command-line front-end: generate instances, build and verify
container maps, count, and run the Monte Carlo checks, reproducibly.

Every output is accompanied by a run manifest (command, parameters,
input digests, seed, tool version): as a sibling `<out>.manifest.json`
for file outputs, embedded under "manifest" for `--json` stdout, and on
stderr for human-readable output.  Outputs contain no timestamps, so
reruns with equal manifests are byte-identical; wall times go to stderr
only.  Exit codes: 0 pass, 1 contract/verification failure, 2 bad input
or precondition.  Rationals cross this boundary as "num/den" strings.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import oracle
from .containers import (
    ContainerMap,
    InvariantMonitor,
    MinSizeFamily,
    build_container_family,
    container_count_bound,
    parse_family,
    verify_containers,
)
from .errors import ContractError, InputError
from .hypergraph import Hypergraph, dump_hypergraph, load_hypergraph
from .instances import (
    ap_hypergraph,
    blowup_copies_hypergraph,
    copies_hypergraph,
    homothetic_hypergraph,
    minimal_degree_constant,
    poly_ap_hypergraph,
    t_density,
)
from .ratmath import format_fraction, parse_fraction

TOOL = {"name": "hypercontainers", "version": __version__}


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def make_manifest(command: str, params: dict, input_paths: list[str], seed=None) -> dict:
    return {
        "command": command,
        "params": params,
        "inputs": {path: _digest(path) for path in input_paths},
        "seed": seed,
        "tool": TOOL,
    }


def emit(args, payload: dict, human_lines: list[str], manifest: dict) -> None:
    """Route a result to --out file, --json stdout, or human stdout,
    always accompanied by its manifest."""
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(canonical_json(payload))
        Path(out + ".manifest.json").write_text(canonical_json(manifest))
        print(f"wrote {out}")
    elif getattr(args, "json", False):
        body = dict(payload)
        body["manifest"] = manifest
        sys.stdout.write(canonical_json(body))
    else:
        for line in human_lines:
            print(line)
        sys.stderr.write(canonical_json(manifest))


def _load_pattern(path: str) -> Hypergraph:
    try:
        return load_hypergraph(path)
    except FileNotFoundError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_points(text: str):
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise InputError(f"empty point in pattern {text!r}")
        try:
            points.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError as exc:
            raise InputError(f"bad coordinate in pattern {text!r}") from exc
    return points


def cmd_gen(args) -> int:
    if args.kind == "ap":
        H = ap_hypergraph(args.n, args.k)
        comments = (f"{args.k}-term arithmetic progressions in [{args.n}]",
                    "vertex i is the integer i")
        params = {"kind": "ap", "n": args.n, "k": args.k}
        inputs = []
    elif args.kind == "poly":
        H = poly_ap_hypergraph(args.n, args.k, args.r)
        comments = (
            f"progressions a, a+d^{args.r}, ..., a+{args.k}*d^{args.r} in [{args.n}]",
            "vertex i is the integer i",
        )
        params = {"kind": "poly", "n": args.n, "k": args.k, "r": args.r}
        inputs = []
    elif args.kind == "homothetic":
        points = _parse_points(args.pattern)
        H = homothetic_hypergraph(points, args.n)
        dim = len(points[0])
        comments = (
            f"homothetic images a + b*F of F = {args.pattern} in the grid [{args.n}]^{dim}",
            f"grid point (x_1..x_{dim}) has id 1 + sum (x_t - 1) * {args.n}^({dim}-t)",
        )
        params = {"kind": "homothetic", "n": args.n, "pattern": args.pattern}
        inputs = []
    elif args.kind == "copies":
        Hs = _load_pattern(args.graph)
        H = copies_hypergraph(Hs, args.n)
        comments = (
            f"copies of the pattern from {args.graph} inside the complete "
            f"{Hs.k}-uniform hypergraph on [{args.n}]",
            f"vertex i is the i-th {Hs.k}-subset of [{args.n}] in lexicographic order",
        )
        params = {"kind": "copies", "n": args.n, "graph": args.graph}
        inputs = [args.graph]
    else:  # blowup
        Hs = _load_pattern(args.graph)
        H = blowup_copies_hypergraph(Hs, args.n)
        comments = (
            f"canonical copies of the pattern from {args.graph} in its {args.n}-blow-up",
            f"pattern edge j (0-based, edges sorted) owns ids j*{args.n}^2 + (a-1)*{args.n} + b",
        )
        params = {"kind": "blowup", "n": args.n, "graph": args.graph}
        inputs = [args.graph]

    dump_hypergraph(H, args.out, comments=comments)
    manifest = make_manifest("gen", {**params, "out": args.out}, inputs)
    Path(args.out + ".manifest.json").write_text(canonical_json(manifest))
    print(f"wrote {args.out}: k={H.k} v={H.v} e={H.e}")
    return 0


def cmd_containers(args) -> int:
    H = load_hypergraph(args.input)
    p = args.p
    spec = args.family
    if spec is None:
        size = oracle.independence_number(H, limit=args.limit) + 1
        spec = f"min-size:{size}"
    elif spec.startswith("min-size:"):
        try:
            size = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise InputError(f"bad size in family spec {spec!r}") from exc
    else:
        raise InputError(f"unknown family spec {spec!r}; expected 'min-size:<s>'")

    if args.eps == "auto":
        eps = oracle.density_epsilon(H, size, limit=args.limit)
        if eps == 0:
            raise InputError(
                f"density at size {size} is 0 at this instance (some {size}-set "
                f"spans no edge); pick a larger size or pass --eps explicitly"
            )
    else:
        eps = parse_fraction(args.eps)
    family = MinSizeFamily(size, H.v, eps)

    c = minimal_degree_constant(H, p) if args.c == "auto" else parse_fraction(args.c)

    monitor = InvariantMonitor() if args.monitor else None
    cmap = build_container_family(
        H, family, c, p,
        source=args.source, limit=args.limit, monitor=monitor,
        check_density=args.check_density,
    )
    payload = cmap.to_json_dict()
    manifest = make_manifest(
        "containers",
        {
            "input": args.input,
            "p": format_fraction(p),
            "c": format_fraction(c),
            "eps": format_fraction(eps),
            "family": family.description,
            "source": args.source,
            "limit": args.limit,
        },
        [args.input],
    )
    human = [
        f"container map: {len(cmap.records)} records on k={H.k} v={H.v} e={H.e}",
        f"p={format_fraction(p)} c={format_fraction(c)} eps={format_fraction(eps)} "
        f"C={format_fraction(cmap.bound)}",
        "(C evaluates ln(1/eps) as a certified rational upper bound)",
    ]
    if monitor is not None:
        human.append(f"monitor: {monitor.steps} scythe steps, "
                     f"{len(monitor.violations)} violations")
    emit(args, payload, human, manifest)
    if monitor is not None and monitor.violations:
        for line in monitor.violations[:10]:
            print(f"violation: {line}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    H = load_hypergraph(args.input)
    try:
        data = json.loads(Path(args.map).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"container map {args.map} is not valid JSON: {exc}") from exc
    cmap = ContainerMap.from_json_dict(data)
    family = parse_family(cmap.family, H, cmap.eps)
    if args.witnesses == "all":
        witnesses = list(oracle.independent_sets(H, limit=args.limit))
    else:
        witnesses = oracle.maximal_independent_sets(H, limit=args.limit)
    report = verify_containers(H, cmap, family, witnesses)
    payload = {
        "all_pass": report.all_pass,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
    }
    manifest = make_manifest(
        "verify",
        {
            "input": args.input,
            "map": args.map,
            "witnesses": args.witnesses,
            "limit": args.limit,
        },
        [args.input, args.map],
    )
    human = report.lines() + [
        ("ALL PASS" if report.all_pass else "FAIL") + f" ({len(witnesses)} witnesses)"
    ]
    emit(args, payload, human, manifest)
    return 0 if report.all_pass else 1


def cmd_count(args) -> int:
    start = time.monotonic()
    if args.mode == "brute":
        H = load_hypergraph(args.input)
        if args.threads > 1:
            if args.m is not None:
                counts = {
                    args.m: oracle.count_independent_sets_threaded(
                        H, args.m, args.threads, limit=args.limit
                    )
                }
            else:
                raise InputError("--threads needs --m (partitioned single-size count)")
        elif args.m is not None:
            counts = {args.m: oracle.count_independent_sets(H, args.m, limit=args.limit)}
        else:
            counts = oracle.count_profile(H, limit=args.limit)
        params = {
            "method": "brute",
            "input": args.input,
            "m": args.m,
            "threads": args.threads,
            "limit": args.limit,
        }
        inputs = [args.input]
    else:  # bound
        try:
            data = json.loads(Path(args.map).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"container map {args.map} is not valid JSON: {exc}") from exc
        cmap = ContainerMap.from_json_dict(data)
        if args.m is not None:
            ms = [args.m]
        else:
            cap = max((len(s) + len(f) for s, f in cmap.records.items()), default=0)
            ms = range(cap + 1)
        counts = {m: container_count_bound(cmap, m) for m in ms}
        params = {"method": "bound", "map": args.map, "m": args.m}
        inputs = [args.map]

    report = oracle.CountReport(params=params, counts=counts,
                                wall_time_s=time.monotonic() - start)
    manifest = make_manifest(f"count {args.mode}", params, inputs)
    if args.csv:
        Path(args.csv).write_text(report.to_csv_text())
        Path(args.csv + ".manifest.json").write_text(canonical_json(manifest))
        print(f"wrote {args.csv}", file=sys.stderr)
    human = [f"m={m}: {n}" for m, n in sorted(counts.items())]
    print(f"wall_time_s={report.wall_time_s:.3f}", file=sys.stderr)
    emit(args, report.to_json_dict(), human, manifest)
    return 0


def cmd_density(args) -> int:
    H = load_hypergraph(args.input)
    value = oracle.density_epsilon(H, args.s, limit=args.limit)
    payload = {"s": args.s, "value": format_fraction(value)}
    manifest = make_manifest(
        "density", {"input": args.input, "s": args.s, "limit": args.limit}, [args.input]
    )
    human = [f"density_epsilon(s={args.s}) = {format_fraction(value)}"]
    if value == 0:
        human.append(
            "note: 0 means some subset of that size spans no edge at this "
            "instance size; it is a value, not a precondition failure"
        )
    emit(args, payload, human, manifest)
    return 0


def cmd_mc(args) -> int:
    report = oracle.mc_szemeredi(args.n, args.p, args.delta, args.k,
                                 args.trials, args.seed)
    manifest = make_manifest(
        "mc",
        {
            "n": args.n,
            "p": format_fraction(report.p),
            "delta": format_fraction(report.delta),
            "k": args.k,
            "trials": args.trials,
        },
        [],
        seed=args.seed,
    )
    human = [
        f"rate = {report.hits}/{report.trials} = {format_fraction(report.rate)} "
        f"(generator {report.generator}, seed {report.seed})"
    ]
    emit(args, report.to_json_dict(), human, manifest)
    return 0


def cmd_m2(args) -> int:
    Hs = _load_pattern(args.graph)
    value = t_density(Hs, args.t)
    payload = {"t": args.t, "value": format_fraction(value)}
    manifest = make_manifest(
        "m2", {"graph": args.graph, "t": args.t}, [args.graph]
    )
    emit(args, payload, [format_fraction(value)], manifest)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercontainers",
        description="Containers for independent sets in uniform hypergraphs: "
        "instance generators, container construction, verification, exact "
        "counting, and Monte Carlo checks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, out=True):
        if out:
            sp.add_argument("--out", help="write the JSON result to this path "
                            "(a .manifest.json sibling records the run)")
        sp.add_argument("--json", action="store_true",
                        help="print canonical JSON (with embedded manifest) to stdout")

    gen = sub.add_parser("gen", help="generate an instance hypergraph file")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    g_ap = gen_sub.add_parser("ap", help="k-term arithmetic progressions in [n]")
    g_ap.add_argument("--n", type=int, required=True)
    g_ap.add_argument("--k", type=int, required=True)
    g_poly = gen_sub.add_parser("poly", help="polynomial progressions a + i*d^r")
    g_poly.add_argument("--n", type=int, required=True)
    g_poly.add_argument("--k", type=int, required=True)
    g_poly.add_argument("--r", type=int, required=True)
    g_hom = gen_sub.add_parser("homothetic", help="homothetic images of a point pattern")
    g_hom.add_argument("--n", type=int, required=True)
    g_hom.add_argument("--pattern", required=True,
                       help="points 'x1,y1;x2,y2;...' (1-d: '1;2')")
    g_cop = gen_sub.add_parser("copies", help="copies of a small pattern in K_n^t")
    g_cop.add_argument("--graph", required=True, help="pattern hypergraph file")
    g_cop.add_argument("--n", type=int, required=True)
    g_blow = gen_sub.add_parser("blowup", help="canonical copies in the n-blow-up")
    g_blow.add_argument("--graph", required=True, help="pattern hypergraph file")
    g_blow.add_argument("--n", type=int, required=True)
    for sp in (g_ap, g_poly, g_hom, g_cop, g_blow):
        sp.add_argument("--out", required=True, help="output hypergraph file")
        sp.set_defaults(func=cmd_gen)

    cont = sub.add_parser("containers", help="build a fingerprint/container map")
    cont.add_argument("--input", required=True, help="hypergraph file")
    cont.add_argument("--p", type=parse_fraction, required=True)
    cont.add_argument("--c", default="auto",
                      help="degree constant 'num/den', or 'auto' for the exact minimum")
    cont.add_argument("--eps", default="auto",
                      help="density 'num/den', or 'auto' for the oracle value")
    cont.add_argument("--family", default=None,
                      help="family spec 'min-size:<s>' (default: independence number + 1)")
    cont.add_argument("--source", choices=["all", "maximal-closure"], default="all")
    cont.add_argument("--limit", type=int, default=oracle.EXHAUSTIVE_LIMIT,
                      help="exhaustive enumeration vertex limit")
    cont.add_argument("--monitor", action="store_true",
                      help="check the per-level descent invariants during the build")
    cont.add_argument("--check-density", action="store_true",
                      help="assert e(H[A]) >= eps * e(H) at every round")
    add_common(cont)
    cont.set_defaults(func=cmd_containers)

    ver = sub.add_parser("verify", help="re-check every contract of a container map")
    ver.add_argument("--input", required=True, help="hypergraph file")
    ver.add_argument("--map", required=True, help="container map JSON")
    ver.add_argument("--witnesses", choices=["all", "maximal-closure"], default="all")
    ver.add_argument("--limit", type=int, default=oracle.EXHAUSTIVE_LIMIT)
    add_common(ver)
    ver.set_defaults(func=cmd_verify)

    cnt = sub.add_parser("count", help="exact counts and container bounds")
    cnt_sub = cnt.add_subparsers(dest="mode", required=True)
    c_brute = cnt_sub.add_parser("brute", help="exhaustive independent-set counts")
    c_brute.add_argument("--input", required=True)
    c_brute.add_argument("--m", type=int, default=None,
                         help="count only this size (default: full profile)")
    c_brute.add_argument("--threads", type=int, default=1,
                         help="partition the enumeration across threads")
    c_brute.add_argument("--limit", type=int, default=oracle.EXHAUSTIVE_LIMIT)
    c_bound = cnt_sub.add_parser("bound", help="container counting bound")
    c_bound.add_argument("--map", required=True, help="container map JSON")
    c_bound.add_argument("--m", type=int, default=None)
    for sp in (c_brute, c_bound):
        sp.add_argument("--csv", default=None, help="also write m,count rows to this path")
        add_common(sp)
        sp.set_defaults(func=cmd_count)

    dens = sub.add_parser("density", help="exact minimum induced edge fraction")
    dens.add_argument("--input", required=True)
    dens.add_argument("--s", type=int, required=True, help="subset size")
    dens.add_argument("--limit", type=int, default=oracle.EXHAUSTIVE_LIMIT)
    add_common(dens)
    dens.set_defaults(func=cmd_density)

    mc = sub.add_parser("mc", help="Monte Carlo Szemerédi-property rate on [n]_p")
    mc.add_argument("--n", type=int, required=True)
    mc.add_argument("--p", type=parse_fraction, required=True)
    mc.add_argument("--delta", type=parse_fraction, required=True)
    mc.add_argument("--k", type=int, required=True)
    mc.add_argument("--trials", type=int, required=True)
    mc.add_argument("--seed", type=int, default=0)
    add_common(mc)
    mc.set_defaults(func=cmd_mc)

    m2 = sub.add_parser("m2", help="maximum (e-1)/(v-t) density of a pattern")
    m2.add_argument("--graph", required=True, help="pattern hypergraph file")
    m2.add_argument("--t", type=int, default=2)
    add_common(m2)
    m2.set_defaults(func=cmd_m2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ContractError as exc:
        print(f"contract violated: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
