"""Command-line entry points: generation, construction, verification,
the exact oracle, pattern analysis, and deterministic sweeps."""

from __future__ import annotations

import argparse
import concurrent.futures
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .constructions import (
    ConstructionReport,
    Params,
    construct_bipartite_family,
    construct_inductive,
    construct_multipartite,
    construct_ntriangle,
    construct_star,
)
from .embed import (
    Family,
    Pattern,
    clique,
    complete_multipartite,
    cycle,
    path,
    pattern_from_graph,
    star,
)
from .errors import ApplicabilityError, ParameterError, SatlabError, SizeError
from .gnp import DeferredGnp, gen_gnp
from .graphs import Graph, read_edge_list, write_edge_list
from .pattern_props import (
    blocks,
    chromatic_number,
    detect_ntriangle,
    detect_star,
    family_min_bipartite_side,
    optimal_colourings,
)
from .saturation import exact_sat, greedy_saturate, is_saturated

CSV_HEADER = (
    "construction,pattern,n,p,seed,edges_before_patch,patch_added,"
    "edges_final,uncompleted_before_patch,verified,runtime_ms"
)

CONSTRUCTIONS = ("bipartite", "ntriangle", "inductive", "star", "multipartite", "greedy")

_PATTERN_RE = re.compile(r"^([KCPS])(\d+)$")


def parse_pattern(spec: str) -> Pattern:
    """Grammar: K<j> complete, C<j> cycle, P<j> path on j vertices,
    S<j> star with j leaves, M:a,b,... complete multipartite, @<path> file."""
    spec = spec.strip()
    if spec.startswith("@"):
        g = read_edge_list(spec[1:])
        return pattern_from_graph(g, spec)
    if spec.startswith("M:"):
        try:
            sizes = [int(x) for x in spec[2:].split(",")]
        except ValueError as exc:
            raise ParameterError(f"malformed multipartite spec {spec!r}") from exc
        return complete_multipartite(sizes)
    m = _PATTERN_RE.match(spec)
    if not m:
        raise ParameterError(f"malformed pattern spec {spec!r}")
    kind, j = m.group(1), int(m.group(2))
    if kind == "K":
        return clique(j)
    if kind == "C":
        return cycle(j)
    if kind == "P":
        return path(j)
    return star(j)


@dataclass
class ExperimentSpec:
    construction: str
    pattern: str
    n_list: list[int]
    p_list: list[float]
    seed_list: list[int]
    out_path: str
    params: Params = field(default_factory=Params)
    jobs: int = 1

    def __post_init__(self):
        if self.construction not in CONSTRUCTIONS:
            raise ParameterError(
                f"construction must be one of {CONSTRUCTIONS}, got {self.construction!r}"
            )
        if not (self.n_list and self.p_list and self.seed_list):
            raise ParameterError("n, p, and seed lists must be nonempty")
        parse_pattern(self.pattern)  # validate eagerly


@dataclass
class ResultRow:
    construction: str
    pattern: str
    n: int
    p: float
    seed: int
    edges_before_patch: int
    patch_added: int
    edges_final: int
    uncompleted_before_patch: int
    verified: str
    runtime_ms: float

    def csv_cells(self) -> list[str]:
        return [
            self.construction,
            self.pattern,
            str(self.n),
            repr(self.p),
            str(self.seed),
            str(self.edges_before_patch),
            str(self.patch_added),
            str(self.edges_final),
            str(self.uncompleted_before_patch),
            self.verified,
            f"{self.runtime_ms:.1f}",
        ]


def run_construction(
    name: str, pattern: Pattern, n: int, p: float, seed: int, params: Params
) -> tuple[Graph, ConstructionReport]:
    """Dispatch one construction run; raises on inapplicability."""
    params = _with_seed(params, seed)
    g = DeferredGnp(n, p, seed)
    if name == "bipartite":
        return construct_bipartite_family(g, Family.of(pattern), params)
    if name == "ntriangle":
        return construct_ntriangle(g, pattern, params)
    if name == "inductive":
        return construct_inductive(g, Family.of(pattern), params)
    if name == "star":
        return construct_star(g, pattern, params)
    if name == "multipartite":
        sizes = _multipartite_sizes(pattern)
        if sizes is None:
            raise ApplicabilityError(f"{pattern.name} is not complete multipartite")
        return construct_multipartite(g, sizes, params)
    if name == "greedy":
        t0 = time.perf_counter()
        host = g.to_graph()
        h = greedy_saturate(host, Family.of(pattern), seed)
        report = ConstructionReport("greedy", n, p, seed)
        report.add_phase("greedy", h.edge_count)
        report.edges_before_patch = h.edge_count
        report.edges_final = h.edge_count
        if n <= params.verify_guard:
            report.verified = (
                "true" if is_saturated(host, h, Family.of(pattern)).saturated else "false"
            )
        else:
            from .saturation import sampled_saturation_check

            ok = sampled_saturation_check(
                host, h, Family.of(pattern), params.verify_samples, seed
            ).saturated
            report.verified = "sampled" if ok else "sampled-fail"
        report.runtime_ms = (time.perf_counter() - t0) * 1000.0
        return h, report
    raise ParameterError(f"unknown construction {name!r}")


def _with_seed(params: Params, seed: int) -> Params:
    from dataclasses import replace

    return replace(params, seed=seed)


def _multipartite_sizes(pattern: Pattern) -> Optional[tuple[int, ...]]:
    m = re.match(r"^M:([\d,]+)$", pattern.name)
    if m:
        return tuple(sorted(int(x) for x in m.group(1).split(",")))
    km = re.match(r"^K(\d+)$", pattern.name)
    if km:
        return tuple([1] * int(km.group(1)))
    return None


def _sweep_cell(args) -> ResultRow:
    name, pattern_spec, n, p, seed, params = args
    pattern = parse_pattern(pattern_spec)
    try:
        _, report = run_construction(name, pattern, n, p, seed, params)
        return ResultRow(
            name,
            pattern_spec,
            n,
            p,
            seed,
            report.edges_before_patch,
            report.patch_added,
            report.edges_final,
            report.uncompleted_before_patch,
            report.verified,
            report.runtime_ms,
        )
    except (ApplicabilityError, SizeError, ParameterError) as exc:
        return ResultRow(
            name, pattern_spec, n, p, seed, 0, 0, 0, 0, f"error:{type(exc).__name__}", 0.0
        )


def run_sweep(spec: ExperimentSpec) -> list[ResultRow]:
    """One row per (n, p, seed) cell, sorted; cells are independent."""
    cells = [
        (spec.construction, spec.pattern, n, p, seed, spec.params)
        for n in spec.n_list
        for p in spec.p_list
        for seed in spec.seed_list
    ]
    if spec.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(c) for c in cells]
    rows.sort(key=lambda r: (r.n, r.p, r.seed))
    return rows


def write_rows(rows: Sequence[ResultRow], out_path: str) -> None:
    with open(out_path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(row.csv_cells()) + "\n")


def verify_cmd(host_path: str, sub_path: str, pattern_spec: str) -> int:
    """0 saturated / 1 not / 2 error; prints the verdict."""
    try:
        host = read_edge_list(host_path)
        sub = read_edge_list(sub_path)
        fam = Family.of(parse_pattern(pattern_spec))
        verdict = is_saturated(host, sub, fam)
    except SatlabError as exc:
        print(f"error: {exc}")
        return 2
    if verdict.saturated:
        print("saturated")
        return 0
    kind = "not-free" if not verdict.free else "not-maximal"
    print(f"{kind}: first violation {verdict.first_violation}")
    return 1


# -- argument plumbing ---------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", type=str, default=None)


def _int_list(text: str) -> list[int]:
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            a, b = chunk.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif chunk:
            out.append(int(chunk))
    return out


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="satlab", description="saturated-subgraph constructions on seeded G(n,p)"
    )
    sp = ap.add_subparsers(dest="command", required=True)

    gen = sp.add_parser("gen", help="write a seeded G(n,p) edge list")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, required=True)
    _add_common(gen)

    con = sp.add_parser("construct", help="run one construction")
    con.add_argument("--name", choices=CONSTRUCTIONS, required=True)
    con.add_argument("--pattern", required=True)
    con.add_argument("--n", type=int, required=True)
    con.add_argument("--p", type=float, required=True)
    con.add_argument("--eps", type=float, default=None)
    con.add_argument("--gamma", type=float, default=None)
    con.add_argument("--l", dest="l", type=float, default=None)
    con.add_argument("--c-ind", dest="c_ind", type=float, default=None)
    con.add_argument("--delta", type=float, default=None)
    con.add_argument("--force", action="store_true")
    con.add_argument("--verify-guard", dest="verify_guard", type=int, default=None)
    _add_common(con)

    ver = sp.add_parser("verify", help="check a subgraph file for saturation")
    ver.add_argument("--host", required=True)
    ver.add_argument("--sub", required=True)
    ver.add_argument("--pattern", required=True)
    ver.add_argument("--seed", type=int, default=0, help="reserved; verification is exact")
    ver.add_argument("--out", type=str, default=None, help="also write the verdict line here")

    sat = sp.add_parser("sat-exact", help="exact minimum saturation oracle")
    sat.add_argument("--pattern", required=True)
    group = sat.add_mutually_exclusive_group(required=True)
    group.add_argument("--host", type=str)
    group.add_argument("--complete", type=int, help="use the complete graph K_n")
    _add_common(sat)

    props = sp.add_parser("props", help="structural analysis of a pattern")
    props.add_argument("--pattern", required=True)
    _add_common(props)

    sw = sp.add_parser("sweep", help="run a construction over a grid into CSV")
    sw.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    sw.add_argument("--pattern", required=True)
    sw.add_argument("--n", type=_int_list, required=True)
    sw.add_argument("--p", type=_float_list, required=True)
    sw.add_argument("--seeds", type=_int_list, required=True)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--eps", type=float, default=None)
    sw.add_argument("--gamma", type=float, default=None)
    sw.add_argument("--l", dest="l", type=float, default=None)
    sw.add_argument("--c-ind", dest="c_ind", type=float, default=None)
    sw.add_argument("--delta", type=float, default=None)
    sw.add_argument("--force", action="store_true")
    sw.add_argument("--verify-guard", dest="verify_guard", type=int, default=None)
    sw.add_argument("--out", required=True)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except SatlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "gen":
        g = gen_gnp(args.n, args.p, args.seed)
        if args.out:
            write_edge_list(g, args.out)
            print(f"wrote {g.n} vertices, {g.edge_count} edges to {args.out}")
        else:
            print(f"{g.n} {g.edge_count}")
        return 0

    if args.command == "construct":
        pattern = parse_pattern(args.pattern)
        params = _params_args(args)
        final, report = run_construction(
            args.name, pattern, args.n, args.p, args.seed, params
        )
        print(report.to_kv())
        if args.out:
            write_edge_list(final, args.out)
        return 0

    if args.command == "verify":
        code = verify_cmd(args.host, args.sub, args.pattern)
        if args.out:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(f"exit={code}\n")
        return code

    if args.command == "sat-exact":
        pattern = parse_pattern(args.pattern)
        host = Graph.complete(args.complete) if args.complete else read_edge_list(args.host)
        value = exact_sat(host, pattern)
        print(value)
        return 0

    if args.command == "props":
        return _props_cmd(args)

    if args.command == "sweep":
        params = _params_args(args)
        spec = ExperimentSpec(
            construction=args.construction,
            pattern=args.pattern,
            n_list=args.n,
            p_list=args.p,
            seed_list=args.seeds,
            out_path=args.out,
            params=params,
            jobs=args.jobs,
        )
        rows = run_sweep(spec)
        write_rows(rows, spec.out_path)
        print(f"wrote {len(rows)} rows to {spec.out_path}")
        return 0

    raise ParameterError(f"unknown command {args.command}")


def _params_args(args) -> Params:
    kw = {}
    if getattr(args, "eps", None) is not None:
        kw["eps"] = args.eps
    if getattr(args, "gamma", None) is not None:
        kw["gamma"] = args.gamma
    if getattr(args, "l", None) is not None:
        kw["L"] = args.l
    if getattr(args, "c_ind", None) is not None:
        kw["C_ind"] = args.c_ind
    if getattr(args, "delta", None) is not None:
        kw["delta"] = args.delta
    if getattr(args, "force", False):
        kw["force"] = True
    if getattr(args, "verify_guard", None) is not None:
        kw["verify_guard"] = args.verify_guard
    if getattr(args, "seed", None) is not None:
        kw["seed"] = args.seed
    return Params(**kw)


def _props_cmd(args) -> int:
    pattern = parse_pattern(args.pattern)
    wit = optimal_colourings(pattern)
    print(f"pattern={pattern.name}")
    print(f"vertices={pattern.n}")
    print(f"edges={pattern.graph.edge_count}")
    print(f"chromatic_number={wit.chi}")
    print(f"optimal_colourings={len(wit.partitions)}")
    print(f"max_class_size={wit.max_class_size}")
    nt = detect_ntriangle(pattern)
    if nt is not None:
        print(f"pendant_class_witness=class:{sorted(nt.i_max)};vertex:{nt.v}")
    else:
        print("pendant_class_witness=none")
    st = detect_star(pattern)
    if st is not None:
        print(f"witness_edge={st.u}-{st.v}")
    else:
        print("witness_edge=none")
    blks = blocks(pattern.graph)
    print(f"blocks={len(blks)}")
    side = family_min_bipartite_side(Family.of(pattern))
    if side is not None:
        print(f"min_bipartite_side={side[0]}")
    else:
        print("min_bipartite_side=none")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
