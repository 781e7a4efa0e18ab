"""Command-line entry point.

Exit codes: 0 success or "true", 1 "false" or a violation, 2 usage or input
error, 3 budget exceeded.  Machine output is ``key=value`` lines with
1-based vertex ids.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import acceptance, families, grid, hamming, sat, solve, verify
from .bits import members
from .graph import GraphError, format_code, format_graph, parse_code, parse_graph

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _ids(mask: int) -> str:
    return " ".join(str(v + 1) for v in members(mask))


def _emit(out, pairs, human: bool) -> None:
    for key, value in pairs:
        if human:
            out.write(f"{key.replace('_', ' ')}: {value}\n")
        else:
            out.write(f"{key}={value}\n")


# subcommands


def cmd_gen(args, out) -> int:
    try:
        params = [int(p) for p in args.params]
    except ValueError:
        raise UsageError("family parameters must be integers") from None
    if args.family == "random":
        if len(args.params) != 2:
            raise UsageError("random takes: n percent_edge_probability")
        g = families.random_graph(params[0], params[1] / 100, args.seed, connected=True)
    else:
        g = families.generate(args.family, params)
    out.write(format_graph(g))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g = parse_graph(_read(args.graph))
    code = parse_code(_read(args.code), g.n)
    bad = verify.check(args.cls, g, code, args.radius, args.ell, args.t)
    pairs = [("valid", "true" if bad is None else "false")]
    if bad is not None:
        pairs.append(("violation", bad.kind))
        pairs.append(("witness", bad.describe(one_based=True).split(": ", 1)[1]))
    _emit(out, pairs, args.human)
    return EXIT_OK if bad is None else EXIT_FALSE


def cmd_solve(args, out) -> int:
    g = parse_graph(_read(args.graph))
    budget = solve.Budget(args.budget_nodes, args.budget_seconds)
    try:
        if args.cls == "idc":
            rep = (solve.count_min_id_codes(g, args.radius, budget, args.method) if args.count
                   else solve.min_id_code(g, args.radius, budget))
        elif args.cls == "ld":
            rep = solve.min_ld_code(g, args.radius, budget, args.count)
        else:
            rep = (solve.count_min_socs(g, budget, args.method) if args.count else solve.min_soc(g, budget))
    except solve.TwinsPresent as exc:
        _emit(out, [("twins", f"{exc.pair[0] + 1} {exc.pair[1] + 1}")], args.human)
        return EXIT_FALSE
    except solve.NoSocExists:
        _emit(out, [("soc", "none")], args.human)
        return EXIT_FALSE
    except solve.BudgetExceeded as exc:
        pairs = [("status", "budget-exceeded"), ("lower_bound", exc.lower), ("nodes", exc.nodes)]
        if exc.upper is not None:
            pairs.append(("upper_bound", exc.upper))
        if exc.certificate is not None:
            pairs.append(("best_code", _ids(exc.certificate)))
        _emit(out, pairs, args.human)
        return EXIT_BUDGET
    pairs = [("optimum", rep.optimum), ("certificate", _ids(rep.certificate))]
    if rep.count is not None:
        pairs.append(("count", rep.count))
    pairs += [("lower_bound", rep.lower_bound), ("lower_bound_used", rep.lower_bound_used),
              ("nodes", rep.nodes_explored)]
    if "uncovered_vertex" in rep.extra:
        pairs.append(("uncovered_vertex", rep.extra["uncovered_vertex"] + 1))
    _emit(out, pairs, args.human)
    return EXIT_OK


def cmd_hamming(args, out) -> int:
    action = args.action
    if action == "bounds":
        pairs = []
        for b in hamming.lower_bounds(args.n, args.radius, args.ell):
            pairs.append((f"bound_{b.label}", "skipped" if b.value is None else b.value))
        pairs.append(("best", hamming.best_lower_bound(args.n, args.radius, args.ell)))
        known = hamming.known_value(args.n, args.radius) if args.ell == 1 else None
        if known is not None:
            pairs.append(("known", known))
        _emit(out, pairs, args.human)
        return EXIT_OK
    if action == "covradius":
        _emit(out, [("covering_radius", hamming.min_covering_radius(args.n, args.k))], args.human)
        return EXIT_OK
    if not args.files:
        raise UsageError(f"hamming {action} needs a code file")
    code = hamming.parse_code(_read(args.files[0]))
    if action == "verify":
        n = code.n
        if args.mu:
            ok = hamming.is_mu_covering_fast(n, code, args.radius, args.mu, args.perfect)
        elif args.ell > 1:
            ok = hamming.is_l_idc_fast(n, code, args.radius, args.ell)
        else:
            ok = hamming.is_idc_fast(n, code, args.radius)
        _emit(out, [("valid", "true" if ok else "false"), ("size", len(code))], args.human)
        return EXIT_OK if ok else EXIT_FALSE
    if action == "construct-pi":
        out.write(hamming.format_code(hamming.pi_u_construction(code.n, code)))
        return EXIT_OK
    if action == "direct-sum":
        if len(args.files) != 2:
            raise UsageError("direct-sum needs two code files")
        other = hamming.parse_code(_read(args.files[1]))
        out.write(hamming.format_code(hamming.direct_sum(code, code.n, other, other.n)))
        return EXIT_OK
    raise UsageError(f"unknown hamming action {action}")


def cmd_grid(args, out) -> int:
    if args.action == "search":
        if args.kind is None or args.det is None or args.count is None:
            raise UsageError("grid search needs --kind, --det and --count")
        pc = grid.search_tiles(args.kind, args.radius, args.det, args.count, args.mode, args.seed)
        if pc is None:
            _emit(out, [("found", "false")], args.human)
            return EXIT_FALSE
        d = pc.density()
        out.write(grid.format_tile(pc))
        _emit(out, [("found", "true"), ("density", f"{d.numerator}/{d.denominator}")], args.human)
        return EXIT_OK
    if not args.tile:
        raise UsageError(f"grid {args.action} needs a tile file")
    pc = grid.parse_tile(_read(args.tile))
    d = pc.density()
    pairs = [("density", f"{d.numerator}/{d.denominator}"),
             ("density_num", d.numerator), ("density_den", d.denominator)]
    if args.action == "density":
        _emit(out, pairs, args.human)
        return EXIT_OK
    bad = grid.verify_periodic(pc, args.radius)
    pairs.insert(0, ("valid", "true" if bad is None else "false"))
    if bad is not None:
        pairs.insert(1, ("violation", bad.describe()))
    _emit(out, pairs, args.human)
    return EXIT_OK if bad is None else EXIT_FALSE


def cmd_reduce(args, out) -> int:
    f = sat.parse_dimacs(_read(args.cnf))
    g, k, names = sat.reduce_3sat(f)
    out.write(format_graph(g, comment=f"k={k}"))
    if args.layout:
        with open(args.layout, "w") as fh:
            fh.write(sat.format_layout(names))
    if args.code:
        model = sat.brute_sat(f)
        if model is None:
            sys.stderr.write("formula is unsatisfiable; no code written\n")
            return EXIT_FALSE
        with open(args.code, "w") as fh:
            fh.write(format_code(sat.code_from_assignment(f, model)))
    return EXIT_OK


def cmd_accept(args, out) -> int:
    if args.suite != "paper":
        raise UsageError(f"unknown suite {args.suite!r}")
    ids = [c for c, *_ in acceptance.CRITERIA]
    if args.only:
        ids = [i for i in ids if i in args.only]
    ok = True
    out.write("criterion\texpected\tgot\tstatus\n")
    for cid in ids:
        res = acceptance.run(cid)
        ok &= res.passed
        out.write(f"{res.id}\t{res.expected}\t{res.got}\t{res.status}\n")
        out.flush()
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="human-readable output instead of key=value")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="idcodes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="emit a graph from a family")
    g.add_argument("family", choices=sorted(families.FAMILIES) + ["random"])
    g.add_argument("params", nargs="*")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="check a code against a class")
    v.add_argument("cls", choices=sorted(verify.CLASSES))
    v.add_argument("--radius", "-r", type=int, default=1)
    v.add_argument("--ell", type=int, default=1)
    v.add_argument("--t", type=int, default=1)
    v.add_argument("graph")
    v.add_argument("code")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", parents=[common], help="minimum code, optionally counted")
    s.add_argument("--radius", "-r", type=int, default=1)
    s.add_argument("--class", dest="cls", choices=("idc", "ld", "soc"), default="idc")
    s.add_argument("--count", action="store_true")
    s.add_argument("--method", choices=("auto", "enumerate", "search"), default="auto")
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-seconds", type=float)
    s.add_argument("graph")
    s.set_defaults(func=cmd_solve)

    h = sub.add_parser("hamming", parents=[common], help="binary Hamming space tools")
    h.add_argument("action", choices=("bounds", "verify", "construct-pi", "direct-sum", "covradius"))
    h.add_argument("--n", type=int)
    h.add_argument("--k", type=int)
    h.add_argument("--radius", "-r", type=int, default=1)
    h.add_argument("--ell", type=int, default=1)
    h.add_argument("--mu", type=int)
    h.add_argument("--perfect", action="store_true")
    h.add_argument("files", nargs="*")
    h.set_defaults(func=cmd_hamming)

    t = sub.add_parser("grid", parents=[common], help="periodic grid codes")
    t.add_argument("action", choices=("verify", "density", "search"))
    t.add_argument("tile", nargs="?")
    t.add_argument("--kind", choices=grid.KINDS)
    t.add_argument("--radius", "-r", type=int, default=1)
    t.add_argument("--det", type=int)
    t.add_argument("--count", type=int)
    t.add_argument("--mode", choices=grid.MODES, default="exhaustive")
    t.set_defaults(func=cmd_grid)

    r = sub.add_parser("reduce", parents=[common], help="3-SAT to identifying code")
    r.add_argument("cnf")
    r.add_argument("--layout", help="write the vertex name map here")
    r.add_argument("--code", help="write the canonical code of a satisfying assignment here")
    r.set_defaults(func=cmd_reduce)

    a = sub.add_parser("accept", parents=[common], help="run the acceptance table")
    a.add_argument("--suite", default="paper")
    a.add_argument("--only", type=int, nargs="*")
    a.set_defaults(func=cmd_accept)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # argparse fills trailing positionals before later options are seen
        if extra and args.command == "hamming" and not any(e.startswith("-") for e in extra):
            args.files += extra
        elif extra and args.command == "grid" and args.tile is None and len(extra) == 1:
            args.tile = extra[0]
        elif extra:
            parser.error("unrecognized arguments: " + " ".join(extra))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "n", None) is not None and args.command == "hamming" and args.n < 1:
        sys.stderr.write("error: --n must be >= 1\n")
        return EXIT_USAGE
    if getattr(args, "radius", 1) < 1:
        sys.stderr.write("error: radius must be >= 1\n")
        return EXIT_USAGE
    if args.command == "hamming" and args.action in ("bounds", "covradius") and args.n is None:
        sys.stderr.write("error: --n is required\n")
        return EXIT_USAGE
    if args.command == "hamming" and args.action == "covradius" and args.k is None:
        sys.stderr.write("error: --k is required\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, GraphError, sat.SatError, grid.GridError, hamming.HammingError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
