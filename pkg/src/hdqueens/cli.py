"""Command line front end.

Exit codes: 0 success (optimal / verified), 1 certificate rejected,
2 a solve limit was hit, 3 bad input (arguments, files, missing bounds).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .board import BoardError, BoardSpec
from .bounds import Exact, LowerBound, UnavailableBoundError, known, trivial_upper_bound
from .heuristics import greedy_random, modular_construct, search_scheme
from .model import Family, ModelError, Variant, build, cut_family, emit_dimacs, emit_lp, emit_warmstart
from .solver import Placement, PlacementError, SolveLimits, Status, solve, verify

EXIT_OK, EXIT_REJECTED, EXIT_LIMIT, EXIT_INPUT = 0, 1, 2, 3
OUTPUT_ENV = "HDQUEENS_OUTPUT_DIR"

FAMILIES = {
    "base": Family.BASE,
    "cube": Family.CUBE,
    "star": Family.STAR,
    "cs": Family.CUBE_STAR,
    "all": Family.ALL,
    "inf": Family.BASE,
}


class InputError(Exception):
    pass


def _out_dir(args) -> Path:
    path = Path(args.out_dir or os.environ.get(OUTPUT_ENV) or ".")
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputError(f"cannot create output directory {path}: {exc}") from exc
    return path


def _write(path: Path, text: str) -> str:
    try:
        path.write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc
    return str(path)


def _spec(args) -> BoardSpec:
    try:
        return BoardSpec(args.n, args.d)
    except BoardError as exc:
        raise InputError(str(exc)) from exc


def _load_certificate(path: str) -> Placement:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read certificate {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return Placement.from_json(data)
    except (PlacementError, BoardError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _hs(text: str | None):
    if text is None:
        return None
    try:
        return [int(h) for h in text.split(",") if h.strip()]
    except ValueError as exc:
        raise InputError(f"bad h-list {text!r}") from exc


def cmd_model(args) -> int:
    spec = _spec(args)
    if args.variant == "inf" and args.k is None:
        raise InputError("--variant inf needs --k")
    warm = _load_certificate(args.warmstart) if args.warmstart else None
    variant = Variant(FAMILIES[args.variant], None if args.k is None else args.k + 1, warm,
                      _hs(args.cube_h), _hs(args.star_h))
    try:
        model = build(spec, variant)
    except (UnavailableBoundError, BoardError) as exc:
        raise InputError(str(exc)) from exc
    out = _out_dir(args)
    stem = out / f"queens_n{spec.n}_d{spec.d}_{model.name}"
    files = {"lp": _write(stem.with_suffix(".lp"), emit_lp(model))}
    if warm is not None:
        try:
            files["warmstart"] = _write(stem.with_suffix(".mst"), emit_warmstart(model))
        except ModelError as exc:
            raise InputError(str(exc)) from exc
    if args.dimacs:
        files["dimacs"] = _write(out / f"queens_n{spec.n}_d{spec.d}.dimacs", emit_dimacs(spec))
    counts = model.counts()
    report = {"n": spec.n, "d": spec.d, "variant": model.name, "variables": model.num_variables,
              "constraints": counts, "files": files}
    lines = [f"({spec.n},{spec.d}) {model.name}: {model.num_variables} variables"]
    lines += [f"  {kind:<12} {cnt}" for kind, cnt in counts.items()]
    lines += [f"wrote {path}" for path in files.values()]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_solve(args) -> int:
    spec = _spec(args)
    try:
        cuts = cut_family(spec, FAMILIES[args.cuts], cube_h=_hs(args.cube_h), star_h=_hs(args.star_h))
    except (UnavailableBoundError, BoardError) as exc:
        raise InputError(str(exc)) from exc
    try:
        limits = SolveLimits(args.time_limit, args.node_limit, None, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.threads < 1:
        raise InputError("--threads must be >= 1")
    res = solve(spec, cuts, limits, threads=args.threads)
    out = _out_dir(args)
    cert = _write(out / f"queens_n{spec.n}_d{spec.d}.json", json.dumps(res.best.to_json()) + "\n")
    report = res.report()
    report.update(cuts=args.cuts, certificate=cert)
    _write(out / f"queens_n{spec.n}_d{spec.d}_report.json", json.dumps(report, sort_keys=True) + "\n")
    lines = [f"({spec.n},{spec.d}) primal {res.primal} dual {res.dual_bound} {res.status.value}"
             f" nodes {res.nodes} {res.elapsed:.2f}s", f"wrote {cert}"]
    _emit(args, report, lines)
    return EXIT_OK if res.status is Status.OPTIMAL else EXIT_LIMIT


def cmd_verify(args) -> int:
    cert = _load_certificate(args.certificate)
    try:
        conflicts = verify(cert)
    except BoardError as exc:
        raise InputError(str(exc)) from exc
    ok = not conflicts and (args.expect is None or len(cert) == args.expect)
    report = {"n": cert.spec.n, "d": cert.spec.d, "size": len(cert), "ok": ok, "expected": args.expect,
              "conflicts": [[list(a), list(b)] for a, b in conflicts]}
    lines = [f"({cert.spec.n},{cert.spec.d}) {len(cert)} queens: " + ("ok" if not conflicts else f"{len(conflicts)} conflicts")]
    lines += [f"  {a} attacks {b}" for a, b in conflicts[:20]]
    if args.expect is not None and len(cert) != args.expect:
        lines.append(f"  expected {args.expect} queens")
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_construct(args) -> int:
    spec = _spec(args)
    scheme = search_scheme(spec.n, spec.d, args.budget)
    if scheme is not None:
        placement, method, coeffs = modular_construct(scheme), "modular", list(scheme.coeffs)
    else:
        placement, method, coeffs = greedy_random(spec, args.seed, args.restarts), "greedy", None
    out = _out_dir(args)
    cert = _write(out / f"queens_n{spec.n}_d{spec.d}.json", json.dumps(placement.to_json()) + "\n")
    report = {"n": spec.n, "d": spec.d, "size": len(placement), "method": method, "coeffs": coeffs,
              "certificate": cert}
    lines = [f"({spec.n},{spec.d}) {len(placement)} queens via {method}" + (f" coeffs {coeffs}" if coeffs else ""),
             f"wrote {cert}"]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_bounds(args) -> int:
    spec = _spec(args)
    value = known(spec.n, spec.d)
    upper = trivial_upper_bound(spec.n, spec.d)
    if isinstance(value, Exact):
        status, k, text = "exact", value.k, f"Exact {value.k}"
    elif isinstance(value, LowerBound):
        status, k, text = "lower_bound", value.k, f"LowerBound {value.k}"
    else:
        status, k, text = "unknown", None, "Unknown"
    report = {"n": spec.n, "d": spec.d, "status": status, "value": k, "upper": upper}
    _emit(args, report, [f"({spec.n},{spec.d}) {text}, upper {upper}"])
    return EXIT_OK


def _board_args(p):
    p.add_argument("-n", type=int, required=True, help="squares per dimension")
    p.add_argument("-d", type=int, required=True, help="number of dimensions")


def _family_args(p, name, default):
    p.add_argument(name, choices=sorted(FAMILIES), default=default)
    p.add_argument("--cube-h", help="comma separated cube sides (default: all)")
    p.add_argument("--star-h", help="comma separated star radii (default: all)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hdqueens", description="Queens on d-dimensional boards.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--out-dir", help=f"output directory (default ${OUTPUT_ENV} or .)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress events to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="write the IP as an LP file")
    _board_args(p)
    _family_args(p, "--variant", "base")
    p.add_argument("--k", type=int, help="known optimum; adds the sum(x) = k+1 feasibility row")
    p.add_argument("--warmstart", metavar="CERT", help="certificate JSON to emit as a MIP start")
    p.add_argument("--dimacs", action="store_true", help="also write the attack graph")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("solve", help="solve exactly with branch and bound")
    _board_args(p)
    _family_args(p, "--cuts", "base")
    p.add_argument("--time-limit", type=float, default=600.0)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("certificate")
    p.add_argument("--expect", type=int, help="required number of queens")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a certificate heuristically")
    _board_args(p)
    p.add_argument("--budget", type=int, default=10 ** 6, help="coefficient tuples to try")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=100)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="known optimum and trivial upper bound")
    _board_args(p)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
