"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 precondition failure,
3 internal check mismatch (or failed verification).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import CheckMismatch, PreconditionError
from .scalars import EXACT, FLOAT, parse_rational, scalar_to_json

EXIT_OK, EXIT_MALFORMED, EXIT_PRECONDITION, EXIT_MISMATCH = 0, 1, 2, 3


class MalformedInput(Exception):
    pass


# helpers --------------------------------------------------------------------

def _read_json(path: str | None):
    try:
        text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(str(exc)) from exc


def _write(args, payload: dict, text: str):
    out = text if args.format == "text" else json.dumps(payload, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _fmt_complex(z) -> str:
    z = complex(z)
    re, im = round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def report_text(rep) -> str:
    from .singular import display_normalize

    lines = []
    if rep.note:
        lines.append(rep.note)
    if not rep.singular:
        lines.append("smooth")
    else:
        lines.append(f"singular: {len(rep.points)} point(s), mu = {rep.mu_global}, tau = {rep.tau_global}")
        lines.append(f"{'point':<44} {'type':<8} {'mu':>3} {'corank':>6}")
        for p in rep.points:
            coords = "(" + " : ".join(_fmt_complex(c) for c in display_normalize(p.coords)) + ")"
            lines.append(f"{coords:<44} {p.type:<8} {p.mu:>3} {p.corank:>6}" + ("  borderline" if p.borderline else ""))
    if rep.NS is not None:
        lines.append(f"N(S) = {rep.NS}, k = {rep.k}, mu formula holds: {rep.formula_check}")
    if rep.components is not None:
        lines.append(f"irreducible components: {rep.components}")
    return "\n".join(lines) + "\n"


def _load_decomposition(args):
    from .waring import WaringDecomposition

    obj = _read_json(args.input)
    try:
        D = WaringDecomposition.from_json(obj)
    except PreconditionError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"not a decomposition: {exc}") from exc
    if args.ring == FLOAT:
        D = WaringDecomposition(D.degree, tuple(tuple(complex(c) for c in f.coeffs) for f in D.forms))
    return D


# subcommands ----------------------------------------------------------------

def cmd_analyze(args) -> int:
    from .singular import SingularityReport, analyze_plane_curve, analyze_rank_np1
    from .waring import arrangement_combinatorics, canonicalize_rank_np1, expand, is_essential

    D = _load_decomposition(args)
    if not is_essential(D, args.eps):
        raise PreconditionError("decomposition is not essential: the linear forms must span the space of linear forms")
    f = expand(D)
    n, r = D.nvars, D.r
    if r == n:
        rep = SingularityReport(singular=False, n=n, d=D.degree, note="smooth, projectively Fermat")
    elif r == n + 1:
        cf = canonicalize_rank_np1(D, args.eps)
        rep = analyze_rank_np1(cf, max(args.eps, 1e-8), f)
        rep.extra["canonical"] = cf.to_json()
    elif n == 3:
        comb = arrangement_combinatorics(D, args.eps)
        rep = analyze_plane_curve(f, args.eps, args.seed)
        rep.extra["arrangement"] = comb.to_json()
    else:
        raise PreconditionError(f"r = {r} forms in n = {n} variables: only r = n, r = n + 1 or n = 3 are supported")
    if n == 3 and r == n + 1:
        rep.extra["arrangement"] = arrangement_combinatorics(D, args.eps).to_json()
    _write(args, rep.to_json(), report_text(rep))
    return EXIT_OK


def cmd_canonicalize(args) -> int:
    from .waring import canonicalize_rank_np1, dual_point, verify_canonical

    D = _load_decomposition(args)
    cf = canonicalize_rank_np1(D, args.eps)
    if not verify_canonical(D, cf):
        raise CheckMismatch("coordinate change does not reproduce the normal form")
    payload = cf.to_json()
    payload["dual_point"] = [scalar_to_json(c, cf.ring) for c in dual_point(cf)]
    text = (f"k = {cf.k}, a = ({', '.join(_fmt_complex(x) for x in cf.a)}), "
            f"permutation = {list(cf.permutation)}\n")
    _write(args, payload, text)
    return EXIT_OK


def _parse_point(text: str, ring: str):
    parts = [s.strip() for s in text.split(",")]
    try:
        if ring == FLOAT:
            return tuple(complex(p.replace("i", "j")) for p in parts)
        return tuple(parse_rational(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad point {text!r}: {exc}") from exc


def cmd_resultant(args) -> int:
    from .resultants import R2_eval, R2_poly, common_root_count, sylvester_system_k2
    from .singular import SystemS, solve_system_S

    if args.point is None:
        if args.k != 2:
            raise PreconditionError("symbolic mode is only available for k = 2")
        p = R2_poly(args.d)
        payload = {"d": args.d, "k": 2, "R2": p.to_json(), "sylvester": sylvester_system_k2(args.d).format()}
        _write(args, payload, f"R2(a,b) = {p.format(['a', 'b'])}\n")
        return EXIT_OK
    point = _parse_point(args.point, args.ring)
    if len(point) != args.k:
        raise PreconditionError(f"k = {args.k} needs {args.k} coordinates, got {len(point)}")
    sol = solve_system_S(SystemS(args.d, point), max(args.eps, 1e-8))
    payload = {"d": args.d, "k": args.k, "point": [scalar_to_json(x, EXACT if args.ring == EXACT else FLOAT)
                                                   for x in point],
               "NS": sol.NS, "singular": sol.NS > 0}
    text = ""
    if args.k == 2:
        value = R2_eval(args.d, *point)
        payload["R2"] = scalar_to_json(value, EXACT if args.ring == EXACT else FLOAT)
        payload["common_roots"] = common_root_count(args.d, *point)
        text += f"R2 = {_fmt_complex(value) if args.ring == FLOAT else value}\n"
    text += f"{'singular' if sol.NS else 'smooth'}, N(S)={sol.NS}\n"
    _write(args, payload, text)
    return EXIT_OK


def cmd_cayley(args) -> int:
    from .families import CayleySpec, verify_cayley_curve, verify_cayley_hypersurface
    from .singular import SingularPoint, SingularityReport

    if args.n == 3:
        rep = verify_cayley_curve(args.d, args.eps, args.seed)
        points = [SingularPoint(p, t, 1, 1, 0) for p, t in zip(rep.nodes, rep.types)]
        out = SingularityReport(singular=True, points=points, mu_global=len(points), tau_global=len(points),
                                n=3, d=args.d, family="cayley")
        out.extra["quotient_smooth"] = rep.quotient_smooth
        out.extra["quotient"] = rep.quotient.to_json()
    else:
        spec = CayleySpec(args.n, args.d)
        verify_cayley_hypersurface(spec)
        from .families import cayley_expected_nodes

        points = [SingularPoint(p, "A1", 1, 1, 0) for p in cayley_expected_nodes(spec)]
        out = SingularityReport(singular=True, points=points, mu_global=len(points), tau_global=len(points),
                                n=args.n, d=args.d, family="cayley",
                                note="predicted nodes checked; full singular locus not enumerated for n >= 4")
    _write(args, out.to_json(), report_text(out))
    return EXIT_OK


def cmd_batch(args) -> int:
    from .batch import BatchGrid, run_batch

    obj = _read_json(args.input)
    if args.ring_given:
        obj = dict(obj, ring=args.ring)
    try:
        grid = BatchGrid.from_json(obj)
    except PreconditionError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a grid: {exc}") from exc
    result = run_batch(grid, args.jobs)
    s = result["summary"]
    text = (f"{s['points']} points, {s['singular']} singular, {s['clipped']} clipped\n"
            + "".join(f"  {k}: {v}\n" for k, v in s["histogram"].items()))
    _write(args, result, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .resultants import verify_checksums
    from .verify import Context, run_all

    sums = verify_checksums()
    if not all(sums.values()):
        bad = [k for k, v in sums.items() if not v]
        print(f"checksum failure for stored data: {', '.join(bad)}")
        return EXIT_MISMATCH
    ctx = Context(eps=args.eps if args.eps_given else 1e-8, seed=args.seed)
    outcomes = run_all(ctx, set(args.only) if args.only else None)
    lines = [o.line() for o in outcomes]
    lines += [f"warning: {w}" for w in ctx.warnings[:20]]
    if len(ctx.warnings) > 20:
        lines.append(f"warning: ... {len(ctx.warnings) - 20} more")
    ok = all(o.ok for o in outcomes)
    payload = {"criteria": [{"number": o.number, "title": o.title, "status": o.status, "detail": o.detail,
                             "seconds": round(o.seconds, 3)} for o in outcomes],
               "warnings": ctx.warnings, "passed": ok}
    _write(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


# parser ---------------------------------------------------------------------

def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file ('-' for stdin)")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--ring", choices=(EXACT, FLOAT, "exact", "float"), default=None,
                        help="coefficient ring (default: exact)")
    common.add_argument("--eps", type=_positive_float, default=None, help="tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive_int, default=1)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="waringsing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="singularities of a decomposition").set_defaults(func=cmd_analyze)
    sub.add_parser("canonicalize", parents=[common], help="normal form of an (n+1)-term decomposition"
                   ).set_defaults(func=cmd_canonicalize)
    p = sub.add_parser("resultant", parents=[common], help="R2 symbolically or N(S) at a point")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--point", help="comma-separated parameters a1,...,ak")
    p.set_defaults(func=cmd_resultant)
    p = sub.add_parser("cayley", parents=[common], help="verify a generalized Cayley hypersurface")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_cayley)
    sub.add_parser("batch", parents=[common], help="classify a parameter grid").set_defaults(func=cmd_batch)
    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.ring_given = args.ring is not None
    args.ring = {"exact": EXACT, "float": FLOAT, None: EXACT}.get(args.ring, args.ring)
    args.eps_given = args.eps is not None
    args.eps = args.eps if args.eps is not None else 1e-9
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CheckMismatch as exc:
        print(f"error: check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
