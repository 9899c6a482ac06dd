"""Command-line interface.

Exit codes: 0 success, 1 a bound check failed, 2 domain error (including a
point not on the curve), 64 usage error.  Reals are printed as decimal
strings with 40 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import nstr

from .bounds import TheoremId, TorsionPointError, hypotheses, scan, verify
from .curve import MordellCurve, point
from .families import Sign, family
from .heights import canonical_height
from .localheights import ArchHeightConfig
from .numtheory import DomainError, sixth_power_free
from .reduction import minimal_model, reduction_data, reduction_table

EXIT_OK, EXIT_BOUND_FAILURE, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 64
DIGITS = 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _real(v) -> str:
    return nstr(v, DIGITS)


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")


def _theorem(s: str) -> TheoremId:
    try:
        return TheoremId(s.lower())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown theorem {s!r}; choose from {[t.value for t in TheoremId]}")


def _theorem_list(s: str) -> tuple[TheoremId, ...]:
    if s.lower() == "all":
        return tuple(TheoremId)
    return tuple(_theorem(t) for t in s.split(",") if t)


# commands; each returns (payload, exit code)


def cmd_reduce(args, config):
    d = sixth_power_free(args.b)
    model = minimal_model(args.b)
    return {
        "b": args.b,
        "b1": d.b1,
        "u": d.u,
        "discriminant": MordellCurve(args.b).discriminant,
        "minimal_model": model.kind.value,
        "minimal_equation": model.equation,
        "a_invariants": list(model.a_invariants),
        "minimal_discriminant": model.discriminant,
    }, EXIT_OK


def cmd_reduction(args, config):
    if args.b == 0:
        raise DomainError("b must be nonzero")
    rows = [reduction_data(args.b, args.p)] if args.p is not None else reduction_table(args.b)
    return {
        "b": args.b,
        "primes": [{"p": r.prime, "kodaira": r.kodaira.value, "tamagawa": r.tamagawa} for r in rows],
    }, EXIT_OK


def cmd_height(args, config):
    P = point(args.x, args.y)
    hb = canonical_height(args.b, P, config)
    places = {"inf": _real(hb.arch.value)}
    for t in hb.nonarch.terms:
        places[str(t.prime)] = {
            "value": _real(t.evaluate(hb.arch.value.context)),
            "log_p_coefficient": str(t.coefficient),
            "case": t.case,
        }
    return {
        "b": hb.b,
        "x": str(P.x),
        "y": str(P.y),
        "reduced_b": hb.reduced_b,
        "scale": hb.scale,
        "reduced_x": str(hb.reduced_point.x),
        "reduced_y": str(hb.reduced_point.y),
        "torsion": hb.torsion,
        "canonical": _real(hb.canonical),
        "analytic": _real(hb.analytic),
        "naive": _real(hb.naive),
        "places": places,
        "arch_branch": hb.arch.branch.value,
        "error_bound": _real(hb.error_bound),
        "precision_bits": config.precision_bits,
        "depth": config.depth,
    }, EXIT_OK


def cmd_verify(args, config):
    report = verify(args.theorem, args.b, point(args.x, args.y), config)
    return report.to_dict(DIGITS), EXIT_BOUND_FAILURE if report.suspect else EXIT_OK


def cmd_family(args, config):
    inst = family(args.theorem, args.sign, args.param, args.end)
    out = {
        "theorem": inst.theorem.value,
        "sign": inst.sign.value,
        "parameter": inst.parameter,
        "end": inst.end,
        "b": inst.b,
        "x": str(inst.point.x),
        "y": str(inst.point.y),
        "side_conditions": inst.side_conditions,
        "usable": inst.usable,
        "hypotheses": hypotheses(inst.theorem, inst.b).reason,
    }
    try:
        report = verify(inst.theorem, inst.b, inst.point, config)
    except TorsionPointError as e:
        out["report"] = None
        out["note"] = str(e)
        return out, EXIT_OK
    out["report"] = report.to_dict(DIGITS)
    return out, EXIT_BOUND_FAILURE if report.suspect else EXIT_OK


def _write_scan(args, config, stream) -> int:
    if args.bmin > args.bmax:
        raise UsageError("--bmin must not exceed --bmax")
    if args.xmax < 0:
        raise UsageError("--xmax must be non-negative")
    result = scan((args.bmin, args.bmax), args.xmax, args.theorem, config, args.jobs)
    for r in result.reports:
        stream.write(json.dumps(r.to_dict(DIGITS), sort_keys=True) + "\n")
    summary = {
        key: {**v, "min_gap": None if v["min_gap"] is None else _real(v["min_gap"])}
        for key, v in result.summary.items()
    }
    tail = {"summary": summary, "curves": result.curves, "points": result.points, "failures": len(result.failures)}
    stream.write(json.dumps(tail, sort_keys=True) + "\n")
    return EXIT_BOUND_FAILURE if result.failures else EXIT_OK


def _render_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_int, default=256, help="working precision in bits (default 256)")
    common.add_argument("--depth", type=_int, default=40, help="archimedean series depth K (default 40)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = _Parser(
        prog="mordell-heights",
        description="Heights and height bounds on y^2 = x^3 + b. Put '--' before a negative rational such as -1/4.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", parents=[common], help="sixth-power-free part and minimal model")
    p.add_argument("b", type=_int)
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("reduction", parents=[common], help="Kodaira types and Tamagawa numbers")
    p.add_argument("b", type=_int)
    p.add_argument("p", type=_int, nargs="?")
    p.set_defaults(run=cmd_reduction)

    p = sub.add_parser("height", parents=[common], help="canonical height with its local decomposition")
    p.add_argument("b", type=_int)
    p.add_argument("x", type=_rational)
    p.add_argument("y", type=_rational)
    p.set_defaults(run=cmd_height)

    p = sub.add_parser("verify", parents=[common], help="check one point against one bound")
    p.add_argument("b", type=_int)
    p.add_argument("x", type=_rational)
    p.add_argument("y", type=_rational)
    p.add_argument("theorem", type=_theorem)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="check bounds over a range of curves (JSON lines)")
    p.add_argument("--bmin", type=_int, required=True)
    p.add_argument("--bmax", type=_int, required=True)
    p.add_argument("--xmax", type=_int, required=True)
    p.add_argument("--theorem", type=_theorem_list, default=tuple(TheoremId), help="'all' or a comma list")
    p.add_argument("--jobs", type=_int, default=1)
    p.set_defaults(run=None)

    p = sub.add_parser("family", parents=[common], help="a member of a near-extremal family and its gap")
    p.add_argument("theorem", type=_theorem)
    p.add_argument("sign", choices=[s.value for s in Sign])
    p.add_argument("param", type=_int)
    p.add_argument("--end", choices=("upper", "lower"), help="which end of the height-difference interval")
    p.set_defaults(run=cmd_family)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    stream = open(args.out, "w") if args.out else sys.stdout
    try:
        config = ArchHeightConfig(precision_bits=args.precision, depth=args.depth)
        if args.command == "scan":
            if args.jobs < 1:
                raise UsageError("--jobs must be at least 1")
            return _write_scan(args, config, stream)
        payload, code = args.run(args, config)
        text = json.dumps(payload, indent=2) if args.format == "json" else _render_text(payload)
        stream.write(text + "\n")
        return code
    except UsageError as e:
        print(f"mordell-heights: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"mordell-heights: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        if args.out:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())
