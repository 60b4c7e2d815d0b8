"""Command-line front end: fringe tables, CHSH values, spectra and audits.

Exit statuses: 0 success, 1 verification failure, 2 usage error, 3 I/O
error, 4 degenerate superposition.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import math
import sys
import warnings

from . import bell
from .oracle import inner_product
from .phase_core import DegenerateSuperposition, canonical_angle
from .superposition import build_state, decompose_superposed, is_degenerate, symmetry_residual
from .verify import DEFAULT_CHARGES, DEFAULT_NS, run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO, EXIT_DEGENERATE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _finite(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return value


def _mode_range(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like MIN:MAX, got {text}")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text}")
    return lo, hi


def _common(p, *, charge_required=True, n_required=True):
    p.add_argument("--n", type=_positive_int, required=n_required, help="number of plate sections")
    p.add_argument("--charge", type=_finite, required=charge_required, help="step index M")
    p.add_argument("--degrees", action="store_true", help="read angle flags in degrees")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _construction(p):
    p.add_argument("--construction", choices=("auto", "superposition", "sector"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracoam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("fringe", help="overlap probability versus rotation angle")
    _common(p)
    _construction(p)
    p.add_argument("--points", type=_positive_int, default=721)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("bell", help="CHSH parameter (JSON)")
    _common(p)
    for flag in ("--alpha-s", "--alpha-s-prime", "--alpha-i", "--alpha-i-prime"):
        p.add_argument(flag, type=_finite, default=None, help="override the standard setting")
    p.add_argument("--t-perp", type=_positive_int, default=1)

    p = sub.add_parser("decompose", help="integer-OAM spectrum of an n-section state")
    _common(p)
    _construction(p)
    p.add_argument("--alpha", type=_finite, default=0.0)
    p.add_argument("--range", dest="mode_range", type=_mode_range, default=(-50, 50))
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("symmetry", help="n-fold rotational symmetry residual")
    _common(p)
    _construction(p)
    p.add_argument("--alpha", type=_finite, default=0.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("sample", help="shot-noise sampled coincidence fringe")
    _common(p)
    p.add_argument("--points", type=_positive_int, default=721)
    p.add_argument("--shots", type=_nonnegative_int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="closed forms against the exact oracle (JSON)")
    _common(p, charge_required=False, n_required=False)
    p.add_argument("--alpha-points", type=_positive_int, default=64)
    p.add_argument("--beta-points", type=_positive_int, default=64)
    p.add_argument("--beta2-points", type=_positive_int, default=8)
    p.add_argument("--summary-only", action="store_true", help="omit per-case records")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def _angle(args, value):
    return math.radians(value) if args.degrees else value


def _resolve_construction(args) -> str:
    if args.construction != "auto":
        return args.construction
    return "sector" if is_degenerate(args.n, args.charge) else "superposition"


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row) for row in rows]
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def run_fringe(args) -> str:
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if args.construction == "auto":
        table = bell.fringe_scan(args.n, args.charge, args.points)
        route = "closed_form"
        rows = [(r.alpha, r.probability) for r in table.rows]
    else:
        route = args.construction
        ref = build_state(args.n, args.charge, 0.0, route).field
        grid = [2 * math.pi * k / args.points for k in range(args.points)]
        rows = [(a, abs(inner_product(ref, build_state(args.n, args.charge, a, route).field)) ** 2) for a in grid]
    if args.format == "csv":
        return _csv(("alpha_rad", "probability"), rows)
    return _json(
        {
            "n": args.n,
            "M": args.charge,
            "metadata": {"route": route},
            "rows": [{"alpha_rad": a, "probability": p} for a, p in rows],
        }
    )


def run_bell(args) -> str:
    if args.t_perp > args.n:
        raise UsageError(f"--t-perp must lie in 1..{args.n}")
    std = bell.standard_settings(args.n)

    def pick(value, default):
        return default if value is None else _angle(args, value)

    settings = bell.AnalyzerSettings(
        n=args.n,
        alpha_s=pick(args.alpha_s, std.alpha_s),
        alpha_s_prime=pick(args.alpha_s_prime, std.alpha_s_prime),
        alpha_i=pick(args.alpha_i, std.alpha_i),
        alpha_i_prime=pick(args.alpha_i_prime, std.alpha_i_prime),
        t_perp=args.t_perp,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", bell.OutOfClassWarning)
        result = bell.chsh_parameter(args.n, args.charge, settings)
    return _json(
        {
            "n": args.n,
            "M": args.charge,
            "settings": settings.as_dict(),
            "E": list(result.correlations),
            "S": result.S,
            "in_orthogonal_class": result.in_orthogonal_class,
        }
    )


def run_decompose(args) -> str:
    route = _resolve_construction(args)
    state = build_state(args.n, args.charge, canonical_angle(_angle(args, args.alpha)), route)
    lo, hi = args.mode_range
    spectrum = decompose_superposed(state, lo, hi)
    rows = [(str(m), c.real, c.imag, abs(c) ** 2) for m, c in spectrum.coefficients.items()]
    if args.format == "csv":
        return _csv(("m_prime", "re", "im", "weight"), rows)
    return _json(
        {
            "n": args.n,
            "M": args.charge,
            "alpha": state.alpha,
            "metadata": {"construction": route},
            "rows": [{"m_prime": int(m), "re": re, "im": im, "weight": w} for m, re, im, w in rows],
        }
    )


def run_symmetry(args) -> str:
    route = _resolve_construction(args)
    state = build_state(args.n, args.charge, canonical_angle(_angle(args, args.alpha)), route)
    residual = symmetry_residual(state)
    if args.format == "csv":
        return _csv(("residual",), [(residual,)])
    return _json({"n": args.n, "M": args.charge, "alpha": state.alpha, "construction": route, "residual": residual})


def run_sample(args) -> str:
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    table = bell.sample_fringe(args.n, args.charge, args.points, args.shots, args.seed)
    rows = [(r.alpha, str(r.counts), r.probability) for r in table.rows]
    if args.format == "csv":
        return _csv(("alpha_rad", "counts", "rate"), rows)
    return _json(
        {
            "n": args.n,
            "M": args.charge,
            "metadata": table.metadata,
            "rows": [{"alpha_rad": a, "counts": int(c), "rate": r} for a, c, r in rows],
        }
    )


def run_verify(args, out) -> int:
    if args.beta_points % args.beta2_points:
        raise UsageError("--beta2-points must divide --beta-points")
    ns = (args.n,) if args.n is not None else DEFAULT_NS
    charges = (args.charge,) if args.charge is not None else DEFAULT_CHARGES
    report = run_verification(
        ns, charges, args.alpha_points, args.beta_points, args.beta2_points, fault=args.inject_fault
    )
    out.write('{\n"summary": ' + json.dumps(report.summary()))
    if not args.summary_only:
        out.write(',\n"records": [\n')
        first = True
        for rec in report.records():
            out.write(("" if first else ",\n") + json.dumps(rec, separators=(",", ":")))
            first = False
        out.write("\n]")
    out.write("\n}\n")
    return EXIT_OK if report.passed else EXIT_VERIFY


_RUNNERS = {
    "fringe": run_fringe,
    "bell": run_bell,
    "decompose": run_decompose,
    "symmetry": run_symmetry,
    "sample": run_sample,
}


def _normalize_argv(argv):
    # "--range -50:50" would otherwise be read as an unknown option
    out = list(argv)
    for i, tok in enumerate(out[:-1]):
        if tok == "--range" and out[i + 1].startswith("-"):
            out[i : i + 2] = [f"--range={out[i + 1]}"]
            break
    return out


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yield fh


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
        if args.subcommand == "verify":
            buffer = io.StringIO()
            status = run_verify(args, buffer)
            text = buffer.getvalue()
        else:
            text = _RUNNERS[args.subcommand](args)
            status = EXIT_OK
    except UsageError as exc:
        print(f"fracoam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateSuperposition as exc:
        print(f"fracoam: degenerate superposition: {exc} (retry with --construction sector)", file=sys.stderr)
        return EXIT_DEGENERATE
    try:
        with _sink(args.out) as fh:
            fh.write(text)
    except OSError as exc:
        print(f"fracoam: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
