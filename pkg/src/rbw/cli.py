"""Command-line front-end.

One subcommand per module operation family:

    group-check   validate a multiplication table and its irreps
    reconstruct   density matrix from symmetry averages
    mzi           run one interferometer pipeline
    sweep         CSV of clicks and averages over a phase range
    boost         transform events between frames
    scenario      built-in five-observer report
    contract      bracket tables, the infinite-speed limit, commutators
    selftest      built-in verification suite

Exit status: 0 success, 1 bad usage or invalid input, 2 a numerical
contract was violated (residual over tolerance, failed check).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import catalog, contraction, mzi, relsim, selftest, symmetry_state
from .errors import (
    InconsistentExpectations,
    MNotCentral,
    NonOrthonormalBasis,
    NotHermitian,
    NotUnitary,
    RBWError,
    UsageError,
)
from .grouprep import (
    load_group,
    load_irreps,
    orthogonality_residual,
    resolution_identity,
    verify_irrep,
)
from .tolerance import resolve

__all__ = ["build_parser", "main"]

# errors meaning "the numbers broke a contract" rather than "bad input"
_NUMERIC_ERRORS = (InconsistentExpectations, NotHermitian, NotUnitary,
                   NonOrthonormalBasis, MNotCentral)


class _Parser(argparse.ArgumentParser):
    # route argparse's own failures through the exit-code policy
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -------------------------------------------------------------- formatting

def _fmt(value: float, precision: int) -> str:
    text = f"{float(value):.{precision}g}"
    return text.lstrip("-") if text in ("-0", "-0.0") else text


def _fmt_complex(z: complex, precision: int) -> str:
    re = _fmt(z.real, precision)
    im = _fmt(abs(z.imag), precision)
    sign = "-" if z.imag < 0 else "+"
    return f"{re} {sign} {im}i"


def _snap(value: float, scale: float, precision: int) -> float:
    """Zero out display noise: |value| below scale * 10^-precision."""
    return 0.0 if abs(value) < scale * 10.0 ** (-precision) else value


def _round_floats(obj, precision: int):
    if isinstance(obj, float):
        return float(f"{obj:.{precision}g}") + 0.0   # +0.0 folds -0.0 away
    if isinstance(obj, dict):
        return {k: _round_floats(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, precision) for v in obj]
    return obj


def _emit_json(document: dict, path: str | None, precision: int) -> None:
    text = json.dumps(_round_floats(document, precision), indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ------------------------------------------------------------------ inputs

def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _group_document(spec: str) -> dict:
    """A group document, from `builtin:<name>` or a JSON file path."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        documents = catalog.builtin_documents()
        if name not in documents:
            raise UsageError(
                f"unknown builtin group {name!r}; have {sorted(documents)}")
        return documents[name]
    return _load_json(spec)


def parse_velocity(text: str, c: float) -> float:
    """km/s, or a multiple of the light speed with the suffix `c`."""
    body = text.strip()
    if body.endswith(("c", "C")):
        body = body[:-1].strip()
        if body in ("", "+", "-"):
            body += "1"
        try:
            return float(body) * c
        except ValueError:
            raise UsageError(f"bad velocity {text!r}") from None
    try:
        return float(body)
    except ValueError:
        raise UsageError(f"bad velocity {text!r}") from None


def _fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag} expects a rational number, got {text!r}") from None


# ------------------------------------------------------------- subcommands

def cmd_group_check(args) -> int:
    document = _group_document(args.group)
    group = load_group(document)
    irreps = load_irreps(document, group)
    if args.irrep is not None:
        if args.irrep not in irreps:
            raise UsageError(
                f"document has no irrep {args.irrep!r}; have {sorted(irreps)}")
        irreps = {args.irrep: irreps[args.irrep]}

    p = args.precision
    print(f"group ok: {group.N} elements, identity {group.identity!r}, "
          f"{len(irreps)} irrep(s)")
    failed = False
    for name in sorted(irreps):
        irr = irreps[name]
        report = verify_irrep(irr)
        ortho = orthogonality_residual(irr)
        resol = max(
            float(np.max(np.abs(resolution_identity(irr, g) - irr.matrix(g))))
            for g in group.elements)
        notes = list(report.failures)
        if ortho > report.tolerance:
            notes.append(f"orthogonality residual {ortho:.3e} exceeds "
                         f"{report.tolerance:.1e}")
        if resol > report.tolerance:
            notes.append(f"resolution residual {resol:.3e} exceeds "
                         f"{report.tolerance:.1e}")
        verdict = "OK" if not notes else "FAIL"
        print(f"irrep {name}: n={irr.n} unitarity={_fmt(report.max_unitarity_residual, p)} "
              f"homomorphism={_fmt(report.max_homomorphism_residual, p)} "
              f"character-norm={_fmt(report.irreducibility_indicator, p)} "
              f"orthogonality={_fmt(ortho, p)} resolution={_fmt(resol, p)} {verdict}")
        for note in notes:
            print(f"  - {note}")
        failed = failed or bool(notes)
    return 2 if failed else 0


def cmd_reconstruct(args) -> int:
    document = _group_document(args.group)
    group = load_group(document)
    irreps = load_irreps(document, group)
    if args.irrep not in irreps:
        raise UsageError(
            f"document has no irrep {args.irrep!r}; have {sorted(irreps)}")
    expectations = symmetry_state.load_expectations(
        _load_json(args.expectations), irreps[args.irrep])

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rho = symmetry_state.reconstruct_density(expectations)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)

    _emit_json(symmetry_state.density_document(rho), args.output, args.precision)
    return 0


def _pipeline_from_args(args) -> tuple[float, list[mzi.Element]]:
    if args.pipeline:
        if args.k0 is not None or args.elements:
            raise UsageError("--pipeline excludes --k0/--elements")
        return mzi.load_pipeline(_load_json(args.pipeline))
    if args.k0 is None or not args.elements:
        raise UsageError("provide --pipeline FILE, or both --k0 and --elements")
    return mzi.load_pipeline(
        {"k0": args.k0, "elements": args.elements.split(",")})


def cmd_mzi(args) -> int:
    k0, elements = _pipeline_from_args(args)
    result = mzi.run_pipeline(elements, k0)
    p = args.precision
    print(f"k0 = {_fmt(k0, p)}")
    for label, ket in result.stages:
        amps = ", ".join(_fmt_complex(z, p) for z in ket)
        print(f"{label}: [{amps}]")
    print(f"clicks: D1={_fmt(result.clicks.p_D1, p)} D2={_fmt(result.clicks.p_D2, p)}")
    if args.shots:
        n1, n2 = mzi.sample_clicks(result.clicks, args.shots, args.seed)
        print(f"sampled {args.shots} shots (seed {args.seed}): D1={n1} D2={n2}")
    return 0


def cmd_sweep(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    if not args.a_max >= args.a_min:
        raise UsageError("--a-max must not be below --a-min")
    grid = np.linspace(args.a_min, args.a_max, args.steps)
    rows = mzi.sweep_rows(args.k0, grid)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            mzi.write_sweep_csv(rows, fh, args.precision)
    else:
        mzi.write_sweep_csv(rows, sys.stdout, args.precision)
    return 0


def _print_boosted(event: relsim.SpacetimeEvent, boost: relsim.Boost,
                   precision: int, label: str = "") -> None:
    out = relsim.boost_event(event, boost)
    t = _snap(out.t, max(abs(out.t), abs(out.x) / boost.c), precision)
    x = _snap(out.x, max(abs(out.x), abs(out.t) * boost.c), precision)
    prefix = f"{label}: " if label else ""
    print(f"{prefix}T={_fmt(t, precision)} s, X={_fmt(x, precision)} km")


def cmd_boost(args) -> int:
    velocity = parse_velocity(args.v, args.c)
    boost = relsim.Boost(v=velocity, c=args.c)
    if args.events:
        if args.t is not None or args.x is not None:
            raise UsageError("--events excludes --t/--x")
        events = relsim.load_events(_load_json(args.events))
        for event in events:
            _print_boosted(event, boost, args.precision, event.label)
        if args.classes:
            print("simultaneity classes:")
            for cls in relsim.simultaneity_classes(events, boost):
                labels = ", ".join(e.label for e in cls.events)
                time = _snap(cls.time, max(abs(e.x) / boost.c for e in cls.events),
                             args.precision)
                print(f"  T={_fmt(time, args.precision)} s: {labels}")
        return 0
    if args.t is None or args.x is None:
        raise UsageError("provide --t and --x, or --events FILE")
    event = relsim.SpacetimeEvent(t=args.t, x=args.x, frame=args.frame)
    _print_boosted(event, boost, args.precision)
    return 0


def cmd_scenario(args) -> int:
    report = relsim.corealness_chain()
    p = args.precision

    if args.json:
        document = {
            "velocity": report.boost.v,
            "light_speed": report.boost.c,
            "gamma": report.gamma,
            "events": {
                name: {"label": e.label,
                       "unprimed": {"t": e.t, "x": e.x},
                       "primed": {"t": report.boosted[name].t,
                                  "x": report.boosted[name].x}}
                for name, e in report.events.items()},
            "links": [{"a": l.a, "b": l.b, "frame": l.frame, "time": l.time,
                       "note": l.note} for l in report.links],
            "conclusions": list(report.conclusions),
            "lengths_km": dict(report.lengths),
        }
        _emit_json(document, None, p)
        return 0

    ratio = report.boost.v / report.boost.c
    print(f"boost: v = {_fmt(report.boost.v, p)} km/s ({_fmt(ratio, p)}c), "
          f"gamma = {_fmt(report.gamma, p)}")
    print()
    print("meeting events  (unprimed t s, x km | primed T s, X km):")
    for name, e in report.events.items():
        b = report.boosted[name]
        bt = _snap(b.t, max(abs(b.t), abs(b.x) / report.boost.c), p)
        print(f"  {name}  {e.label}: ({_fmt(e.t, p)}, {_fmt(e.x, p)})"
              f"  |  ({_fmt(bt, p)}, {_fmt(b.x, p)})")
    print()
    print("shared time slices:")
    for link in report.links:
        print(f"  {link.a} ~ {link.b} at {link.frame} time {_fmt(link.time, p)} s"
              f" ({link.note})")
    print()
    print("conclusions:")
    for line in report.conclusions:
        print(f"  - {line}")
    print()
    print("separations (km):")
    for key, value in report.lengths.items():
        print(f"  {key.replace('_', ' ')}: {_fmt(value, p)}")
    return 0


def cmd_contract(args) -> int:
    hbar = _fraction(args.hbar, "--hbar")
    mass = _fraction(args.m, "--m")
    if hbar <= 0 or mass <= 0:
        raise UsageError("--hbar and --m must be positive")

    table = contraction.poincare_table()
    contracted = contraction.contract(table, hbar, mass)
    galilean = contraction.galilean_table()

    print(contraction.format_table(table))
    print()
    if args.c is not None:
        c_value = _fraction(args.c, "--c")
        if c_value <= 0:
            raise UsageError("--c must be positive")
        print(contraction.format_table(table, c=c_value))
        print()
    print(contraction.format_table(contracted))
    print()
    print(contraction.format_table(galilean))
    print()

    for label, tb in (("relativistic", table), ("contracted", contracted),
                      ("absolute-time", galilean)):
        res = contraction.jacobi_residual(tb)
        print(f"jacobi residual ({label}): {_fmt(res.residual, args.precision)}")
    print()

    gal_ccr = contraction.ccr_check(galilean, hbar, mass)
    print(f"absolute-time [P1,Q1] = "
          f"{contraction.format_combo(gal_ccr.pq[(1, 1)])} : {gal_ccr.verdict}")

    result = contraction.ccr_check(contracted, hbar, mass)
    print(f"[P1,Q2] = {contraction.format_combo(result.pq[(1, 2)])}")
    print(f"[P1,Q1] = {contraction.format_combo(result.pq[(1, 1)])}")
    if result.verdict == "CCR RECOVERED":
        coeff = result.pq[(1, 1)]["I"]
        print(f"[P_i,Q_n] = {coeff} δ_in I : {result.verdict}")
        return 0
    print(f"[P_i,Q_n] : {result.verdict}")
    return 2


def cmd_selftest(args) -> int:
    if args.list:
        for check_id, description in selftest.all_checks().items():
            print(f"{check_id}: {description}")
        return 0
    only = args.only.split(",") if args.only else None
    try:
        results = selftest.run_checks(only)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.check_id}: {r.detail}")
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else 2


# --------------------------------------------------------------- dispatch

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision", type=int, default=12, metavar="DIGITS",
                        help="significant digits for numeric output (default 12)")

    parser = _Parser(prog="rbw", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND",
                                required=True)

    g = sub.add_parser("group-check", parents=[common],
                       help="validate a group document and its irreps")
    g.add_argument("--group", required=True, metavar="SRC",
                   help="JSON file, or builtin:trivial|z2|s3")
    g.add_argument("--irrep", metavar="NAME", help="check only this irrep")
    g.set_defaults(func=cmd_group_check)

    r = sub.add_parser("reconstruct", parents=[common],
                       help="density matrix from symmetry averages")
    r.add_argument("--group", required=True, metavar="SRC")
    r.add_argument("--irrep", required=True, metavar="NAME")
    r.add_argument("--expectations", required=True, metavar="FILE",
                   help="JSON {irrep, values: {element: [re, im]}}")
    r.add_argument("--output", metavar="FILE", help="write JSON here instead of stdout")
    r.set_defaults(func=cmd_reconstruct)

    m = sub.add_parser("mzi", parents=[common],
                       help="run one interferometer pipeline")
    m.add_argument("--pipeline", metavar="FILE",
                   help="JSON {k0, elements: [source,bs,...]}")
    m.add_argument("--k0", type=float, metavar="K0", help="wave number")
    m.add_argument("--elements", metavar="LIST",
                   help="comma-separated, e.g. source,bs,mirrors,phase:0.3,bs,detector")
    m.add_argument("--shots", type=int, default=0, metavar="N",
                   help="also sample N detector clicks")
    m.add_argument("--seed", type=int, default=0, metavar="SEED")
    m.set_defaults(func=cmd_mzi)

    s = sub.add_parser("sweep", parents=[common],
                       help="CSV of clicks and averages over a phase range")
    s.add_argument("--k0", type=float, required=True, metavar="K0")
    s.add_argument("--a-min", type=float, required=True, metavar="A")
    s.add_argument("--a-max", type=float, required=True, metavar="A")
    s.add_argument("--steps", type=int, required=True, metavar="N",
                   help="number of grid points, endpoints included")
    s.add_argument("--output", metavar="FILE", help="write CSV here instead of stdout")
    s.set_defaults(func=cmd_sweep)

    b = sub.add_parser("boost", parents=[common],
                       help="transform events into a moving frame")
    b.add_argument("--v", required=True, metavar="V",
                   help="velocity in km/s, or with suffix c (e.g. 0.6c)")
    b.add_argument("--c", type=float, default=relsim.SPEED_OF_LIGHT,
                   metavar="C", help="light speed in km/s (default 300000)")
    b.add_argument("--t", type=float, metavar="T", help="event time in s")
    b.add_argument("--x", type=float, metavar="X", help="event position in km")
    b.add_argument("--frame", default="lab", metavar="NAME")
    b.add_argument("--events", metavar="FILE",
                   help="JSON {frame, events: [{label, t, x}]}")
    b.add_argument("--classes", action="store_true",
                   help="with --events: also print simultaneity classes")
    b.set_defaults(func=cmd_boost)

    n = sub.add_parser("scenario", parents=[common],
                       help="built-in five-observer report")
    n.add_argument("--json", action="store_true",
                   help="emit the report as a JSON document")
    n.set_defaults(func=cmd_scenario)

    k = sub.add_parser("contract", parents=[common],
                       help="bracket tables, infinite-speed limit, commutators")
    k.add_argument("--hbar", default="1", metavar="HBAR",
                   help="action scale as a rational, e.g. 1 or 1/2")
    k.add_argument("--m", default="1", metavar="M", help="mass as a rational")
    k.add_argument("--c", metavar="C",
                   help="also print the table at this finite light speed")
    k.set_defaults(func=cmd_contract)

    t = sub.add_parser("selftest", parents=[common],
                       help="run the built-in verification suite")
    t.add_argument("--list", action="store_true",
                   help="enumerate checks without running them")
    t.add_argument("--only", metavar="IDS", help="comma-separated check ids")
    t.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RBWError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
