"""Command-line front end.

Subcommands
-----------
sweep    one row per grid point and geometry (CSV or JSON)
point    decoherence breakdown at a single parameter point
density  final 4x4 density matrix and its l1 coherence
si       tabletop estimates from SI inputs
udw      breakdown for the scalar (Unruh-DeWitt) detector

Exit codes: 0 success, 2 usage error, 3 numerical failure.  Output is
written only after every point has been computed.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coherence import (
    build_density_matrix,
    coherence_formula,
    decoherence_measure,
    density_matrix_from_terms,
    l1_coherence,
)
from .params import FieldState, InitialSpinState, PerturbativityWarning, SpinFieldParams, SplitGeometry, validate
from .quadrature import NonFiniteIntegrand, NotConverged, oracle_em_term, oracle_udw_term
from .si import TabletopScenario, tabletop_report
from .udw import udw_decoherence

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3

TERM_COLUMNS = (
    "a_loc_vac", "d_loc_vac", "d_nl_vac", "m_nl_vac",
    "a_loc_beta", "d_loc_beta", "d_nl_beta", "m_nl_beta",
)
COLUMNS = ("geometry", "gap", "x") + TERM_COLUMNS + ("total_D", "total_D_normalized", "converged")
# absolute agreement floor, in units of coupling^2
ORACLE_FLOOR = 1e-12


class UsageError(Exception):
    pass


class OracleMismatch(ArithmeticError):
    """A term deviates from the 3D oracle by more than ``--tol``."""


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, str):
        return v
    return f"{v:.11e}"


def _geometry(name: str, angle: float) -> SplitGeometry:
    return SplitGeometry.z_split() if name == "z" else SplitGeometry.in_plane(angle)


def _breakdown(field, params, geom):
    if field == "scalar":
        return udw_decoherence(params)
    return decoherence_measure(params, geom)


def _term_values(b, geom):
    # amplitude-damping parts share the phase exp(-2i angle); report them in the split frame
    rot = cmath.exp(2j * geom.angle)
    v, t = b.vacuum, b.thermal
    return {
        "a_loc_vac": v.a_loc, "d_loc_vac": v.d_loc, "d_nl_vac": v.d_nl,
        "m_nl_vac": (v.m_nl * rot).real,
        "a_loc_beta": t.a_loc_beta, "d_loc_beta": t.d_loc_beta, "d_nl_beta": t.d_nl_beta,
        "m_nl_beta": (t.m_nl_beta * rot).real,
    }


def _oracle_deviation(field, params, geom, b, tol):
    """Deviations from the oracle, plus an overall pass flag.

    Deviations are relative, with the denominator floored at
    ``ORACLE_FLOOR * coupling**2`` for terms that vanish.  A term passes
    when its relative deviation is at most ``tol`` or its absolute
    deviation is at most the floor.
    """
    c2 = params.coupling**2
    floor = ORACLE_FLOOR * c2
    pairs = {
        "a_loc_vac": ("a_loc", FieldState.VACUUM, b.vacuum.a_loc),
        "d_loc_vac": ("d_loc", FieldState.VACUUM, b.vacuum.d_loc),
        "d_nl_vac": ("d_nl", FieldState.VACUUM, b.vacuum.d_nl),
        "m_nl_vac": ("m_nl", FieldState.VACUUM, b.vacuum.m_nl),
        "a_loc_beta": ("a_loc", FieldState.THERMAL, b.thermal.a_loc_beta),
        "d_loc_beta": ("d_loc", FieldState.THERMAL, b.thermal.d_loc_beta),
        "d_nl_beta": ("d_nl", FieldState.THERMAL, b.thermal.d_nl_beta),
        "m_nl_beta": ("m_nl", FieldState.THERMAL, b.thermal.m_nl_beta),
    }
    out = {}
    ok = True
    for col, (term, state, value) in pairs.items():
        if field == "scalar":
            if term in ("d_loc", "d_nl"):
                ref = 0.0
            elif term == "a_loc":
                ref = 0.5 * (oracle_udw_term("p_excite", params, geom, state)
                             + oracle_udw_term("p_deexcite", params, geom, state))
            else:
                ref = oracle_udw_term(term, params, geom, state)
        else:
            ref = oracle_em_term(term, params, geom, state)
        err = abs(value - ref)
        out["dev_" + col] = err / max(abs(ref), floor) if floor > 0 else err
        ok = ok and (err <= tol * abs(ref) or err <= floor)
    out["_oracle_ok"] = ok
    return out


def _evaluate(task):
    field, params, geom, x, with_oracle, tol = task
    b = _breakdown(field, params, geom)
    row = {"geometry": geom.axis, "gap": params.gap, "x": x}
    row.update(_term_values(b, geom))
    row["total_D"] = b.total
    row["total_D_normalized"] = b.total / params.coupling**2 if params.coupling > 0 else 0.0
    row["converged"] = True
    if with_oracle:
        row.update(_oracle_deviation(field, params, geom, b, tol))
    return row


def _run(tasks, jobs):
    if jobs <= 1:
        return [_evaluate(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate, tasks))


def _params(args, **over) -> SpinFieldParams:
    values = dict(coupling=args.coupling, gap=args.gap[0], separation=args.separation, temperature=args.temperature)
    values.update(over)
    try:
        return validate(SpinFieldParams(**values))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_oracle(rows, tol):
    for row in rows:
        if not row.pop("_oracle_ok"):
            worst = max((k for k in row if k.startswith("dev_")), key=lambda k: row[k])
            raise OracleMismatch(f"oracle deviation {worst}={row[worst]:.3e} exceeds --tol {tol:g}")


def _rows_output(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    cols = list(COLUMNS) + [k for k in rows[0] if k.startswith("dev_")] if rows else list(COLUMNS)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def cmd_sweep(args) -> str:
    if not args.hi > args.lo:
        raise UsageError("--hi must exceed --lo")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    xs = np.linspace(args.lo, args.hi, args.points)
    tasks = []
    for geom_name in args.geometry:
        geom = _geometry(geom_name, args.angle)
        for gap in args.gap:
            for x in xs:
                x = float(x)
                if args.variable == "separation-log10":
                    p = _params(args, gap=gap, separation=10.0**x)
                else:
                    p = _params(args, gap=gap, temperature=x)
                tasks.append((args.field, p, geom, x, args.oracle, args.tol))
    rows = _run(tasks, args.jobs)
    if args.oracle:
        _check_oracle(rows, args.tol)
    return _rows_output(rows, args.format)


def _point_rows(args, field):
    tasks = []
    for geom_name in args.geometry:
        geom = _geometry(geom_name, args.angle)
        for gap in args.gap:
            p = _params(args, gap=gap)
            tasks.append((field, p, geom, p.separation, args.oracle, args.tol))
    rows = _run(tasks, args.jobs)
    if args.oracle:
        _check_oracle(rows, args.tol)
    return tasks, rows


def _point_json(args, field):
    tasks, rows = _point_rows(args, field)
    if args.format == "csv":
        return _rows_output(rows, "csv")
    records = []
    for (fld, p, geom, *_), row in zip(tasks, rows):
        rec = {
            "field": fld,
            "geometry": geom.axis,
            "angle": geom.angle,
            "coupling": p.coupling,
            "gap": p.gap,
            "separation": p.separation,
            "temperature": p.temperature,
        }
        rec.update(_breakdown(fld, p, geom).to_dict())
        rec.update({k: v for k, v in row.items() if k.startswith("dev_")})
        records.append(rec)
    out = records[0] if len(records) == 1 else records
    return json.dumps(out, indent=2) + "\n"


def cmd_point(args) -> str:
    return _point_json(args, args.field)


def cmd_udw(args) -> str:
    return _point_json(args, "scalar")


def cmd_density(args) -> str:
    if args.format != "json":
        raise UsageError("density output is JSON only")
    try:
        initial = InitialSpinState(args.amplitude, args.phase)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    geom = _geometry(args.geometry[0], args.angle)
    p = _params(args)
    if args.field == "scalar":
        terms = udw_decoherence(p)
        rho = density_matrix_from_terms(initial, terms)
    else:
        terms = decoherence_measure(p, geom)
        rho = build_density_matrix(initial, p, geom)
    out = {
        "field": args.field,
        "geometry": geom.axis,
        "angle": geom.angle,
        "coupling": p.coupling,
        "gap": p.gap,
        "separation": p.separation,
        "temperature": p.temperature,
        "amplitude": initial.amplitude,
        "phase": initial.phase,
        "matrix": rho.to_dict(),
        "trace": rho.trace.real,
        "l1_coherence": l1_coherence(rho),
        "l1_coherence_formula": coherence_formula(initial, terms),
        "total_D": terms.total,
    }
    return json.dumps(out, indent=2) + "\n"


def cmd_si(args) -> str:
    if args.format != "json":
        raise UsageError("si output is JSON only")
    try:
        scen = TabletopScenario(
            magnetic_field=args.magnetic_field,
            interaction_time=args.interaction_time,
            temperature=args.temperature,
            separation=args.separation,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = tabletop_report(scen, convention=args.convention)
    return json.dumps(report.to_dict(), indent=2) + "\n"


def _common(p: argparse.ArgumentParser, fmt="json", geometry=("z",)):
    p.add_argument("--coupling", type=float, default=1e-2, help="mu_B/sigma (lambda for the scalar field)")
    p.add_argument("--gap", type=float, action="append", help="Omega*sigma; repeat for several values")
    p.add_argument("--separation", type=float, default=1.0, help="L/sigma")
    p.add_argument("--temperature", type=float, default=0.0, help="T*sigma")
    p.add_argument("--geometry", choices=("z", "inplane"), action="append", help="repeatable")
    p.add_argument("--angle", type=float, default=0.0, help="in-plane split angle (rad)")
    p.add_argument("--field", choices=("em", "scalar"), default="em")
    p.add_argument("--oracle", action="store_true", help="append relative deviations from the 3D oracle")
    p.add_argument("--tol", type=float, default=1e-6, help="largest accepted oracle deviation")
    p.add_argument("--out", default="-", help="output file ('-' for stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=fmt)
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.set_defaults(default_geometry=list(geometry))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spindeco", description="Decoherence of a spatially split spin")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="parameter sweep")
    _common(sw, fmt="csv", geometry=("z", "inplane"))
    sw.add_argument("--variable", choices=("separation-log10", "temperature"), default="separation-log10")
    sw.add_argument("--lo", type=float, default=-1.0)
    sw.add_argument("--hi", type=float, default=1.5)
    sw.add_argument("--points", type=int, default=100)
    sw.set_defaults(func=cmd_sweep)

    pt = sub.add_parser("point", help="single-point breakdown")
    _common(pt)
    pt.set_defaults(func=cmd_point)

    de = sub.add_parser("density", help="final density matrix")
    _common(de)
    de.add_argument("--amplitude", type=float, default=1 / math.sqrt(2), help="alpha of the initial state")
    de.add_argument("--phase", type=float, default=0.0, help="relative phase of the initial state")
    de.set_defaults(func=cmd_density)

    si = sub.add_parser("si", help="tabletop estimates in SI units")
    si.add_argument("--magnetic-field", type=float, default=1.0, help="B0 in tesla")
    si.add_argument("--interaction-time", type=float, default=1.0, help="10 sigma in seconds")
    si.add_argument("--temperature", type=float, default=100.0, help="kelvin")
    si.add_argument("--separation", type=float, default=100e-6, help="metres")
    si.add_argument("--convention", choices=("paper", "hbar"), default="paper")
    si.add_argument("--out", default="-")
    si.add_argument("--format", choices=("csv", "json"), default="json")
    si.set_defaults(func=cmd_si)

    ud = sub.add_parser("udw", help="scalar-field detector breakdown")
    _common(ud)
    ud.set_defaults(func=cmd_udw)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if hasattr(args, "gap"):
        args.gap = args.gap or [0.0]
        args.geometry = args.geometry or args.default_geometry
        if args.jobs < 1 or not args.tol > 0:
            print("spindeco: --jobs must be >= 1 and --tol positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PerturbativityWarning)
            text = args.func(args)
    except UsageError as exc:
        print(f"spindeco: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotConverged, NonFiniteIntegrand, FloatingPointError, ArithmeticError) as exc:
        print(f"spindeco: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
