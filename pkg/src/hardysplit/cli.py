"""Command-line front end: ``hardysplit <subcommand> --curve C.json --data D ...``.

Every run writes a CSV artifact and a diagnostics JSON carrying the
tolerance, the measured residual, a ``passed`` flag and a ``failures`` list.
Exit status: 0 all checks pass, 1 tolerance failure, 2 bad configuration,
3 runtime error.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .cauchy import BoundaryFunction, plemelj_jump
from .decomp import antiderivative_boundary, decompose, tolerance_for
from .dirichlet import dirichlet_disc, dirichlet_disc_real, poisson_extension
from .exceptions import CurveMismatchError, InvalidCurveError, NotHardyError
from .geometry import build_curve, classify_points
from .oracle import (
    FourierData,
    PoleOnCurveError,
    RationalData,
    fourier_split,
    rational_split,
)
from .szego import SzegoProjector, cap_mask, pseudolocal_experiment

EXIT_OK, EXIT_TOL, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2, 3


class Datum:
    """Boundary data named on the command line: a CSV path or a builtin."""

    def __init__(self, text, seed=0):
        self.text = text
        self.kind = "csv"
        self.fourier = self.rational = self.cap = None
        if ":" in text and not Path(text).exists():
            name, _, args = text.partition(":")
            try:
                parts = [a.strip() for a in args.split(",") if a.strip()]
                if name == "fourier":
                    (M,) = parts
                    self.fourier = FourierData.random(int(M), np.random.default_rng(seed))
                elif name == "rational":
                    self.rational = RationalData.simple(*(complex(p) for p in parts))
                    if not parts:
                        raise ValueError("no poles")
                elif name == "indicator":
                    t1, t2 = (float(p) for p in parts)
                    if not t1 < t2:
                        raise ValueError("need t1 < t2")
                    self.cap = (t1, t2)
                else:
                    raise ValueError(f"unknown builtin {name!r}")
            except ValueError as exc:
                raise io.ConfigError(f"bad builtin datum {text!r}: {exc}") from exc
            self.kind = name

    def sample(self, curve):
        if self.kind == "csv":
            return io.read_boundary_csv(self.text, curve)
        if self.kind == "fourier":
            if 4 * self.fourier.degree > curve.n:
                raise io.ConfigError(f"fourier degree {self.fourier.degree} aliases on "
                                     f"{curve.n} nodes")
            return BoundaryFunction(curve.tag, self.fourier(curve.t), self.text)
        if self.kind == "rational":
            self.rational.classify(curve)
            return self.rational.sample(curve)
        return BoundaryFunction(curve.tag, cap_mask(curve.t, *self.cap), self.text)

    def real_part(self):
        """Real-valued variant, used where real data is required."""
        if self.kind == "fourier":
            d = Datum.__new__(Datum)
            d.__dict__.update(self.__dict__)
            c = self.fourier.coeffs
            d.fourier = FourierData({n: (c.get(n, 0) + np.conj(c.get(-n, 0))) / 2 for n in c})
            return d
        return self

    def oracle(self, curve):
        """``(h, H)`` from an independent split, or None."""
        if self.kind == "rational":
            h, H = rational_split(self.rational, curve)
            return h.values, H.values
        if self.kind == "fourier" and curve.kind == "disc" and not curve.offset:
            hf, Hf = fourier_split(self.fourier)
            return hf(curve.t), Hf(curve.t)
        return None


def _report(tol, residual, checks, **extra):
    failures = [name for name, ok in checks if not ok]
    if residual is not None and not np.isfinite(residual):
        residual = None
    out = {"tolerance": tol, "residual": residual, "passed": not failures,
           "failures": failures}
    out.update(extra)
    return out


def _curve(args, n=None):
    spec = io.load_curve_spec(args.curve)
    if n is not None:
        spec = spec.with_resolution(n)
    return spec, build_curve(spec)


def _sample_nodes(curve, count):
    count = min(count, curve.n)
    return np.linspace(0, curve.n, count, endpoint=False).astype(int)


def cmd_decompose(args):
    _, curve = _curve(args)
    datum = Datum(args.data, args.seed)
    u = datum.sample(curve)
    dec = decompose(curve, u)
    tol = args.tol if args.tol is not None else dec.tolerance
    io.write_boundary_csv(args.out, curve, u=dec.u, h=dec.h, H=dec.H)
    jumps = [s.error for j in _sample_nodes(curve, 8)
             for s in plemelj_jump(curve, u, j, [args.delta])]
    extra = {"projection_defect": dec.projection_defect,
             "exterior_defect": dec.exterior_defect,
             "max_residual": dec.residual,
             "jump_error": max(jumps), "jump_delta": args.delta}
    checks = [("projection_defect", dec.projection_defect <= tol),
              ("exterior_defect", dec.exterior_defect <= tol)]
    ref = datum.oracle(curve)
    if ref is not None:
        err = max(np.max(np.abs(dec.h.values - ref[0])), np.max(np.abs(dec.H.values - ref[1])))
        extra["oracle_error"] = float(err)
        checks.append(("oracle_error", err <= tol))
    residual = max(dec.projection_defect, dec.exterior_defect)
    return _report(tol, residual, checks, **extra)


def cmd_dirichlet(args):
    _, curve = _curve(args)
    if curve.kind != "disc":
        raise io.ConfigError("dirichlet needs a disc curve")
    datum = Datum(args.data, args.seed)
    if datum.kind == "fourier" and not args.complex:
        datum = datum.real_part()
    u = datum.sample(curve)
    if args.grid:
        pts = io.load_grid(args.grid, curve.spec.center, curve.spec.radius)
    else:
        pts = io.grid_points({"kind": "polar", "nr": 20, "ntheta": 64, "rmax": 0.95},
                             curve.spec.center, curve.spec.radius)
    grid = classify_points(curve, pts)
    if not np.all(grid.interior):
        raise io.ConfigError("grid points must lie inside the disc")
    tol = args.tol if args.tol is not None else 1e-9
    U1 = dirichlet_disc(curve, u, grid).values
    U2 = poisson_extension(curve, u, grid.points, near_threshold=0.0)
    diff = np.abs(U1 - U2)
    header = ["re_z", "im_z", "value_method1", "value_method2", "abs_diff"]
    cols = [pts.real, pts.imag, U1.real, U2.real, diff]
    is_real = np.max(np.abs(u.values.imag)) <= 1e-12
    extra = {"method1": "h-plus-reflected-H", "method2": "poisson-quadrature",
             "max_abs_diff": float(diff.max()), "points": int(pts.size)}
    checks = [("method1_vs_method2", diff.max() <= tol)]
    if is_real:
        U3 = dirichlet_disc_real(curve, u, grid).values
        d3 = float(np.max(np.abs(U3 - U1)))
        extra["two_re_cauchy_diff"] = d3
        checks.append(("two_re_cauchy", d3 <= tol))
    else:
        header += ["im_value_method1", "im_value_method2"]
        cols += [U1.imag, U2.imag]
    io.write_csv(args.out, header, cols)
    return _report(tol, float(diff.max()), checks, **extra)


def cmd_jump(args):
    _, curve = _curve(args)
    u = Datum(args.data, args.seed).sample(curve)
    deltas = sorted(args.deltas, reverse=True)
    tol = args.tol if args.tol is not None else 1e-2
    rows, monotone, final = [], True, 0.0
    for j in _sample_nodes(curve, args.nodes):
        samples = plemelj_jump(curve, u, j, deltas)
        errs = [s.error for s in samples]
        monotone &= all(b <= a for a, b in zip(errs[:-1], errs[1:]))
        final = max(final, errs[-1])
        rows += [(j, s.delta, s.jump.real, s.jump.imag, s.error) for s in samples]
    rows = np.array(rows, dtype=float)
    io.write_csv(args.out, ["node", "delta", "re_jump", "im_jump", "error"], rows.T)
    return _report(tol, final, [("monotone_decay", monotone), ("final_error", final <= tol)],
                   monotone=bool(monotone), deltas=deltas)


def cmd_szego(args):
    spec, curve = _curve(args)
    if args.pseudolocal is not None:
        t1, t2 = args.pseudolocal
        datum = Datum(args.data, args.seed) if args.data else None

        def h_local(c):
            if datum is None:
                return np.ones(c.n, dtype=complex)
            return datum.sample(c).values

        rep = pseudolocal_experiment(spec, (t1, t2), h_local)
        out = rep.to_dict()
        report = _report(1.5, rep.middle_ratio,
                         [("middle_ratio", rep.middle_ratio <= 1.5),
                          ("endpoint_growth", rep.endpoint_growth >= 1.8)], **out)
        io.write_json(args.out, report)
        return report
    if not args.data:
        raise io.ConfigError("szego needs --data unless --pseudolocal is given")
    u = Datum(args.data, args.seed).sample(curve)
    P = SzegoProjector(curve)
    Pu = P(u)
    rng = np.random.default_rng(args.seed)
    v = FourierData.random(max(1, curve.n // 8), rng).sample(curve) if curve.n >= 8 else u
    idem = P.idempotence_defect(u)
    sa = P.self_adjointness_defect(u, v)
    tol = args.tol if args.tol is not None else 1e-8
    io.write_boundary_csv(args.out, curve, u=u, Pu=Pu)
    return _report(tol, max(idem, sa),
                   [("idempotence", idem <= tol), ("self_adjointness", sa <= tol)],
                   idempotence=idem, self_adjointness=sa, solver=P.method)


def cmd_convergence(args):
    spec, _ = _curve(args)
    datum = Datum(args.data, args.seed)
    tol = args.tol if args.tol is not None else None
    errors = []
    for n in args.Ns:
        curve = build_curve(spec.with_resolution(n))
        ref = datum.oracle(curve)
        if ref is None:
            raise io.ConfigError("convergence needs data with an oracle "
                                 "(rational:..., or fourier:M on a disc)")
        dec = decompose(curve, datum.sample(curve))
        err = max(np.max(np.abs(dec.h.values - ref[0])), np.max(np.abs(dec.H.values - ref[1])))
        errors.append(float(err))
        if tol is None:
            tol = tolerance_for(curve)
    # geometric decrease until the rounding floor is reached
    floor = 1e-12
    decreasing = all(b <= max(0.5 * a, floor) for a, b in zip(errors[:-1], errors[1:]))
    io.write_csv(args.out, ["N", "max_error"], [np.asarray(args.Ns, float), errors])
    return _report(tol, errors[-1], [("decreasing", decreasing), ("final_error", errors[-1] <= tol)],
                   Ns=list(args.Ns), errors=errors)


def cmd_antiderivative(args):
    _, curve = _curve(args)
    u = Datum(args.data, args.seed).sample(curve)
    if args.project:
        u = decompose(curve, u).h
    tol_base = args.tol if args.tol is not None else tolerance_for(curve)
    try:
        res = antiderivative_boundary(curve, u)
    except NotHardyError as exc:
        return _report(tol_base, None, [("input_not_hardy", False)], error=str(exc))
    norm = float(np.sqrt(np.sum(np.abs(u.values) ** 2 * curve.s)))
    tol = tol_base * max(norm, np.finfo(float).tiny)
    io.write_boundary_csv(args.out, curve, H=res.H)
    return _report(tol, res.endpoint_residual,
                   [("endpoint_residual", res.endpoint_residual <= tol),
                    ("absolutely_continuous", res.absolutely_continuous)],
                   endpoint_residual=res.endpoint_residual,
                   projection_defect=res.projection_defect,
                   total_variation=res.total_variation,
                   variation_bound=res.variation_bound)


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="hardysplit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data_required=True):
        p.add_argument("--curve", required=True, help="curve JSON")
        p.add_argument("--data", required=data_required,
                       help="data CSV (t,re_u,im_u) or fourier:M, rational:a,b, indicator:t1,t2")
        p.add_argument("--out", required=True, help="output CSV (JSON for --pseudolocal)")
        p.add_argument("--diagnostics", help="diagnostics JSON (default: OUT with .json suffix)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None, help="override the check tolerance")
        return p

    p = common(sub.add_parser("decompose", help="u = h + H with diagnostics"))
    p.add_argument("--delta", type=float, default=1e-3, help="offset for the jump check")
    p.set_defaults(func=cmd_decompose)

    p = common(sub.add_parser("dirichlet", help="harmonic extension on a disc"))
    p.add_argument("--grid", help="grid JSON (polar or points)")
    p.add_argument("--complex", action="store_true", help="keep complex fourier data")
    p.set_defaults(func=cmd_dirichlet)

    p = common(sub.add_parser("jump", help="Plemelj jump across the curve"))
    p.add_argument("--deltas", type=_float_list, default=[1e-1, 1e-2, 1e-3])
    p.add_argument("--nodes", type=int, default=8)
    p.set_defaults(func=cmd_jump)

    p = common(sub.add_parser("szego", help="Szegő projection"), data_required=False)
    p.add_argument("--pseudolocal", nargs=2, type=float, metavar=("T1", "T2"))
    p.set_defaults(func=cmd_szego)

    p = common(sub.add_parser("convergence", help="error against an oracle over N"))
    p.add_argument("--Ns", type=_int_list, required=True)
    p.set_defaults(func=cmd_convergence)

    p = common(sub.add_parser("antiderivative", help="boundary antiderivative of Hardy data"))
    p.add_argument("--project", action="store_true", help="replace the data by its h part first")
    p.set_defaults(func=cmd_antiderivative)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    diag = args.diagnostics or str(Path(args.out).with_suffix(".json"))
    if args.command == "szego" and args.pseudolocal is not None and not args.diagnostics:
        diag = None
    try:
        report = args.func(args)
    except (io.ConfigError, InvalidCurveError, CurveMismatchError, PoleOnCurveError) as exc:
        print(f"hardysplit: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"hardysplit: runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    report = {"command": args.command, **report}
    if diag:
        io.write_json(diag, report)
    if not report["passed"]:
        print(f"hardysplit: checks failed: {', '.join(report['failures'])}", file=sys.stderr)
        return EXIT_TOL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
