"""Command line interface.

    mslab run --scenario remark3 --out reports/
    mslab ac --spec spec.json --point inf --order 1
    mslab orthopoly --lattice 0.4,0.4,0,1.5,400 --K 60 --csv trace.csv

Exit codes: 0 ok, 2 configuration rejected, 3 numerical or domain error.
"""
import argparse
import json
import sys

import numpy as np

from . import _accel
from .errors import ConfigError, MslabError
from .inner import INF, InnerFunctionSpec, eval_inner
from .report import dumps, emit_report, trace_csv


def _point(text):
    text = text.strip()
    if text.lower() in ("inf", "infinity"):
        return INF
    parts = [float(v) for v in text.split(",")]
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise argparse.ArgumentTypeError(f"bad point {text!r}")


def _points(text):
    return [_point(p) for p in text.split(";") if p.strip()]


def _floats(text):
    return [float(v) for v in text.split(",")]


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _spec(path):
    return InnerFunctionSpec.from_json(_load_json(path))


def _region(text):
    from .transfer import Generalized, StolzDisc, StolzHalfPlane

    kind, _, rest = text.partition(":")
    vals = _floats(rest) if rest else []
    if kind == "stolz_disc":
        zeta = complex(vals[0], vals[1]) if len(vals) == 3 else 1.0
        return StolzDisc(zeta, vals[-1])
    if kind == "stolz_half_plane":
        return StolzHalfPlane(vals[0])
    if kind == "generalized":
        return Generalized(vals[0], vals[1])
    raise ConfigError(f"unknown region {kind!r}")


def _emit(obj):
    sys.stdout.write(dumps(obj))


def _write_trace(path, values):
    if path:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(trace_csv(values))


# ---------------------------------------------------------------------------

def cmd_run(args):
    from .workbench import ScenarioConfig, run_scenario

    obj = _load_json(args.config) if args.config else {}
    cfg = ScenarioConfig.from_json(obj, name=args.scenario)
    bundle = run_scenario(cfg)
    paths = emit_report(bundle, args.out)
    for p in paths:
        print(p)


def cmd_eval(args):
    spec = _spec(args.spec)
    pts = _points(args.points)
    vals = [eval_inner(spec, p, allow_boundary=True) for p in pts]
    _emit({"points": pts, "values": vals, "module": "inner_core"})


def cmd_ac(args):
    from .boundary import ac_test

    spec = _spec(args.spec)
    rep = ac_test(spec, args.point, args.order, trace=bool(args.csv))
    _emit(rep.to_json())
    _write_trace(args.csv, rep.trace)


def cmd_clark(args):
    from .clark import clark_atoms

    mu = clark_atoms(_spec(args.spec), args.alpha)
    out = mu.to_json()
    out["module"] = "clark"
    _emit(out)


def cmd_geometry(args):
    from .geometry import build_system, geometry_report

    system = build_system(_spec(args.spec), _points(args.points))
    tr = [int(v) for v in args.truncations.split(",")] if args.truncations else [system.size]
    _emit(geometry_report(system, tr).to_json())


def cmd_localize(args):
    from .geometry import Combination
    from .localization import count_zeros_in_region

    spec = _spec(args.spec)
    pts = _points(args.kernels)
    coeffs = _points(args.coeffs) if args.coeffs else [1.0] * len(pts)
    f = Combination(spec, pts, coeffs)
    res = count_zeros_in_region(f, _region(args.region), R=args.R, clip=args.clip, details=True)
    _emit({"count": res.count, "winding": res.winding, "attempts": res.attempts,
           "module": "localization_quasi", "tolerance": 0.01})


def cmd_moments(args):
    from .localization import DiscAtomFamily, LatticeMeasureSpec, exp_moment_test

    if args.lattice:
        rho, m, s, c, M = _floats(args.lattice)
        rep = exp_moment_test(LatticeMeasureSpec(rho, m, s, c, int(M)), INF, args.eps)
    elif args.family:
        dc, dp, ma, mq = _floats(args.family)
        rep = exp_moment_test(DiscAtomFamily(1.0, dc, dp, ma, mq), 1.0, args.eps)
    else:
        raise ConfigError("give --lattice or --family")
    _emit(rep.to_json())


def cmd_transfer(args):
    from .transfer import phase_constant, transfer_inner

    spec = _spec(args.spec)
    half = transfer_inner(spec, args.zeta)
    out = half.to_json()
    out["phase_constant"] = phase_constant(spec, args.zeta)
    out["module"] = "transfer"
    _emit(out)


def cmd_orthopoly(args):
    from .localization import LatticeMeasureSpec, orthopoly_divergence_diagnostic

    if args.lattice:
        rho, m, s, c, M = _floats(args.lattice)
        mu = LatticeMeasureSpec(rho, m, s, c, int(M))
    else:
        atoms = np.asarray(_load_json(args.atoms), dtype=float).reshape(-1, 2)
        mu = (atoms[:, 0], atoms[:, 1])
    res = orthopoly_divergence_diagnostic(mu, args.z0, args.K)
    _emit(res.to_json())
    _write_trace(args.csv, res.trace)


def build_parser():
    ap = argparse.ArgumentParser(prog="mslab", description="Model-space numerics workbench")
    ap.add_argument("--threads", type=int, default=None, help="cap on worker threads")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a named scenario and write its report bundle")
    p.add_argument("--scenario", required=True)
    p.add_argument("--config", help="JSON file with params and truncations")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="evaluate the inner function")
    p.add_argument("--spec", required=True)
    p.add_argument("--points", required=True, help="'re,im;re,im;...'")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ac", help="Ahern-Clark test")
    p.add_argument("--spec", required=True)
    p.add_argument("--point", type=_point, required=True, help="'inf' or 're,im'")
    p.add_argument("--order", type=int, default=0)
    p.add_argument("--csv", help="write the term trace here")
    p.set_defaults(func=cmd_ac)

    p = sub.add_parser("clark", help="Clark atoms of a finite disc Blaschke product")
    p.add_argument("--spec", required=True)
    p.add_argument("--alpha", type=_point, default=complex(1.0))
    p.set_defaults(func=cmd_clark)

    p = sub.add_parser("geometry", help="Riesz bounds and biorthogonal norms of kernels")
    p.add_argument("--spec", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--truncations")
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("localize", help="count zeros of a kernel combination in a region")
    p.add_argument("--spec", required=True)
    p.add_argument("--kernels", required=True, help="kernel base points")
    p.add_argument("--coeffs", help="coefficients (default all 1)")
    p.add_argument("--region", required=True,
                   help="stolz_disc:[re,im,]gamma | stolz_half_plane:gamma | generalized:gamma,beta")
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--clip", type=float, default=1.0 - 1e-4)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("moments", help="exponential moment test")
    p.add_argument("--lattice", help="rho,m,s,c,M")
    p.add_argument("--family", help="dist_c,dist_p,mass_a,mass_q (atoms near 1)")
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("transfer", help="move a disc spec to the half-plane")
    p.add_argument("--spec", required=True)
    p.add_argument("--zeta", type=_point, default=complex(1.0))
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("orthopoly", help="orthonormal-polynomial divergence diagnostic")
    p.add_argument("--lattice", help="rho,m,s,c,M")
    p.add_argument("--atoms", help="JSON list of [position, mass]")
    p.add_argument("--z0", type=_point, default=complex(0.0, 1.0))
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_orthopoly)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _accel.apply_thread_cap(args.threads)
        args.func(args)
    except MslabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ConfigError.exit_code if isinstance(exc, ValueError) else 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
