"""Command-line surface. Complex numbers are written "re,im" on the command
line and [re, im] in JSON. Exit codes: 0 success, 2 invalid configuration,
3 numerical failure."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import config, errors
from .fuchsian import complex_to_pair, pair_to_complex, system_from_dict
from .heun_reduction import reduce as reduce_limit, to_canonical_ghe
from .monodromy import fricke_residual, monodromy_matrices, trace_coordinates
from .pole_matrices import (
    LimitSystem,
    Variant,
    limit_check,
    limit_hat,
    limit_regular,
    limit_tilde,
)
from .pvi_series import double_pole_jet, simple_pole_jet
from .reducible_rh import heun_locus, hankel_gap, make_reducible_data, moments
from .verification import run_invariant_suite

_VALIDATION = (errors.ConfigInvalid, errors.BadDelta, errors.BadCenter,
               errors.ZeroLeading, errors.InvalidExponent, errors.VariantMismatch,
               errors.ResonantDelta, errors.ResonantAlpha, errors.OnCutEndpoint,
               ValueError, KeyError)


def _cplx(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected re or re,im, got {text!r}")


def _triple(text: str):
    parts = [float(v) for v in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated values")
    return tuple(parts)


def _flatten(payload, prefix=""):
    rows = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            rows.extend(_flatten(payload[k], f"{prefix}{k}."))
    elif isinstance(payload, (list, tuple)):
        for i, v in enumerate(payload):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], payload))
    return rows


def _emit(payload: dict, fmt: str, path: str | None):
    if fmt == "csv":
        lines = ["key,value"]
        lines += [f"{k},{v}" for k, v in _flatten(payload)]
        text = "\n".join(lines)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True)
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _mat_to_json(m: np.ndarray):
    return [[complex_to_pair(m[i, j]) for j in range(2)] for i in range(2)]


def _cmd_pole_series(args) -> dict:
    if args.double:
        jet = double_pole_jet(args.a, args.cm2, args.alpha, order=args.order)
    else:
        jet = simple_pole_jet(args.a, args.c0, args.sigma, args.delta,
                              args.alpha, order=args.order)
    return jet.to_dict()


def _limit_from_args(args) -> LimitSystem:
    variant = Variant(args.variant)
    if args.params:
        with open(args.params) as fh:
            p = json.load(fh)
        get = lambda k, d=None: pair_to_complex(p[k]) if k in p else d
        a = get("a")
        alpha = tuple(pair_to_complex(v) for v in p["alpha"])
        kappa0 = get("kappa0", 1.0)
        c0 = get("c0", 0.0)
        cm2 = get("c_minus2", 1.0)
        delta = get("delta", 0.0)
    else:
        a, alpha, kappa0 = args.a, args.alpha, args.kappa0
        c0, cm2, delta = args.c0, args.cm2, args.delta
    if variant is Variant.REGULAR:
        return limit_regular(a, c0, delta, alpha, kappa0)
    if variant is Variant.HAT:
        return limit_hat(a, c0, delta, alpha, kappa0)
    if variant is Variant.CHECK:
        return limit_check(a, c0, alpha, kappa0)
    return limit_tilde(a, cm2, alpha, kappa0)


def _cmd_limit_matrix(args) -> dict:
    ls = _limit_from_args(args)
    out = {k: complex_to_pair(v) for k, v in ls.coefficients().items()}
    out["variant"] = ls.variant.value
    out["a"] = complex_to_pair(ls.a)
    return out


def _cmd_reduce(args) -> dict:
    with open(args.system) as fh:
        p = json.load(fh)
    variant = Variant(p["variant"])
    alpha = tuple(pair_to_complex(v) for v in p["alpha"])
    kw = dict(a=pair_to_complex(p["a"]), alpha=alpha,
              kappa0=pair_to_complex(p.get("kappa0", [1.0, 0.0])))
    if variant is Variant.REGULAR:
        ls = limit_regular(c0=pair_to_complex(p["c0"]),
                           delta=pair_to_complex(p["delta"]), **kw)
    elif variant is Variant.HAT:
        ls = limit_hat(c0=pair_to_complex(p["c0"]),
                       delta=pair_to_complex(p["delta"]), **kw)
    elif variant is Variant.CHECK:
        ls = limit_check(c0=pair_to_complex(p["c0"]), **kw)
    else:
        ls = limit_tilde(c_minus2=pair_to_complex(p["c_minus2"]), **kw)
    hp = reduce_limit(ls)
    ghe = to_canonical_ghe(hp)
    return {
        "exponent_dialect": {
            "a": complex_to_pair(hp.a),
            "alpha": [complex_to_pair(v) for v in hp.alpha],
            "delta": complex_to_pair(hp.delta),
            "mu": complex_to_pair(hp.mu),
            "nu": complex_to_pair(hp.nu),
            "variant": hp.variant.value,
        },
        "canonical_dialect": ghe.to_dict(),
    }


def _cmd_monodromy(args) -> dict:
    with open(args.system) as fh:
        sys_ = system_from_dict(json.load(fh))
    ms = monodromy_matrices(sys_, tol=args.tol)
    tc = trace_coordinates(ms)
    return {
        "M1": _mat_to_json(ms.M1),
        "M2": _mat_to_json(ms.M2),
        "M3": _mat_to_json(ms.M3),
        "Minf": _mat_to_json(ms.Minf),
        "traces": {k: complex_to_pair(getattr(tc, k))
                   for k in ("a1", "a2", "a3", "a_inf", "t12", "t23", "t31")},
        "cyclic_residual": ms.cyclic_residual,
        "fricke_residual": abs(fricke_residual(tc)),
    }


def _cmd_moments(args) -> dict:
    rd = make_reducible_data(args.alpha, args.n, args.s1, args.s3, args.a)
    mt = moments(rd, args.K)
    return {
        "phi": [complex_to_pair(v) for v in mt.phi],
        "f": [complex_to_pair(v) for v in mt.f],
        "delta": complex_to_pair(rd.delta),
        "s2": complex_to_pair(rd.s2),
        "nodes_used": mt.nodes_used,
        "est_error": mt.est_error,
    }


def _cmd_heun_poly(args) -> dict:
    re0, re1, im0, im1 = (float(v) for v in args.region.split(":"))
    grid = args.grid
    rows = []
    res = np.linspace(re0, re1, grid)
    ims = np.linspace(im0, im1, grid)
    for i in ims:
        for r in res:
            try:
                gap = hankel_gap(args.alpha, args.n, args.s1, args.s3, complex(r, i))
            except Exception:  # degenerate grid point; recorded as nan
                gap = complex("nan")
            rows.append((r, i, gap.real, gap.imag))
    scan_path = args.scan or "heun_poly_scan.csv"
    with open(scan_path, "w") as fh:
        fh.write("re_a,im_a,re_gap,im_gap\n")
        for row in rows:
            fh.write(",".join(f"{v:.16e}" for v in row) + "\n")
    roots = heun_locus(args.alpha, args.n, args.s1, args.s3,
                       (re0, re1, im0, im1), grid=grid)
    return {
        "scan_csv": scan_path,
        "roots": [{
            "a": complex_to_pair(r["a"]),
            "polynomial": [complex_to_pair(c) for c in r["polynomial"]],
            "mu": complex_to_pair(r["heun"].mu),
            "nu": complex_to_pair(r["heun"].nu),
            "gap": complex_to_pair(r["gap"]),
            "max_ghe_residual": r["residual"],
        } for r in roots],
    }


def _cmd_verify(args) -> dict:
    results = run_invariant_suite()
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})", file=sys.stderr)
    failed = [name for name, ok, _ in results if not ok]
    if failed:
        raise errors.NonConvergence(f"invariant checks failed: {failed}")
    return {"suite": args.suite, "checks": len(results), "failed": 0}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heunrh")
    ap.add_argument("--output", default="json", choices=("json", "csv"),
                    help="payload rendering")
    ap.add_argument("--out-file", default="-", help="write payload here (- = stdout)")
    sub = ap.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("pole-series", help="Laurent jet at a movable pole")
    ps.add_argument("--sigma", type=int, choices=(1, -1), default=1)
    ps.add_argument("--delta", type=_cplx, default=0.75)
    ps.add_argument("--a", type=_cplx, required=True)
    ps.add_argument("--c0", type=_cplx, default=0.0)
    ps.add_argument("--cm2", type=_cplx, default=1.0)
    ps.add_argument("--alpha", type=_triple, default=(0.25, 0.25, 0.25))
    ps.add_argument("--order", type=int, default=config.DEFAULTS.jet_depth)
    ps.add_argument("--double", action="store_true")
    ps.set_defaults(fn=_cmd_pole_series)

    lm = sub.add_parser("limit-matrix", help="coefficients of a pole-limit system")
    lm.add_argument("--variant", choices=[v.value for v in Variant], required=True)
    lm.add_argument("--params", help="JSON parameter file")
    lm.add_argument("--a", type=_cplx, default=2.0)
    lm.add_argument("--c0", type=_cplx, default=0.0)
    lm.add_argument("--cm2", type=_cplx, default=1.0)
    lm.add_argument("--delta", type=_cplx, default=0.75)
    lm.add_argument("--alpha", type=_triple, default=(0.25, 0.25, 0.25))
    lm.add_argument("--kappa0", type=_cplx, default=1.0)
    lm.set_defaults(fn=_cmd_limit_matrix)

    rd = sub.add_parser("reduce", help="limit system -> Heun parameters")
    rd.add_argument("system", help="LimitSystem JSON file")
    rd.set_defaults(fn=_cmd_reduce)

    mo = sub.add_parser("monodromy", help="numerical monodromy of a system JSON")
    mo.add_argument("system", help="FuchsianSystem JSON file")
    mo.add_argument("--tol", type=float, default=config.DEFAULTS.transport_tol)
    mo.set_defaults(fn=_cmd_monodromy)

    mm = sub.add_parser("moments", help="moments of the reducible weight")
    mm.add_argument("--alpha", type=_triple, required=True)
    mm.add_argument("--n", type=int, default=0)
    mm.add_argument("--s1", type=_cplx, default=1.0)
    mm.add_argument("--s3", type=_cplx, default=1.0)
    mm.add_argument("--a", type=_cplx, required=True)
    mm.add_argument("--K", type=int, default=4)
    mm.set_defaults(fn=_cmd_moments)

    hp = sub.add_parser("heun-poly", help="scan for Heun-polynomial loci")
    hp.add_argument("--alpha", type=_triple, required=True)
    hp.add_argument("--n", type=int, required=True)
    hp.add_argument("--s1", type=_cplx, default=1.0)
    hp.add_argument("--s3", type=_cplx, default=1.0)
    hp.add_argument("--region", required=True, help="re0:re1:im0:im1")
    hp.add_argument("--grid", type=int, default=config.DEFAULTS.locus_grid)
    hp.add_argument("--scan", help="CSV output path for the grid scan")
    hp.set_defaults(fn=_cmd_heun_poly)

    vf = sub.add_parser("verify", help="run the invariant suite")
    vf.add_argument("--suite", default="invariants", choices=("invariants",))
    vf.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        payload = args.fn(args)
    except _VALIDATION as exc:
        code = getattr(exc, "code", "config_invalid")
        _emit({"error": {"code": code, "message": str(exc)}}, "json", args.out_file)
        return 2
    except errors.HeunRHError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, "json", args.out_file)
        return 3
    _emit(payload, args.output, args.out_file)
    return 0


if __name__ == "__main__":
    sys.exit(main())
