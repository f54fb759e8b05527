"""Self-contained invariant suite behind `heunrh verify`. Each check is cheap
and independent; the suite reports one (name, passed, detail) triple per check."""

from __future__ import annotations

import numpy as np

from . import fuchsian, heun_reduction, monodromy, numerics, pole_matrices, pvi_series
from .reducible_rh import make_reducible_data, moments, moments_adaptive, solve_rn


def _random_system(rng) -> fuchsian.FuchsianSystem:
    def c(lo=0.1, hi=0.45):
        return complex(rng.uniform(lo, hi), rng.uniform(-0.1, 0.1))
    return fuchsian.make_system(
        delta=c(0.15, 0.45), alpha=(c(), c(), c()),
        x=complex(rng.uniform(0.4, 0.8), rng.uniform(0.05, 0.3)),
        y=complex(rng.uniform(0.2, 0.5), rng.uniform(0.2, 0.5)),
        z=complex(rng.normal(0, 0.3), rng.normal(0, 0.3)), kappa=1.0)


def run_invariant_suite(seed: int = 12345) -> list:
    rng = np.random.default_rng(seed)
    results = []

    def check(name, fn):
        try:
            detail = fn()
            results.append((name, True, detail))
        except Exception as exc:  # noqa: BLE001 - suite reports, does not raise
            results.append((name, False, f"{type(exc).__name__}: {exc}"))

    def quad_pi():
        val = numerics.integrate_singular(lambda z: 1.0, (0, 1), (-0.5, -0.5))
        assert abs(val - np.pi) < 1e-11, val
        return f"|I - pi| = {abs(val - np.pi):.2e}"
    check("quadrature: arcsine weight integrates to pi", quad_pi)

    def transport_closed_form():
        d = 0.3
        A = lambda lam: -d * numerics.SIGMA3 / lam
        loop = numerics.ContourPath.circle(0, 1.0, start_angle=-np.pi / 2,
                                           singularities=(0,), clearance=0.5)
        T = numerics.transport(A, loop, 1e-11)
        want = np.diag([np.exp(-2j * np.pi * d), np.exp(2j * np.pi * d)])
        err = numerics.mat_norm(T - want)
        assert err < 1e-9, err
        return f"loop error {err:.2e}"
    check("transport: diagonal model loop matches closed form", transport_closed_form)

    def residue_contract():
        worst = 0.0
        for _ in range(10):
            sys = _random_system(rng)
            total = sys.residue(0) + sys.residue(1) + sys.residue(2)
            worst = max(worst, numerics.mat_norm(total + sys.delta * numerics.SIGMA3))
            for j in range(3):
                ev, _ = numerics.eig2(sys.residue(j))
                worst = max(worst, min(abs(ev - sys.alpha[j]), abs(ev + sys.alpha[j])))
        assert worst < 1e-10, worst
        return f"max deviation {worst:.2e}"
    check("fuchsian: residue sum and exponent contract", residue_contract)

    def roundtrip():
        worst = 0.0
        for _ in range(10):
            sys = _random_system(rng)
            asym = fuchsian.psi_expansion(sys)
            k, p, y, z = fuchsian.recover_pvi(asym, sys.x, sys.delta)
            worst = max(worst, abs(k - sys.kappa), abs(p - sys.p),
                        abs(y - sys.y), abs(z - sys.z))
        assert worst < 1e-10, worst
        return f"max deviation {worst:.2e}"
    check("fuchsian: asymptotics invert to (kappa, p, y, z)", roundtrip)

    def jet_closed_form():
        jet = pvi_series.simple_pole_jet(2.0, 0.0, +1, 0.75, (0.25, 0.25, 0.25), order=4)
        ext = pvi_series.extend_jet(jet.truncated(2), 1)
        err = abs(jet.coeffs[1] - ext.coeffs[1])
        assert err < 1e-12, err
        return f"recursion vs closed form {err:.2e}"
    check("pole series: recursion reproduces the closed-form coefficient", jet_closed_form)

    def gauge_dets():
        sys = _random_system(rng)
        worst = 0.0
        for g in (pole_matrices.gauge_r0(sys), pole_matrices.gauge_r2(sys)):
            for _ in range(5):
                lam = complex(rng.normal(), rng.normal())
                worst = max(worst, abs(numerics.det2(g.matrix(lam)) - 1.0))
        g1 = pole_matrices.gauge_r1(sys)
        for _ in range(5):
            lam = complex(rng.normal(), rng.normal())
            worst = max(worst, abs(numerics.det2(g1.matrix(lam)) - 1.0))
        assert worst < 1e-10, worst
        return f"max |det R - 1| = {worst:.2e}"
    check("gauges: unit determinants", gauge_dets)

    def two_routes_nu():
        a, c0, d = 2.0, 0.31, 0.75
        alpha = (0.25, 0.25, 0.25)
        hp = heun_reduction.reduce(pole_matrices.limit_regular(a, c0, d, alpha))
        nu2 = heun_reduction.accessory_from_c0(c0, a, d, alpha)
        err = abs(hp.nu - nu2)
        assert err < 1e-12, err
        return f"|nu_reduce - nu_c0| = {err:.2e}"
    check("reduction: both routes to the accessory parameter agree", two_routes_nu)

    def monodromy_fixture():
        sys = _random_system(rng)
        ms = monodromy.monodromy_matrices(sys)
        tc = monodromy.trace_coordinates(ms)
        cyc = ms.cyclic_residual
        fr = abs(monodromy.fricke_residual(tc))
        assert cyc < 1e-8 and fr < 1e-8, (cyc, fr)
        return f"cyclic {cyc:.2e}, cubic {fr:.2e}"
    check("monodromy: cyclic product and trace cubic", monodromy_fixture)

    def reducible_quadratures():
        rd = make_reducible_data((0.25, 0.25, 0.25), 0, 1.0, 1.0, 0.5)
        mt = moments(rd, 2)
        brute = moments_adaptive(rd, 2)
        err = float(np.max(np.abs(mt.phi - brute)) / np.max(np.abs(mt.phi)))
        assert err < 1e-10, err
        return f"dual-quadrature deviation {err:.2e}"
    check("reducible: dual quadratures agree on the moments", reducible_quadratures)

    def orthogonality():
        rd = make_reducible_data((0.25, 0.2, 0.3), 2, 1.0, 0.7 + 0.2j, 0.55 + 0.1j)
        mt = moments(rd, 6)
        rhs = solve_rn(mt, 2)
        worst = 0.0
        scale = float(np.max(np.abs(mt.phi)))
        for k in range(2):
            acc = sum(rhs.p[m] * mt.phi[m + k] for m in range(3))
            worst = max(worst, abs(acc))
        assert worst < 1e-9 * scale, worst
        return f"max orthogonality defect {worst:.2e}"
    check("reducible: generalized Jacobi orthogonality", orthogonality)

    return results
