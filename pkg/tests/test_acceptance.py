"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with  `pytest -s tests/test_acceptance.py`  to see the per-criterion lines.
Criterion 4 is split into named sub-checks; the frozen worked value nu = 6 is
implemented faithfully and expected to fail (strict xfail) because it traces
to a source display that contradicts the other three closed-form routes to the
accessory parameter; full analysis lives outside the package in the decisions
ledger. All other criteria pass at their stated tolerances.
"""

from fractions import Fraction as F

import numpy as np
import pytest

from conftest import moderate_monodromy_fixture, random_system
from exact_jets import exact_simple_jet
from test_pole_matrices import ALPHA as GAUGE_ALPHA
from test_pole_matrices import gauged_limit_vs_closed_form
from test_pvi_series import exact_c0_double, exact_c1, mp_jet_residual, rational_points
from test_heun_reduction import ghe_residual_of_solution_rows

from heunrh.errors import NotSolvable
from heunrh.fuchsian import psi_expansion, recover_pvi
from heunrh.heun_reduction import accessory_from_c0, ghe_residual, reduce
from heunrh.monodromy import fricke_residual, monodromy_matrices, trace_coordinates
from heunrh.numerics import SIGMA3, det2, eig2, mat_norm
from heunrh.pole_matrices import (
    Variant,
    gauge_r0,
    gauge_r1,
    gauge_r2,
    limit_regular,
)
from heunrh.pvi_series import LaurentJet, double_pole_jet, extend_jet, simple_pole_jet
from heunrh.reducible_rh import (
    build_heun_polynomial,
    classical_pvi_y,
    heun_locus,
    make_reducible_data,
    moments,
    moments_adaptive,
    solve_rn,
)

QUARTER = (0.25, 0.25, 0.25)


def report(line):
    print(f"\nACCEPTANCE {line}")


def test_criterion_1_residue_contract(rng):
    worst_sum = worst_eig = 0.0
    for _ in range(100):
        sys = random_system(rng)
        total = sys.residue(0) + sys.residue(1) + sys.residue(2)
        worst_sum = max(worst_sum, mat_norm(total + sys.delta * SIGMA3))
        for j in range(3):
            ev, _ = eig2(sys.residue(j))
            worst_eig = max(worst_eig,
                            min(abs(ev - sys.alpha[j]), abs(ev + sys.alpha[j])))
    assert worst_sum <= 1e-10 and worst_eig <= 1e-10
    report(f"1 residue contract: PASS (sum {worst_sum:.1e}, eig {worst_eig:.1e})")


def test_criterion_2_pole_series_order_of_contact():
    worst = 0.0
    a, c0, d = F(2), F(1, 4), F(7, 10)
    alpha = (F(1, 5), F(3, 10), F(3, 20))
    for sigma in (1, -1):
        for m in (4, 5, 6):
            cs = exact_simple_jet(a, c0, sigma, d, alpha, m)
            jet = LaurentJet(complex(float(a)), -1, dict(cs), complex(float(d)),
                             tuple(map(float, alpha)), sigma)
            for h in (1e-2, 3e-3, 1e-3):
                r1 = mp_jet_residual(jet, F(a) + F(h), d, alpha)
                r2 = mp_jet_residual(jet, F(a) + F(h) / 2, d, alpha)
                ratio = abs(r1) / abs(r2)
                dev = abs(ratio - 2 ** (m - 3)) / 2 ** (m - 3)
                worst = max(worst, dev)
                assert dev <= 0.1
    report(f"2a halving ratio 2^(m-3), m=4..6, h in [1e-3,1e-2]: PASS "
           f"(worst deviation {100 * worst:.2f}%)")


def test_criterion_2_recursion_matches_closed_forms(rng):
    worst = 0.0
    for (a, c0, sigma, d, alpha) in rational_points(rng, 50):
        jet = simple_pole_jet(float(a), float(c0), sigma, float(d),
                              tuple(map(float, alpha)), order=2)
        ext = extend_jet(jet, 1)
        want = float(exact_c1(a, c0, sigma, d, alpha))
        dev = abs(ext.coeffs[1] - want) / max(1.0, abs(want))
        worst = max(worst, dev)
        assert dev <= 1e-12
    count = 0
    while count < 50:
        a = F(int(rng.integers(-40, 60)), 16)
        if a in (0, 1) or abs(a) > 4:
            continue
        cm2 = F(int(rng.integers(1, 32)), 16) * (1 if rng.integers(0, 2) else -1)
        alpha = tuple(F(int(rng.integers(1, 8)), 16) for _ in range(3))
        jet = double_pole_jet(float(a), float(cm2), tuple(map(float, alpha)),
                              order=2)
        ext = extend_jet(jet, 0)
        want = float(exact_c0_double(a, cm2, alpha))
        dev = abs(ext.coeffs[0] - want) / max(1.0, abs(want))
        worst = max(worst, dev)
        assert dev <= 1e-12
        count += 1
    report(f"2b recursion vs closed-form coefficients at 50+50 rational points: "
           f"PASS (worst {worst:.1e})")


def test_criterion_3_limit_vs_gauge(rng):
    lams = (2.4 + 0.8j, -0.6 + 0.4j)
    devs = {}
    devs["hat"] = gauged_limit_vs_closed_form(
        Variant.HAT, 1.8 + 0.1j, 0.23 - 0.07j, 0.64, GAUGE_ALPHA, 1.3 - 0.4j, lams)
    devs["check"] = gauged_limit_vs_closed_form(
        Variant.CHECK, 1.8 + 0.1j, 0.23 - 0.07j, 1.0, GAUGE_ALPHA, 1.3 - 0.4j, lams)
    devs["tilde"] = gauged_limit_vs_closed_form(
        Variant.TILDE, 1.8 + 0.1j, 0.8 - 0.3j, 0.5, GAUGE_ALPHA, 1.3 - 0.4j, lams)
    assert max(devs.values()) <= 1e-6
    sys = random_system(rng)
    det_dev = 0.0
    for g in (gauge_r0(sys), gauge_r1(sys), gauge_r2(sys)):
        for _ in range(10):
            lam = complex(rng.normal(scale=2), rng.normal(scale=2))
            det_dev = max(det_dev, abs(det2(g.matrix(lam)) - 1.0))
    assert det_dev <= 1e-12
    report(f"3 limit-vs-gauge (hat {devs['hat']:.1e}, check {devs['check']:.1e}, "
           f"tilde {devs['tilde']:.1e}) and unimodular gauges ({det_dev:.1e}): PASS")


def test_criterion_4a_ghe_residual_of_regular_row():
    ls = limit_regular(1.8 + 0.1j, 0.23 - 0.07j, 0.64, (0.21, 0.17, 0.31),
                       kappa0=1.3 - 0.4j)
    worst = ghe_residual_of_solution_rows(ls, n_points=50)
    assert worst <= 1e-7
    report(f"4a GHE residual of the prefactored first row at 50 points: "
           f"PASS ({worst:.1e})")


def test_criterion_4b_two_routes_to_nu(rng):
    worst = 0.0
    for _ in range(20):
        a = complex(rng.uniform(1.2, 2.5), rng.uniform(-0.5, 0.5))
        c0 = complex(rng.normal(), rng.normal())
        d = complex(rng.uniform(0.55, 0.9), rng.uniform(-0.2, 0.2))
        alpha = tuple(rng.uniform(0.1, 0.45, size=3) + 0j)
        hp = reduce(limit_regular(a, c0, d, alpha))
        nu2 = accessory_from_c0(c0, a, d, alpha)
        worst = max(worst, abs(hp.nu - nu2) / max(1.0, abs(nu2)))
    assert worst <= 1e-12
    report(f"4b two routes to the accessory parameter: PASS (worst {worst:.1e})")


def test_criterion_4c_worked_point_consistent_value():
    nu_reduce = reduce(limit_regular(2.0, 0.0, 0.75, QUARTER)).nu
    nu_c0 = accessory_from_c0(0.0, 2.0, 0.75, QUARTER)
    assert abs(nu_reduce - nu_c0) < 1e-13
    assert abs(nu_c0 - (-1.25)) < 1e-13
    report("4c worked point (alpha=1/4.., delta=3/4, a=2, c0=0): both routes "
           "give nu = -5/4: PASS")


@pytest.mark.xfail(strict=True, reason=(
    "criterion pins nu = 6 at the worked point, from a display whose "
    "3*delta^2*(1+a) term is inconsistent with the d1-elimination of the "
    "other closed-form relations; the consistent value is -5/4 (ledger entry)"))
def test_criterion_4c_frozen_worked_value():
    report("4c frozen worked value nu = 6: FAIL (expected; source-display "
           "inconsistency, see decisions ledger)")
    assert abs(accessory_from_c0(0.0, 2.0, 0.75, QUARTER) - 6.0) < 1e-12


def test_criterion_5_monodromy(rng):
    worst = dict(cyc=0.0, tr=0.0, fr=0.0, hom=0.0)
    for _ in range(3):
        sys, ms = moderate_monodromy_fixture(rng)
        worst["cyc"] = max(worst["cyc"], ms.cyclic_residual)
        for M, al in zip(ms.matrices, sys.alpha):
            worst["tr"] = max(worst["tr"],
                              abs(np.trace(M) - 2 * np.cos(2 * np.pi * al)))
        worst["fr"] = max(worst["fr"], abs(fricke_residual(trace_coordinates(ms))))
    sys, _ = moderate_monodromy_fixture(rng)
    r = tuple(min(abs(p - q) for q in sys.poles if q != p) / 6.0 for p in sys.poles)
    ms1 = monodromy_matrices(sys, radii=r)
    ms2 = monodromy_matrices(sys, radii=tuple(2 * v for v in r))
    for A, B in zip(ms1.matrices, ms2.matrices):
        worst["hom"] = max(worst["hom"], mat_norm(A - B))
    assert worst["cyc"] <= 1e-8 and worst["tr"] <= 1e-8
    assert worst["fr"] <= 1e-8 and worst["hom"] <= 1e-8
    report(f"5 monodromy: cyclic {worst['cyc']:.1e}, traces {worst['tr']:.1e}, "
           f"cubic {worst['fr']:.1e}, homotopy {worst['hom']:.1e}: PASS")


def test_criterion_6_reducible_rh():
    gen = (0.25, 0.2, 0.3)
    # orthogonality against the independent quadrature, n <= 5
    worst_orth = 0.0
    for n in range(1, 6):
        rd = make_reducible_data(gen, n, 1.0, 0.7 + 0.2j, 0.55 + 0.1j)
        rhs = solve_rn(moments(rd, 2 * n + 1), n)
        phi_ind = moments_adaptive(rd, 2 * n + 1)
        scale = float(np.max(np.abs(phi_ind)))
        for k in range(n):
            acc = abs(sum(rhs.p[m] * phi_ind[k + m] for m in range(n + 1)))
            worst_orth = max(worst_orth, acc / scale)
    assert worst_orth <= 1e-9
    # solvability boundary: raises exactly where the gate signals
    a_star = 0.5 + 0.23102639842704065j
    with pytest.raises(NotSolvable):
        solve_rn(moments(make_reducible_data(QUARTER, 1, 1.0, 1.0, a_star), 4), 1)
    solve_rn(moments(make_reducible_data(QUARTER, 1, 1.0, 1.0, 0.62 + 0.1j), 4), 1)
    # low-order closed forms of y against the general formula
    rd0 = make_reducible_data(QUARTER, 0, 1.0, 1.0, 0.62 + 0.1j)
    mt0 = moments(rd0, 2)
    d, x = rd0.delta, rd0.a
    y0_low = (x + 1 - (d - 1) * mt0.phi[1] / ((d - 0.5) * mt0.phi[0])
                  - mt0.f[0] / (d - 0.5))
    dev_y0 = abs(classical_pvi_y(mt0, 0) - y0_low) / abs(y0_low)
    rd1 = make_reducible_data(gen, 1, 1.0, 0.7 + 0.2j, 0.55 + 0.1j)
    mt1 = moments(rd1, 4)
    d, x, p = rd1.delta, rd1.a, mt1.phi
    y1_low = (x + 1 - (d - 1) / (d - 0.5)
                  * (p[0] * p[3] - p[1] * p[2]) / (p[0] * p[2] - p[1] ** 2)
                  + d / (d - 0.5) * p[1] / p[0] - mt1.f[0] / (d - 0.5))
    dev_y1 = abs(classical_pvi_y(mt1, 1) - y1_low) / max(1.0, abs(y1_low))
    assert dev_y0 <= 1e-12 and dev_y1 <= 1e-12
    # (psi_1)_+ determinant ratio versus direct expansion
    worst_psi = 0.0
    for n in range(0, 4):
        rd = make_reducible_data(gen, n, 1.0, 0.7 + 0.2j, 0.55 + 0.1j)
        rhs = solve_rn(moments(rd, 2 * n + 2), n)
        worst_psi = max(worst_psi, abs(rhs.psi1_plus - rhs.psi1_plus_direct()))
    assert worst_psi <= 1e-10
    report(f"6 reducible RH: orthogonality {worst_orth:.1e}, solvability "
           f"boundary exact, y formulas {max(dev_y0, dev_y1):.1e}, "
           f"psi1 routes {worst_psi:.1e}: PASS")


def test_criterion_7_heun_polynomial_end_to_end():
    roots = heun_locus(QUARTER, 1, 1.0, 1.0, (0.15, 0.35, 0.05, 0.25), grid=9)
    assert len(roots) == 1
    a_star = roots[0]["a"]
    rd = make_reducible_data(QUARTER, 1, 1.0, 1.0, a_star)
    mt = moments(rd, 4)
    rhs = solve_rn(mt, 1)
    u, hp = build_heun_polynomial(rhs, rd)
    assert abs(u[0] - (-mt.phi[1] / mt.phi[0])) < 1e-10
    rng = np.random.default_rng(2)
    worst = max(abs(ghe_residual(u, hp, 5.0 * np.exp(1j * th)))
                for th in rng.uniform(0, 2 * np.pi, 50))
    assert worst <= 1e-8
    brute = moments_adaptive(rd, 4)
    dev_q = float(np.max(np.abs(mt.phi - brute)) / np.max(np.abs(brute)))
    assert dev_q <= 1e-10
    report(f"7 Heun polynomial end-to-end at a* = {a_star:.8f}: residual "
           f"{worst:.1e}, dual quadratures {dev_q:.1e}: PASS")


def test_criterion_8_roundtrip(rng):
    worst = 0.0
    for _ in range(100):
        sys = random_system(rng)
        asym = psi_expansion(sys)
        k, p, y, z = recover_pvi(asym, sys.x, sys.delta)
        worst = max(worst, abs(k - sys.kappa), abs(p - sys.p),
                    abs(y - sys.y), abs(z - sys.z))
    assert worst <= 1e-10
    report(f"8 inversion round-trip on 100 random systems: PASS (worst {worst:.1e})")
