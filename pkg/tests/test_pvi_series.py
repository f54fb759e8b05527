from fractions import Fraction as F

import pytest

from heunrh.errors import BadCenter, BadDelta, ZeroLeading
from heunrh.fuchsian import pvi_constants, pvi_residual
from heunrh.pvi_series import (
    c0_double,
    c1_simple,
    double_pole_jet,
    extend_jet,
    simple_pole_jet,
)


def exact_c1(a, c0, sigma, delta, alpha):
    """Closed form evaluated with exact rationals."""
    a, c0, d = F(a), F(c0), F(delta)
    a1, a2, a3 = (F(v) for v in alpha)
    return (1 - (c0 - F(1, 3)) / a - (c0 - F(2, 3)) / (a - 1)
            + F(sigma, 3) * (d - F(1, 2))
            * (1 - (6 * c0 ** 2 - 4 * c0 + 1) / a + (6 * c0 ** 2 - 8 * c0 + 3) / (a - 1))
            + F(sigma) / (2 * (d - F(1, 2)))
            * (1 - F(2, 3) * (a2 ** 2 - F(1, 4)) + F(2, 3) * (a3 ** 2 - F(1, 4)) / a
               - F(2, 3) * (a1 ** 2 - F(1, 4)) / (a - 1)))


def exact_c0_double(a, cm2, alpha):
    a, cm2 = F(a), F(cm2)
    a1, a2, a3 = (F(v) for v in alpha)
    return (F(1, 3) * (a + 1) + cm2 / (12 * a ** 2 * (a - 1) ** 2)
            * (12 * a * (a - 1) + 1 - 4 * a * a1 ** 2 + 4 * (a - 1) * a3 ** 2
               - 4 * a * (a - 1) * (a2 ** 2 - F(1, 4))))


def rational_points(rng, count):
    """Random rational parameter tuples (exactly representable in floats)."""
    pts = []
    while len(pts) < count:
        den = 16
        a = F(int(rng.integers(-40, 60)), den)
        if a in (0, 1) or abs(a) > 4:
            continue
        c0 = F(int(rng.integers(-24, 24)), den)
        d = F(int(rng.integers(-20, 40)), den)
        if d in (0, F(1, 2)) or (2 * d).denominator == 1:
            continue
        alpha = tuple(F(int(rng.integers(1, 8)), 16) for _ in range(3))
        if any((2 * v).denominator == 1 for v in alpha):
            continue
        sigma = 1 if rng.integers(0, 2) else -1
        pts.append((a, c0, sigma, d, alpha))
    return pts


class TestSimplePoleJet:
    def test_leading_coefficient_fixture(self):
        jet = simple_pole_jet(2.0, 0.0, +1, 0.75, (0.25, 0.25, 0.25), order=2)
        assert abs(jet.coeffs[-1] - 4.0) < 1e-14

    def test_sigma_flips_sign(self):
        jet = simple_pole_jet(2.0, 0.0, -1, 0.75, (0.25, 0.25, 0.25), order=2)
        assert abs(jet.coeffs[-1] + 4.0) < 1e-14

    def test_c1_closed_form_fixture(self):
        a, c0, d, alpha = 2, 0, F(3, 4), (F(1, 4), F(1, 4), F(1, 4))
        jet = simple_pole_jet(float(a), float(c0), +1, float(d),
                              tuple(map(float, alpha)), order=3)
        assert abs(jet.coeffs[1] - float(exact_c1(a, c0, 1, d, alpha))) < 1e-13

    def test_bad_delta_and_center(self):
        with pytest.raises(BadDelta):
            simple_pole_jet(2.0, 0.0, +1, 0.5, (0.25, 0.25, 0.25))
        with pytest.raises(BadCenter):
            simple_pole_jet(1.0, 0.0, +1, 0.75, (0.25, 0.25, 0.25))


class TestDoublePoleJet:
    def test_cm1_fixture(self):
        jet = double_pole_jet(2.0, 1.0, (0.25, 0.25, 0.25), order=2)
        assert abs(jet.coeffs[-1] - 1.5) < 1e-14

    def test_c0_additive_term(self):
        # the c_-2-independent part of c0 is (a+1)/3 = 1 at a = 2
        a, alpha = 2.0, (0.2, 0.3, 0.15)
        c0_small = c0_double(a, 1e-9, alpha)
        assert abs(c0_small - 1.0) < 1e-7

    def test_scaling_linearity(self):
        a, alpha = 3.0, (0.25, 0.25, 0.25)
        j1 = double_pole_jet(a, 1.0, alpha, order=2)
        j2 = double_pole_jet(a, 2.5, alpha, order=2)
        assert abs(j2.coeffs[-1] - 2.5 * j1.coeffs[-1]) < 1e-13

    def test_zero_leading(self):
        with pytest.raises(ZeroLeading):
            double_pole_jet(2.0, 0.0, (0.25, 0.25, 0.25))


class TestRecursion:
    def test_extend_then_truncate_is_identity(self):
        jet = simple_pole_jet(2.0, 0.3, +1, 0.7, (0.2, 0.3, 0.15), order=4)
        ext = extend_jet(jet, 5)
        back = ext.truncated(jet.depth)
        assert back.coeffs == jet.coeffs

    def test_recursion_matches_c1_closed_form_at_50_rational_points(self, rng):
        for (a, c0, sigma, d, alpha) in rational_points(rng, 50):
            jet = simple_pole_jet(float(a), float(c0), sigma, float(d),
                                  tuple(map(float, alpha)), order=2)
            ext = extend_jet(jet, 1)
            want = float(exact_c1(a, c0, sigma, d, alpha))
            scale = max(1.0, abs(want))
            assert abs(ext.coeffs[1] - want) <= 1e-12 * scale

    def test_recursion_matches_c0_closed_form_at_50_rational_points(self, rng):
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
            assert abs(ext.coeffs[0] - want) <= 1e-12 * max(1.0, abs(want))
            count += 1


def _mpc(v, mp):
    if isinstance(v, F):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpc(v)


def mp_jet_residual(jet, x, delta, alpha, dps=50):
    """High-precision direct evaluation of the truncated-jet residual,
    independent of the package's series machinery."""
    import mpmath as mp

    with mp.workdps(dps):
        t = _mpc(x, mp) - _mpc(jet.center, mp)
        y = yp = ypp = mp.mpc(0)
        for k, c in sorted(jet.coeffs.items()):
            y += _mpc(c, mp) * t ** k
            yp += k * _mpc(c, mp) * t ** (k - 1)
            ypp += k * (k - 1) * _mpc(c, mp) * t ** (k - 2)
        xx = _mpc(x, mp)
        d = _mpc(delta, mp)
        a1, a2, a3 = (_mpc(v, mp) for v in alpha)
        rhs = (yp ** 2 / 2 * (1 / y + 1 / (y - 1) + 1 / (y - xx))
               - yp * (1 / xx + 1 / (xx - 1) + 1 / (y - xx))
               + y * (y - 1) * (y - xx) / (xx ** 2 * (xx - 1) ** 2)
               * (2 * (d - mp.mpf(1) / 2) ** 2 - 2 * a1 ** 2 * xx / y ** 2
                  + 2 * a3 ** 2 * (xx - 1) / (y - 1) ** 2
                  - 2 * (a2 ** 2 - mp.mpf(1) / 4) * xx * (xx - 1) / (y - xx) ** 2))
        return complex(ypp - rhs)


class TestOrderOfContact:
    """Halving-ratio law 2**(m-3) for depth-m jets on h in [1e-3, 1e-2].

    Deep jets need exact coefficients: double-precision coefficient noise
    enters the residual like h**-3 and floors the contact signal of the
    depth-6 jet below h ~ 3e-3, so the jets here are built with exact
    rational arithmetic (an independent recursion) and the residual is
    evaluated in high precision."""

    @pytest.mark.parametrize("sigma", [1, -1])
    def test_halving_ratio_exact_jets(self, sigma):
        from exact_jets import exact_simple_jet
        from heunrh.pvi_series import LaurentJet

        a, c0, d = F(2), F(1, 4), F(7, 10)
        alpha = (F(1, 5), F(3, 10), F(3, 20))
        for m in (4, 5, 6):
            cs = exact_simple_jet(a, c0, sigma, d, alpha, m)
            jet = LaurentJet(complex(float(a)), -1, dict(cs), complex(float(d)),
                             tuple(map(float, alpha)), sigma)
            for h in (1e-2, 3e-3, 1e-3):
                r1 = mp_jet_residual(jet, F(a) + F(h), d, alpha)
                r2 = mp_jet_residual(jet, F(a) + F(h) / 2, d, alpha)
                ratio = abs(r1) / abs(r2)
                assert abs(ratio - 2 ** (m - 3)) <= 0.1 * 2 ** (m - 3)

    def test_float_jets_match_exact_recursion(self, rng):
        from exact_jets import exact_simple_jet

        a, c0, d = F(2), F(1, 4), F(7, 10)
        alpha = (F(1, 5), F(3, 10), F(3, 20))
        cs = exact_simple_jet(a, c0, +1, d, alpha, 6)
        jet = simple_pole_jet(float(a), float(c0), +1, float(d),
                              tuple(map(float, alpha)), order=6)
        for k, v in cs.items():
            assert abs(jet.coeffs[k] - float(v)) < 1e-11 * max(1.0, abs(float(v)))

    def test_direct_float_evaluation_corroborates(self):
        # at the large-h end the double-precision residual sees the same law
        a, c0, d, alpha = 2.0, 0.25, 0.7, (0.2, 0.3, 0.15)
        params = pvi_constants(d, alpha)
        jet = simple_pole_jet(a, c0, +1, d, alpha, order=4)
        r1 = pvi_residual(jet, a + 1e-2, params)
        r2 = pvi_residual(jet, a + 5e-3, params)
        assert abs(abs(r1) / abs(r2) - 2.0) < 0.2
