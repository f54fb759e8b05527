"""Truncated Laurent expansions of Painleve VI solutions at movable poles.

Simple poles (delta != 1/2) carry the sign sigma and free constant c0; double
poles (delta = 1/2) carry the free leading coefficient c_-2. Leading
coefficients come from closed forms; everything deeper is produced by the
generic recursion: substitute the ansatz, match orders, solve the triangular
linear steps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import DEFAULTS
from .errors import BadCenter, BadDelta, RecursionSingular, ZeroLeading
from .fuchsian import PviParameters, pvi_constants
from .series import Series


@dataclass(frozen=True)
class LaurentJet:
    """Truncated Laurent expansion of a PVI solution at a movable pole.

    `coeffs` maps order k to the coefficient of (x-a)**k. The jet's depth is
    the number of stored coefficients; residual order-of-contact scales with it.
    """

    center: complex
    leading: int                 # -1 (simple) or -2 (double)
    coeffs: dict
    delta: complex
    alpha: tuple
    sigma: int | None = None     # +1 / -1 for simple poles, None for double

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @property
    def top_order(self) -> int:
        return max(self.coeffs)

    def series(self, cut: int | None = None) -> Series:
        top = self.top_order
        if cut is None:
            cut = top + 1
        c = [self.coeffs.get(k, 0.0) for k in range(self.leading, top + 1)]
        return Series(self.leading, c, cut)

    def value_and_derivatives(self, x) -> tuple:
        """(y, y', y'') of the truncated series at x near the center."""
        t = complex(x) - self.center
        y = yp = ypp = 0.0 + 0.0j
        for k, c in sorted(self.coeffs.items()):
            y += c * t ** k
            yp += k * c * t ** (k - 1)
            ypp += k * (k - 1) * c * t ** (k - 2)
        return y, yp, ypp

    def truncated(self, depth: int) -> "LaurentJet":
        orders = sorted(self.coeffs)[:depth]
        return replace(self, coeffs={k: self.coeffs[k] for k in orders})

    def to_dict(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "leading": self.leading,
            "coeffs": {str(k): [v.real, v.imag]
                       for k, v in sorted(self.coeffs.items())},
        }


def _pvi_residual_series(y: Series, x: Series, params: PviParameters) -> Series:
    yp = y.diff()
    ypp = yp.diff()
    one = Series.const(1.0, y.cut)
    rhs = (yp * yp * 0.5 * (y.inv() + (y - 1).inv() + (y - x).inv())
           - yp * (x.inv() + (x - 1).inv() + (y - x).inv())
           + y * (y - 1) * (y - x) * (x * x * (x - 1) * (x - 1)).inv()
           * (one * params.alpha0 + params.beta0 * x * (y * y).inv()
              + params.gamma0 * (x - 1) * ((y - 1) * (y - 1)).inv()
              + params.delta0 * x * (x - 1) * ((y - x) * (y - x)).inv()))
    return ypp - rhs


def _recursion_step(coeffs: dict, lead: int, k: int, a: complex,
                    params: PviParameters) -> complex:
    """Coefficient c_k from the first residual order where it enters linearly."""
    cut = k + 4 + 4 * (-lead)   # margin for the truncation shrink of products
    res = {}
    for trial in (0.0, 1.0):
        cs = dict(coeffs)
        cs[k] = trial
        y = Series(lead, [cs.get(j, 0.0) for j in range(lead, k + 1)], cut)
        x = Series.shifted_var(a, cut)
        res[trial] = _pvi_residual_series(y, x, params)
    lo = lead - 3
    hi = min(k - 1, res[0.0].cut)
    orders = range(lo, hi)
    r0s = np.array([res[0.0].coeff(m) for m in orders])
    slopes = np.array([res[1.0].coeff(m) for m in orders]) - r0s
    if slopes.size == 0:
        raise RecursionSingular(f"no residual window available for c_{k}")
    smax = float(np.max(np.abs(slopes)))
    rmax = float(np.max(np.abs(r0s)))
    for i, m in enumerate(orders):
        if abs(slopes[i]) > 1e-6 * max(smax, 1e-300):
            return -r0s[i] / slopes[i]
        if abs(r0s[i]) > 1e-6 * max(rmax, 1.0):
            raise RecursionSingular(
                f"residual order {m} inconsistent while solving c_{k}")
    raise RecursionSingular(f"no determining order found for c_{k} (resonance)")


def extend_jet(jet: LaurentJet, target_order: int) -> LaurentJet:
    """Extend with recursively determined coefficients up to (x-a)**target_order."""
    coeffs = dict(jet.coeffs)
    params = pvi_constants(jet.delta, jet.alpha)
    for k in range(jet.top_order + 1, target_order + 1):
        coeffs[k] = _recursion_step(coeffs, jet.leading, k, jet.center, params)
    return replace(jet, coeffs=coeffs)


def _validate_center(a):
    a = complex(a)
    if abs(a) < 1e-12 or abs(a - 1.0) < 1e-12:
        raise BadCenter(f"pole position a = {a} must avoid 0 and 1")
    return a


def c_minus1_simple(a, sigma, delta) -> complex:
    return sigma * a * (a - 1.0) / (2.0 * (delta - 0.5))


def c1_simple(a, c0, sigma, delta, alpha) -> complex:
    """Closed form for the first positive-order coefficient at a simple pole."""
    a1, a2, a3 = (complex(v) for v in alpha)
    d = complex(delta)
    return (1.0 - (c0 - 1.0 / 3.0) / a - (c0 - 2.0 / 3.0) / (a - 1.0)
            + (sigma / 3.0) * (d - 0.5)
            * (1.0 - (6.0 * c0 ** 2 - 4.0 * c0 + 1.0) / a
               + (6.0 * c0 ** 2 - 8.0 * c0 + 3.0) / (a - 1.0))
            + sigma / (2.0 * (d - 0.5))
            * (1.0 - (2.0 / 3.0) * (a2 ** 2 - 0.25)
               + (2.0 / (3.0 * a)) * (a3 ** 2 - 0.25)
               - (2.0 / (3.0 * (a - 1.0))) * (a1 ** 2 - 0.25)))


def simple_pole_jet(a, c0, sigma, delta, alpha, order: int | None = None) -> LaurentJet:
    """Jet at a simple movable pole; `order` counts stored coefficients
    (c_-1 .. c_{order-2})."""
    if order is None:
        order = DEFAULTS.jet_depth
    a = _validate_center(a)
    d = complex(delta)
    if abs(d) < 1e-12 or abs(d - 0.5) < 1e-12:
        raise BadDelta(f"simple poles require delta outside {{0, 1/2}}, got {d}")
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    c0 = complex(c0)
    coeffs = {-1: c_minus1_simple(a, sigma, d), 0: c0}
    if order >= 3:
        coeffs[1] = c1_simple(a, c0, sigma, d, alpha)
    jet = LaurentJet(a, -1, coeffs, d, tuple(complex(v) for v in alpha), sigma)
    if order >= 4:
        jet = extend_jet(jet, order - 2)
    return jet


def c_minus1_double(a, c_minus2) -> complex:
    return (2.0 * a - 1.0) / (a * (a - 1.0)) * c_minus2


def c0_double(a, c_minus2, alpha) -> complex:
    a1, a2, a3 = (complex(v) for v in alpha)
    return ((a + 1.0) / 3.0
            + c_minus2 / (12.0 * a ** 2 * (a - 1.0) ** 2)
            * (12.0 * a * (a - 1.0) + 1.0 - 4.0 * a * a1 ** 2
               + 4.0 * (a - 1.0) * a3 ** 2 - 4.0 * a * (a - 1.0) * (a2 ** 2 - 0.25)))


def double_pole_jet(a, c_minus2, alpha, order: int | None = None) -> LaurentJet:
    """Jet at a double movable pole (delta = 1/2); `order` counts stored
    coefficients (c_-2 .. c_{order-3})."""
    if order is None:
        order = DEFAULTS.jet_depth
    a = _validate_center(a)
    c_minus2 = complex(c_minus2)
    if c_minus2 == 0:
        raise ZeroLeading("leading coefficient c_-2 must be nonzero")
    coeffs = {-2: c_minus2, -1: c_minus1_double(a, c_minus2)}
    if order >= 3:
        coeffs[0] = c0_double(a, c_minus2, alpha)
    jet = LaurentJet(a, -2, coeffs, 0.5 + 0.0j, tuple(complex(v) for v in alpha), None)
    if order >= 4:
        jet = extend_jet(jet, order - 3)
    return jet
