"""Reduction of the constant pole-limit systems to the general Heun equation
(GHE), conversion between the two parameter dialects, accessory-parameter
relations, and GHE residual evaluation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AtSingularity, BadDelta, VariantMismatch
from .numerics import poly_der, poly_eval
from .pole_matrices import LimitSystem, Variant


def _sum_s(alpha):
    a1, a2, a3 = alpha
    return (a1 + a2 - (a1 + a2) ** 2 + a3 ** 2,
            a1 + a3 - (a1 + a3) ** 2 + a2 ** 2)


@dataclass(frozen=True)
class HeunParameters:
    """GHE data in the exponent dialect: singular points {0, a, 1, oo}, local
    exponent parameters alpha_j, formal exponent delta of the source system,
    and accessory pair (mu, nu) multiplying u as (mu*lambda + nu)/denominator."""

    a: complex
    alpha: tuple
    delta: complex
    mu: complex
    nu: complex
    variant: Variant

    @property
    def solution_row(self) -> int:
        """Which row of the matrix solution satisfies this GHE (1-based)."""
        return 1 if self.variant in (Variant.REGULAR, Variant.TILDE) else 2

    @property
    def prefactor_exponents(self) -> tuple:
        """Exponents (e1, e2, e3) of the prefactor lam^e1 (lam-a)^e2 (lam-1)^e3."""
        a1, a2, a3 = self.alpha
        if self.variant is Variant.CHECK:
            return (a1 - 0.5, a2, a3)
        return (a1, a2, a3)


def reduce(limit: LimitSystem) -> HeunParameters:
    """Accessory data (mu, nu) of the GHE satisfied by the prefactored row of
    the solution of the limit system."""
    a1, a2, a3 = limit.alpha
    s = a1 + a2 + a3
    S, T = _sum_s(limit.alpha)
    d = limit.delta
    a = limit.a
    b3 = limit.b3
    v = limit.variant
    if v is Variant.REGULAR:
        if abs(limit.a3 + d) > 1e-10:
            raise VariantMismatch("a3 != -delta for a regular-variant system")
        mu = (s - d) * (s + d - 2)
        nu = S - d ** 2 + a * (T - d ** 2) + b3 * (2 * d - 1)
    elif v is Variant.HAT:
        if abs(limit.a3 - (1 - d)) > 1e-10:
            raise VariantMismatch("a3 != 1-delta for a hat-variant system")
        mu = (s - d - 1) * (s + d - 1)
        nu = (S - (d - 1) ** 2 + a * (T - (d - 1) ** 2) + b3 * (2 * d - 1))
    elif v is Variant.CHECK:
        if abs(d - 1.0) > 1e-10:
            raise VariantMismatch("check variant requires delta = 1")
        mu = (s - 2) * s
        nu = b3 - 0.5 * (a + 1) + S + a * T
    elif v is Variant.TILDE:
        if abs(d - 0.5) > 1e-10:
            raise VariantMismatch("tilde variant requires delta = 1/2")
        de = 1.5
        mu = (s - de) * (s + de - 2)
        nu = S - de ** 2 + a * (T - de ** 2) + b3 * (2 * de - 1)
    else:
        raise VariantMismatch(f"unknown variant {v}")
    return HeunParameters(a, limit.alpha, d, complex(mu), complex(nu), v)


@dataclass(frozen=True)
class HeunCanonicalGHE:
    """Canonical GHE u'' + (gamma/z + kappa/(z-1) + epsilon/(z-a)) u'
    + (alpha*beta*z - q)/(z(z-1)(z-a)) u = 0."""

    gamma: complex
    kappa: complex
    epsilon: complex
    alpha: complex
    beta: complex
    q: complex
    a: complex

    @property
    def fuchs_residual(self) -> complex:
        return self.gamma + self.kappa + self.epsilon - self.alpha - self.beta - 1.0

    def to_dict(self) -> dict:
        from .fuchsian import complex_to_pair
        return {k: complex_to_pair(getattr(self, k))
                for k in ("gamma", "kappa", "epsilon", "alpha", "beta", "q", "a")}


def to_canonical_ghe(hp: HeunParameters) -> HeunCanonicalGHE:
    """Exponent-parameter dialect: gamma at 0, epsilon at a, kappa at 1;
    alpha+beta fixed by the Fuchs relation, alpha*beta = mu, q = -nu."""
    a1, a2, a3 = hp.alpha
    gamma = 1 - 2 * a1
    epsilon = 1 - 2 * a2
    kappa = 1 - 2 * a3
    ab_sum = gamma + kappa + epsilon - 1        # alpha + beta, Fuchs exact
    r = np.sqrt(complex(ab_sum ** 2 - 4 * hp.mu))
    alpha = (ab_sum + r) / 2
    beta = (ab_sum - r) / 2
    return HeunCanonicalGHE(complex(gamma), complex(kappa), complex(epsilon),
                            complex(alpha), complex(beta), complex(-hp.nu), hp.a)


def _as_ghe(eq) -> HeunCanonicalGHE:
    if isinstance(eq, HeunParameters):
        return to_canonical_ghe(eq)
    return eq


def ghe_residual(u, eq, lam, h: float = 1e-4) -> complex:
    """Residual of the canonical GHE at lam. Polynomials (coefficient arrays,
    ascending) are differentiated exactly; callables by central stencils."""
    g = _as_ghe(eq)
    lam = complex(lam)
    scale = max(1.0, abs(g.a))
    for pole in (0.0, 1.0, g.a):
        if abs(lam - pole) < 1e-12 * scale:
            raise AtSingularity(f"lambda = {lam} at GHE singular point {pole}")
    if callable(u):
        vals = [u(lam + k * h) for k in (-2, -1, 0, 1, 2)]
        v = vals[2]
        vp = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
        vpp = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h ** 2)
    else:
        c = np.asarray(u, dtype=complex)
        v = poly_eval(c, lam)
        vp = poly_eval(poly_der(c), lam)
        vpp = poly_eval(poly_der(c, 2), lam)
    den = lam * (lam - 1.0) * (lam - g.a)
    return (vpp
            + (g.gamma / lam + g.kappa / (lam - 1.0) + g.epsilon / (lam - g.a)) * vp
            + (g.alpha * g.beta * lam - g.q) / den * v)


def accessory_from_d1(d1, a, delta, alpha):
    """(b3, c0, nu) of the regular variant from the subleading diagonal
    asymptotic scalar d1 at infinity."""
    d, a, d1 = complex(delta), complex(a), complex(d1)
    if abs(d - 0.5) < 1e-12:
        raise BadDelta("delta = 1/2 has no simple-pole dictionary")
    S, T = _sum_s(tuple(complex(v) for v in alpha))
    b3 = -d1 + d * (a + 1)
    c0 = (b3 + a - 1) / (2 * d - 1)
    nu = (-d1 * (2 * d - 1) + S - d ** 2 + a * (T - d ** 2)
          + d * (2 * d - 1) * (a + 1))
    return b3, c0, complex(nu)


def accessory_from_c0(c0, a, delta, alpha) -> complex:
    """Accessory parameter nu of the regular variant from the free Laurent
    constant c0, by eliminating d1 between the two d1-relations:

        b3 = -d1 + delta (a+1) = c0 (2 delta - 1) + 1 - a,
        nu = -d1 (2 delta - 1) + ...

    which gives nu = (1-2 delta)^2 c0 + (2 delta - 1)(1 - a)
    - delta^2 (1 + a) + a T + S.
    """
    d, a, c0 = complex(delta), complex(a), complex(c0)
    S, T = _sum_s(tuple(complex(v) for v in alpha))
    return complex((1 - 2 * d) ** 2 * c0 + (2 * d - 1) * (1 - a)
                   - d ** 2 * (1 + a) + a * T + S)
