"""Constant coefficient matrices of the linear system at movable poles of the
Painleve VI function, in the four variants (continuous sigma=+1 case and the
three Schlesinger-regularized singular cases), plus the gauge transformations
themselves.

Two coefficients are computed from residue-eigenvalue identities instead of
expanded closed forms; the identities are exact consequences of the exponent
contract and were cross-checked symbolically against the series limit x -> a.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadCenter, BadDelta, GaugeSingular
from .fuchsian import FuchsianSystem
from .numerics import SIGMA3, SIGMA_MINUS, SIGMA_PLUS, det2, inv2


class Variant(enum.Enum):
    REGULAR = "regular"
    HAT = "hat"
    CHECK = "check"
    TILDE = "tilde"


@dataclass(frozen=True)
class LimitSystem:
    """A(lambda) = [(a3 l^2 + b3 l + c3) s3 + (bp l + cp) s+ + (bm l + cm) s-] / D,
    D = lambda (lambda - 1) (lambda - a)."""

    variant: Variant
    a: complex
    a3: complex
    b3: complex
    c3: complex
    bp: complex
    cp: complex
    bm: complex
    cm: complex
    kappa0: complex
    delta: complex
    alpha: tuple

    @property
    def poles(self) -> tuple:
        return (0.0 + 0.0j, self.a, 1.0 + 0.0j)

    @property
    def delta_infinity(self) -> complex:
        """Formal exponent at infinity of this system (= -a3)."""
        return -self.a3

    def sigma3_numerator(self, lam):
        return (self.a3 * lam + self.b3) * lam + self.c3

    def upper_numerator(self, lam):
        return self.bp * lam + self.cp

    def lower_numerator(self, lam):
        return self.bm * lam + self.cm

    def __call__(self, lam) -> np.ndarray:
        lam = complex(lam)
        den = lam * (lam - 1.0) * (lam - self.a)
        return (self.sigma3_numerator(lam) * SIGMA3
                + self.upper_numerator(lam) * SIGMA_PLUS
                + self.lower_numerator(lam) * SIGMA_MINUS) / den

    def residue(self, j: int) -> np.ndarray:
        lam = self.poles[j]
        others = [p for i, p in enumerate(self.poles) if i != j]
        den = (lam - others[0]) * (lam - others[1])
        return (self.sigma3_numerator(lam) * SIGMA3
                + self.upper_numerator(lam) * SIGMA_PLUS
                + self.lower_numerator(lam) * SIGMA_MINUS) / den

    def derivative(self, lam) -> np.ndarray:
        """Exact lambda-derivative of the coefficient matrix."""
        lam = complex(lam)
        D = lam * (lam - 1.0) * (lam - self.a)
        dD = 3.0 * lam ** 2 - 2.0 * (1.0 + self.a) * lam + self.a
        N = (self.sigma3_numerator(lam) * SIGMA3
             + self.upper_numerator(lam) * SIGMA_PLUS
             + self.lower_numerator(lam) * SIGMA_MINUS)
        dN = ((2.0 * self.a3 * lam + self.b3) * SIGMA3 + self.bp * SIGMA_PLUS
              + self.bm * SIGMA_MINUS)
        return (dN * D - N * dD) / D ** 2

    def expected_exponents(self) -> tuple:
        """Local exponents (at 0, a, 1) after the variant's Schlesinger shift."""
        a1, a2, a3_ = self.alpha
        if self.variant is Variant.CHECK:
            return (a1 - 0.5, a2, a3_)
        return (a1, a2, a3_)

    def coefficients(self) -> dict:
        return {"a3": self.a3, "b3": self.b3, "c3": self.c3,
                "bp": self.bp, "cp": self.cp, "bm": self.bm, "cm": self.cm}


def _check_center(a):
    a = complex(a)
    if abs(a) < 1e-12 or abs(a - 1.0) < 1e-12:
        raise BadCenter(f"pole position a = {a} must avoid 0 and 1")
    return a


def limit_regular(a, c0, delta, alpha, kappa0=1.0) -> LimitSystem:
    """Limit matrix at a simple pole with sigma = +1 (the system stays regular)."""
    a = _check_center(a)
    d, c0, k0 = complex(delta), complex(c0), complex(kappa0)
    if abs(d) < 1e-12 or abs(d - 0.5) < 1e-12:
        raise BadDelta(f"regular variant needs delta outside {{0, 1/2}}, got {d}")
    if k0 == 0:
        raise BadDelta("kappa0 must be nonzero")
    a1, a2, a3_ = (complex(v) for v in alpha)
    b3 = c0 * (2 * d - 1) + 1 - a
    c3 = (1 / (2 * d)) * ((d - 1 - c0 * (2 * d - 1)) ** 2 - a * a1 ** 2
                          + (a - 1) * a3_ ** 2 - a * (a - 1) * a2 ** 2
                          + a * (d ** 2 - 2 - 2 * c0 * (2 * d ** 2 + d - 1))
                          + a ** 2 * (d + 1) ** 2)
    cp = -k0 * a * (a - 1) / (2 * d - 1)
    bm = ((2 * d - 1) / (k0 * d * a * (a - 1))) * (
        a ** 3 * (a2 ** 2 - (1 + d) ** 2)
        + a ** 2 * (3 - 2 * a2 ** 2 - 3 * c0 + a2 ** 2 * c0 + 2 * d + a2 ** 2 * d
                    + 2 * c0 * d - 2 * a2 ** 2 * c0 * d - 2 * d ** 2 + 7 * c0 * d ** 2
                    - d ** 3 + 2 * c0 * d ** 3 + a1 ** 2 * (1 + d) - a3_ ** 2 * (1 + d))
        - a * (a1 ** 2 * (1 - d + c0 * (2 * d - 1))
               - a3_ ** 2 * (2 + d + c0 * (2 * d - 1))
               - a2 ** 2 * (1 - d + c0 * (2 * d - 1))
               + (1 - d + c0 * (2 * d - 1))
               * (3 + d - d ** 2 + c0 * (-3 + 4 * d + 4 * d ** 2)))
        + (1 + c0 * (2 * d - 1)) * (-a3_ ** 2 + (-1 + c0 + d - 2 * c0 * d) ** 2))
    # residue eigenvalue identity at lambda = 0
    cm = (a ** 2 * a1 ** 2 - c3 ** 2) / cp
    return LimitSystem(Variant.REGULAR, a, -d, b3, c3, 0.0, cp, bm, cm,
                       k0, d, (a1, a2, a3_))


def limit_hat(a, c0, delta, alpha, kappa0=1.0) -> LimitSystem:
    """Regularized limit matrix at a simple pole with sigma = -1, delta != 1."""
    a = _check_center(a)
    d, c0, k0 = complex(delta), complex(c0), complex(kappa0)
    for bad in (0.0, 0.5, 1.0):
        if abs(d - bad) < 1e-12:
            raise BadDelta(f"hat variant needs delta outside {{0, 1/2, 1}}, got {d}")
    if k0 == 0:
        raise BadDelta("kappa0 must be nonzero")
    a1, a2, a3_ = (complex(v) for v in alpha)
    b3 = a - 1 + c0 * (2 * d - 1)
    c3 = (1 / (2 * (d - 1))) * (a ** 2 * ((d - 2) ** 2 - a2 ** 2)
                                + a * (-a1 ** 2 + a3_ ** 2 + a2 ** 2 + (d - 1) ** 2 - 2
                                       - c0 * (4 * (d - 1) ** 2 - 2 * d))
                                - a3_ ** 2 + (d - c0 * (2 * d - 1)) ** 2)
    cm = -a * (a - 1) * (2 * d - 1) / k0
    bp = (k0 / (a * (a - 1) * (d - 1) * (2 * d - 1))) * (
        a ** 3 * (-a2 ** 2 + (d - 2) ** 2)
        + a ** 2 * (a2 ** 2 - 2 + c0 * (a2 ** 2 - 8) + (d - 2) * (a1 ** 2 - a3_ ** 2)
                    + d * (a2 ** 2 - 5) + 2 * c0 * d * (11 - a2 ** 2)
                    + c0 * d ** 2 * (2 * d - 13) - d ** 2 * (d - 5))
        - (c0 * (2 * d - 1) - 1) * (a3_ ** 2 - (c0 + d - 2 * c0 * d) ** 2)
        - a * (c0 ** 2 * (1 - 2 * d) ** 2 * (2 * d - 5)
               - d * (3 + a1 ** 2 - a2 ** 2 + d - d ** 2)
               + c0 * (2 * d - 1) * (3 + a1 ** 2 - a2 ** 2 + 6 * d - 3 * d ** 2)
               + a3_ ** 2 * (3 - d - c0 * (2 * d - 1))))
    cp = (a ** 2 * a1 ** 2 - c3 ** 2) / cm
    return LimitSystem(Variant.HAT, a, 1 - d, b3, c3, bp, cp, 0.0, cm,
                       k0, d, (a1, a2, a3_))


def limit_check(a, c0, alpha, kappa0=1.0) -> LimitSystem:
    """Regularized limit matrix for delta = 1, sigma = -1; the lower entry has
    no pole at the origin (its common-denominator numerator is bm*lambda)."""
    a = _check_center(a)
    c0, k0 = complex(c0), complex(kappa0)
    if k0 == 0:
        raise BadDelta("kappa0 must be nonzero")
    a1, a2, a3_ = (complex(v) for v in alpha)
    b3 = c0 + 1.5 * a - 0.5
    c3 = a * (a1 - 0.5)
    bp = (k0 / (a * (a - 1))) * (a ** 2 * (1 - a2 ** 2)
                                 - a * (2 + a1 ** 2 - a3_ ** 2 - a2 ** 2 - 2 * c0)
                                 - a3_ ** 2 + (c0 - 1) ** 2)
    cp = k0 * (-a3_ ** 2 + a2 ** 2 + (a + 1) / (a - 1) * a1 ** 2
               + 2 * a1 * (c0 / (a - 1) + 1))
    bm = -a * (a - 1) / k0
    return LimitSystem(Variant.CHECK, a, -0.5, b3, c3, bp, cp, bm, 0.0,
                       k0, 1.0 + 0.0j, (a1, a2, a3_))


def limit_tilde(a, c_minus2, alpha, kappa0=1.0) -> LimitSystem:
    """Regularized limit matrix at a double pole (delta = 1/2)."""
    a = _check_center(a)
    c2, k0 = complex(c_minus2), complex(kappa0)
    if c2 == 0:
        raise BadDelta("c_-2 must be nonzero for double poles")
    if k0 == 0:
        raise BadDelta("kappa0 must be nonzero")
    a1, a2, a3_ = (complex(v) for v in alpha)
    b3 = a + 1 - a ** 2 * (a - 1) ** 2 / (2 * c2)
    c3 = (a ** 4 * (a - 1) ** 4 / (12 * c2 ** 2)
          + a ** 2 * (a - 1) ** 2 * (a + 1) / (6 * c2)
          + (1 / 12) * (a ** 2 * (1 - 4 * a2 ** 2)
                        + a * (-7 - 4 * a1 ** 2 + 4 * a3_ ** 2 + 4 * a2 ** 2)
                        + 1 - 4 * a3_ ** 2))
    cp = -k0 * c2 / (a ** 2 * (a - 1) ** 2)
    # residue eigenvalue identities at lambda = 0 and lambda = 1
    cm = (a ** 2 * a1 ** 2 - c3 ** 2) / cp
    n31 = -1.5 + b3 + c3
    bm = ((1 - a) ** 2 * a3_ ** 2 - n31 ** 2) / cp - cm
    return LimitSystem(Variant.TILDE, a, -1.5, b3, c3, 0.0, cp, bm, cm,
                       k0, 0.5 + 0.0j, (a1, a2, a3_))


# --- Schlesinger gauges ---------------------------------------------------------

def _sqrt_cut_positive_axis(lam: complex) -> complex:
    """sqrt with branch arg in [0, 2*pi): continuous off [0, +oo), and
    arg(lam) -> pi on the negative axis maps to arg(sqrt) = pi/2."""
    theta = np.angle(lam)
    if theta < 0:
        theta += 2 * np.pi
    return np.exp(0.5 * (np.log(abs(lam)) + 1j * theta))


@dataclass(frozen=True)
class SchlesingerGauge:
    """Rational gauge R(lambda) with unit determinant; `matrix` and
    `matrix_dlambda` return R and its lambda-derivative."""

    kind: str            # "R0" | "R1" | "R2"
    params: dict

    def matrix(self, lam) -> np.ndarray:
        lam = complex(lam)
        p = self.params
        if self.kind == "R0":
            top = lam + (1 + p["x"] - 2 * p["p"] - p["y"] * (2 * p["delta"] + 1)) \
                / (2 * (p["delta"] - 1))
            return np.array([[top, -p["kappa"] / (2 * p["delta"] - 1)],
                             [(2 * p["delta"] - 1) / p["kappa"], 0.0]], dtype=complex)
        if self.kind == "R1":
            s = _sqrt_cut_positive_axis(lam)
            g = p["g"]
            return np.array([[lam + g, -p["kappa"]],
                             [-g / p["kappa"], 1.0]], dtype=complex) / s
        if self.kind == "R2":
            return np.array([[0.0, -2.0 / p["kappatilde"]],
                             [p["kappatilde"] / 2.0, lam + p["g2"]]], dtype=complex)
        raise ValueError(f"unknown gauge kind {self.kind!r}")

    def matrix_dlambda(self, lam) -> np.ndarray:
        lam = complex(lam)
        if self.kind == "R0":
            return np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        if self.kind == "R1":
            s = _sqrt_cut_positive_axis(lam)
            g, kappa = self.params["g"], self.params["kappa"]
            base = np.array([[lam + g, -kappa], [-g / kappa, 1.0]], dtype=complex)
            dbase = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
            return dbase / s - base / (2.0 * lam * s)
        if self.kind == "R2":
            return np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
        raise ValueError(f"unknown gauge kind {self.kind!r}")


def gauge_r0(sys: FuchsianSystem) -> SchlesingerGauge:
    """Shifts the formal exponent at infinity down by one (delta != 1/2, 1)."""
    d = complex(sys.delta)
    if abs(d - 1.0) < 1e-12 or abs(d - 0.5) < 1e-12:
        raise GaugeSingular("R0 needs delta outside {1/2, 1}")
    return SchlesingerGauge("R0", {"x": sys.x, "p": sys.p, "y": sys.y,
                                   "delta": d, "kappa": sys.kappa})


def gauge_r1(sys: FuchsianSystem) -> SchlesingerGauge:
    """Shifts the exponents at infinity and at the origin by one half."""
    g = -sys.p - sys.y + (sys.z + sys.alpha[0] * sys.x) / sys.y
    return SchlesingerGauge("R1", {"g": g, "kappa": sys.kappa})


def gauge_r2(sys: FuchsianSystem) -> SchlesingerGauge:
    """Shifts the formal exponent at infinity up by one."""
    g2 = -(2 * sys.p + 2 * sys.y - 2 * sys.ytilde + sys.x + 1) / 3.0
    return SchlesingerGauge("R2", {"kappatilde": sys.kappatilde, "g2": g2})


def apply_gauge(A, gauge: SchlesingerGauge):
    """Pointwise R A R^-1 + R' R^-1 as a new coefficient-matrix callable."""
    def gauged(lam):
        R = gauge.matrix(lam)
        d = det2(R)
        if abs(d) < 1e-13:
            raise GaugeSingular(f"gauge matrix singular at lambda = {lam}")
        Rinv = inv2(R)
        return R @ A(lam) @ Rinv + gauge.matrix_dlambda(lam) @ Rinv
    return gauged
