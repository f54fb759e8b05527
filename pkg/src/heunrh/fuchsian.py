"""The traceless 2x2 Fuchsian system with poles {0, x, 1, oo} behind Painleve VI:
construction from (delta, alpha, x, y, z, kappa), derived parameters, the
deformation flow, the PVI residual, asymptotics at infinity, and the inversion
recovering (kappa, p, y, z) from those asymptotics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .errors import (
    AtSingularity,
    CriticalValue,
    DegenerateDenominator,
    ResonantDelta,
    TriangularExpansion,
)
from .numerics import IDENTITY, SIGMA3, SIGMA_MINUS, SIGMA_PLUS


def _dist_to_int(v: complex) -> float:
    return abs(v - round(v.real))


def resonance_distance(delta, alpha) -> float:
    """min distance of 2*delta and the 2*alpha_j to the integers."""
    vals = [2.0 * complex(delta)] + [2.0 * complex(a) for a in alpha]
    return min(_dist_to_int(v) for v in vals)


@dataclass(frozen=True)
class PviParameters:
    """Constants of the Painleve VI equation."""

    alpha0: complex
    beta0: complex
    gamma0: complex
    delta0: complex


def pvi_constants(delta, alpha) -> PviParameters:
    a1, a2, a3 = (complex(a) for a in alpha)
    d = complex(delta)
    return PviParameters(
        alpha0=2.0 * (d - 0.5) ** 2,
        beta0=-2.0 * a1 ** 2,
        gamma0=2.0 * a3 ** 2,
        delta0=-2.0 * (a2 ** 2 - 0.25),
    )


@dataclass(frozen=True)
class FuchsianSystem:
    """Parameters (delta, alpha, x, y, z, kappa) plus the derived (p, ytilde,
    kappatilde) that pin the coefficient matrix A(lambda)."""

    delta: complex
    alpha: tuple
    x: complex
    y: complex
    z: complex
    kappa: complex
    p: complex
    ytilde: complex
    kappatilde: complex
    near_resonant: bool = False

    @property
    def poles(self) -> tuple:
        return (0.0 + 0.0j, self.x, 1.0 + 0.0j)

    @property
    def delta_infinity(self) -> complex:
        return self.delta

    def sigma3_numerator(self, lam: complex) -> complex:
        return -self.delta * (lam - self.y) ** 2 + self.p * (lam - self.y) + self.z

    def __call__(self, lam: complex) -> np.ndarray:
        return evaluate_A(self, lam)

    def residue(self, j: int) -> np.ndarray:
        """Matrix residue at pole j (0-based: poles 0, x, 1)."""
        lam = self.poles[j]
        others = [p for i, p in enumerate(self.poles) if i != j]
        den = (lam - others[0]) * (lam - others[1])
        return (self.sigma3_numerator(lam) * SIGMA3
                + self.kappa * (lam - self.y) * SIGMA_PLUS
                + self.kappatilde * (lam - self.ytilde) * SIGMA_MINUS) / den


def derived_parameters(delta, alpha, x, y, z, kappa):
    """(p, ytilde, kappatilde) in closed form from the free parameters."""
    d, x, y, z, kappa = (complex(v) for v in (delta, x, y, z, kappa))
    a1, a2, a3 = (complex(a) for a in alpha)
    if d == 0:
        raise DegenerateDenominator("delta must be nonzero")
    if kappa == 0:
        raise DegenerateDenominator("kappa must be nonzero")
    for bad, name in ((0.0, "0"), (1.0, "1"), (x, "x")):
        if abs(y - bad) < 1e-13 * max(1.0, abs(x)):
            raise DegenerateDenominator(f"y coincides with {name}")
    p = (a1 ** 2 * x / (2 * d * y)
         - a3 ** 2 * (x - 1) / (2 * d * (y - 1))
         + a2 ** 2 * x * (x - 1) / (2 * d * (y - x))
         - 0.5 * d * (3 * y - x - 1)
         - z ** 2 / (2 * d * y * (y - 1) * (y - x)))
    q = d * y ** 2 + p * y - z
    num = a1 ** 2 * x ** 2 - q ** 2
    den = (a1 ** 2 * x ** 2 * (y - 1) - a3 ** 2 * (x - 1) ** 2 * y
           + (d - p) ** 2 * y - 4 * d ** 2 * y ** 2 + 6 * d * p * y ** 2
           - p ** 2 * y ** 2 + 6 * d ** 2 * y ** 3 - 4 * d * p * y ** 3
           - 3 * d ** 2 * y ** 4 - 2 * d * y * z + 2 * d * y ** 2 * z + z ** 2)
    scale = max(abs(num), abs(den), 1.0)
    if abs(den) < 1e-13 * scale:
        raise DegenerateDenominator("ytilde denominator vanishes")
    ytilde = (y - 1) * num / den
    if abs(y * ytilde) < 1e-13:
        raise DegenerateDenominator("y*ytilde vanishes; kappatilde undefined")
    kappatilde = num / (kappa * y * ytilde)
    return p, ytilde, kappatilde


def make_system(delta, alpha, x, y, z, kappa=1.0,
                check_resonance: bool = True) -> FuchsianSystem:
    """Validated constructor. `check_resonance=False` admits resonant exponent
    data for purely algebraic work (the closed forms stay finite there while
    monodromy normal forms do not)."""
    d, x, y, z, kappa = (complex(v) for v in (delta, x, y, z, kappa))
    alpha = tuple(complex(a) for a in alpha)
    if x in (0, 1):
        raise ValueError("x must avoid {0, 1}")
    rd = resonance_distance(d, alpha)
    if check_resonance and rd <= DEFAULTS.resonance_eps:
        raise ResonantDelta(f"resonant exponents (distance {rd:.2e} to integers)")
    p, yt, kt = derived_parameters(d, alpha, x, y, z, kappa)
    return FuchsianSystem(d, alpha, x, y, z, kappa, p, yt, kt,
                          near_resonant=rd < DEFAULTS.resonance_warn)


def evaluate_A(sys: FuchsianSystem, lam) -> np.ndarray:
    lam = complex(lam)
    scale = max(1.0, abs(sys.x))
    for pole in sys.poles:
        if abs(lam - pole) < 1e-12 * scale:
            raise AtSingularity(f"lambda = {lam} is within 1e-12 of pole {pole}")
    den = lam * (lam - 1.0) * (lam - sys.x)
    return (sys.sigma3_numerator(lam) * SIGMA3
            + sys.kappa * (lam - sys.y) * SIGMA_PLUS
            + sys.kappatilde * (lam - sys.ytilde) * SIGMA_MINUS) / den


def residues(sys: FuchsianSystem):
    return sys.residue(0), sys.residue(1), sys.residue(2)


# --- PVI residual -------------------------------------------------------------

def _pvi_rhs(y, yp, x, c: PviParameters):
    return (0.5 * (1 / y + 1 / (y - 1) + 1 / (y - x)) * yp ** 2
            - (1 / x + 1 / (x - 1) + 1 / (y - x)) * yp
            + y * (y - 1) * (y - x) / (x ** 2 * (x - 1) ** 2)
            * (c.alpha0 + c.beta0 * x / y ** 2 + c.gamma0 * (x - 1) / (y - 1) ** 2
               + c.delta0 * x * (x - 1) / (y - x) ** 2))


def pvi_residual(y, x, params: PviParameters, h: float = 1e-3) -> complex:
    """y'' minus the PVI right-hand side at x.

    y may be a jet (anything with value_and_derivatives), a (y, y', y'') triple,
    or a callable; callables are differentiated by 4th-order central stencils
    with spacing h.
    """
    x = complex(x)
    if hasattr(y, "value_and_derivatives"):
        v, vp, vpp = y.value_and_derivatives(x)
    elif isinstance(y, tuple):
        v, vp, vpp = (complex(u) for u in y)
    else:
        f = y
        vals = [f(x + k * h) for k in (-2, -1, 0, 1, 2)]
        v = vals[2]
        vp = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
        vpp = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h ** 2)
    for bad in (0.0, 1.0, x):
        if abs(v - bad) < 1e-12 * max(1.0, abs(x)):
            raise CriticalValue(f"y(x) = {v} hits the critical value {bad}")
    return vpp - _pvi_rhs(v, vp, x, params)


def isomonodromy_flow(sys: FuchsianSystem):
    """(dy/dx, dz/dx, dln(kappa)/dx) of the deformation flow."""
    d, x, y, z = sys.delta, sys.x, sys.y, sys.z
    a1, a2, a3 = sys.alpha
    den = x * (x - 1) * y * (y - 1) * (y - x)
    if abs(den) < 1e-13 * max(1.0, abs(x)) ** 5:
        raise DegenerateDenominator("flow denominator x(x-1)y(y-1)(y-x) vanishes")
    dy = (y ** 2 - y + 2 * z) / (x * (x - 1))
    dz = (z ** 2 * (x - 2 * y - 2 * x * y + 3 * y ** 2)
          + z * y * (y - 1) * (y - x) * (y + x - 1)
          - a1 ** 2 * x * (y - 1) ** 2 * (y - x) ** 2
          + a3 ** 2 * (x - 1) * y ** 2 * (y - x) ** 2
          - a2 ** 2 * x * (x - 1) * y ** 2 * (y - 1) ** 2
          + d * (d - 1) * y ** 2 * (y - 1) ** 2 * (y - x) ** 2) / den
    dlnk = (2 * d - 1) * (y - x) / (x * (x - 1))
    return dy, dz, dlnk


# --- asymptotics at infinity ----------------------------------------------------

@dataclass(frozen=True)
class AsymptoticExpansion:
    """Leading asymptotic data of the normalized solution at infinity: the two
    off-diagonal matrix coefficients and the diagonal exponential scalars."""

    psi1: np.ndarray
    psi2: np.ndarray
    d1: complex
    d21: complex
    d22: complex

    @property
    def psi1_plus(self) -> complex:
        return complex(self.psi1[0, 1])

    @property
    def psi2_plus(self) -> complex:
        return complex(self.psi2[0, 1])


def psi_expansion(sys: FuchsianSystem) -> AsymptoticExpansion:
    d = sys.delta
    for bad in (0.5, -0.5, 1.0, -1.0):
        if abs(d - bad) < 1e-10:
            raise ResonantDelta(f"delta = {d} too close to {bad}")
    k, kt, p, y, yt, x, z = (sys.kappa, sys.kappatilde, sys.p, sys.y,
                             sys.ytilde, sys.x, sys.z)
    psi1 = k / (2 * d - 1) * SIGMA_PLUS - kt / (2 * d + 1) * SIGMA_MINUS
    d1 = -p - d * (2 * y - x - 1)
    psi2 = (k * (2 * p + (2 * d + 1) * y - x - 1) / (4 * (d - 1) * (d - 0.5)) * SIGMA_PLUS
            - kt * (2 * p - (2 * d + 1) * yt + x + 1 + 4 * d * y)
            / (4 * (d + 1) * (d + 0.5)) * SIGMA_MINUS)
    core = p * (y - x - 1) + d * ((y - x - 1) ** 2 - x) - z
    d21 = k * kt / (2 * (1 + 2 * d)) + 0.5 * core
    d22 = k * kt / (2 * (1 - 2 * d)) - 0.5 * core
    return AsymptoticExpansion(psi1, psi2, complex(d1), complex(d21), complex(d22))


def recover_pvi(asym: AsymptoticExpansion, x, delta):
    """(kappa, p, y, z) from the asymptotic data; inverse of psi_expansion."""
    d, x = complex(delta), complex(x)
    p1, p2 = asym.psi1_plus, asym.psi2_plus
    if abs(p1) < 1e-13:
        raise TriangularExpansion("(psi1)_+ vanishes: triangular expansion")
    if abs(d - 0.5) < 1e-10:
        raise ResonantDelta("delta = 1/2 not invertible here")
    d1, d21, d22 = asym.d1, asym.d21, asym.d22
    r = (d - 1) * p2 / ((d - 0.5) * p1)
    kappa = (2 * d - 1) * p1
    p = -d * (x + 1) + 2 * d * r + d1 * (d + 0.5) / (d - 0.5)
    y = x + 1 - r - d1 / (d - 0.5)
    z = (-d21 + d22 - 2 * d * (d21 + d22) - d * x
         - (d * r + d1 / (2 * (d - 0.5)) - d * (x + 1)) * (r + d1 / (d - 0.5)))
    return kappa, p, y, z


def infinity_series(residues, poles, delta, order: int):
    """Coefficients H_0..H_order of Psi = (sum_k H_k lam^-k) lam^(-delta s3).

    Requires the leading residue sum to be -delta*sigma3 and 2*delta
    non-integer. Works for any rational system given its residues and poles.
    """
    d = complex(delta)
    H = [IDENTITY.copy()]
    A = [np.zeros((2, 2), dtype=complex)]  # a_m, index m >= 1
    for m in range(1, order + 2):
        am = sum(R * p ** (m - 1) for R, p in zip(residues, poles))
        A.append(am)
    for k in range(1, order + 1):
        B = np.zeros((2, 2), dtype=complex)
        for m in range(2, k + 2):
            B += A[m] @ H[k + 1 - m]
        Hk = np.zeros((2, 2), dtype=complex)
        Hk[0, 0] = -B[0, 0] / k
        Hk[1, 1] = -B[1, 1] / k
        Hk[0, 1] = B[0, 1] / (2 * d - k)
        Hk[1, 0] = -B[1, 0] / (2 * d + k)
        H.append(Hk)
    return H


def psi_infinity_value(residues, poles, delta, lam, order: int | None = None) -> np.ndarray:
    """Value of the normalized solution at a large |lam| anchor, branch of
    log(lam) principal (arg in (-pi, pi], so arg -> pi on the negative axis)."""
    if order is None:
        order = DEFAULTS.anchor_order
    d = complex(delta)
    lam = complex(lam)
    H = infinity_series(residues, poles, delta, order)
    S = np.zeros((2, 2), dtype=complex)
    for k in range(order, -1, -1):
        S = S / lam + H[k]
    loglam = np.log(lam)
    power = np.array([[np.exp(-d * loglam), 0.0], [0.0, np.exp(d * loglam)]])
    return S @ power


# --- JSON schema -----------------------------------------------------------------

def complex_to_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


def system_to_dict(sys: FuchsianSystem) -> dict:
    return {
        "delta": complex_to_pair(sys.delta),
        "alpha": [complex_to_pair(a) for a in sys.alpha],
        "x": complex_to_pair(sys.x),
        "y": complex_to_pair(sys.y),
        "z": complex_to_pair(sys.z),
        "kappa": complex_to_pair(sys.kappa),
    }


def system_from_dict(d: dict) -> FuchsianSystem:
    return make_system(
        pair_to_complex(d["delta"]),
        [pair_to_complex(a) for a in d["alpha"]],
        pair_to_complex(d["x"]),
        pair_to_complex(d["y"]),
        pair_to_complex(d["z"]),
        pair_to_complex(d.get("kappa", 1.0)),
    )
