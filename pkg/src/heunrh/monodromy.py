"""Numerical monodromy of rational 2x2 systems with three finite Fuchsian
points: Frobenius local solutions, loop transport against the normalized
solution at infinity, trace coordinates, the Fricke cubic, and the explicit
upper-triangular (reducible) monodromy family.

Conventions, fixed once for the whole build: the base point sits below the
line of singularities, loops are counterclockwise, labels follow the pole
order (0, x, 1), and the product M1 M2 M3 equals the formal monodromy
exp(-2*pi*i*delta*sigma3) at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .errors import NormalizationFailure, ResonantAlpha, ResonantExponent
from .fuchsian import psi_infinity_value
from .numerics import ContourPath, IDENTITY, eig2, inv2, mat_norm, transport


def _poles_and_residues(system):
    poles = system.poles
    res = [system.residue(j) for j in range(3)]
    return poles, res


@dataclass(frozen=True)
class FrobeniusData:
    """Local canonical solution Psi_j = T (I + sum C_k t^k) t^(alpha sigma3)."""

    index: int
    pole: complex
    exponent: complex
    T: np.ndarray
    coefficients: tuple
    radius: float

    def evaluate(self, lam) -> np.ndarray:
        t = complex(lam) - self.pole
        S = IDENTITY.copy()
        for k, C in enumerate(self.coefficients, start=1):
            S = S + C * t ** k
        power = np.array([[t ** self.exponent, 0.0],
                          [0.0, t ** (-self.exponent)]], dtype=complex)
        return self.T @ S @ power


def frobenius_series(system, j: int, order: int = 12) -> FrobeniusData:
    """Solve the local series order by order around pole j (0-based)."""
    poles, res = _poles_and_residues(system)
    Aj = res[j]
    lam_j = poles[j]
    others = [p for i, p in enumerate(poles) if i != j]
    ev_plus, _ = eig2(Aj)
    alpha = ev_plus
    for k in range(1, order + 1):
        if min(abs(k - 2 * alpha), abs(k + 2 * alpha)) < 1e-8:
            raise ResonantExponent(f"2*alpha = {2 * alpha} resonant at order {k}")

    def eigvec(mat, ev):
        v1 = np.array([mat[0, 1], ev - mat[0, 0]], dtype=complex)
        v2 = np.array([ev - mat[1, 1], mat[1, 0]], dtype=complex)
        v = v1 if np.max(np.abs(v1)) >= np.max(np.abs(v2)) else v2
        return v / v[np.argmax(np.abs(v))]

    vp = eigvec(Aj, alpha)
    vm = eigvec(Aj, -alpha)
    T = np.column_stack([vp, vm])
    dT = T[0, 0] * T[1, 1] - T[0, 1] * T[1, 0]
    if abs(dT) < 1e-13 * np.max(np.abs(T)) ** 2:
        raise ResonantExponent("defective residue matrix; no eigenbasis")
    T = T / np.sqrt(complex(dT))
    Tinv = inv2(T)

    # local Taylor pieces of the regular part of A at lam_j
    Breg = [res[i] for i in range(3) if i != j]
    def regular_coeff(m):
        return sum(B * (-1) ** m / (lam_j - p) ** (m + 1)
                   for B, p in zip(Breg, others))

    Areg = [regular_coeff(m) for m in range(order)]
    C = [IDENTITY.copy()]
    for k in range(1, order + 1):
        B = np.zeros((2, 2), dtype=complex)
        for m in range(0, k):
            B += Areg[m] @ (T @ C[k - 1 - m])
        B = Tinv @ B
        Ck = np.zeros((2, 2), dtype=complex)
        Ck[0, 0] = B[0, 0] / k
        Ck[1, 1] = B[1, 1] / k
        Ck[0, 1] = B[0, 1] / (k - 2 * alpha)
        Ck[1, 0] = B[1, 0] / (k + 2 * alpha)
        C.append(Ck)
    radius = min(abs(lam_j - p) for p in others)
    return FrobeniusData(j, lam_j, complex(alpha), T, tuple(C[1:]), float(radius))


@dataclass(frozen=True)
class TraceCoordinates:
    a1: complex
    a2: complex
    a3: complex
    a_inf: complex
    t12: complex
    t23: complex
    t31: complex


@dataclass(frozen=True)
class MonodromySet:
    M1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    Minf: np.ndarray
    delta: complex
    connections: tuple | None = None
    s_params: tuple | None = None

    @property
    def matrices(self) -> tuple:
        return (self.M1, self.M2, self.M3)

    @property
    def cyclic_residual(self) -> float:
        return mat_norm(self.M1 @ self.M2 @ self.M3 - self.Minf)


def _formal_monodromy(delta) -> np.ndarray:
    d = complex(delta)
    return np.array([[np.exp(-2j * np.pi * d), 0.0],
                     [0.0, np.exp(2j * np.pi * d)]], dtype=complex)


def _lasso_path(base, pole, radius, all_poles, clearance) -> ContourPath:
    """base -> just below the pole -> counterclockwise circle -> back to base."""
    approach = pole - 1j * radius
    leg = ContourPath.from_points([base, approach], all_poles, clearance)
    circle = ContourPath.circle(pole, radius, start_angle=-math.pi / 2, turns=1.0,
                                singularities=tuple(p for p in all_poles if p != pole),
                                clearance=clearance)
    return leg + circle + leg.reversed()


def monodromy_matrices(system, base: complex | None = None, radii=None,
                       anchor_radius: float | None = None,
                       order: int | None = None, tol: float | None = None,
                       with_connections: bool = False) -> MonodromySet:
    """Monodromy set by loop transport, normalized at a large negative anchor.

    The anchor value of the solution at infinity comes from the recursive
    series of `infinity_series`, evaluated where arg(lambda) = pi.
    """
    if anchor_radius is None:
        anchor_radius = DEFAULTS.anchor_radius
    if order is None:
        order = DEFAULTS.anchor_order
    if tol is None:
        # conjugation by the base value amplifies transport error; budget for it
        tol = 0.1 * DEFAULTS.transport_tol
    poles, res = _poles_and_residues(system)
    delta = system.delta_infinity
    span = max(abs(p - q) for p in poles for q in poles)
    maxp = max(abs(p) for p in poles)
    anchor = -max(anchor_radius, 4.0 * maxp)
    if abs(anchor) < 2.0 * maxp:
        raise NormalizationFailure("anchor radius too small for the asymptotics")
    if base is None:
        base = sum(poles) / 3.0 - 0.75j * span
    if radii is None:
        radii = tuple(min(abs(p - q) for q in poles if q != p) / 3.0 for p in poles)
    clearance = 0.3 * min(radii)
    psi0 = psi_infinity_value(res, poles, delta, anchor, order)
    # rebalance a lopsided gauge by constant diagonal conjugation (exact)
    up = max(abs(R[0, 1]) for R in res)
    lo = max(abs(R[1, 0]) for R in res)
    c = (lo / up) ** 0.25 if (up > 0 and lo > 0) else 1.0
    D = np.array([[c, 0.0], [0.0, 1.0 / c]], dtype=complex)
    Dinv = np.array([[1.0 / c, 0.0], [0.0, c]], dtype=complex)
    balanced = (lambda lam: D @ system(lam) @ Dinv) if c != 1.0 else system
    # propagate the anchor normalization to the base once; the loop
    # conjugations then use the well-conditioned value at the base
    spine = ContourPath.from_points([anchor, base], poles, clearance)
    psi_base = transport(balanced, spine, tol) @ (D @ psi0)
    psi_base_inv = inv2(psi_base)
    Ms = []
    for j in range(3):
        path = _lasso_path(base, poles[j], radii[j], poles, clearance)
        T = transport(balanced, path, tol)
        Ms.append(psi_base_inv @ T @ psi_base)
    connections = None
    if with_connections:
        connections = []
        for j in range(3):
            q = poles[j] - 1j * radii[j]
            leg = ContourPath.from_points([base, q], poles, clearance)
            Tq = transport(balanced, leg, tol)
            psi_j_q = frobenius_series(system, j, max(order, 24)).evaluate(q)
            connections.append(inv2(Tq @ psi_base) @ (D @ psi_j_q))
        connections = tuple(connections)
    return MonodromySet(Ms[0], Ms[1], Ms[2], _formal_monodromy(delta),
                        complex(delta), connections)


def monodromy_from_connection(E: np.ndarray, alpha) -> np.ndarray:
    """M_j = E_j exp(2*pi*i*alpha_j*sigma3) E_j^{-1}."""
    D = np.array([[np.exp(2j * np.pi * alpha), 0.0],
                  [0.0, np.exp(-2j * np.pi * alpha)]], dtype=complex)
    return E @ D @ inv2(E)


def trace_coordinates(mset: MonodromySet) -> TraceCoordinates:
    M1, M2, M3 = mset.matrices
    tr = lambda m: complex(m[0, 0] + m[1, 1])
    return TraceCoordinates(
        a1=tr(M1), a2=tr(M2), a3=tr(M3), a_inf=tr(mset.Minf),
        t12=tr(M1 @ M2), t23=tr(M2 @ M3), t31=tr(M3 @ M1))


def fricke_residual(tc: TraceCoordinates) -> complex:
    """Left-hand side of the trace-coordinate cubic; zero on genuine sets."""
    a1, a2, a3, ai = tc.a1, tc.a2, tc.a3, tc.a_inf
    t12, t23, t31 = tc.t12, tc.t23, tc.t31
    return (t12 * t23 * t31 + t12 ** 2 + t23 ** 2 + t31 ** 2
            - (a1 * a2 + a3 * ai) * t12 - (a2 * a3 + a1 * ai) * t23
            - (a3 * a1 + a2 * ai) * t31
            + a1 ** 2 + a2 ** 2 + a3 ** 2 + ai ** 2 + a1 * a2 * a3 * ai - 4.0)


def solve_s2(alpha, delta, s1, s3) -> complex:
    """Third jump parameter from s1 e^{2 pi i a2} + s2 e^{-2 pi i a1}
    + s3 e^{2 pi i delta} = 0."""
    a1, a2, _ = (complex(v) for v in alpha)
    e = lambda v: np.exp(2j * np.pi * complex(v))
    return complex(-(s1 * e(a2) + s3 * e(delta)) * e(a1))


def reducible_monodromy_set(alpha, delta, n: int, s1, s3) -> MonodromySet:
    """Upper-triangular monodromy set with jump parameters (s1, s2, s3).

    The s_j parameterize the jump graph; the monodromy matrices in this
    build's base-below/counterclockwise convention are phase-twisted
    combinations of them, chosen so that M1 M2 M3 equals the formal monodromy
    at infinity exactly. The solved s2 is recorded on the result.
    """
    a1, a2, a3 = (complex(v) for v in alpha)
    d = complex(delta)
    s1, s3 = complex(s1), complex(s3)
    if s1 == 0 or s3 == 0:
        raise ValueError("s1 and s3 must be nonzero")
    if abs(a1 + a2 + a3 + d + n) > 1e-12:
        raise ResonantAlpha(
            f"exponent sum alpha1+alpha2+alpha3+delta = {a1 + a2 + a3 + d} != -{n}")
    s2 = solve_s2(alpha, d, s1, s3)
    e = lambda v: np.exp(2j * np.pi * complex(v))

    def tri(av, top):
        return np.array([[e(av), top], [0.0, e(-av)]], dtype=complex)

    M1 = tri(a1, -s1)
    M2 = tri(a2, s3 * e(d - a1) + s1 * e(-(a1 + a2)))
    M3 = tri(a3, -s3 * e(2 * d))
    return MonodromySet(M1, M2, M3, _formal_monodromy(d), d,
                        s_params=(s1, s2, s3))
