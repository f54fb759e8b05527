"""Shared numerical kernel: 2x2 complex matrix helpers, polynomial utilities,
contour paths, quadrature with algebraic endpoint weights, adaptive complex ODE
transport, and pivoted Hankel solves with condition monitoring."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.special

from .config import DEFAULTS
from .errors import (
    IllConditioned,
    InvalidExponent,
    NonConvergence,
    SingularityHit,
    StepUnderflow,
)

# sl2 generators used throughout.
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def mat2(a11, a12, a21, a22) -> np.ndarray:
    return np.array([[a11, a12], [a21, a22]], dtype=complex)


def det2(m: np.ndarray) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def inv2(m: np.ndarray) -> np.ndarray:
    d = det2(m)
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / d


def eig2(m: np.ndarray) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix, (+root, -root) of the characteristic poly."""
    tr = m[0, 0] + m[1, 1]
    disc = np.sqrt(complex(tr * tr - 4.0 * det2(m)))
    return complex((tr + disc) / 2.0), complex((tr - disc) / 2.0)


def mat_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


# --- polynomials (coefficients ascending in degree) --------------------------

def poly_trim(c, tol: float = 0.0) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    n = c.size
    while n > 1 and abs(c[n - 1]) <= tol:
        n -= 1
    return c[:n].copy()


def poly_eval(c, z):
    return np.polynomial.polynomial.polyval(z, np.asarray(c, dtype=complex))


def poly_der(c, m: int = 1) -> np.ndarray:
    return np.polynomial.polynomial.polyder(np.asarray(c, dtype=complex), m)


def poly_degree(c) -> int:
    return poly_trim(c).size - 1


# --- contour paths ------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    start: complex
    end: complex

    def point(self, t):
        return self.start + t * (self.end - self.start)

    def velocity(self, t):
        return self.end - self.start

    def distance_to(self, z: complex) -> float:
        d = self.end - self.start
        if d == 0:
            return abs(z - self.start)
        t = np.clip(((z - self.start) / d).real, 0.0, 1.0)
        return abs(self.start + t * d - z)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    theta0: float
    theta1: float

    @property
    def start(self):
        return self.center + self.radius * np.exp(1j * self.theta0)

    @property
    def end(self):
        return self.center + self.radius * np.exp(1j * self.theta1)

    def point(self, t):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return self.center + self.radius * np.exp(1j * th)

    def velocity(self, t):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return 1j * (self.theta1 - self.theta0) * self.radius * np.exp(1j * th)

    def distance_to(self, z: complex) -> float:
        v = z - self.center
        r = abs(v)
        ang = math.atan2(v.imag, v.real)
        lo, hi = sorted((self.theta0, self.theta1))
        # bring ang into [lo, lo + 2*pi)
        k = math.floor((ang - lo) / (2 * math.pi))
        ang -= 2 * math.pi * k
        if ang <= hi:
            return abs(r - self.radius)
        return min(abs(z - self.start), abs(z - self.end))


@dataclass(frozen=True)
class ContourPath:
    """Piecewise line/arc path; consecutive pieces must share endpoints.

    The path declares the singularity set it promises to avoid and the
    clearance radius; `validate` enforces the promise.
    """

    pieces: tuple
    singularities: tuple = ()
    clearance: float = 0.0

    def __post_init__(self):
        for p, q in zip(self.pieces, self.pieces[1:]):
            if abs(p.end - q.start) > 1e-12 * max(1.0, abs(p.end)):
                raise ValueError("path pieces are not contiguous")

    @property
    def start(self):
        return self.pieces[0].start

    @property
    def end(self):
        return self.pieces[-1].end

    def __add__(self, other: "ContourPath") -> "ContourPath":
        sings = tuple(dict.fromkeys(self.singularities + other.singularities))
        return ContourPath(self.pieces + other.pieces, sings,
                           max(self.clearance, other.clearance))

    def reversed(self) -> "ContourPath":
        rev = []
        for p in self.pieces[::-1]:
            if isinstance(p, Line):
                rev.append(Line(p.end, p.start))
            else:
                rev.append(Arc(p.center, p.radius, p.theta1, p.theta0))
        return ContourPath(tuple(rev), self.singularities, self.clearance)

    def min_distance(self, z: complex) -> float:
        return min(p.distance_to(z) for p in self.pieces)

    def validate(self):
        for s in self.singularities:
            d = self.min_distance(s)
            if d < self.clearance or d == 0.0:
                raise SingularityHit(
                    f"path passes within {d:.3e} of singularity {s} "
                    f"(declared clearance {self.clearance:.3e})")

    @staticmethod
    def from_points(points, singularities=(), clearance=0.0) -> "ContourPath":
        pts = [complex(p) for p in points]
        pieces = tuple(Line(a, b) for a, b in zip(pts, pts[1:]))
        return ContourPath(pieces, tuple(singularities), clearance)

    @staticmethod
    def circle(center, radius, start_angle=0.0, turns=1.0,
               singularities=(), clearance=0.0) -> "ContourPath":
        """Counterclockwise for turns > 0."""
        th0 = start_angle
        th1 = start_angle + 2 * math.pi * turns
        return ContourPath((Arc(complex(center), float(radius), th0, th1),),
                           tuple(singularities), clearance)


# --- quadrature ----------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureRule:
    kind: str = "gauss-jacobi"          # or "adaptive"
    exponents: tuple = (0.0, 0.0)
    node_budget: int = 4096

    def __post_init__(self):
        if self.kind not in ("gauss-jacobi", "adaptive"):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if min(self.exponents) <= -1.0:
            raise InvalidExponent(f"endpoint exponents must exceed -1: {self.exponents}")
        if self.node_budget < 8:
            raise ValueError("node budget must be at least 8")


def gauss_jacobi_nodes(n: int, p: float, q: float):
    """Nodes/weights for integral_0^1 t**p (1-t)**q f(t) dt."""
    x, w = scipy.special.roots_jacobi(n, q, p)
    t = 0.5 * (x + 1.0)
    return t, w * 2.0 ** (-(p + q + 1.0))


def _integrate_jacobi(f, za, zb, p, q, budget, rtol):
    scale = (zb - za) ** (p + q + 1.0)
    n = 12
    prev = None
    while n <= budget:
        t, w = gauss_jacobi_nodes(n, p, q)
        vals = np.asarray([f(za + ti * (zb - za)) for ti in t], dtype=complex)
        cur = scale * np.dot(w, vals)
        if prev is not None and abs(cur - prev) <= rtol * max(abs(cur), 1e-300) + 1e-306:
            return complex(cur)
        prev = cur
        n = int(math.ceil(n * 1.6))
    raise NonConvergence(
        f"Gauss-Jacobi quadrature did not stabilize within {budget} nodes")


def _integrate_adaptive(f, za, zb, p, q, budget, rtol):
    """Adaptive Gauss-Kronrod on [0,1] after power substitutions that remove
    the endpoint weights t**p (1-t)**q."""
    dz = zb - za
    scale = dz ** (p + q + 1.0)
    kp = max(1, math.ceil(4.0 / (1.0 + p)))
    kq = max(1, math.ceil(4.0 / (1.0 + q)))

    def left(s):  # t = s**kp on [0, 1/2]
        t = s ** kp
        return kp * s ** (kp * (1.0 + p) - 1.0) * (1.0 - t) ** q * f(za + t * dz)

    def right(s):  # 1 - t = s**kq on [0, 1/2]
        t = 1.0 - s ** kq
        return kq * s ** (kq * (1.0 + q) - 1.0) * t ** p * f(za + t * dz)

    limit = max(50, budget // 16)
    total = 0.0 + 0.0j
    for g, hi in ((left, 0.5 ** (1.0 / kp)), (right, 0.5 ** (1.0 / kq))):
        for part in (np.real, np.imag):
            val, err = scipy.integrate.quad(lambda s: float(part(g(s))), 0.0, hi,
                                            epsabs=1e-13, epsrel=rtol, limit=limit)
            if err > max(1e-9, 1e-7 * abs(val)):
                raise NonConvergence(f"adaptive quadrature error estimate {err:.2e}")
            total += val if part is np.real else 1j * val
    return scale * total


def integrate_singular(f, interval, exponents, rule: QuadratureRule | None = None,
                       rtol: float | None = None) -> complex:
    """integral over [za, zb] of f(z) * (z-za)**p * (zb-z)**q dz.

    Powers of the complex segment length use principal branches; f must be
    analytic on the open segment.
    """
    za, zb = complex(interval[0]), complex(interval[1])
    p, q = exponents
    if min(p, q) <= -1.0:
        raise InvalidExponent(f"endpoint exponents must exceed -1: {exponents}")
    if rule is None:
        rule = QuadratureRule(exponents=(p, q))
    if rtol is None:
        rtol = DEFAULTS.quad_rtol
    if rule.kind == "gauss-jacobi":
        return _integrate_jacobi(f, za, zb, p, q, rule.node_budget, rtol)
    return _integrate_adaptive(f, za, zb, p, q, rule.node_budget, rtol)


# --- adaptive transport (Dormand-Prince 5(4)) ----------------------------------

_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_DP_E = tuple(b5 - b4 for b5, b4 in zip(_DP_B5, _DP_B4))


def _transport_piece(A, piece, W, tol, min_step):
    def rhs(t, M):
        return piece.velocity(t) * (A(piece.point(t)) @ M)

    t = 0.0
    h = 0.1
    k1 = rhs(t, W)
    while t < 1.0:
        h = min(h, 1.0 - t)
        if h < min_step:
            raise StepUnderflow(f"adaptive step fell below {min_step:g}")
        ks = [k1]
        for i in range(1, 7):
            Mi = W + h * sum(a * k for a, k in zip(_DP_A[i], ks))
            ks.append(rhs(t + h * sum(_DP_A[i]), Mi) if i < 6 else rhs(t + h, Mi))
        W5 = W + h * sum(b * k for b, k in zip(_DP_B5, ks))
        err = h * sum(e * k for e, k in zip(_DP_E, ks))
        sc = tol + tol * np.maximum(np.abs(W), np.abs(W5))
        enorm = float(np.max(np.abs(err) / sc))
        if enorm <= 1.0:
            t += h
            W = W5
            k1 = ks[6]  # FSAL
        else:
            k1 = ks[0]
        h *= min(5.0, max(0.2, 0.9 * (enorm + 1e-16) ** -0.2))
    return W


def transport(A, path: ContourPath, tol: float | None = None) -> np.ndarray:
    """Fundamental-solution transfer matrix along the path: W(end) = T W(start).

    A is a callable returning the 2x2 coefficient matrix. Local error per step
    is controlled at tol/20 so the end-to-end contracts (unimodularity within
    10*tol for traceless A) hold with margin.
    """
    if tol is None:
        tol = DEFAULTS.transport_tol
    path.validate()
    W = IDENTITY.copy()
    step_tol = tol / 50.0
    for piece in path.pieces:
        W = _transport_piece(A, piece, W, step_tol, DEFAULTS.min_step)
    return W


# --- linear algebra -------------------------------------------------------------

def hankel_solve(H, b, rcond_cut: float | None = None):
    """Solve H x = b with pivoted LU; returns (x, det(H)).

    Raises IllConditioned when the reciprocal condition estimate falls below
    the cut; that signal marks the vanishing-determinant locus.
    """
    if rcond_cut is None:
        rcond_cut = DEFAULTS.rcond_cut
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    b = np.asarray(b, dtype=complex)
    n = H.shape[0]
    if n < 1 or H.shape[0] != H.shape[1]:
        raise ValueError("H must be square, n >= 1")
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(H, check_finite=False)
    diag = np.diag(lu)
    sign = 1.0 if np.sum(piv != np.arange(n)) % 2 == 0 else -1.0
    det = complex(sign * np.prod(diag))
    anorm = np.linalg.norm(H, 1)
    if np.any(diag == 0.0):
        raise IllConditioned("exactly singular Hankel matrix (zero pivot)")
    rcond = float(scipy.linalg.lapack.zgecon(lu, anorm)[0])
    if rcond < rcond_cut:
        raise IllConditioned(f"reciprocal condition {rcond:.3e} below cut {rcond_cut:.1e}")
    x = scipy.linalg.lu_solve((lu, piv), b, check_finite=False)
    return x, det


def hankel_det(H) -> complex:
    """Determinant by pivoted LU (no conditioning gate)."""
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    n = H.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(H, check_finite=False)
    sign = 1.0 if np.sum(piv != np.arange(n)) % 2 == 0 else -1.0
    return complex(sign * np.prod(np.diag(lu)))
