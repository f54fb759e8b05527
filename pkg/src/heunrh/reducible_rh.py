"""Explicit solution of the inverse problem with upper-triangular monodromy:
weight function on the broken contour, moments, Hankel determinants, the
polynomial matrix of the normalizing transformation, generalized Jacobi
polynomials, the classical sixth-Painleve value, and Heun polynomials at the
vanishing locus of the next Hankel determinant.

Branch bookkeeping: the scalar f(lam) = lam^a1 (lam-a)^a2 (lam-1)^a3 is cut
along the broken line [0,a] u [a,1] u [1,+oo); branches are anchored by
continuous continuation from the far negative axis where every factor has
argument pi. Side +1 is the left side of the orientation 0 -> a -> 1 -> oo.
One-sided boundary products f_+ f_- are assembled as exponentials of summed
one-sided logarithms, which keeps endpoint behavior explicit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS, max_threads
from .errors import (
    DegenerateHankel,
    IllConditioned,
    NoRootInRegion,
    NotAtLocus,
    NotSolvable,
    OnCutEndpoint,
)
from .heun_reduction import HeunParameters, accessory_from_d1, ghe_residual
from .monodromy import solve_s2
from .numerics import gauss_jacobi_nodes, hankel_det, hankel_solve, poly_eval
from .pole_matrices import Variant

TWO_PI_I = 2j * np.pi


@dataclass(frozen=True)
class ReducibleData:
    """Exponents, jump parameters and the movable node a of the reducible family."""

    alpha: tuple
    delta: complex
    n: int
    s1: complex
    s2: complex
    s3: complex
    a: complex

    @property
    def nodes(self) -> tuple:
        return (0.0 + 0.0j, self.a, 1.0 + 0.0j)


def make_reducible_data(alpha, n: int, s1, s3, a) -> ReducibleData:
    alpha = tuple(complex(v) for v in alpha)
    for v in alpha:
        if not (0.0 <= v.real < 0.5):
            raise ValueError(f"Re(alpha_j) must lie in [0, 1/2): got {v}")
    a = complex(a)
    if abs(a) < 1e-10 or abs(a - 1.0) < 1e-10:
        raise OnCutEndpoint(f"node a = {a} too close to 0 or 1")
    if abs(a.imag) < 1e-12 and (a.real < 0.0 or a.real > 1.0):
        raise ValueError("real a outside (0,1) degenerates the broken contour")
    delta = -n - sum(alpha)
    s1, s3 = complex(s1), complex(s3)
    s2 = solve_s2(alpha, delta, s1, s3)
    return ReducibleData(alpha, complex(delta), int(n), s1, s2, s3, a)


# --- branch-tracked boundary values of f ----------------------------------------

def _continued_arg(points: np.ndarray, lam: complex) -> float:
    """Continuous arg of (points - lam) along a dense polyline.

    The seed at points[0] (far on the negative axis) is anchored near +pi,
    continuously in lam: arg(points[0] - lam) = pi + arg(lam - points[0])."""
    zs = points - lam
    if np.any(np.abs(zs) == 0.0):
        raise OnCutEndpoint("branch walk passes through a singular node")
    seed = np.pi + np.angle(lam - points[0])
    return float(seed + np.sum(np.angle(zs[1:] / zs[:-1])))


def _densify(waypoints, per_leg=96) -> np.ndarray:
    pts = [np.asarray([waypoints[0]], dtype=complex)]
    for a, b in zip(waypoints, waypoints[1:]):
        seg = a + (b - a) * np.linspace(0.0, 1.0, per_leg + 1)[1:]
        pts.append(seg.astype(complex))
    return np.concatenate(pts)


@dataclass(frozen=True)
class _SegmentBranch:
    """One-sided branch data on an open segment u -> v of the cut.

    Holds the continued factor arguments at the reference point; the two
    endpoint factors have constant argument along the open segment, the
    remaining factor is propagated by principal increments."""

    u: complex
    v: complex
    t0: float
    ref: complex
    args_plus: tuple
    args_minus: tuple
    endpoint_factor: tuple      # indices of the factors sitting at u and at v


def _segment_branch(nodes, seg: int, t0: float = 0.5) -> _SegmentBranch:
    lam1, lam2, lam3 = nodes
    u, v = ((lam1, lam2) if seg == 0 else (lam2, lam3))
    uhat = (v - u) / abs(v - u)
    scale = max(1.0, abs(lam2))
    lam_ref = -3.0 * scale
    eta = 0.02 * min(abs(v - u), 1.0)
    ref = u + t0 * (v - u)
    u1hat = (lam2 - lam1) / abs(lam2 - lam1)
    if seg == 1 and abs(u1hat + uhat) < 0.05:
        raise ValueError("hairpin corner at the middle node; contour degenerate")
    out = []
    for side in (+1.0, -1.0):
        off = side * 1j * eta * uhat
        corner0 = lam1 + (-eta + side * 1j * eta) * u1hat
        waypoints = [lam_ref, corner0]
        if seg == 1:
            # walk the offset of [lam1, lam2], then round the corner at lam2
            bis = (u1hat + uhat) / abs(u1hat + uhat)
            waypoints.append(lam2 + side * 1j * eta * u1hat)
            waypoints.append(lam2 + side * 1j * eta * bis)
            waypoints.append(lam2 + side * 1j * eta * uhat + eta * uhat)
        waypoints.append(ref + off)
        poly = _densify(waypoints)
        args = []
        for lam in nodes:
            aw = _continued_arg(poly, lam)
            # drop the lateral offset: one principal increment onto the segment
            aw += float(np.angle((ref - lam) / (poly[-1] - lam)))
            args.append(aw)
        out.append(tuple(args))
    endpoint_factor = (0, 1) if seg == 0 else (1, 2)
    return _SegmentBranch(u, v, t0, ref, out[0], out[1], endpoint_factor)


def _boundary_log_sum(sb: _SegmentBranch, nodes, alpha, t: np.ndarray):
    """sum_j alpha_j (log_+ + log_-)(zeta(t) - lam_j) decomposed as
    p*log(t) + q*log(1-t) + smooth(t), with p = 2*alpha_left, q = 2*alpha_right."""
    t = np.asarray(t, dtype=float)
    zeta = sb.u + t * (sb.v - sb.u)
    L = abs(sb.v - sb.u)
    smooth = np.zeros_like(t, dtype=complex)
    iu, iv = sb.endpoint_factor
    for j, lam in enumerate(nodes):
        aj = alpha[j]
        ap, am = sb.args_plus[j], sb.args_minus[j]
        if j == iu:
            smooth = smooth + aj * (2.0 * math.log(L) + 1j * (ap + am))
        elif j == iv:
            smooth = smooth + aj * (2.0 * math.log(L) + 1j * (ap + am))
        else:
            dln = np.log(np.abs(zeta - lam))
            dang = np.angle((zeta - lam) / (sb.ref - lam))
            smooth = smooth + aj * (2.0 * dln + 1j * (ap + am + 2.0 * dang))
    return smooth, zeta


def weight(rd: ReducibleData, lam, _sb_cache=None) -> complex:
    """Jump weight g on the open contour (0,a) u (a,1)."""
    lam = complex(lam)
    nodes = rd.nodes
    for p in nodes:
        if abs(lam - p) < 1e-12 * max(1.0, abs(rd.a)):
            raise OnCutEndpoint(f"lambda = {lam} within 1e-12 of a contour node")
    for seg in (0, 1):
        u, v = ((nodes[0], nodes[1]) if seg == 0 else (nodes[1], nodes[2]))
        tau = (lam - u) / (v - u)
        if abs(tau.imag) < 1e-9 and 0.0 < tau.real < 1.0:
            sb = (_sb_cache[seg] if _sb_cache is not None
                  else _segment_branch(nodes, seg))
            t = np.array([tau.real])
            smooth, _ = _boundary_log_sum(sb, nodes, rd.alpha, t)
            iu, iv = sb.endpoint_factor
            f2 = (t ** (2 * rd.alpha[iu]) * (1 - t) ** (2 * rd.alpha[iv])
                  * np.exp(smooth))[0]
            pref = rd.s1 if seg == 0 else -rd.s3 * np.exp(TWO_PI_I * rd.delta)
            return complex(pref * f2)
    raise OnCutEndpoint(f"lambda = {lam} is not on the open contour")


def f_pm_product(rd: ReducibleData, lam) -> complex:
    """One-sided boundary product f_+(lam) f_-(lam) on the open contour."""
    g = weight(rd, lam)
    nodes = rd.nodes
    tau = (lam - nodes[0]) / (nodes[1] - nodes[0])
    on_first = abs(tau.imag) < 1e-9 and 0.0 < tau.real < 1.0
    pref = rd.s1 if on_first else -rd.s3 * np.exp(TWO_PI_I * rd.delta)
    return complex(g / pref)


# --- moments ----------------------------------------------------------------------

@dataclass(frozen=True)
class MomentTable:
    """Moments phi_1..phi_K of the weight, the expansion coefficients f_k, and
    quadrature metadata."""

    phi: np.ndarray
    f: np.ndarray
    rd: ReducibleData
    nodes_used: int
    est_error: float

    @property
    def K(self) -> int:
        return self.phi.size

    def phi_k(self, k: int) -> complex:
        return complex(self.phi[k - 1])

    def hankel(self, n: int) -> np.ndarray:
        """H_n = {phi_{i+j-1}}, an n x n slice of the moment sequence."""
        return np.array([[self.phi[i + j] for j in range(n)] for i in range(n)],
                        dtype=complex)

    def hankel_determinant(self, n: int) -> complex:
        if n == 0:
            return 1.0 + 0.0j
        return hankel_det(self.hankel(n))


def f_coefficients(alpha, a, K: int) -> np.ndarray:
    """f_k = -(1/k) sum_j alpha_j lam_j^k with nodes (0, a, 1)."""
    a1, a2, a3 = (complex(v) for v in alpha)
    a = complex(a)
    ks = np.arange(1, K + 1)
    return -(a2 * a ** ks + a3) / ks


def _segment_moments(rd: ReducibleData, sb: _SegmentBranch, K: int, nquad: int):
    nodes = rd.nodes
    iu, iv = sb.endpoint_factor
    p = 2.0 * rd.alpha[iu].real
    q = 2.0 * rd.alpha[iv].real
    t, w = gauss_jacobi_nodes(nquad, p, q)
    smooth, zeta = _boundary_log_sum(sb, nodes, rd.alpha, t)
    # fold any imaginary exponent parts into the smooth factor
    extra = (2j * rd.alpha[iu].imag) * np.log(t) + (2j * rd.alpha[iv].imag) * np.log1p(-t)
    W = np.exp(smooth + extra)
    pref = rd.s1 if iu == 0 else -rd.s3 * np.exp(TWO_PI_I * rd.delta)
    base = pref * (sb.v - sb.u) * w * W
    powers = zeta[None, :] ** np.arange(0, K)[:, None]
    return powers @ base


def moments(rd: ReducibleData, K: int, rtol: float | None = None,
            node_budget: int = 4096) -> MomentTable:
    """phi_k = -(1/(2*pi*i)) * integral of g(zeta) zeta^(k-1) over the broken
    contour, by endpoint-weighted quadrature on each straight segment.

    Exponents with nonzero imaginary part leave the fixed-weight rule (the
    endpoint factor oscillates in log t); those tables are computed by the
    adaptive route and certified by a second substitution."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if rtol is None:
        rtol = DEFAULTS.quad_rtol
    if max(abs(v.imag) for v in rd.alpha) > 1e-14:
        cur = moments_adaptive(rd, K)
        chk = moments_adaptive(rd, K, substitution_bump=2)
        scale = float(np.max(np.abs(cur))) + 1e-300
        err = float(np.max(np.abs(cur - chk))) / scale
        if err > max(rtol, 1e-10):
            from .errors import NonConvergence
            raise NonConvergence(
                f"adaptive moment routes disagree at {err:.2e} for complex exponents")
        return MomentTable(cur, f_coefficients(rd.alpha, rd.a, K), rd, 0, err)
    sbs = [_segment_branch(rd.nodes, seg) for seg in (0, 1)]
    n = 16
    prev = None
    while n <= node_budget:
        parts = [_segment_moments(rd, sb, K, n) for sb in sbs]
        cur = -(parts[0] + parts[1]) / TWO_PI_I
        # near the vanishing locus the total cancels; convergence is judged
        # against the segment scale, which bounds the attainable absolute error
        seg_scale = max(float(np.max(np.abs(p))) for p in parts) / (2 * np.pi)
        if prev is not None:
            scale = max(float(np.max(np.abs(cur))), seg_scale, 1e-300)
            err = float(np.max(np.abs(cur - prev))) / scale
            if err <= rtol:
                return MomentTable(cur, f_coefficients(rd.alpha, rd.a, K), rd,
                                   n, err)
        prev = cur
        n = int(math.ceil(n * 1.6))
    from .errors import NonConvergence
    raise NonConvergence(f"moment quadrature did not stabilize within {node_budget} nodes")


def moments_adaptive(rd: ReducibleData, K: int,
                     substitution_bump: int = 0) -> np.ndarray:
    """Independent slow path: adaptive Gauss-Kronrod on each segment after
    power substitutions that remove the endpoint weights. Used as an oracle
    against the Gauss-Jacobi route; `substitution_bump` raises the powers to
    produce an independent variant for cross-checks."""
    import scipy.integrate

    sbs = [_segment_branch(rd.nodes, seg) for seg in (0, 1)]
    out = np.zeros(K, dtype=complex)
    for sb in sbs:
        iu, iv = sb.endpoint_factor
        p = 2.0 * rd.alpha[iu].real
        q = 2.0 * rd.alpha[iv].real
        pref = rd.s1 if iu == 0 else -rd.s3 * np.exp(TWO_PI_I * rd.delta)
        kp = max(1, math.ceil(4.0 / (1.0 + p))) + substitution_bump
        kq = max(1, math.ceil(4.0 / (1.0 + q))) + substitution_bump

        def core(t, k):
            smooth, zeta = _boundary_log_sum(sb, rd.nodes, rd.alpha, np.array([t]))
            extra = (2j * rd.alpha[iu].imag) * math.log(t) \
                + (2j * rd.alpha[iv].imag) * math.log1p(-t)
            val = pref * (sb.v - sb.u) * np.exp(smooth[0] + extra) * zeta[0] ** (k - 1)
            return val

        for k in range(1, K + 1):
            def left(s):
                tt = s ** kp
                return kp * s ** (kp * (1 + p) - 1) * (1 - tt) ** q * core(tt, k)

            def right(s):
                tt = 1.0 - s ** kq
                return kq * s ** (kq * (1 + q) - 1) * tt ** p * core(tt, k)

            acc = 0.0 + 0.0j
            for fn, hi in ((left, 0.5 ** (1.0 / kp)), (right, 0.5 ** (1.0 / kq))):
                re = scipy.integrate.quad(lambda s: fn(s).real, 0, hi,
                                          epsabs=1e-13, epsrel=1e-12, limit=200)[0]
                im = scipy.integrate.quad(lambda s: fn(s).imag, 0, hi,
                                          epsabs=1e-13, epsrel=1e-12, limit=200)[0]
                acc += complex(re, im)
            out[k - 1] += acc
    return -out / TWO_PI_I


# --- the polynomial matrix and derived quantities ----------------------------------

@dataclass(frozen=True)
class RHSolution:
    """Normalizing polynomial matrix of degree n and its derived data.

    p, q, r, s hold ascending coefficients of the four polynomial entries;
    p is monic of degree n. pi_n == p is the monic generalized Jacobi
    polynomial; pi_{n-1} = r / c_{n-1}."""

    n: int
    p: np.ndarray
    q: np.ndarray
    r: np.ndarray
    s: np.ndarray
    c_nm1: complex | None
    delta_n: complex
    delta_np1: complex
    table: MomentTable

    @property
    def pi_n(self) -> np.ndarray:
        return self.p

    @property
    def pi_nm1(self) -> np.ndarray:
        if self.n == 0:
            return np.zeros(1, dtype=complex)
        return self.r / self.c_nm1

    def R_matrix(self, lam) -> np.ndarray:
        ev = lambda c: poly_eval(c, lam) if c.size else 0.0
        return np.array([[ev(self.p), ev(self.q)], [ev(self.r), ev(self.s)]],
                        dtype=complex)

    @property
    def psi1_plus(self) -> complex:
        return complex(self.delta_np1 / self.delta_n)

    def psi1_plus_direct(self) -> complex:
        phi = self.table.phi
        return complex(sum(phi[self.n + m] * self.p[m] for m in range(self.n + 1)))

    def p_top_minus1(self) -> complex:
        """Coefficient p_{n-1} of the monic polynomial (0 when n = 0)."""
        return complex(self.p[self.n - 1]) if self.n >= 1 else 0.0

    def d1(self) -> complex:
        return complex(self.table.f[0] + self.p_top_minus1())


def solve_rn(mt: MomentTable, n: int) -> RHSolution:
    """Coefficients of the degree-n normalizing matrix from the moment table."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if mt.K < 2 * n + 1:
        raise ValueError(f"need moments through phi_{2 * n + 1}; table has {mt.K}")
    phi = mt.phi
    if n == 0:
        return RHSolution(0, np.array([1.0 + 0j]), np.zeros(0, complex),
                          np.zeros(0, complex), np.zeros(0, complex), None,
                          1.0 + 0j, complex(phi[0]), mt)
    H = mt.hankel(n)
    rhs_p = np.array([phi[n + m] for m in range(n)], dtype=complex)
    try:
        pvec, det = hankel_solve(H, -rhs_p)
        rvec, _ = hankel_solve(H, np.eye(n, dtype=complex)[:, -1])
    except IllConditioned as exc:
        raise NotSolvable(f"Hankel system of order {n} is singular: {exc}") from exc
    # the reciprocal condition of a 1x1 block is scale-free; gate the
    # determinant against the moment scale as well
    scale = float(np.max(np.abs(phi))) + 1e-300
    if abs(det) < DEFAULTS.rcond_cut * scale ** n:
        raise NotSolvable(
            f"vanishing order-{n} determinant: |D_n| = {abs(det):.3e}")
    p = np.concatenate([pvec, [1.0 + 0j]])
    q = np.array([-sum(phi[m - k - 1] * p[m] for m in range(k + 1, n + 1))
                  for k in range(n)], dtype=complex)
    s = np.array([-sum(phi[m - k - 1] * rvec[m] for m in range(k + 1, n))
                  for k in range(n - 1)], dtype=complex)
    delta_np1 = mt.hankel_determinant(n + 1) if mt.K >= 2 * n + 1 else complex("nan")
    return RHSolution(n, p, q, rvec.astype(complex), s, complex(rvec[n - 1]),
                      complex(det), complex(delta_np1), mt)


def psi2_plus(mt: MomentTable, n: int) -> complex:
    """Second off-diagonal asymptotic coefficient from the moment table."""
    if mt.K < 2 * n + 2:
        raise ValueError(f"need moments through phi_{2 * n + 2}")
    phi = mt.phi
    if n == 0:
        return complex(phi[1])
    H = mt.hankel(n)
    col_b = np.array([phi[n + m] for m in range(n)], dtype=complex)
    row_a = np.array([phi[n + 1 + m] for m in range(n)], dtype=complex)
    try:
        x_b, det = hankel_solve(H, col_b)
        x_e, _ = hankel_solve(H, np.eye(n, dtype=complex)[:, -1])
    except IllConditioned as exc:
        raise NotSolvable(str(exc)) from exc
    dnp1 = mt.hankel_determinant(n + 1)
    return complex(phi[2 * n + 1] - row_a @ x_b - (dnp1 / det) * (col_b @ x_e))


def psi2_plus_direct(rhs: RHSolution) -> complex:
    phi, n = rhs.table.phi, rhs.n
    if rhs.table.K < 2 * n + 2:
        raise ValueError(f"need moments through phi_{2 * n + 2}")
    t1 = sum(phi[n + m + 1] * rhs.p[m] for m in range(n + 1))
    t2 = sum(phi[n + m] * rhs.r[m] for m in range(n)) if n else 0.0
    t3 = sum(phi[n + k] * rhs.p[k] for k in range(n + 1))
    return complex(t1 - t2 * t3)


def asymptotics(rhs: RHSolution):
    """Asymptotic data at infinity of the explicit reducible solution, in the
    same normal form as `fuchsian.psi_expansion` (off-diagonal psi_1, psi_2 and
    diagonal exponential scalars d1, d21, d22)."""
    from .fuchsian import AsymptoticExpansion

    mt, n = rhs.table, rhs.n
    if mt.K < 2 * n + 2:
        raise ValueError(f"need moments through phi_{2 * n + 2}")
    f1 = complex(mt.f[0])
    f2 = complex(mt.f[1]) if mt.f.size > 1 else 0.0
    d1 = rhs.d1()
    p_nm1 = rhs.p_top_minus1()
    p_nm2 = complex(rhs.p[n - 2]) if n >= 2 else 0.0
    c_nm1 = rhs.c_nm1 if rhs.c_nm1 is not None else 0.0
    phi = mt.phi
    w1 = complex(sum(phi[n + k] * rhs.r[k] for k in range(n))) if n else 0.0
    w2 = complex(sum(phi[n + k + 1] * rhs.r[k] for k in range(n))) if n else 0.0
    psi1 = np.array([[0.0, rhs.psi1_plus], [c_nm1, 0.0]], dtype=complex)
    psi2 = np.zeros((2, 2), dtype=complex)
    psi2[0, 1] = psi2_plus(mt, n)
    # the first column of the solution carries f itself: plus sign on f1
    r_nm2 = complex(rhs.r[n - 2]) if n >= 2 else 0.0
    psi2[1, 0] = r_nm2 + f1 * c_nm1 - d1 * c_nm1
    d21 = p_nm2 + p_nm1 * f1 + f2 + f1 ** 2 / 2.0 - d1 ** 2 / 2.0
    d22 = w2 - w1 * f1 + f1 ** 2 / 2.0 - f2 - d1 ** 2 / 2.0
    return AsymptoticExpansion(psi1, psi2, complex(d1), complex(d21), complex(d22))


def classical_pvi_y(mt: MomentTable, n: int, delta=None, x=None) -> complex:
    """The classical sixth-Painleve value carried by the reducible family."""
    d = complex(delta) if delta is not None else mt.rd.delta
    x = complex(x) if x is not None else mt.rd.a
    if mt.K < 2 * n + 2:
        raise ValueError(f"need moments through phi_{2 * n + 2}")
    dn = mt.hankel_determinant(n)
    dnp1 = mt.hankel_determinant(n + 1)
    scale = np.max(np.abs(mt.phi)) + 1e-300
    if min(abs(dn), abs(dnp1)) < 1e-12 * scale ** max(n, 1):
        raise DegenerateHankel(
            f"Hankel determinants too small: |D_n|={abs(dn):.2e}, |D_n+1|={abs(dnp1):.2e}")
    phi = mt.phi
    f1 = complex(mt.f[0])
    half = d - 0.5
    y = x + 1 - f1 / half
    if n == 0:
        return complex(y - (d - 1) * phi[1] / (half * phi[0]))
    H = mt.hankel(n)
    col_b = np.array([phi[n + m] for m in range(n)], dtype=complex)
    row_a = np.array([phi[n + 1 + m] for m in range(n)], dtype=complex)
    x_b, _ = hankel_solve(H, col_b)
    x_e, _ = hankel_solve(H, np.eye(n, dtype=complex)[:, -1])
    y -= (d - 1) / half * (dn / dnp1) * phi[2 * n + 1]
    y += (d - 1) / half * (dn / dnp1) * (row_a @ x_b)
    y += d / half * (col_b @ x_e)
    return complex(y)


# --- Heun polynomial locus -----------------------------------------------------------

def hankel_gap(alpha, n: int, s1, s3, a, rtol=None) -> complex:
    """Delta_{n+1} as a function of the node a (the locus function)."""
    rd = make_reducible_data(alpha, n, s1, s3, a)
    mt = moments(rd, 2 * n + 1, rtol=rtol)
    return mt.hankel_determinant(n + 1)


def _newton_root(fn, z0, tol, max_iter=40):
    z = complex(z0)
    for _ in range(max_iter):
        f0 = fn(z)
        if not np.isfinite(f0):
            return None
        h = 1e-6 * max(1.0, abs(z))
        der = (fn(z + h) - fn(z - h)) / (2 * h)
        if der == 0 or not np.isfinite(der):
            return None
        step = f0 / der
        z -= step
        if abs(step) < tol * max(1.0, abs(z)):
            return z
    return None


def heun_locus(alpha, n: int, s1, s3, region, grid: int | None = None,
               residual_points: int = 50) -> list:
    """Roots a* of Delta_{n+1}(a) = 0 inside the rectangular region
    (re0, re1, im0, im1), each certified by a small determinant value and by
    the GHE residual of the resulting degree-n polynomial.

    Returns a list of dicts with keys: a, polynomial, heun (HeunParameters),
    gap (Delta_{n+1} at the root), residual (max GHE residual on |lam| = 5).
    """
    if grid is None:
        grid = DEFAULTS.locus_grid
    re0, re1, im0, im1 = (float(v) for v in region)
    res = np.linspace(re0, re1, grid)
    ims = np.linspace(im0, im1, grid)
    pts = [complex(r, i) for i in ims for r in res]

    def safe_gap(a):
        from .errors import NonConvergence
        try:
            return hankel_gap(alpha, n, s1, s3, a, rtol=1e-11)
        except (OnCutEndpoint, ValueError, NonConvergence):
            return complex("nan")

    workers = max_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            vals = list(ex.map(safe_gap, pts))
    else:
        vals = [safe_gap(a) for a in pts]
    vals = np.array(vals, dtype=complex).reshape(len(ims), len(res))
    mag = np.abs(vals)
    finite = np.isfinite(mag)
    if not np.any(finite):
        raise NoRootInRegion("locus function undefined on the whole region")
    scale = float(np.nanmedian(mag[finite]))
    seeds = []
    for i in range(len(ims)):
        for j in range(len(res)):
            if not finite[i, j]:
                continue
            m = mag[i, j]
            neigh = [mag[k, l] for k, l in
                     ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1))
                     if 0 <= k < len(ims) and 0 <= l < len(res) and finite[k, l]]
            if neigh and m <= min(neigh) and m < 0.5 * scale:
                seeds.append(complex(res[j], ims[i]))
    roots = []
    for seed in sorted(seeds, key=lambda z: (z.real, z.imag)):
        root = _newton_root(safe_gap, seed, 1e-12)
        if root is None or not np.isfinite(root.real):
            continue
        if not (re0 - 0.1 <= root.real <= re1 + 0.1 and im0 - 0.1 <= root.imag <= im1 + 0.1):
            continue
        if any(abs(root - r["a"]) < 1e-8 for r in roots):
            continue
        gap = safe_gap(root)
        if abs(gap) > 1e-10 * max(scale, 1e-30):
            continue
        rd = make_reducible_data(alpha, n, s1, s3, root)
        mt = moments(rd, max(2 * n + 2, 2), rtol=1e-11)
        rhs = solve_rn(mt, n)
        u, hp = build_heun_polynomial(rhs, rd)
        rng = np.random.default_rng(7)
        thetas = rng.uniform(0, 2 * np.pi, residual_points)
        res_max = max(abs(ghe_residual(u, hp, 5.0 * np.exp(1j * th)))
                      for th in thetas)
        roots.append({"a": root, "polynomial": u, "heun": hp, "gap": gap,
                      "residual": res_max})
    if not roots:
        raise NoRootInRegion(f"no certified root of the order-{n + 1} gap in {region}")
    return roots


def heun_locus_sratio(alpha, n: int, a, region, grid: int | None = None) -> list:
    """Alternative mode: fix the node a and locate jump-ratio values
    rho = s3/s1 where Delta_{n+1} vanishes. Returns certified rho roots."""
    if grid is None:
        grid = DEFAULTS.locus_grid

    def gap_of_rho(rho):
        return hankel_gap(alpha, n, 1.0, rho, a, rtol=1e-11)

    re0, re1, im0, im1 = (float(v) for v in region)
    res = np.linspace(re0, re1, grid)
    ims = np.linspace(im0, im1, grid)
    vals = np.array([[gap_of_rho(complex(r, i)) for r in res] for i in ims])
    mag = np.abs(vals)
    scale = float(np.median(mag))
    roots = []
    for i in range(len(ims)):
        for j in range(len(res)):
            m = mag[i, j]
            neigh = [mag[k, l] for k, l in
                     ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1))
                     if 0 <= k < len(ims) and 0 <= l < len(res)]
            if neigh and m <= min(neigh) and m < 0.5 * scale:
                root = _newton_root(gap_of_rho, complex(res[j], ims[i]), 1e-12)
                if root is None:
                    continue
                if any(abs(root - r) < 1e-8 for r in roots):
                    continue
                if abs(gap_of_rho(root)) <= 1e-10 * max(scale, 1e-30):
                    roots.append(complex(root))
    if not roots:
        raise NoRootInRegion(f"no jump-ratio root in {region}")
    return sorted(roots, key=lambda z: (z.real, z.imag))


def build_heun_polynomial(rhs: RHSolution, rd: ReducibleData):
    """(u, HeunParameters) at a root of the order-(n+1) determinant.

    u is the monic degree-n polynomial; the GHE it satisfies carries the
    mirrored exponent labels (-alpha_j) because the polynomial column of the
    explicit solution is the one with the f-factor stripped off.
    """
    n = rhs.n
    scale = np.max(np.abs(rhs.table.phi)) + 1e-300
    if abs(rhs.delta_np1) > 1e-8 * scale ** (n + 1):
        raise NotAtLocus(
            f"Delta_{n + 1} = {rhs.delta_np1:.3e} not at the vanishing locus")
    d1 = rhs.d1()
    flipped = tuple(-complex(v) for v in rd.alpha)
    _, _, nu = accessory_from_d1(d1, rd.a, rd.delta, flipped)
    s = sum(flipped)
    mu = (s - rd.delta) * (s + rd.delta - 2)
    hp = HeunParameters(rd.a, flipped, rd.delta, complex(mu), complex(nu),
                        Variant.REGULAR)
    return rhs.pi_n, hp
