import numpy as np
import pytest

from conftest import moderate_monodromy_fixture, random_system
from heunrh.errors import ResonantAlpha
from heunrh.monodromy import (
    MonodromySet,
    fricke_residual,
    frobenius_series,
    monodromy_from_connection,
    monodromy_matrices,
    reducible_monodromy_set,
    solve_s2,
    trace_coordinates,
)
from heunrh.numerics import ContourPath, mat_norm, transport
from heunrh.pole_matrices import limit_regular


class _DiagonalResidueSystem:
    """Three finite poles with diagonal residues; closed-form local behavior."""

    def __init__(self):
        self.weights = (0.21, 0.34, -0.13)
        self.poles = (0.0 + 0.0j, 0.5 + 0.0j, 1.0 + 0.0j)

    def residue(self, j):
        return np.diag([self.weights[j], -self.weights[j]]).astype(complex)

    @property
    def delta_infinity(self):
        return -sum(self.weights)

    def __call__(self, lam):
        return sum(self.residue(j) / (lam - p)
                   for j, p in enumerate(self.poles))


class TestFrobeniusSeries:
    def test_diagonal_residue_gives_identity_eigenbasis(self):
        sys = _DiagonalResidueSystem()
        fro = frobenius_series(sys, 0, order=8)
        assert mat_norm(fro.T - np.eye(2)) < 1e-12
        assert abs(fro.exponent - 0.21) < 1e-13

    def test_det_T_is_one(self, rng):
        sys = random_system(rng)
        for j in range(3):
            fro = frobenius_series(sys, j, order=6)
            d = fro.T[0, 0] * fro.T[1, 1] - fro.T[0, 1] * fro.T[1, 0]
            assert abs(d - 1.0) < 1e-12

    def test_series_matches_transport_at_half_radius(self, rng):
        sys = random_system(rng)
        fro = frobenius_series(sys, 1, order=30)
        r = fro.radius
        q1 = sys.poles[1] - 1j * 0.45 * r
        q2 = sys.poles[1] + 0.5 * r * np.exp(0.3j)
        path = ContourPath.from_points(
            [q1, sys.poles[1] - 1.1j * 0.5 * r * np.exp(-0.2j), q2],
            singularities=sys.poles, clearance=0.2 * r)
        got = transport(sys, path, 1e-12) @ fro.evaluate(q1)
        # the comparison is branch-sensitive: keep the path inside the disk
        # and on one side of the local cut
        assert mat_norm(got - fro.evaluate(q2)) < 1e-8 * max(1.0, mat_norm(got))

    def test_local_branch_matrix(self, rng):
        # one loop around the pole multiplies by exp(2*pi*i*alpha*sigma3)
        sys = random_system(rng)
        fro = frobenius_series(sys, 0, order=26)
        r = 0.4 * fro.radius
        q = sys.poles[0] - 1j * r
        loop = ContourPath.circle(sys.poles[0], r, start_angle=-np.pi / 2,
                                  singularities=sys.poles[1:], clearance=0.3 * r)
        T = transport(sys, loop, 1e-12)
        got = T @ fro.evaluate(q)
        branch = np.diag([np.exp(2j * np.pi * fro.exponent),
                          np.exp(-2j * np.pi * fro.exponent)])
        assert mat_norm(got - fro.evaluate(q) @ branch) < 1e-8


class TestMonodromyMatrices:
    def test_cyclic_and_traces(self, rng):
        for _ in range(3):
            sys, ms = moderate_monodromy_fixture(rng)
            assert ms.cyclic_residual <= 1e-8
            for M, al in zip(ms.matrices, sys.alpha):
                assert abs(np.trace(M) - 2 * np.cos(2 * np.pi * al)) <= 1e-8
                assert abs(np.linalg.det(M) - 1.0) <= 1e-10

    def test_limit_system_monodromy(self):
        ls = limit_regular(0.55 + 0.1j, 0.2, 0.64, (0.21, 0.17, 0.31))
        ms = monodromy_matrices(ls)
        assert ms.cyclic_residual <= 1e-8
        for M, al in zip(ms.matrices, ls.expected_exponents()):
            assert abs(np.trace(M) - 2 * np.cos(2 * np.pi * al)) <= 1e-8

    def test_homotopy_invariance_radius_doubling(self, rng):
        sys, _ = moderate_monodromy_fixture(rng)
        r = tuple(min(abs(p - q) for q in sys.poles if q != p) / 6.0
                  for p in sys.poles)
        ms1 = monodromy_matrices(sys, radii=r)
        ms2 = monodromy_matrices(sys, radii=tuple(2 * v for v in r))
        for A, B in zip(ms1.matrices, ms2.matrices):
            assert mat_norm(A - B) <= 1e-8

    def test_connection_route_agrees(self, rng):
        sys, _ = moderate_monodromy_fixture(rng)
        ms = monodromy_matrices(sys, with_connections=True)
        for j, (E, M) in enumerate(zip(ms.connections, ms.matrices)):
            fro = frobenius_series(sys, j, order=12)
            M2 = monodromy_from_connection(E, fro.exponent)
            assert mat_norm(M - M2) < 1e-7


class TestTraceCoordinates:
    def test_identity_point(self):
        I2 = np.eye(2, dtype=complex)
        ms = MonodromySet(I2, I2, I2, I2, 0.0)
        tc = trace_coordinates(ms)
        assert tc.a1 == tc.a2 == tc.a3 == tc.a_inf == 2.0
        assert tc.t12 == tc.t23 == tc.t31 == 2.0
        assert abs(fricke_residual(tc)) < 1e-14

    def test_triangular_products(self):
        alpha = (0.21, 0.17, 0.31)
        n = 1
        delta = -n - sum(alpha)
        ms = reducible_monodromy_set(alpha, delta, n, 1.0, 0.7 + 0.2j)
        tc = trace_coordinates(ms)
        assert abs(tc.t12 - 2 * np.cos(2 * np.pi * (alpha[0] + alpha[1]))) < 1e-12
        assert abs(tc.t23 - 2 * np.cos(2 * np.pi * (alpha[1] + alpha[2]))) < 1e-12

    def test_conjugation_invariance(self, rng):
        sys, ms = moderate_monodromy_fixture(rng)
        C = np.array([[1.3, 0.4 - 0.2j], [0.1j, 0.9]], dtype=complex)
        C /= np.sqrt(np.linalg.det(C))
        conj = MonodromySet(*[np.linalg.inv(C) @ M @ C for M in ms.matrices],
                            Minf=np.linalg.inv(C) @ ms.Minf @ C, delta=ms.delta)
        t1, t2 = trace_coordinates(ms), trace_coordinates(conj)
        for k in ("a1", "a2", "a3", "t12", "t23", "t31"):
            assert abs(getattr(t1, k) - getattr(t2, k)) < 1e-12


class TestFricke:
    def test_identity_point_arithmetic(self):
        # 8 + 12 - 48 + 16 + 16 - 4 = 0
        tc = trace_coordinates(MonodromySet(*([np.eye(2, dtype=complex)] * 4), 0.0))
        assert fricke_residual(tc) == 0.0

    def test_numerical_sets_on_surface(self, rng):
        _, ms = moderate_monodromy_fixture(rng)
        tc = trace_coordinates(ms)
        assert abs(fricke_residual(tc)) <= 1e-8

    def test_perturbation_leaves_surface(self, rng):
        _, ms = moderate_monodromy_fixture(rng)
        tc = trace_coordinates(ms)
        bumped = type(tc)(tc.a1, tc.a2, tc.a3, tc.a_inf, tc.t12 + 0.1,
                          tc.t23, tc.t31)
        assert abs(fricke_residual(bumped)) > 1e-4


class TestReducibleSet:
    def test_s2_fixture(self):
        s2 = solve_s2((0.25, 0.25, 0.25), -0.75, 1.0, 1.0)
        assert abs(s2 - 2.0) < 1e-14

    def test_product_is_formal_monodromy(self, rng):
        for _ in range(5):
            alpha = tuple(rng.uniform(0.05, 0.45, size=3))
            n = int(rng.integers(0, 3))
            delta = -n - sum(alpha)
            s1 = complex(*rng.normal(size=2))
            s3 = complex(*rng.normal(size=2))
            ms = reducible_monodromy_set(alpha, delta, n, s1, s3)
            assert ms.cyclic_residual < 1e-13
            for M, al in zip(ms.matrices, alpha):
                assert abs(np.trace(M) - 2 * np.cos(2 * np.pi * al)) < 1e-12

    def test_exponent_sum_guard(self):
        with pytest.raises(ResonantAlpha):
            reducible_monodromy_set((0.25, 0.25, 0.25), -0.7, 0, 1.0, 1.0)
