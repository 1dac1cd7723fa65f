import math

import numpy as np
import pytest

from toricprequant import catalog
from toricprequant import contact as C
from toricprequant.delzant import delzant_report


@pytest.fixture
def rng():
    return np.random.default_rng(20)


def clifford_like(d, phases, gamma=None):
    """|z_j|^2 = 1/pi with the given phases."""
    return C.SpherePoint(tuple(gamma or (1,) * d), C.from_complex(np.exp(1j * np.asarray(phases)) / math.sqrt(math.pi)))


# -- forms and fields --------------------------------------------------------------


def test_alpha_examples(rng):
    z = np.zeros(6)
    z[0] = 1.0
    v = np.zeros(6)
    v[1] = 1.0
    assert C.alpha_std(z, v) == 0.5
    assert C.alpha_std(rng.standard_normal(6), np.zeros(6)) == 0
    lam = rng.standard_normal(3)
    w = rng.standard_normal(6)
    assert abs(C.alpha_std(w, C.torus_field(lam, w)) - C.moment(lam, w)) <= 1e-12
    with pytest.raises(ValueError, match="dimension mismatch"):
        C.alpha_std(np.zeros(4), np.zeros(6))


def test_moment_examples():
    z = C.from_complex(np.full(4, 1 / math.sqrt(math.pi)))
    assert abs(C.moment((1, 1, 1, 1), z) - 4) <= 1e-12
    assert C.moment((0, 0, 0, 0), z) == 0
    with pytest.raises(ValueError, match="dimension mismatch"):
        C.moment((1, 1), z)


def test_torus_field_examples(rng):
    z = np.array([1.0, 0, 0, 0])
    assert np.allclose(C.torus_field((1, 0), z), [0, 2 * math.pi, 0, 0], atol=0)
    assert not np.any(C.torus_field((0, 0), z))
    gamma = np.array([1, 1, 1])
    p = C.SpherePoint.random(tuple(gamma), rng)
    d = len(gamma)
    deriv = 2j * math.pi * gamma / d * p.complex  # d/dt exp(2 pi i gamma t / d) z at t = 0
    assert np.max(np.abs(C.from_complex(deriv) - C.reeb_field(gamma, p.z))) <= 1e-12


def test_sphere_point(rng):
    p = C.SpherePoint.random((1, 2, 3), rng)
    assert p.level_residual <= 1e-10
    with pytest.raises(ValueError):
        C.SpherePoint.project(np.zeros(4), (1, 1))


def test_reeb_is_reeb(rng):
    for gamma in [(1, 1), (1, 2, 3), (2, 1, 1, 5)]:
        p = C.SpherePoint.random(gamma, rng)
        R = C.reeb_field(gamma, p.z)
        assert abs(C.alpha_std(p.z, R) - 1) <= 1e-12
        E = C.tangent_frame(p.z, gamma)
        assert np.max(np.abs(R @ C.omega_matrix(len(gamma)) @ E)) <= 1e-12
        assert abs(C.moment_gradient(gamma, p.z) @ R) <= 1e-12


def test_contact_field_examples(rng):
    gamma = (1, 2, 3)
    p = C.SpherePoint.random(gamma, rng)
    lam = rng.standard_normal(3)
    assert np.max(np.abs(C.contact_field(C.torus_hamiltonian(lam), p.z, gamma) - C.torus_field(lam, p.z))) <= 1e-9
    assert np.max(np.abs(C.contact_field(C.constant(1), p.z, gamma) - C.reeb_field(gamma, p.z))) <= 1e-9
    assert np.max(np.abs(C.contact_field(C.constant(0), p.z, gamma))) <= 1e-15


def test_contact_field_random_hamiltonians():
    rng = np.random.default_rng(21)
    hs = [C.trig_polynomial(8, 6, rng) for _ in range(10)]
    for i in range(100):
        gamma = (1, 1, 2, 1)
        p = C.SpherePoint.random(gamma, rng)
        h = hs[i % 10]
        X = C.contact_field(h, p.z, gamma)
        r1, r2 = C.contact_residuals(h, p.z, gamma, X)
        scale = 1 + abs(h(p.z)) + np.linalg.norm(h.grad(p.z))
        assert max(r1, r2) <= 1e-9 * scale
        assert abs(C.moment_gradient(gamma, p.z) @ X) <= 1e-9 * scale


def test_bracket(rng):
    gamma = (1, 1, 1)
    for _ in range(20):
        p = C.SpherePoint.random(gamma, rng)
        z = p.z
        a, b = C.torus_hamiltonian(rng.standard_normal(3)), C.torus_hamiltonian(rng.standard_normal(3))
        assert abs(C.bracket(a, b, z, gamma)) <= 1e-8
        h, g = C.trig_polynomial(6, 4, rng), C.trig_polynomial(6, 4, rng)
        R = C.reeb_field(gamma, z)
        dhR, dgR = h.grad(z) @ R, g.grad(z) @ R
        assert abs(C.bracket(h, C.constant(1), z, gamma) - dhR) <= 1e-8
        # expanded identity: dg(X_h) + dh(X_g) = dh(R) g + dg(R) h, so the bracket is antisymmetric
        Xh, Xg = C.contact_field(h, z, gamma), C.contact_field(g, z, gamma)
        assert abs(g.grad(z) @ Xh + h.grad(z) @ Xg - (dhR * g(z) + dgR * h(z))) <= 1e-8
        assert abs(C.bracket(h, g, z, gamma) + C.bracket(g, h, z, gamma)) <= 1e-8
        assert abs(C.bracket(h, h, z, gamma) - (dhR * h(z) - h.grad(z) @ Xh)) <= 1e-8


# -- flows ----------------------------------------------------------------------------


def test_flow_zero_time(rng):
    p = C.SpherePoint.random((1, 1), rng)
    tr = C.integrate_flow(C.constant(1), p, 0.0)
    assert len(tr.times) == 1 and np.array_equal(tr.endpoint.z, p.z)


def test_flow_full_reeb_period(rng):
    for d in (1, 2, 3):
        p = C.SpherePoint.random((1,) * d, rng)
        tr = C.integrate_flow(C.constant(1), p, float(d), 1e-3)
        assert C.endpoint_error(tr.endpoint.z, p.z) <= 1e-8
        assert np.all(np.diff(tr.times) > 0)
        assert len(tr.points) == len(tr.alpha_residuals) == len(tr.level_residuals) == len(tr.times)


def test_flow_torus_small_weights(rng):
    p = C.SpherePoint.random((1, 1, 1), rng)
    lam = (1, -1, 2)
    tr = C.integrate_flow(C.torus_hamiltonian(lam), p, 1.0, 1e-3)
    assert C.endpoint_error(tr.endpoint.z, p.z) <= 1e-8
    assert tr.level_residuals.max() <= 1e-9 and tr.alpha_residuals.max() <= 1e-8


def test_flow_general_hamiltonian_residuals(rng):
    h = C.trig_polynomial(4, 3, rng)
    p = C.SpherePoint.random((1, 2), rng)
    tr = C.integrate_flow(h, p, 0.2, 1e-3)
    assert tr.alpha_residuals.max() <= 1e-8 and tr.level_residuals.max() <= 1e-9


def test_flow_abort_and_bad_step(rng):
    p = C.SpherePoint.random((1, 1), rng)
    tight = C.Tolerances(flow_abort=0.0)
    with pytest.raises(C.FlowError, match="exceeds"):
        C.integrate_flow(C.trig_polynomial(4, 3, rng), p, 0.1, 1e-2, tight)
    with pytest.raises(ValueError):
        C.integrate_flow(C.constant(1), p, 1.0, 0.0)


# -- the level P_K^{-1}(c) ------------------------------------------------------------------


def test_sample_Y_cp1xcp1():
    e = catalog.builtin("CP1xCP1")
    r = delzant_report(e.polytope)
    pts = C.sample_Y(e.polytope, r, 50, seed=3)
    assert len(pts) == 50
    for p in pts:
        assert p.level_residual <= 1e-10
        for b in r.k_basis:
            assert abs(C.moment(b, p.z) - sum(b)) <= 1e-10
    again = C.sample_Y(e.polytope, r, 50, seed=3)
    assert all(np.array_equal(a.z, b.z) for a, b in zip(pts, again))
    assert C.sample_Y(e.polytope, r, 0) == []
    bary = C.point_over(e.polytope, (0, 0))
    assert np.allclose(np.abs(bary.complex) ** 2, 1 / math.pi, rtol=0, atol=1e-15)


def test_coisotropy_cp1xcp1():
    e = catalog.builtin("CP1xCP1")
    r = delzant_report(e.polytope)
    for p in C.sample_Y(e.polytope, r, 100, seed=0):
        assert C.coisotropy_residual(p, C.Y_tangent_basis(p, r)) <= 1e-8


def test_coisotropy_controls():
    p = clifford_like(4, [math.pi / 2, 0.3, 1.1, 2.0])  # x_1 = 0
    assert abs(p.z[0]) < 1e-15
    assert C.coisotropy_residual(p, C.slice_tangent_basis(p, 0)) >= 1e-2
    assert C.coisotropy_residual(p, C.tangent_frame(p.z, p.gamma)) <= 1e-12
    with pytest.raises(C.ContactError, match="rank deficiency"):
        C.coisotropy_residual(p, np.zeros((8, 2)))


def test_legendrian(rng):
    for _ in range(20):
        d = int(rng.integers(1, 5))
        z = np.zeros(2 * d)
        z[0::2] = rng.standard_normal(d)
        z = C.SpherePoint.project(z, (1,) * d).z
        assert C.legendrian_residual(z) <= 1e-12
    assert C.legendrian_residual([1.0, 0.0]) == 0
    z = np.zeros(6)
    z[0::2] = [0.4, 0.3, 0.2]
    z[1] = 0.1
    assert C.legendrian_residual(z, allow_nonreal=True) > 0.01
    with pytest.raises(C.ContactError, match="not real"):
        C.legendrian_residual(z)


def test_extension_tangency():
    e = catalog.builtin("CP1xCP1")
    r = delzant_report(e.polytope)
    rng = np.random.default_rng(4)
    for p in C.sample_Y(e.polytope, r, 20, seed=1):
        T = C.Y_tangent_basis(p, r)
        assert C.extension_tangency_residual(C.torus_hamiltonian(rng.standard_normal(4)), p, T) <= 1e-8
        assert C.extension_tangency_residual(C.constant(1), p, T) <= 1e-8
    H = lambda s: np.sin(s).sum()  # noqa: E731
    dH = lambda s: np.cos(s)  # noqa: E731
    p = C.sample_Y(e.polytope, r, 1, seed=1)[0]
    assert C.extension_tangency_residual(C.radial(H, dH), p, C.Y_tangent_basis(p, r)) <= 1e-8
    q = clifford_like(4, [0.4, 1.3, 2.2, 0.7])
    assert C.extension_tangency_residual(C.coordinate(0), q, C.Y_tangent_basis(q, r)) >= 1e-2


# -- embedding --------------------------------------------------------------------------


def test_embed_phi():
    for n in (1, 2, 3):
        w = C.embed_phi(n, 1.5, np.zeros(n, dtype=complex), 0.0)
        expect = np.zeros(2 * (n + 1))
        expect[-2] = math.sqrt((n + 1) / 2) * math.sqrt(2 / math.pi)
        assert np.max(np.abs(w - expect)) <= 1e-15
        assert abs(math.pi * w @ w - (n + 1)) <= 1e-12
    assert C.torus_threshold(1, 1.5) and not C.torus_threshold(1, 0.9)
    w = C.embed_phi(1, 1.5, C.torus_preimage_point(1, [0.7]), 0.3)
    assert C.clifford_residual(w) <= 1e-12
    with pytest.raises(ValueError, match="outside the ball"):
        C.embed_phi(1, 1.0, np.array([0.6 + 0j]), 0.0)
    with pytest.raises(ValueError, match="smaller than 2"):
        C.embed_phi(1, 2, np.array([0j]), 0.0)


# -- crossings -----------------------------------------------------------------------------


def test_constant_path():
    U = np.diag(np.exp(1j * np.array([0.4, 2.0, -1.0])))
    assert C.crossing_count(C.UnitaryPath([(0, U), (1, U)])) == 0


def test_reeb_circle_counts():
    for d in range(1, 5):
        assert C.crossing_count(C.reeb_circle_path(d)) == 2 * d


def test_concatenation_and_conjugation(rng):
    f = lambda t: np.diag(np.exp(1j * np.array([3 * t, -2 * t + 0.5, t * t + 0.2])))  # noqa: E731
    a = C.UnitaryPath.from_function(f, 0.1, 1.3, 9)
    g = lambda t: f(1.3) @ np.diag(np.exp(1j * np.array([-4 * t, t, 2.5 * t])))  # noqa: E731
    b = C.UnitaryPath.from_function(g, 0.0, 1.7, 11)
    ab = C.concatenate(a, b)
    assert C.crossing_count(ab) == C.crossing_count(a) + C.crossing_count(b)
    V = C.random_unitary(3, rng)
    for p in (a, b, ab, C.reeb_circle_path(3)):
        assert C.crossing_count(p.conjugated(V)) == C.crossing_count(p)


def test_negative_direction():
    f = lambda t: np.exp(-2j * math.pi * t) * np.eye(2)  # noqa: E731
    assert C.crossing_count(C.UnitaryPath.from_function(f, 0.05, 1.05)) == -4


def test_tangential_crossing_detected():
    f = lambda t: np.diag([np.exp(1j * (t - 0.5) ** 3), np.exp(0.3j)])  # noqa: E731
    with pytest.raises(C.CrossingError, match="tangential crossing, refine path"):
        C.crossing_count(C.UnitaryPath.from_function(f, 0.2, 0.8, 7))


def test_path_validation():
    with pytest.raises(C.CrossingError, match="discriminant"):
        C.UnitaryPath([(0, np.eye(2)), (1, -np.eye(2))])
    with pytest.raises(ValueError, match="not unitary"):
        C.UnitaryPath([(0, 2 * np.eye(2)), (1, np.eye(2))])
    U = np.diag(np.exp(1j * np.array([0.4, 2.0])))
    V = np.diag(np.exp(1j * np.array([2.0, 0.4 + 2.0])))
    with pytest.raises(C.CrossingError, match="no function"):
        C.crossing_count(C.UnitaryPath([(0, U), (1, V)]))


def test_flow_error_is_rk4_phase_error():
    # one coordinate: each step multiplies z by the RK4 stability polynomial R(i theta),
    # and the radial projection removes only its modulus
    for lam in (1, 2, 3):
        z0 = C.SpherePoint((1,), C.from_complex(np.array([1 / math.sqrt(math.pi)])))
        dt, N = 1e-3, 1000
        tr = C.integrate_flow(C.torus_hamiltonian((lam,)), z0, 1.0, dt)
        th = 2 * math.pi * lam * dt
        R = 1 + 1j * th - th**2 / 2 - 1j * th**3 / 6 + th**4 / 24
        predicted = abs(np.exp(1j * N * np.angle(R)) - 1) / math.sqrt(math.pi)
        err = C.endpoint_error(tr.endpoint.z, z0.z)
        assert abs(err - predicted) <= 1e-13
    # |lambda| = 3 alone already exceeds 1e-8 on a coordinate with |z|^2 = 1/pi
    assert predicted > 1e-8
