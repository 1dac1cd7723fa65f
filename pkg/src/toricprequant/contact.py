"""Floating-point checks of the contact geometry of the model sphere.

Points of ``C^d`` are stored as real arrays ``(x_1, y_1, ..., x_d, y_d)``.
The sphere ``S_gamma`` is the level ``pi * sum(gamma_j |z_j|^2) = sum(gamma)``
and carries the restriction of ``alpha = 1/2 sum(x_j dy_j - y_j dx_j)``, so
``d alpha = sum(dx_j ^ dy_j)``.  For ``lambda`` in ``R^d`` the field
``X_lambda(z) = 2 pi i (lambda_j z_j)`` satisfies ``alpha(X_lambda) = <lambda, P>``
and ``i_X d alpha = -d<lambda, P>``, where ``<lambda, P> = pi sum(lambda_j |z_j|^2)``.
The Reeb field of ``S_gamma`` is therefore ``X_{gamma / sum(gamma)}``.

Everything works on the sphere cover; all checked quantities are invariant
under ``z -> -z``, so they descend to the projective quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment


class ContactError(RuntimeError):
    pass


class FlowError(ContactError):
    pass


class CrossingError(ContactError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """All numerical thresholds in one place."""

    level: float = 1e-10
    contact_rel: float = 1e-9
    flow_abort: float = 1e-4
    unitary: float = 1e-10
    eps_end: float = 1e-6
    eps_step: float = 0.25
    eps_vel: float = 1e-6
    max_refine: int = 40
    locate_steps: int = 80
    locate_phase: float = 1e-12
    cond_max: float = 1e10
    rank_rel: float = 1e-9

    def with_overrides(self, **kw) -> "Tolerances":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_TOL = Tolerances()


# -- basic structure ---------------------------------------------------------


def _arr(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.ndim != 1 or z.size % 2:
        raise ValueError("expected a real vector of even length")
    return z


def to_complex(z) -> np.ndarray:
    z = _arr(z)
    return z[0::2] + 1j * z[1::2]


def from_complex(w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    out = np.empty(2 * w.size)
    out[0::2] = w.real
    out[1::2] = w.imag
    return out


def _check_dims(z, v):
    if len(z) != len(v):
        raise ValueError(f"dimension mismatch: {len(z)} vs {len(v)}")


def _pair(lam) -> np.ndarray:
    # repeat each weight for the (x, y) pair
    return np.repeat(np.asarray(lam, dtype=float), 2)


def alpha_vector(z) -> np.ndarray:
    """The covector of ``alpha`` at ``z``."""
    z = _arr(z)
    a = np.empty_like(z)
    a[0::2] = -0.5 * z[1::2]
    a[1::2] = 0.5 * z[0::2]
    return a


def alpha_std(z, v) -> float:
    z, v = _arr(z), _arr(v)
    _check_dims(z, v)
    return float(alpha_vector(z) @ v)


def omega_matrix(d: int) -> np.ndarray:
    """Matrix of ``d alpha``: ``d alpha(u, v) = u @ W @ v``."""
    W = np.zeros((2 * d, 2 * d))
    for j in range(d):
        W[2 * j, 2 * j + 1] = 1.0
        W[2 * j + 1, 2 * j] = -1.0
    return W


def moment(lam, z) -> float:
    z = _arr(z)
    lam = np.asarray(lam, dtype=float)
    if 2 * lam.size != z.size:
        raise ValueError(f"dimension mismatch: {lam.size} weights for {z.size // 2} coordinates")
    return float(math.pi * np.sum(lam * (z[0::2] ** 2 + z[1::2] ** 2)))


def moment_gradient(lam, z) -> np.ndarray:
    z = _arr(z)
    return 2 * math.pi * _pair(lam) * z


def torus_field(lam, z) -> np.ndarray:
    z = _arr(z)
    lam = np.asarray(lam, dtype=float)
    if 2 * lam.size != z.size:
        raise ValueError("dimension mismatch")
    out = np.empty_like(z)
    out[0::2] = -2 * math.pi * lam * z[1::2]
    out[1::2] = 2 * math.pi * lam * z[0::2]
    return out


def reeb_weights(gamma) -> np.ndarray:
    g = np.asarray(gamma, dtype=float)
    return g / g.sum()


def reeb_field(gamma, z) -> np.ndarray:
    return torus_field(reeb_weights(gamma), z)


@dataclass(frozen=True)
class SpherePoint:
    """A point of ``S_gamma`` in real interleaved coordinates."""

    gamma: tuple
    z: np.ndarray = field(compare=False)

    @property
    def d(self) -> int:
        return len(self.gamma)

    @property
    def level_residual(self) -> float:
        return abs(moment(self.gamma, self.z) - sum(self.gamma))

    @classmethod
    def project(cls, z, gamma) -> "SpherePoint":
        """Radial projection of a nonzero ``z`` onto ``S_gamma``."""
        z = _arr(z)
        gamma = tuple(int(g) for g in gamma)
        if 2 * len(gamma) != z.size:
            raise ValueError("dimension mismatch")
        if any(g <= 0 for g in gamma):
            raise ValueError("gamma must be positive")
        m = moment(gamma, z)
        if m <= 0:
            raise ValueError("cannot project the origin")
        return cls(gamma, z * math.sqrt(sum(gamma) / m))

    @classmethod
    def random(cls, gamma, rng: np.random.Generator) -> "SpherePoint":
        return cls.project(rng.standard_normal(2 * len(gamma)), gamma)

    @property
    def complex(self) -> np.ndarray:
        return to_complex(self.z)


def tangent_frame(z, gamma) -> np.ndarray:
    """Orthonormal basis (columns) of the tangent space of the level of ``z``."""
    g = moment_gradient(gamma, z)
    return null_space(g[None, :])


def null_space(A: np.ndarray, rel: float = 1e-12) -> np.ndarray:
    A = np.atleast_2d(A)
    _, s, vt = np.linalg.svd(A)
    tol = rel * (s[0] if s.size else 1.0)
    r = int(np.sum(s > tol))
    return vt[r:].T.copy()


def orthonormal_columns(B: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormalize the columns of ``B``; raise if they are dependent."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.shape[1] == 0:
        return B
    u, s, _ = np.linalg.svd(B, full_matrices=False)
    if s[-1] <= tol.rank_rel * s[0]:
        raise ContactError("rank deficiency in tangent basis")
    return u


# -- Hamiltonians -------------------------------------------------------------


@dataclass(frozen=True)
class Hamiltonian:
    """A smooth function on ``R^{2d}`` with its gradient."""

    value: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]
    name: str = "h"

    def __call__(self, z) -> float:
        return float(self.value(_arr(z)))


def constant(c: float) -> Hamiltonian:
    c = float(c)
    return Hamiltonian(lambda z: c, lambda z: np.zeros_like(z), f"const({c})")


def torus_hamiltonian(lam) -> Hamiltonian:
    """``<lambda, P>``."""
    lam = tuple(float(x) for x in lam)
    return Hamiltonian(
        lambda z: moment(lam, z),
        lambda z: moment_gradient(lam, z),
        f"torus{lam}",
    )


def coordinate(k: int) -> Hamiltonian:
    def grad(z):
        g = np.zeros_like(z)
        g[k] = 1.0
        return g

    return Hamiltonian(lambda z: float(z[k]), grad, f"coord({k})")


def radial(H: Callable, dH: Callable) -> Hamiltonian:
    """``h(z) = H(r)`` with ``r_j = |z_j|^2``; ``dH(r)`` returns ``dH/dr_j``."""

    def value(z):
        return float(H(z[0::2] ** 2 + z[1::2] ** 2))

    def grad(z):
        r = z[0::2] ** 2 + z[1::2] ** 2
        return 2 * _pair(dH(r)) * z

    return Hamiltonian(value, grad, "radial")


def trig_polynomial(dim: int, terms: int, rng: np.random.Generator, scale: float = 1.0) -> Hamiltonian:
    """Random ``sum a_k cos(<w_k, z> + p_k)`` on ``R^dim``."""
    a = rng.standard_normal(terms)
    w = scale * rng.standard_normal((terms, dim))
    p = rng.uniform(0, 2 * math.pi, terms)

    def value(z):
        return float(a @ np.cos(w @ z + p))

    def grad(z):
        return -(a * np.sin(w @ z + p)) @ w

    return Hamiltonian(value, grad, f"trig({terms})")


# -- contact vector fields ------------------------------------------------------


def contact_field(
    h: Hamiltonian, z, gamma, tol: Tolerances = DEFAULT_TOL, check: bool = True
) -> np.ndarray:
    """Contact vector field of ``h`` at ``z`` on the level of ``z``.

    Solves ``alpha(X) = h`` and ``d alpha(X, e) = -dh(e) + dh(R) alpha(e)``
    for ``e`` in an orthonormal tangent frame, by least squares on the
    overdetermined (but consistent) system.
    """
    z = _arr(z)
    d = z.size // 2
    E = tangent_frame(z, gamma)
    W = omega_matrix(d)
    a = alpha_vector(z)
    dh = np.asarray(h.grad(z), dtype=float)
    hv = h(z)
    R = reeb_field(gamma, z)
    A = np.vstack([a @ E, E.T @ W.T @ E])
    rhs = np.concatenate([[hv], -E.T @ dh + (dh @ R) * (E.T @ a)])
    c, _, _, s = np.linalg.lstsq(A, rhs, rcond=None)
    if s[-1] == 0 or s[0] / s[-1] > tol.cond_max:
        raise ContactError("singular contact system (condition number too large)")
    X = E @ c
    if check:
        res = np.max(np.abs(A @ c - rhs))
        scale = 1 + abs(hv) + np.linalg.norm(dh)
        if res > tol.contact_rel * scale:
            raise ContactError(f"contact system residual {res:.3e} exceeds tolerance")
    return X


def contact_residuals(h: Hamiltonian, z, gamma, X) -> tuple[float, float]:
    """Residuals of both defining equations for a candidate field ``X``."""
    z = _arr(z)
    E = tangent_frame(z, gamma)
    W = omega_matrix(z.size // 2)
    a = alpha_vector(z)
    dh = np.asarray(h.grad(z), dtype=float)
    R = reeb_field(gamma, z)
    r1 = abs(a @ X - h(z))
    r2 = float(np.max(np.abs(X @ W @ E + dh @ E - (dh @ R) * (a @ E)))) if E.size else 0.0
    return float(r1), r2


def bracket(h: Hamiltonian, g: Hamiltonian, z, gamma, tol: Tolerances = DEFAULT_TOL) -> float:
    """``-dg(X_h) + dh(R) g``."""
    z = _arr(z)
    X = contact_field(h, z, gamma, tol)
    R = reeb_field(gamma, z)
    return float(-np.asarray(g.grad(z)) @ X + (np.asarray(h.grad(z)) @ R) * g(z))


# -- flows ---------------------------------------------------------------------


@dataclass
class Trajectory:
    gamma: tuple
    times: np.ndarray
    points: list
    alpha_residuals: np.ndarray
    level_residuals: np.ndarray

    @property
    def endpoint(self) -> SpherePoint:
        return self.points[-1]

    def summary(self) -> dict:
        return {
            "steps": len(self.times) - 1,
            "T": float(self.times[-1]),
            "max_alpha_residual": float(np.max(self.alpha_residuals)),
            "max_level_residual": float(np.max(self.level_residuals)),
            "endpoint": [float(x) for x in self.endpoint.z],
        }


def _alpha_residual(h, z, gamma, tol):
    X = contact_field(h, z, gamma, tol, check=False)
    return abs(alpha_std(z, X) - h(z)), X


def integrate_flow(
    h: Hamiltonian,
    z0: SpherePoint,
    T: float,
    dt: float = 1e-3,
    tol: Tolerances = DEFAULT_TOL,
) -> Trajectory:
    """Classical Runge-Kutta steps, each followed by radial projection to the sphere.

    After every step the field is re-evaluated and ``|alpha(X) - h|`` is
    recorded; the run aborts once it exceeds ``tol.flow_abort``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if T < 0:
        raise ValueError("T must be non-negative")
    gamma = z0.gamma
    steps = int(math.ceil(T / dt - 1e-9)) if T > 0 else 0
    step = T / steps if steps else 0.0
    f = lambda z: contact_field(h, z, gamma, tol, check=False)
    z = z0.z.copy()
    times = [0.0]
    pts = [z0]
    res0, _ = _alpha_residual(h, z, gamma, tol)
    ares = [res0]
    lres = [z0.level_residual]
    for k in range(steps):
        k1 = f(z)
        k2 = f(z + 0.5 * step * k1)
        k3 = f(z + 0.5 * step * k2)
        k4 = f(z + step * k3)
        z = z + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        p = SpherePoint.project(z, gamma)
        z = p.z
        r, _ = _alpha_residual(h, z, gamma, tol)
        if not r <= tol.flow_abort:
            raise FlowError(f"alpha residual {r:.3e} at step {k + 1} (t={(k + 1) * step:.6g}) exceeds {tol.flow_abort:g}")
        times.append((k + 1) * step)
        pts.append(p)
        ares.append(r)
        lres.append(p.level_residual)
    return Trajectory(gamma, np.array(times), pts, np.array(ares), np.array(lres))


def torus_rotation(lam, z, t: float) -> np.ndarray:
    """Closed-form flow of ``<lambda, P>``: ``z_j -> exp(2 pi i lambda_j t) z_j``."""
    w = to_complex(z) * np.exp(2j * math.pi * np.asarray(lam, dtype=float) * t)
    return from_complex(w)


def endpoint_error(a, b) -> float:
    """Largest coordinatewise modulus ``|a_j - b_j|`` of two points of ``C^d``."""
    return float(np.max(np.abs(to_complex(a) - to_complex(b))))


# -- the coisotropic cover of Y ---------------------------------------------------


def sample_Y(P, report, count: int, seed: int = 0, gamma=None) -> list:
    """Seeded points of the level ``P_K^{-1}(c)`` inside ``S_gamma``.

    ``x`` is drawn uniformly from the interior of the normalized polytope by
    rejection in its bounding box and ``|z_j|^2 = (1 + <nu_j, x>) / pi`` with
    uniform phases.  ``gamma`` defaults to the report's ``gamma``.
    """
    from .polytope import monotone_normalize, vertices

    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return []
    Q = monotone_normalize(P)
    if Q is None:
        raise ContactError("polytope is not monotone")
    gamma = tuple(gamma if gamma is not None else report.gamma)
    if len(gamma) != Q.d:
        raise ValueError("gamma length does not match the facet count")
    N = np.array(Q.conormals, dtype=float)
    V = np.array([[float(c) for c in v] for v in vertices(Q).vertices])
    lo, hi = V.min(axis=0), V.max(axis=0)
    if np.any(hi - lo <= 0):
        raise ContactError("degenerate polytope interior")
    rng = np.random.default_rng(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * count + 10000:
            raise ContactError("degenerate polytope interior: rejection sampling failed")
        x = rng.uniform(lo, hi)
        s = 1 + N @ x
        if np.any(s <= 0):
            continue
        r = np.sqrt(s / math.pi)
        ph = rng.uniform(0, 2 * math.pi, Q.d)
        z = from_complex(r * np.exp(1j * ph))
        out.append(SpherePoint(gamma, z))
    return out


def point_over(P, x, phases=None, gamma=None) -> SpherePoint:
    """The point with ``|z_j|^2 = (1 + <nu_j, x>) / pi`` and given phases."""
    from .polytope import monotone_normalize

    Q = monotone_normalize(P)
    N = np.array(Q.conormals, dtype=float)
    s = 1 + N @ np.asarray(x, dtype=float)
    if np.any(s < 0):
        raise ValueError("x lies outside the polytope")
    ph = np.zeros(Q.d) if phases is None else np.asarray(phases, dtype=float)
    gamma = tuple(gamma) if gamma is not None else (1,) * Q.d
    return SpherePoint(gamma, from_complex(np.sqrt(s / math.pi) * np.exp(1j * ph)))


def level_tangent_basis(z, constraints, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Common kernel of the differentials of ``<b, P>`` for ``b`` in ``constraints``."""
    z = _arr(z)
    G = np.array([moment_gradient(b, z) for b in constraints])
    if G.size == 0:
        return np.eye(z.size)
    s = np.linalg.svd(G, compute_uv=False)
    if s[-1] <= tol.rank_rel * s[0]:
        raise ContactError("rank deficiency in moment constraints")
    return null_space(G)


def Y_tangent_basis(z: SpherePoint, report, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    return level_tangent_basis(z.z, report.k_basis.vectors, tol)


def _distance_from(Q: np.ndarray, v: np.ndarray) -> float:
    return float(np.linalg.norm(v - Q @ (Q.T @ v)))


def coisotropy_residual(z: SpherePoint, tangent_basis, tol: Tolerances = DEFAULT_TOL) -> float:
    """How far ``T_zY`` is from being strictly coisotropic.

    Returns the larger of the distance of each unit vector of the
    ``d alpha``-orthogonal complement of ``T_zY`` (inside the sphere's tangent
    space) from ``T_zY``, and the distance of the unit Reeb vector from ``T_zY``.
    """
    Q = orthonormal_columns(tangent_basis, tol)
    E = tangent_frame(z.z, z.gamma)
    W = omega_matrix(z.d)
    G = E.T @ W @ Q
    C = null_space(G.T) if G.size else np.eye(E.shape[1])
    worst = 0.0
    for c in C.T:
        worst = max(worst, _distance_from(Q, E @ c))
    R = reeb_field(z.gamma, z.z)
    worst = max(worst, _distance_from(Q, R / np.linalg.norm(R)))
    return worst


def slice_tangent_basis(z: SpherePoint, coord: int = 0) -> np.ndarray:
    """Tangent space of ``{z[coord] = 0}`` intersected with the sphere."""
    e = np.zeros(z.z.size)
    e[coord] = 1.0
    return null_space(np.vstack([moment_gradient(z.gamma, z.z), e]))


def legendrian_residual(z, gamma=None, allow_nonreal: bool = False, real_tol: float = 1e-14) -> float:
    """Largest ``|alpha(v)|`` over unit vectors ``v`` tangent to the real locus.

    The tangent space is ``{v : dy(v) = 0}`` inside the tangent space of the
    level through ``z``.  ``allow_nonreal`` permits points off the real locus
    (used to confirm that the check detects them).
    """
    z = _arr(z)
    d = z.size // 2
    if not allow_nonreal and np.max(np.abs(z[1::2])) > real_tol:
        raise ContactError("z not real")
    gamma = np.ones(d) if gamma is None else np.asarray(gamma, dtype=float)
    g = moment_gradient(gamma, z)
    # real directions: only x-components, orthogonal to the level gradient
    K = null_space(g[0::2][None, :]) if np.any(g[0::2]) else np.eye(d)
    if K.shape[1] == 0:
        return 0.0
    basis = np.zeros((2 * d, K.shape[1]))
    basis[0::2] = K
    return float(np.linalg.norm(basis.T @ alpha_vector(z)))


def extension_tangency_residual(
    h: Hamiltonian, z: SpherePoint, tangent_basis, tol: Tolerances = DEFAULT_TOL
) -> float:
    """Distance of the contact field of ``h`` from ``T_zY``."""
    Q = orthonormal_columns(tangent_basis, tol)
    return _distance_from(Q, contact_field(h, z.z, z.gamma, tol))


# -- the embedding of a ball times a circle -------------------------------------------


def _as_fraction(R) -> Fraction:
    if isinstance(R, Fraction):
        return R
    if isinstance(R, float):
        return Fraction(R)
    return Fraction(str(R)) if isinstance(R, str) else Fraction(R)


def torus_threshold(n: int, R) -> bool:
    """True iff the image of the ``R``-ball contains the real Clifford torus: ``R > 2n/(n+1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return _as_fraction(R) > Fraction(2 * n, n + 1)


def embed_phi(n: int, R, z, t: float) -> np.ndarray:
    """``exp(pi i t) sqrt((n+1)/2) (z, sqrt(2/pi - |z|^2))`` as a real vector.

    ``z`` is given in complex form (``n`` entries) or real interleaved form.
    The image lies on ``pi |w|^2 = n + 1``.
    """
    Rq = _as_fraction(R)
    if Rq >= 2:
        raise ValueError("R must be smaller than 2")
    zc = np.asarray(z)
    if not np.iscomplexobj(zc) and zc.size == 2 * n:
        zc = to_complex(zc)
    zc = np.asarray(zc, dtype=complex)
    if zc.size != n:
        raise ValueError("dimension mismatch")
    r2 = float(np.sum(np.abs(zc) ** 2))
    if not math.pi * r2 < float(Rq):
        raise ValueError("z outside the ball")
    last = math.sqrt(2 / math.pi - r2)
    w = np.exp(1j * math.pi * t) * math.sqrt((n + 1) / 2) * np.append(zc, last)
    return from_complex(w)


def torus_preimage_point(n: int, phases=None) -> np.ndarray:
    """A point of the ball mapped onto the Clifford torus: ``|z_j|^2 = 2/(pi (n+1))``."""
    ph = np.zeros(n) if phases is None else np.asarray(phases, dtype=float)
    return math.sqrt(2 / (math.pi * (n + 1))) * np.exp(1j * ph)


def clifford_residual(w) -> float:
    """``max_j |pi |w_j|^2 - 1|``; zero exactly on the Clifford torus."""
    wc = to_complex(w)
    return float(np.max(np.abs(math.pi * np.abs(wc) ** 2 - 1)))


# -- crossing counts of projective unitary paths ------------------------------------


@dataclass
class UnitaryPath:
    """A sampled path of ``d x d`` unitaries.

    If ``func`` is given, ``crossing_count`` may evaluate it at extra times
    to refine the sampling.
    """

    samples: list
    func: Optional[Callable[[float], np.ndarray]] = None
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        if len(self.samples) < 2:
            raise ValueError("a path needs at least two samples")
        self.samples = [(float(t), np.asarray(U, dtype=complex)) for t, U in self.samples]
        ts = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("sample times must increase")
        d = self.samples[0][1].shape[0]
        for t, U in self.samples:
            if U.shape != (d, d):
                raise ValueError("samples must be square matrices of one size")
            if np.max(np.abs(U.conj().T @ U - np.eye(d))) > self.tol.unitary:
                raise ValueError(f"sample at t={t} is not unitary")
        for t, U in (self.samples[0], self.samples[-1]):
            ph = np.angle(np.linalg.eigvals(U))
            if np.min(np.minimum(np.abs(ph), math.pi - np.abs(ph))) < self.tol.eps_end:
                raise CrossingError(f"endpoint at t={t} lies on the discriminant")

    @property
    def d(self) -> int:
        return self.samples[0][1].shape[0]

    @property
    def start(self) -> float:
        return self.samples[0][0]

    @property
    def end(self) -> float:
        return self.samples[-1][0]

    @classmethod
    def from_function(cls, f, t0: float, t1: float, samples: int = 16, tol: Tolerances = DEFAULT_TOL):
        ts = np.linspace(t0, t1, samples + 1)
        return cls([(t, f(t)) for t in ts], f, tol)

    def conjugated(self, V) -> "UnitaryPath":
        V = np.asarray(V, dtype=complex)
        Vh = V.conj().T
        f = None if self.func is None else (lambda t, g=self.func: V @ g(t) @ Vh)
        return UnitaryPath([(t, V @ U @ Vh) for t, U in self.samples], f, self.tol)


def concatenate(a: UnitaryPath, b: UnitaryPath) -> UnitaryPath:
    """``a`` followed by ``b`` (shifted in time so that it starts where ``a`` ends)."""
    if a.d != b.d:
        raise ValueError("paths of different size")
    Ua, Ub = a.samples[-1][1], b.samples[0][1]
    if np.max(np.abs(Ua - Ub)) > a.tol.unitary:
        raise ValueError("paths do not join")
    shift = a.end - b.start
    samples = a.samples + [(t + shift, U) for t, U in b.samples[1:]]
    f = None
    if a.func is not None and b.func is not None:
        fa, fb, cut = a.func, b.func, a.end

        def f(t):
            return fa(t) if t <= cut else fb(t - shift)

    return UnitaryPath(samples, f, a.tol)


def _phases(U) -> np.ndarray:
    return np.angle(np.linalg.eigvals(U))


def _wrap(x):
    return (x + math.pi) % (2 * math.pi) - math.pi


def _match(pa, pb):
    """Pair up two phase lists minimizing total circular movement."""
    cost = np.abs(_wrap(pb[None, :] - pa[:, None]))
    _, col = linear_sum_assignment(cost)
    return _wrap(pb[col] - pa), col


def _floor_pi(x: float) -> int:
    return math.floor(x / math.pi)


def _crossings(phi, delta) -> int:
    """Signed number of multiples of pi passed going from ``phi`` to ``phi + delta``.

    A value exactly at a multiple counts as just past it, so a branch that
    touches the discriminant and turns back contributes nothing.
    """
    return _floor_pi(phi + delta) - _floor_pi(phi)


def _crossing_speed(func, ta, tb, phi, dphi, tol) -> float:
    """Phase speed of one branch near its crossing, localized by bisection.

    Bisection stops once the branch moves less than ``locate_phase`` across
    the bracket, which keeps eigenvalue round-off out of the estimate.
    """
    for _ in range(tol.locate_steps):
        if abs(dphi) <= tol.locate_phase:
            break
        tm = 0.5 * (ta + tb)
        pm = _phases(np.asarray(func(tm), dtype=complex))
        # follow the branch: the eigenvalue at tm closest to phi
        d1 = float(_wrap(pm - phi)[np.argmin(np.abs(_wrap(pm - phi)))])
        if _crossings(phi, d1):
            tb, dphi = tm, d1
        else:
            ta, phi, dphi = tm, phi + d1, dphi - d1
    return abs(dphi) / (tb - ta)


def crossing_count(path: UnitaryPath, tol: Optional[Tolerances] = None) -> int:
    """Signed count of eigenvalue passages through ``+1`` and ``-1``.

    Eigenvalue phases are tracked sample to sample by optimal matching; an
    interval is bisected (when ``path.func`` is available) until no phase
    moves more than ``eps_step``.  Each passage through a multiple of ``pi``
    counts +1 if the phase increases there and -1 if it decreases; the
    count for each branch telescopes, so concatenation is exactly additive.
    """
    tol = tol or path.tol
    total = 0

    def interval(ta, Ua, pa, tb, Ub, pb, depth):
        nonlocal total
        delta, col = _match(pa, pb)
        if np.max(np.abs(delta)) > tol.eps_step:
            if path.func is None:
                raise CrossingError("phase step too large and no function to refine the path")
            if depth >= tol.max_refine:
                raise CrossingError("refinement limit reached")
            tm = 0.5 * (ta + tb)
            Um = np.asarray(path.func(tm), dtype=complex)
            pm = _phases(Um)
            interval(ta, Ua, pa, tm, Um, pm, depth + 1)
            interval(tm, Um, pm, tb, Ub, pb, depth + 1)
            return
        for i, (phi, dphi) in enumerate(zip(pa, delta)):
            # use the stored phase at tb so that neighbouring steps agree exactly
            end = pb[col[i]]
            wind = round((phi + dphi - end) / (2 * math.pi))
            k = _floor_pi(end) + 2 * wind - _floor_pi(phi)
            if k:
                if path.func is None:
                    vel = abs(dphi) / (tb - ta)
                else:
                    vel = _crossing_speed(path.func, ta, tb, phi, dphi, tol)
                if vel < tol.eps_vel:
                    raise CrossingError("tangential crossing, refine path")
                total += k

    (t0, U0) = path.samples[0]
    p0 = _phases(U0)
    for t1, U1 in path.samples[1:]:
        p1 = _phases(U1)
        interval(t0, U0, p0, t1, U1, p1, 0)
        t0, U0, p0 = t1, U1, p1
    return total


def reeb_circle_path(d: int, shift: float = 0.05, samples: int = 16, tol: Tolerances = DEFAULT_TOL) -> UnitaryPath:
    """``exp(2 pi i t) I_d`` for ``t`` in ``[shift, 1 + shift]``."""
    f = lambda t: np.exp(2j * math.pi * t) * np.eye(d)
    return UnitaryPath.from_function(f, shift, 1 + shift, samples, tol)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(A)
    return Q * (np.diag(R) / np.abs(np.diag(R)))
