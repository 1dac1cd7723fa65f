"""Kernel-torus data of Delzant's construction and the prequantization datum.

For an even, smooth, monotone polytope with conormals ``nu_1..nu_d`` the
kernel ``k`` of ``e_j -> nu_j`` carries the functional ``c(u) = sum(u)``.
From its integer points we read off

* ``c_k``: the positive generator of ``c(k cap Z^d)``;
* ``delta``: 1 if the antipodal element lies in the codimension-one subtorus
  ``K_0 = exp(ker c)``, else 2 (see ``docs/delta.md`` for the parity test);
* the Reeb period ``c_k / delta`` and Euler coefficient ``-delta / c_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence

from .exact import feasible_point, fourier_motzkin
from .lattice import (
    LatticeBasis,
    content,
    f2_all_odd_member,
    kernel_lattice,
    smith_normal_form,
    transpose,
)
from .polytope import (
    Polytope,
    format_rational,
    is_compact,
    is_even,
    is_smooth,
    monotone_normalize,
)

DEFAULT_GAMMA_RADIUS = 10


class PreconditionError(ValueError):
    """A polytope predicate required by the construction does not hold."""

    def __init__(self, predicate: str, message: str = ""):
        super().__init__(message or f"{predicate} precondition violated")
        self.predicate = predicate


def conormal_matrix(P: Polytope):
    """The n x d integer matrix whose j-th column is ``nu_j``."""
    return transpose(P.conormals)


def compute_ck(k_basis: LatticeBasis) -> int:
    sums = [abs(sum(b)) for b in k_basis.vectors]
    g = 0
    for s in sums:
        g = gcd(g, s)
    if g == 0:
        raise ValueError("degenerate c functional: coordinate sum vanishes on the kernel")
    return g


def zero_sum_sublattice(k_basis: LatticeBasis) -> LatticeBasis:
    """Integer points of ``k`` with coordinate sum zero, as a saturated basis."""
    if not k_basis.vectors:
        return k_basis
    sums = [[sum(b) for b in k_basis.vectors]]
    coeffs = kernel_lattice(sums)
    vecs = [k_basis.combination(w) for w in coeffs.vectors]
    return LatticeBasis(k_basis.ambient_dim, tuple(vecs))


def compute_delta(k_basis: LatticeBasis, even: bool = True) -> tuple[int, Optional[tuple[int, ...]]]:
    """Return ``(delta, witness)``.

    ``delta == 1`` exactly when ``ker c`` contains an all-odd integer vector;
    that vector is returned as the witness.
    """
    if not even:
        raise PreconditionError("even", "evenness precondition violated")
    k0 = zero_sum_sublattice(k_basis)
    u = f2_all_odd_member(k0)
    if u is None:
        return 2, None
    if sum(u) != 0 or not all(x % 2 for x in u) or not k_basis.contains(u):
        raise AssertionError(f"invalid parity witness {u}")
    return 1, u


def find_gamma(k_basis: LatticeBasis, search_radius: int = DEFAULT_GAMMA_RADIUS) -> Optional[tuple[int, ...]]:
    """Primitive lattice vector of ``k`` with every coordinate at least 1.

    A rational point of ``{w : B^T w >= 1}`` is found by Fourier-Motzkin
    (by the simplex method above rank 4, where elimination gets expensive);
    clearing denominators and dividing by the content keeps it in the cone.
    If that fails, integer coefficient vectors in ``[-r, r]^rank`` are tried.
    """
    if not k_basis.vectors:
        return None
    Bt = transpose(k_basis.vectors)
    solve = fourier_motzkin if k_basis.rank <= 4 else feasible_point
    w = solve(Bt, [1] * k_basis.ambient_dim)
    if w is not None:
        den = 1
        for q in w:
            den = den * q.denominator // gcd(den, q.denominator)
        g = k_basis.combination([int(q * den) for q in w])
        g = tuple(x // content(g) for x in g)
        if all(x >= 1 for x in g):
            return g
    r = search_radius
    for coeffs in product(range(-r, r + 1), repeat=k_basis.rank):
        g = k_basis.combination(coeffs)
        if all(x >= 1 for x in g) and content(g) == 1:
            return g
    return None


@dataclass(frozen=True)
class DelzantReport:
    name: Optional[str]
    d: int
    n: int
    k_basis: LatticeBasis
    k0_basis: LatticeBasis
    c_k: int
    delta: int
    witness: Optional[tuple[int, ...]]
    gamma: Optional[tuple[int, ...]]
    reeb_period: Fraction
    euler_coeff: Fraction
    euler_vector: Optional[tuple[Fraction, ...]] = None

    @property
    def dim_Y(self) -> int:
        return self.d + self.n

    @property
    def dim_Mhat(self) -> int:
        return 2 * self.n + 1

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "d": self.d,
            "n": self.n,
            "k_basis": [list(b) for b in self.k_basis.vectors],
            "k0_basis": [list(b) for b in self.k0_basis.vectors],
            "c_k": self.c_k,
            "delta": self.delta,
            "witness": list(self.witness) if self.witness else None,
            "gamma": list(self.gamma) if self.gamma else None,
            "reeb_period": format_rational(self.reeb_period),
            "euler_coeff": format_rational(self.euler_coeff),
            "dim_Y": self.dim_Y,
            "dim_Mhat": self.dim_Mhat,
        }
        if self.euler_vector is not None:
            out["euler_vector"] = [format_rational(q) for q in self.euler_vector]
        return out


def delzant_report(
    P: Polytope,
    c1: Optional[Sequence[int]] = None,
    gamma_radius: int = DEFAULT_GAMMA_RADIUS,
) -> DelzantReport:
    """Assemble the reduction datum for a compact, smooth, monotone, even polytope.

    ``c1`` optionally gives the first Chern class in some basis; the report
    then carries the Euler class ``-delta / c_k * c1`` in the same basis.
    """
    if not is_compact(P):
        raise PreconditionError("compact")
    if not is_smooth(P):
        raise PreconditionError("smooth")
    if monotone_normalize(P) is None:
        raise PreconditionError("monotone")
    if not is_even(P):
        raise PreconditionError("even", "evenness precondition violated")
    beta = conormal_matrix(P)
    snf = smith_normal_form(beta)
    if snf.rank != P.dim or any(f != 1 for f in snf.invariant_factors):
        raise PreconditionError("surjective", "conormals do not generate the lattice")
    k = kernel_lattice(beta)
    if k.rank != P.d - P.dim:
        raise AssertionError("kernel rank mismatch")
    c_k = compute_ck(k)
    delta, witness = compute_delta(k)
    k0 = zero_sum_sublattice(k)
    reeb = Fraction(c_k, delta)
    euler = Fraction(-delta, c_k)
    ev = tuple(euler * c for c in c1) if c1 is not None else None
    return DelzantReport(
        name=P.name,
        d=P.d,
        n=P.dim,
        k_basis=k,
        k0_basis=k0,
        c_k=c_k,
        delta=delta,
        witness=witness,
        gamma=find_gamma(k, gamma_radius),
        reeb_period=reeb,
        euler_coeff=euler,
        euler_vector=ev,
    )
