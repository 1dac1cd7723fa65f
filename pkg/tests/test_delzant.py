from fractions import Fraction

import numpy as np
import pytest

from toricprequant import catalog
from toricprequant.delzant import (
    PreconditionError,
    compute_ck,
    compute_delta,
    delzant_report,
    find_gamma,
    zero_sum_sublattice,
)
from toricprequant.lattice import LatticeBasis, content, kernel_lattice
from toricprequant.polytope import from_conormals

from oracles import ck_and_delta, random_unimodular


def basis(*vs):
    return LatticeBasis(len(vs[0]), tuple(vs))


def test_compute_ck_examples():
    assert compute_ck(basis((1, 0, 1, 0), (0, 1, 0, 1))) == 2
    assert compute_ck(basis((1, 1, 1))) == 3
    assert compute_ck(basis((1, 1, 0, 0, 0), (-2, 0, 1, 1, 1))) == 1
    with pytest.raises(ValueError, match="degenerate c functional"):
        compute_ck(basis((1, -1, 0)))


def test_compute_delta_examples():
    assert compute_delta(basis((1, 0, 1, 0), (0, 1, 0, 1))) == (1, (1, -1, 1, -1))
    assert compute_delta(basis((1, 1, 1))) == (2, None)
    k = basis((1, 1, 0, 0, 0), (-2, 0, 1, 1, 1))
    assert zero_sum_sublattice(k).vectors in (((5, 1, -2, -2, -2),), ((-5, -1, 2, 2, 2),))
    assert compute_delta(k)[0] == 2
    with pytest.raises(PreconditionError, match="evenness precondition violated"):
        compute_delta(k, even=False)


def check_gamma(k, g):
    assert g is not None
    assert k.contains(g) and content(g) == 1 and min(g) >= 1


def test_find_gamma_examples():
    k = basis((1, 0, 1, 0), (0, 1, 0, 1))
    assert find_gamma(k) == (1, 1, 1, 1)
    for m in range(1, 7):
        assert find_gamma(basis((1,) * (m + 1))) == (1,) * (m + 1)
    k = kernel_lattice([[1, -1, 0, 0, 2], [0, 0, 1, 0, -1], [0, 0, 0, 1, -1]])
    check_gamma(k, find_gamma(k))


def test_find_gamma_absent():
    assert find_gamma(basis((1, -1, 0)), search_radius=2) is None


def test_report_cp1xcp1():
    r = delzant_report(catalog.builtin("CP1xCP1").polytope, c1=(2, 2))
    assert (r.c_k, r.delta, r.reeb_period, r.euler_coeff, r.dim_Mhat) == (2, 1, 2, Fraction(-1, 2), 5)
    assert r.euler_vector == (-1, -1)
    assert r.dim_Y == 6


def test_report_cp3():
    r = delzant_report(catalog.builtin("CP3").polytope)
    assert (r.c_k, r.delta, r.reeb_period, r.euler_coeff, r.dim_Mhat) == (4, 2, 2, Fraction(-1, 2), 7)


def test_report_refuses_odd():
    with pytest.raises(PreconditionError, match="evenness precondition violated"):
        delzant_report(catalog.builtin("hirzebruch_F1").polytope)


@pytest.mark.parametrize(
    "conormals,support,predicate",
    [
        ([(1, 0), (0, 1)], None, "compact"),
        ([(1, 0), (0, 1), (-1, -2)], None, "smooth"),
        ([(1, 0), (0, 1), (-1, 0), (0, -1)], [1, 1, 2, 3], "monotone"),
    ],
)
def test_report_preconditions(conormals, support, predicate):
    with pytest.raises(PreconditionError) as exc:
        delzant_report(from_conormals(conormals, support))
    assert exc.value.predicate == predicate


def test_report_accepts_unnormalized_monotone():
    P = from_conormals([(1, 0), (0, 1), (-1, -1)], [1, 2, 1])
    assert delzant_report(P).c_k == 3


def test_report_invariants_on_catalog():
    for e in catalog.entries():
        if not e.expected["even"].value:
            continue
        r = delzant_report(e.polytope)
        N = e.polytope.conormals
        assert r.k_basis.rank == r.d - r.n and r.k0_basis.rank == r.d - r.n - 1
        for b in r.k_basis:
            assert all(sum(bj * v[i] for bj, v in zip(b, N)) == 0 for i in range(r.n))
            assert sum(b) % r.c_k == 0
        if r.witness is not None:
            assert r.delta == 1 and sum(r.witness) == 0 and all(x % 2 for x in r.witness)
            assert r.k_basis.contains(r.witness)
        assert r.reeb_period * r.euler_coeff == -1
        check_gamma(r.k_basis, r.gamma)


def test_cp_families():
    for m in range(1, 7):
        r = delzant_report(catalog.builtin(f"CP{m}").polytope)
        assert (r.c_k, r.delta) == (m + 1, 2)
    for m in range(1, 5):
        r = delzant_report(catalog.builtin(f"CP{m}xCP{m}").polytope)
        assert (r.c_k, r.delta) == (m + 1, 1)


def test_against_brute_force_kernel():
    for name in ("CP2#3", "CP1xCP2", "CP1^3", "bundle_i", "bundle_ii", "bundle_iii", "bundle_iv", "CP1xCP1", "CP3"):
        r = delzant_report(catalog.builtin(name).polytope)
        assert (r.c_k, r.delta) == ck_and_delta(catalog.builtin(name).polytope.conormals)


def test_unimodular_invariance():
    rng = np.random.default_rng(8)
    for e in catalog.entries():
        if not e.expected["even"].value:
            continue
        P = e.polytope
        r0 = delzant_report(P)
        key = (r0.c_k, r0.delta, r0.reeb_period, r0.euler_coeff)
        for _ in range(50):
            perm = rng.permutation(P.d).tolist()
            Q = P.transformed(random_unimodular(P.dim, rng), perm)
            r = delzant_report(Q)
            assert (r.c_k, r.delta, r.reeb_period, r.euler_coeff) == key
            # the kernel is permuted along with the facets
            for b in r0.k_basis:
                assert r.k_basis.contains(tuple(b[j] for j in perm))
