from fractions import Fraction

import pytest

from toricprequant import catalog
from toricprequant.delzant import PreconditionError, delzant_report
from toricprequant.polytope import predicate_report

from oracles import ck_and_delta


def test_names():
    assert len(catalog.NAMES) == len(set(catalog.NAMES))
    assert sorted(catalog.even_dim3_names()) == sorted(
        ["CP3", "CP1xCP2", "CP1^3", "CP1x(CP2#3)", "bundle_i", "bundle_ii", "bundle_iii", "bundle_iv"]
    )
    with pytest.raises(KeyError, match="known:"):
        catalog.builtin("CP7")


def test_conormals_verbatim():
    assert catalog.builtin("bundle_ii").polytope.conormals == (
        (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (-1, -1, 0), (0, 0, 1), (-1, -1, -1),
    )
    assert catalog.builtin("CP3").polytope.conormals == ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
    assert catalog.builtin("bundle_i").polytope.conormals[-1] == (2, -1, -1)


def test_verify_catalog_ok():
    rep = catalog.verify_catalog()
    bad = [(e["name"], c) for e in rep["entries"] for c in e["checks"] if not c["ok"]]
    assert rep["ok"], bad
    assert len(rep["entries"]) == len(catalog.NAMES)


@pytest.mark.parametrize("name", catalog.NAMES)
def test_round_trip(name):
    assert catalog.round_trip(catalog.builtin(name))


@pytest.mark.parametrize("name", [n for n in catalog.NAMES if n != "hirzebruch_F1"])
def test_entries_are_smooth_even_fano(name):
    P = catalog.builtin(name).polytope
    rep = predicate_report(P)
    assert rep["compact"] and rep["smooth"] and rep["monotone"] and rep["even"]
    assert all(a == 1 for a in P.support)


@pytest.mark.parametrize("name", [n for n in catalog.NAMES if n != "hirzebruch_F1"])
def test_against_brute_force(name):
    e = catalog.builtin(name)
    if len(e.polytope.conormals) > 8:
        pytest.skip("kernel enumeration too large")
    ck, delta = ck_and_delta(e.polytope.conormals)
    r = delzant_report(e.polytope)
    assert (r.c_k, r.delta) == (ck, delta)
    assert r.euler_coeff == Fraction(-delta, ck)


def test_f1_refused():
    e = catalog.builtin("hirzebruch_F1")
    assert not predicate_report(e.polytope)["even"]
    with pytest.raises(PreconditionError):
        delzant_report(e.polytope)
    res = catalog.verify_entry(e)
    assert res["ok"] and res["report"] is None


def test_provenance_tags():
    for e in catalog.entries():
        for ex in e.expected.values():
            assert ex.provenance in catalog.PROVENANCE and ex.citation
    with pytest.raises(ValueError):
        catalog.Expected(1, "folklore", "x")
    with pytest.raises(ValueError):
        catalog.Expected(1, "trivial", "")


def test_entries_by_dim():
    assert {e.name for e in catalog.entries(2)} == {"CP2", "CP1xCP1", "CP2#3", "hirzebruch_F1"}
    assert all(e.polytope.dim == 3 for e in catalog.entries(3))
