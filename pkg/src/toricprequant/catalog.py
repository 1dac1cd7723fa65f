"""Built-in polytopes with their expected invariants.

Every expected value carries a provenance tag:

``published``
    stated in the published literature on these examples;
``derived``
    worked out by hand or by an independent brute-force computation
    (``tests/oracles``), then frozen here;
``trivial``
    immediate from the definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .delzant import PreconditionError, delzant_report
from .polytope import Polytope, from_conormals, parse_polytope, predicate_report

PROVENANCE = ("published", "derived", "trivial")


@dataclass(frozen=True)
class Expected:
    value: Any
    provenance: str
    citation: str

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if not self.citation:
            raise ValueError("expected values need a citation")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    polytope: Polytope
    expected: dict = field(default_factory=dict)
    c1: Optional[tuple[int, ...]] = None

    def dumps(self) -> str:
        return self.polytope.dumps()


def _e(n: int, i: int, s: int = 1) -> tuple[int, ...]:
    return tuple(s if j == i else 0 for j in range(n))


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def _neg(v):
    return tuple(-x for x in v)


def _cp(m: int):
    basis = [_e(m, i) for i in range(m)]
    return basis + [_neg(_add(*basis))]


def _cp_square(m: int):
    """``CP^m x CP^m``: the factor conormals, first block then second."""
    n = 2 * m
    first = [_e(n, i) for i in range(m)]
    second = [_e(n, m + i) for i in range(m)]
    return first + [_neg(_add(*first))] + second + [_neg(_add(*second))]


E1, E2, E3 = _e(3, 0), _e(3, 1), _e(3, 2)
F1, F2 = _e(2, 0), _e(2, 1)

LISTED = "published list of even smooth Fano polytopes"
PRODUCT = "published worked example for products of projective spaces"
HAND = "hand computation of the kernel lattice"
BRUTE = "brute-force kernel enumeration over [-3, 3]^d"
FIBRATION = "Hopf fibration RP^(2m+1) -> CP^m has Euler class -2"


def _conormals() -> dict:
    out = {}
    for m in range(1, 7):
        out[f"CP{m}"] = _cp(m)
    out["CP1xCP1"] = [F1, F2, _neg(F1), _neg(F2)]
    for m in (2, 3, 4):
        out[f"CP{m}xCP{m}"] = _cp_square(m)
    out["CP2#3"] = [F1, _neg(F1), F2, _neg(F2), _add(F1, F2), _neg(_add(F1, F2))]
    out["CP1xCP2"] = [E1, _neg(E1), E2, E3, _neg(_add(E2, E3))]
    out["CP1^3"] = [E1, _neg(E1), E2, _neg(E2), E3, _neg(E3)]
    out["CP1x(CP2#3)"] = [E1, _neg(E1), E2, _neg(E2), E3, _neg(E3), _add(E2, E3), _neg(_add(E2, E3))]
    out["bundle_i"] = [E1, _neg(E1), E2, E3, (2, -1, -1)]
    out["bundle_ii"] = [E1, _neg(E1), E2, _neg(E2), (-1, -1, 0), E3, (-1, -1, -1)]
    out["bundle_iii"] = [E1, _neg(E1), E2, E3, (1, -1, 0), (1, 0, -1)]
    out["bundle_iv"] = [E1, _neg(E1), E2, E3, (1, -1, 0), (-1, 0, -1)]
    out["hirzebruch_F1"] = [F1, F2, _neg(F2), (-1, -1)]
    return out


def _expectations() -> dict:
    P, D, T = "published", "derived", "trivial"
    exp: dict[str, dict] = {}
    c1: dict[str, tuple] = {}
    for m in range(1, 7):
        name = f"CP{m}"
        exp[name] = {
            "even": Expected(True, T, "conormals sum to zero"),
            "smooth": Expected(True, T, "standard simplex"),
            "c_k": Expected(m + 1, D, HAND + ": kernel spanned by (1, ..., 1)"),
            "delta": Expected(2, D, HAND + ": zero-sum kernel part is trivial"),
            "euler_coeff": Expected(Fraction(-2, m + 1), D, HAND),
            "euler_vector": Expected((Fraction(-2),), D, FIBRATION),
        }
        c1[name] = (m + 1,)
    exp["CP2"]["even"] = Expected(True, P, LISTED)
    for m in (1, 2, 3, 4):
        name = f"CP{m}xCP{m}"
        exp[name] = {
            "even": Expected(True, P if m <= 1 else T, PRODUCT if m <= 1 else "conormals sum to zero"),
            "smooth": Expected(True, T, "product of simplices"),
            "c_k": Expected(m + 1, P, PRODUCT),
            "delta": Expected(1, P, PRODUCT),
            "euler_coeff": Expected(Fraction(-1, m + 1), P, PRODUCT),
            "euler_vector": Expected(
                (Fraction(-1), Fraction(-1)), P if m == 1 else D, PRODUCT if m == 1 else HAND
            ),
        }
        c1[name] = (m + 1, m + 1)
    exp["CP2#3"] = {
        "even": Expected(True, P, LISTED),
        "smooth": Expected(True, P, LISTED),
        "c_k": Expected(1, D, HAND + "; confirmed by " + BRUTE),
        "delta": Expected(1, D, HAND + ": (1, -1, 1, -1, -1, 1) is an all-odd zero-sum kernel vector"),
        "euler_coeff": Expected(Fraction(-1), D, HAND),
    }
    exp["CP1xCP2"] = {
        "even": Expected(True, P, LISTED),
        "smooth": Expected(True, P, LISTED),
        "c_k": Expected(1, D, HAND + "; confirmed by " + BRUTE),
        "delta": Expected(2, D, HAND + "; confirmed by " + BRUTE),
        "euler_coeff": Expected(Fraction(-2), D, HAND),
        "euler_vector": Expected((Fraction(-4), Fraction(-6)), D, HAND + " with c1 = (2, 3)"),
    }
    c1["CP1xCP2"] = (2, 3)
    exp["CP1^3"] = {
        "even": Expected(True, P, LISTED),
        "smooth": Expected(True, P, LISTED),
        "c_k": Expected(2, D, HAND + "; confirmed by " + BRUTE),
        "delta": Expected(2, D, HAND + ": zero-sum kernel vectors have an even coordinate"),
        "euler_coeff": Expected(Fraction(-1), D, HAND),
        "euler_vector": Expected((Fraction(-2),) * 3, D, HAND + " with c1 = (2, 2, 2)"),
    }
    c1["CP1^3"] = (2, 2, 2)
    for name, ck, delta in (
        ("CP1x(CP2#3)", 1, 1),
        ("bundle_i", 1, 2),
        ("bundle_ii", 1, 2),
        ("bundle_iii", 1, 1),
        ("bundle_iv", 1, 1),
    ):
        exp[name] = {
            "even": Expected(True, P, LISTED),
            "smooth": Expected(True, P, LISTED),
            "c_k": Expected(ck, D, BRUTE),
            "delta": Expected(delta, D, BRUTE),
            "euler_coeff": Expected(Fraction(-delta, ck), D, BRUTE),
        }
    exp["bundle_i"]["c_k"] = Expected(1, D, HAND + ": basis (1,1,0,0,0), (-2,0,1,1,1)")
    exp["bundle_i"]["delta"] = Expected(2, D, HAND + ": zero-sum part spanned by (5,1,-2,-2,-2)")
    exp["hirzebruch_F1"] = {
        "even": Expected(False, D, "conormal sum (0, -1) has an odd entry"),
        "smooth": Expected(True, T, "one-point blow-up of the projective plane"),
        "delzant_refused": Expected(True, T, "reduction datum requires evenness"),
    }
    return exp, c1


def _build() -> dict:
    exp, c1 = _expectations()
    out = {}
    for name, N in _conormals().items():
        P = from_conormals(N, name=name)
        out[name] = CatalogEntry(name, P, exp.get(name, {}), c1.get(name))
    return out


_CATALOG = _build()

NAMES = tuple(_CATALOG)


def builtin(name: str) -> CatalogEntry:
    try:
        return _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}") from None


def entries(dim: Optional[int] = None) -> list[CatalogEntry]:
    return [e for e in _CATALOG.values() if dim is None or e.polytope.dim == dim]


def even_dim3_names() -> list[str]:
    return [e.name for e in entries(3) if e.expected.get("even") and e.expected["even"].value]


def round_trip(entry: CatalogEntry) -> bool:
    return parse_polytope(entry.dumps()) == entry.polytope


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def verify_entry(entry: CatalogEntry) -> dict:
    """Compare computed invariants with the expected ones."""
    pred = predicate_report(entry.polytope)
    actual: dict[str, Any] = {"even": pred["even"], "smooth": pred["smooth"]}
    report = None
    try:
        report = delzant_report(entry.polytope, c1=entry.c1)
    except PreconditionError as exc:
        actual["delzant_refused"] = True
        actual["delzant_error"] = str(exc)
    else:
        actual["delzant_refused"] = False
        actual.update(
            c_k=report.c_k,
            delta=report.delta,
            euler_coeff=report.euler_coeff,
            reeb_period=report.reeb_period,
        )
        if report.euler_vector is not None:
            actual["euler_vector"] = report.euler_vector
    checks = []
    for key, ex in entry.expected.items():
        got = actual.get(key)
        checks.append(
            {
                "field": key,
                "expected": _jsonable(ex.value),
                "actual": _jsonable(got),
                "ok": got == ex.value,
                "provenance": ex.provenance,
                "citation": ex.citation,
            }
        )
    if report is not None:
        ok = report.reeb_period * report.euler_coeff == -1
        checks.append(
            {
                "field": "period_times_euler",
                "expected": "-1",
                "actual": _jsonable(report.reeb_period * report.euler_coeff),
                "ok": ok,
                "provenance": "trivial",
                "citation": "period c_k/delta against coefficient -delta/c_k",
            }
        )
    return {
        "name": entry.name,
        "dim": entry.polytope.dim,
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
        "report": report.to_dict() if report is not None else None,
    }


def verify_catalog(names=None) -> dict:
    names = list(NAMES) if names is None else list(names)
    results = [verify_entry(builtin(n)) for n in names]
    return {"ok": all(r["ok"] for r in results), "entries": results}
