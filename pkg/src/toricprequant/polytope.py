"""Moment polytopes ``{x : <nu_j, x> + a_j >= 0}`` and their lattice predicates.

All predicates use exact arithmetic: conormals are integer tuples and
support constants are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional, Sequence

from . import kernels
from .exact import nonnegative_solution, rank, solve_linear
from .lattice import determinant, is_primitive

SCHEMA_VERSION = 1


class PolytopeError(ValueError):
    """Invalid polytope data; ``index`` names the offending facet when known."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message if index is None else f"facet {index}: {message}")
        self.index = index


class NotCompactError(PolytopeError):
    pass


def parse_rational(value: Any) -> Fraction:
    """Parse ``"p/q"``, an integer string or an int. Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise PolytopeError(f"rational must be an exact string or integer, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if "." in s or "e" in s.lower():
            raise PolytopeError(f"rational must be written as p/q, got {value!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise PolytopeError(f"bad rational {value!r}") from exc
    raise PolytopeError(f"bad rational {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Polytope:
    """Facet data of a rational polytope.

    ``provenance`` carries metadata such as the normalization applied by
    :func:`monotone_normalize`; it does not take part in equality.
    """

    dim: int
    conormals: tuple[tuple[int, ...], ...]
    support: tuple[Fraction, ...]
    name: Optional[str] = None
    provenance: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        conormals = tuple(tuple(int(x) for x in v) for v in self.conormals)
        support = tuple(parse_rational(a) if not isinstance(a, Fraction) else a for a in self.support)
        object.__setattr__(self, "conormals", conormals)
        object.__setattr__(self, "support", support)
        if self.dim < 1:
            raise PolytopeError("dimension must be positive")
        if len(conormals) != len(support):
            raise PolytopeError(
                f"{len(conormals)} conormals but {len(support)} support constants"
            )
        seen = {}
        for j, v in enumerate(conormals):
            if len(v) != self.dim:
                raise PolytopeError(f"conormal has length {len(v)}, expected {self.dim}", j)
            if not any(v):
                raise PolytopeError("zero conormal", j)
            if not is_primitive(v):
                raise PolytopeError(f"non-primitive conormal {list(v)}", j)
            if v in seen:
                raise PolytopeError(f"duplicate conormal {list(v)} (also facet {seen[v]})", j)
            seen[v] = j

    @property
    def d(self) -> int:
        return len(self.conormals)

    def slack(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(
            sum((c * xi for c, xi in zip(v, x)), Fraction(0)) + a
            for v, a in zip(self.conormals, self.support)
        )

    def transformed(self, T: Sequence[Sequence[int]], perm: Optional[Sequence[int]] = None) -> "Polytope":
        """Apply ``nu -> T nu`` to every conormal and optionally permute facets."""
        order = list(perm) if perm is not None else list(range(self.d))
        conormals = [tuple(sum(r[k] * self.conormals[j][k] for k in range(self.dim)) for r in T) for j in order]
        return Polytope(self.dim, tuple(conormals), tuple(self.support[j] for j in order), self.name)

    def to_dict(self) -> dict:
        out = {
            "dim": self.dim,
            "conormals": [list(v) for v in self.conormals],
            "support": [format_rational(a) for a in self.support],
        }
        if self.name is not None:
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def from_conormals(conormals, support=None, name=None) -> Polytope:
    conormals = [tuple(v) for v in conormals]
    if support is None:
        support = [1] * len(conormals)
    return Polytope(len(conormals[0]), tuple(conormals), tuple(Fraction(a) for a in support), name)


def parse_polytope(document: str | dict) -> Polytope:
    """Parse the JSON polytope file format (see ``docs/formats.md``)."""
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PolytopeError(f"malformed document: {exc}") from exc
    else:
        data = document
    if not isinstance(data, dict):
        raise PolytopeError("malformed document: top level must be an object")
    unknown = set(data) - {"dim", "conormals", "support", "name"}
    if unknown:
        raise PolytopeError(f"malformed document: unknown keys {sorted(unknown)}")
    for key in ("dim", "conormals", "support"):
        if key not in data:
            raise PolytopeError(f"malformed document: missing {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise PolytopeError("malformed document: 'dim' must be a positive integer")
    conormals = data["conormals"]
    if not isinstance(conormals, list):
        raise PolytopeError("malformed document: 'conormals' must be an array")
    for j, v in enumerate(conormals):
        if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise PolytopeError("conormal must be an array of integers", j)
    support = data["support"]
    if not isinstance(support, list):
        raise PolytopeError("malformed document: 'support' must be an array")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise PolytopeError("malformed document: 'name' must be a string")
    P = Polytope(dim, tuple(tuple(v) for v in conormals), tuple(parse_rational(a) for a in support), name)
    if P.d < P.dim + 1:
        raise PolytopeError(f"{P.d} facets cannot bound a compact polytope in dimension {P.dim}")
    return P


def is_compact(P: Polytope) -> bool:
    """True iff ``{x : <nu_j, x> >= 0 for all j}`` is ``{0}``.

    By Stiemke's alternative this holds iff the conormals span and some
    strictly positive combination of them vanishes; substituting
    ``lam = 1 + mu`` turns the latter into one exact phase-one problem.
    """
    if rank(P.conormals) < P.dim:
        return False
    Nt = [list(col) for col in zip(*P.conormals)]
    rhs = [-sum(row) for row in Nt]
    return nonnegative_solution(Nt, rhs) is not None


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple[tuple[Fraction, ...], ...]
    active_facets: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.vertices)


def vertices(P: Polytope) -> VertexSet:
    if not is_compact(P):
        raise NotCompactError("vertex enumeration needs a compact polytope")
    n = P.dim
    found = {}
    for combo in combinations(range(P.d), n):
        A = [P.conormals[j] for j in combo]
        if determinant(A) == 0:
            continue
        x = solve_linear(A, [-P.support[j] for j in combo])
        slack = P.slack(x)
        if min(slack) < 0:
            continue
        if x not in found:
            found[x] = tuple(j for j, s in enumerate(slack) if s == 0)
    keys = sorted(found)
    return VertexSet(tuple(keys), tuple(found[k] for k in keys))


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    vertex: Optional[tuple[Fraction, ...]] = None
    active: Optional[tuple[int, ...]] = None
    reason: str = ""

    def __bool__(self):
        return self.smooth


def is_smooth(P: Polytope, vs: Optional[VertexSet] = None) -> SmoothnessReport:
    """Delzant test; on failure report the first offending vertex."""
    vs = vertices(P) if vs is None else vs
    if not vs.vertices:
        return SmoothnessReport(False, reason="polytope is empty")
    for x, act in zip(vs.vertices, vs.active_facets):
        if len(act) != P.dim:
            return SmoothnessReport(False, x, act, f"{len(act)} facets meet at a vertex")
        det = determinant([P.conormals[j] for j in act])
        if det not in (1, -1):
            return SmoothnessReport(False, x, act, f"vertex cone has determinant {det}")
    return SmoothnessReport(True)


def redundant_facets(P: Polytope, vs: Optional[VertexSet] = None) -> tuple[int, ...]:
    """Indices of inequalities that are tight at no vertex."""
    vs = vertices(P) if vs is None else vs
    used = set()
    for act in vs.active_facets:
        used.update(act)
    return tuple(j for j in range(P.d) if j not in used)


def monotone_normalize(P: Polytope) -> Optional[Polytope]:
    """Rescale to support constants all 1, if the polytope is monotone.

    Solves ``a_j + <nu_j, x0> = lam`` exactly. The returned polytope is
    ``(P - x0) / lam`` and records ``shift``, ``scale`` and the original
    support in ``provenance``.
    """
    A = [list(v) + [-1] for v in P.conormals]
    b = [-a for a in P.support]
    sol = solve_linear(A, b)
    if sol is None:
        return None
    x0, lam = sol[:-1], sol[-1]
    if lam <= 0:
        return None
    out = Polytope(P.dim, P.conormals, (Fraction(1),) * P.d, P.name)
    out.provenance.update(shift=x0, scale=lam, original_support=P.support)
    return out


def conormal_sum(P: Polytope) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*P.conormals))


def is_p_divisible(P: Polytope, p: int) -> bool:
    return all(s % p == 0 for s in conormal_sum(P))


def is_even(P: Polytope) -> bool:
    return is_p_divisible(P, 2)


@dataclass(frozen=True)
class CanonicalForm:
    matrix: tuple[tuple[int, ...], ...]
    hash: str

    def __lt__(self, other):
        return (len(self.matrix), self.matrix) < (len(other.matrix), other.matrix)


def canonical_form(conormals: Sequence[Sequence[int]]) -> CanonicalForm:
    """Normal form of a conormal set under GL(n, Z) and reordering.

    Every ordered lattice basis chosen among the vectors is mapped to the
    standard basis; the lexicographically least sorted image is kept.
    """
    if isinstance(conormals, Polytope):
        conormals = conormals.conormals
    vecs = [tuple(int(x) for x in v) for v in conormals]
    if not vecs:
        raise PolytopeError("empty conormal set")
    n = len(vecs[0])
    if rank(vecs) < n:
        raise PolytopeError("conormals do not span")
    mat = kernels.canonical_matrix(vecs, n)
    if mat is None:
        raise PolytopeError("no lattice basis among the conormals")
    digest = hashlib.sha256(json.dumps([list(r) for r in mat]).encode()).hexdigest()[:16]
    return CanonicalForm(mat, digest)


def predicate_report(P: Polytope) -> dict:
    """Compactness, smoothness, monotonicity and evenness in one pass."""
    compact = is_compact(P)
    out: dict = {"compact": compact, "smooth": False, "irredundant": False}
    if compact:
        vs = vertices(P)
        sm = is_smooth(P, vs)
        out["smooth"] = sm.smooth
        if not sm.smooth:
            out["smooth_failure"] = {
                "reason": sm.reason,
                "vertex": [format_rational(c) for c in sm.vertex] if sm.vertex else None,
                "active_facets": list(sm.active) if sm.active else None,
            }
        out["irredundant"] = not redundant_facets(P, vs)
        out["vertex_count"] = len(vs)
    norm = monotone_normalize(P)
    out["monotone"] = norm is not None
    if norm is not None:
        out["monotone_scale"] = format_rational(norm.provenance["scale"])
        out["monotone_shift"] = [format_rational(c) for c in norm.provenance["shift"]]
    out["even"] = is_even(P)
    out["conormal_sum"] = list(conormal_sum(P))
    return out


def with_name(P: Polytope, name: str) -> Polytope:
    return replace(P, name=name)
