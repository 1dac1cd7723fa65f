"""Bounded-box census of smooth Fano polytopes in dimensions 2 and 3.

A smooth Fano polytope ``{x : <nu, x> + 1 >= 0}`` is described by its
conormals ``N``; their convex hull is a simplicial polytope whose facets are
lattice bases lying on hyperplanes ``<u, .> = 1``. Every facet can be moved
to the standard basis by GL(n, Z), so each class has a representative
containing ``e_1..e_n`` as a facet. The search grows such a representative
facet by facet across open ridges, insisting at every step that each known
facet stays a supporting hyperplane of all chosen vectors. Ridges are always
processed in a fixed order, so each representative is produced exactly once.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
from typing import Iterable, Optional

from . import kernels
from .lattice import content
from .polytope import (
    SCHEMA_VERSION,
    CanonicalForm,
    PolytopeError,
    canonical_form,
    from_conormals,
    is_compact,
    is_even,
    is_smooth,
    redundant_facets,
    vertices,
)


class CensusError(RuntimeError):
    pass


@dataclass(frozen=True)
class CensusClass:
    canonical: CanonicalForm
    facet_count: int
    even: bool
    matched_catalog_name: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "conormals": [list(v) for v in self.canonical.matrix],
            "hash": self.canonical.hash,
            "facet_count": self.facet_count,
            "even": self.even,
            "name": self.matched_catalog_name,
        }


@dataclass(frozen=True)
class CensusResult:
    dim: int
    bound_B: int
    classes: tuple[CensusClass, ...]

    @property
    def total(self) -> int:
        return len(self.classes)

    @property
    def even_total(self) -> int:
        return sum(c.even for c in self.classes)

    def class_set(self) -> frozenset:
        return frozenset(c.canonical.matrix for c in self.classes)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "census",
            "dim": self.dim,
            "bound": self.bound_B,
            "total": self.total,
            "even_total": self.even_total,
            "classes": [c.to_dict() for c in self.classes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def candidate_vectors(n: int, B: int) -> list[tuple[int, ...]]:
    """Primitive vectors of ``[-B, B]^n`` on the far side of the seed facet."""
    out = []
    for v in product(range(-B, B + 1), repeat=n):
        if any(v) and content(v) == 1 and sum(v) <= 0:
            out.append(v)
    return sorted(out)


class _Search:
    def __init__(self, n: int, B: int, max_vertices: Optional[int] = None):
        self.n = n
        self.pool = candidate_vectors(n, B)
        self.pool_set = frozenset(self.pool)
        self.max_vertices = max_vertices if max_vertices is not None else 4 * n
        self.seed = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def root(self):
        seed = frozenset(self.seed)
        facets = {seed: (1,) * self.n}
        open_ridges = {}
        for v in self.seed:
            open_ridges[seed - {v}] = v
        return (self.seed, facets, open_ridges, frozenset())

    def children(self, state):
        verts, facets, open_ridges, closed = state
        ridge = min(open_ridges, key=sorted)
        opposite = open_ridges[ridge]
        rows = sorted(ridge)
        old_normal = facets[frozenset(ridge | {opposite})]
        candidates = sorted(set(verts) | self.pool_set)
        options = kernels.ridge_extensions(
            rows,
            opposite,
            old_normal,
            list(verts),
            list(facets.values()),
            candidates,
            len(verts) < self.max_vertices,
        )
        for w, u, is_new in options:
            G = frozenset(ridge | {w})
            new_open = dict(open_ridges)
            new_closed = set(closed)
            ok = True
            for x in G:
                r = G - {x}
                if r in new_open:
                    del new_open[r]
                    new_closed.add(r)
                elif r in new_closed:
                    ok = False
                    break
                else:
                    new_open[r] = x
            if not ok:
                continue
            new_facets = dict(facets)
            new_facets[G] = tuple(u)
            new_verts = verts + (tuple(w),) if is_new else verts
            yield (new_verts, new_facets, new_open, frozenset(new_closed))

    def leaves(self, state):
        stack = [state]
        while stack:
            s = stack.pop()
            if not s[2]:
                yield tuple(sorted(s[0]))
                continue
            stack.extend(reversed(list(self.children(s))))


def _subtree_leaves(args):
    n, B, max_vertices, index = args
    search = _Search(n, B, max_vertices)
    child = list(search.children(search.root()))[index]
    return list(search.leaves(child))


def search_representatives(n: int, B: int, workers: int = 1, max_vertices: Optional[int] = None) -> list:
    """All conormal sets in the box that contain the seed facet, in search order."""
    if n not in (2, 3):
        raise ValueError("census supports dimensions 2 and 3 only")
    if B < 1:
        return []
    search = _Search(n, B, max_vertices)
    first = list(search.children(search.root()))
    if workers <= 1:
        out = []
        for child in first:
            out.extend(search.leaves(child))
        return out
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = ex.map(_subtree_leaves, [(n, B, max_vertices, i) for i in range(len(first))])
        return [leaf for part in parts for leaf in part]


def audit_class(conormals, n: int) -> None:
    """Independent check of a census representative through the polytope module."""
    P = from_conormals(conormals)
    if P.dim != n:
        raise CensusError("dimension mismatch")
    if not is_compact(P):
        raise CensusError(f"representative {conormals} is not compact")
    vs = vertices(P)
    sm = is_smooth(P, vs)
    if not sm:
        raise CensusError(f"representative {conormals} is not smooth: {sm.reason}")
    if redundant_facets(P, vs):
        raise CensusError(f"representative {conormals} has redundant inequalities")


def enumerate_smooth_fano(n: int, B: int, workers: int = 1, audit: bool = True) -> CensusResult:
    """Smooth Fano polytopes with a representative in ``[-B, B]^n``, up to GL(n, Z)."""
    if n not in (2, 3):
        raise ValueError("census supports dimensions 2 and 3 only")
    classes = {}
    for leaf in search_representatives(n, B, workers):
        cf = canonical_form(leaf)
        if cf.matrix not in classes:
            classes[cf.matrix] = cf
    out = []
    for cf in sorted(classes.values()):
        if audit:
            audit_class(cf.matrix, n)
        even = all(s % 2 == 0 for s in map(sum, zip(*cf.matrix)))
        out.append(CensusClass(cf, len(cf.matrix), even))
    return CensusResult(n, B, tuple(out))


def verify_stabilization(n: int, B: int, workers: int = 1) -> bool:
    a = enumerate_smooth_fano(n, B, workers)
    b = enumerate_smooth_fano(n, B + 1, workers)
    return a.class_set() == b.class_set()


def match_catalog(result: CensusResult, catalog: Iterable) -> CensusResult:
    """Name census classes after catalog entries with the same canonical form.

    ``catalog`` holds objects with ``name`` and ``polytope`` attributes (or
    ``(name, polytope)`` pairs). Entries of another dimension are skipped.
    """
    by_matrix = {c.canonical.matrix: i for i, c in enumerate(result.classes)}
    names: dict[int, str] = {}
    for entry in catalog:
        name, P = (entry.name, entry.polytope) if hasattr(entry, "polytope") else entry
        if P.dim != result.dim:
            continue
        try:
            key = canonical_form(P.conormals).matrix
        except PolytopeError as exc:
            raise CensusError(f"catalog entry {name!r}: {exc}") from exc
        if key not in by_matrix:
            raise CensusError(f"catalog entry {name!r} matches no census class")
        i = by_matrix[key]
        if i in names:
            raise CensusError(f"catalog entries {names[i]!r} and {name!r} match the same class")
        names[i] = name
    classes = tuple(
        replace(c, matched_catalog_name=names.get(i, c.matched_catalog_name))
        for i, c in enumerate(result.classes)
    )
    for c in classes:
        if c.even != is_even(from_conormals(c.canonical.matrix)):
            raise CensusError("even flag disagrees with the representative")
    return replace(result, classes=classes)
