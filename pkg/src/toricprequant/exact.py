"""Exact rational linear algebra, Fourier-Motzkin elimination and a small simplex.

Fourier-Motzkin is simple but its intermediate systems can grow doubly
exponentially with the dimension; the predicates on larger polytopes go
through :func:`nonnegative_solution` instead.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, ceil, gcd, lcm
from typing import Optional, Sequence

Q = Fraction


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Return a solution of ``A x = b`` over Q, or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is unique whenever the
    system has full column rank.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Q(x) for x in row] + [Q(rhs)] for row, rhs in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(M[i][n] != 0 for i in range(r, m)):
        return None
    x = [Q(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return tuple(x)


def rank(A: Sequence[Sequence]) -> int:
    M = [[Q(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    for c in range(len(M[0])):
        k = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r


def _normalize(coeffs, rhs):
    """Scale ``coeffs . x >= rhs`` to coprime integers (positive factor only)."""
    den = lcm(*(q.denominator for q in (*coeffs, rhs)))
    ints = [int(q * den) for q in (*coeffs, rhs)]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Q(v // g) for v in ints[:-1]), Q(ints[-1] // g)


def _pick(lo, hi):
    """Deterministic choice in ``[lo, hi]``: the integer nearest zero, else midpoint."""
    if lo is None and hi is None:
        return Q(0)
    if lo is None:
        return Q(min(0, floor(hi)))
    if hi is None:
        return Q(max(0, ceil(lo)))
    c = Q(min(max(0, ceil(lo)), floor(hi))) if ceil(lo) <= floor(hi) else None
    if c is not None and lo <= c <= hi:
        return c
    return (lo + hi) / 2


def fourier_motzkin(
    A: Sequence[Sequence], b: Sequence
) -> Optional[tuple[Fraction, ...]]:
    """Feasibility of ``A x >= b`` by Fourier-Motzkin elimination.

    Returns a feasible rational point (chosen deterministically during back
    substitution) or ``None`` when the system is infeasible.
    """
    n = len(A[0]) if A else 0
    system = {_normalize(tuple(Q(x) for x in row), Q(rhs)) for row, rhs in zip(A, b)}
    stages = []
    for k in range(n - 1, -1, -1):
        stages.append(system)
        pos, neg, rest = [], [], set()
        for a, r in system:
            if a[k] > 0:
                pos.append((a, r))
            elif a[k] < 0:
                neg.append((a, r))
            else:
                rest.add((a, r))
        for ap, rp in pos:
            for an, rn in neg:
                s, t = -an[k], ap[k]
                a = tuple(s * x + t * y for x, y in zip(ap, an))
                rest.add(_normalize(a, s * rp + t * rn))
        system = rest
    for a, r in system:
        if r > 0:
            return None
    x = [Q(0)] * n
    for k, stage in zip(range(n), reversed(stages)):
        lo = hi = None
        for a, r in stage:
            if a[k] == 0:
                continue
            val = (r - sum(a[i] * x[i] for i in range(k))) / a[k]
            if a[k] > 0:
                lo = val if lo is None else max(lo, val)
            else:
                hi = val if hi is None else min(hi, val)
        if lo is not None and hi is not None and lo > hi:
            raise AssertionError("Fourier-Motzkin back substitution failed")
        x[k] = _pick(lo, hi)
    return tuple(x)


def nonnegative_solution(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """A vertex of ``{x >= 0 : A x = b}`` or ``None`` if it is empty.

    Phase one of the simplex method on exact rationals, with Bland's rule so
    that it terminates on degenerate problems.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    # rows with b >= 0, then one artificial variable per row
    T = []
    for row, rhs in zip(A, b):
        row = [Q(x) for x in row]
        rhs = Q(rhs)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        T.append(row + [Q(0)] * m + [rhs])
    for i in range(m):
        T[i][n + i] = Q(1)
    basis = [n + i for i in range(m)]
    # objective: minimize the sum of artificials, stored as reduced costs
    cost = [Q(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            cost[j] -= T[i][j]
    for i in range(m):
        cost[n + i] = Q(0)
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        ratios = [(T[i][-1] / T[i][enter], basis[i], i) for i in range(m) if T[i][enter] > 0]
        if not ratios:  # cannot happen in phase one, the objective is bounded below
            raise AssertionError("unbounded phase-one problem")
        _, _, r = min(ratios)
        piv = T[r][enter]
        T[r] = [x / piv for x in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, T[r])]
        basis[r] = enter
    if cost[-1] != 0:
        return None
    x = [Q(0)] * (n + m)
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return tuple(x[:n])


def feasible_point(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """A point of ``{x : A x >= b}`` (``x`` free) by the simplex method, or ``None``."""
    m = len(A)
    n = len(A[0]) if m else 0
    # x = p - q, A p - A q - s = b with p, q, s >= 0
    rows = [
        [Q(x) for x in row] + [-Q(x) for x in row] + [Q(-1) if k == i else Q(0) for k in range(m)]
        for i, row in enumerate(A)
    ]
    sol = nonnegative_solution(rows, b)
    if sol is None:
        return None
    return tuple(sol[k] - sol[n + k] for k in range(n))
