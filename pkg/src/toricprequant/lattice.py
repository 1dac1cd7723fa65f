"""Exact integer linear algebra.

Everything here works on plain Python ``int`` (arbitrary precision); matrices
are returned as tuples of tuples so they can be hashed and shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class LatticeError(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    """Validate and freeze an integer matrix (at least 1x1, rectangular)."""
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if not out or not out[0]:
        raise LatticeError("matrix must have at least one row and one column")
    width = len(out[0])
    for i, r in enumerate(out):
        if len(r) != width:
            raise LatticeError(f"row {i} has length {len(r)}, expected {width}")
        for x, raw in zip(r, rows[i]):
            if isinstance(raw, float) and raw != x:
                raise LatticeError(f"non-integer entry {raw!r} in row {i}")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*A))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in A]
    n = len(M)
    if any(len(r) != n for r in M):
        raise LatticeError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: Matrix
    D: Matrix
    V: Matrix

    def __iter__(self):
        return iter((self.U, self.D, self.V))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(len(self.D), len(self.D[0]))
        return tuple(self.D[i][i] for i in range(k) if self.D[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _select_pivot(D, t):
    best = None
    for i in range(t, len(D)):
        row = D[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return best


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivot rule: smallest absolute nonzero entry of the remaining block, ties
    broken by the lowest (row, col) index, so the output is reproducible.
    """
    A = as_matrix(A)
    m, n = len(A), len(A[0])
    D = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for M in (D, V):
            for r in M:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            rs, rd = M[src], M[dst]
            for c in range(len(rd)):
                rd[c] += q * rs[c]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            piv = _select_pivot(D, t)
            if piv is None:
                break
            _, i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        if _select_pivot(D, t) is None:
            break

    freeze = lambda M: tuple(tuple(r) for r in M)  # noqa: E731
    return SmithDecomposition(freeze(U), freeze(D), freeze(V))


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into ``[0, pivot)``. The result depends only on the lattice.
    """
    H = [list(r) for r in rows if any(r)]
    if not H:
        return ()
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        if r == len(H):
            break
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(H[i][c]), i))
            H[r], H[k] = H[k], H[r]
            done = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    done = done and H[i][c] == 0
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        r += 1
    return tuple(tuple(x) for x in H[:r] if any(x))


@dataclass(frozen=True)
class LatticeBasis:
    ambient_dim: int
    vectors: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def combination(self, coeffs: Sequence[int]) -> Vector:
        out = [0] * self.ambient_dim
        for c, b in zip(coeffs, self.vectors):
            if c:
                for i, x in enumerate(b):
                    out[i] += c * x
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        """Exact membership test for the integer span of the basis."""
        if not self.vectors:
            return not any(v)
        # Solve B^T c = v over Z through the Smith form of B^T.
        snf = smith_normal_form(transpose(self.vectors))
        w = matvec(snf.U, v)
        for i, x in enumerate(w):
            di = snf.D[i][i] if i < len(snf.D[0]) else 0
            if di == 0:
                if x:
                    return False
            elif x % di:
                return False
        return True

    def is_saturated(self) -> bool:
        if not self.vectors:
            return True
        snf = smith_normal_form(self.vectors)
        return snf.rank == len(self.vectors) and all(f == 1 for f in snf.invariant_factors)


def kernel_lattice(A: Sequence[Sequence[int]]) -> LatticeBasis:
    """Saturated basis of ``{v in Z^cols : A v = 0}`` in Hermite normal form."""
    A = as_matrix(A)
    snf = smith_normal_form(A)
    ncols = len(A[0])
    Vt = transpose(snf.V)
    basis = hermite_normal_form(Vt[snf.rank:])
    return LatticeBasis(ncols, basis)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    if not any(v):
        raise LatticeError("zero vector has no primitivity")
    return content(v) == 1


def f2_all_odd_member(basis: LatticeBasis) -> Optional[Vector]:
    """Return a lattice vector with every coordinate odd, or ``None``.

    Solves ``sum c_i b_i = (1, ..., 1)`` over GF(2) and lifts the 0/1
    coefficients back to the integers. The answer is exact: a lattice point
    is all-odd iff its reduction mod 2 is the all-ones vector.
    """
    if not basis.vectors:
        return None
    d, r = basis.ambient_dim, basis.rank
    # augmented system, one row per coordinate; columns are basis vectors mod 2
    rows = [[b[i] & 1 for b in basis.vectors] + [1] for i in range(d)]
    pivots = []
    row = 0
    for col in range(r):
        k = next((i for i in range(row, d) if rows[i][col]), None)
        if k is None:
            continue
        rows[row], rows[k] = rows[k], rows[row]
        for i in range(d):
            if i != row and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    if any(rows[i][r] for i in range(row, d)):
        return None
    coeffs = [0] * r
    for i, col in enumerate(pivots):
        coeffs[col] = rows[i][r]
    u = basis.combination(coeffs)
    if not all(x & 1 for x in u):
        raise AssertionError("GF(2) lift produced an even coordinate")
    return u
