"""Pure-Python implementations of the hot integer kernels.

These mirror ``_kernels.pyx`` exactly and are used whenever the compiled
extension is unavailable.
"""

from itertools import combinations, permutations


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = M
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return sum(
        (-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
        for j in range(n)
        if M[0][j]
    )


def _adjugate(M):
    n = len(M)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * _det(minor)
    return adj


def unimodular_inverse(columns):
    """Inverse of the matrix whose columns are ``columns``; ``None`` unless det is +-1."""
    M = [list(r) for r in zip(*columns)]
    det = _det(M)
    if det not in (1, -1):
        return None
    return [[det * x for x in row] for row in _adjugate(M)]


def canonical_matrix(vectors, n):
    """Lexicographically minimal sorted image of ``vectors`` over all ordered lattice bases.

    For each unordered n-subset that is a lattice basis the inverse is
    applied once; reordering the basis only permutes output coordinates.
    """
    vectors = [tuple(v) for v in vectors]
    best = None
    for combo in combinations(range(len(vectors)), n):
        inv = unimodular_inverse([vectors[i] for i in combo])
        if inv is None:
            continue
        images = [tuple(sum(r[k] * v[k] for k in range(n)) for r in inv) for v in vectors]
        for perm in permutations(range(n)):
            cand = sorted(tuple(w[p] for p in perm) for w in images)
            if best is None or cand < best:
                best = cand
    return None if best is None else tuple(best)


def facet_normal(rows):
    """Integer ``u`` with ``<u, r> = 1`` for each row, or ``None`` unless det is +-1."""
    det = _det(rows)
    if det not in (1, -1):
        return None
    return tuple(det * sum(row) for row in _adjugate(rows))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def ridge_extensions(ridge, opposite, old_normal, verts, normals, candidates, allow_new):
    """Vertices that can close ``ridge`` on the side away from ``opposite``.

    Returns ``(w, u, is_new)`` triples in candidate order, where ``u`` is the
    normal of the new facet ``ridge + [w]``. A choice survives only if every
    current vertex outside the new facet stays strictly below it, and (for a
    new vertex) ``w`` stays strictly below every known facet.
    """
    ridge = [tuple(r) for r in ridge]
    vset = set(verts)
    out = []
    for w in candidates:
        if w in ridge or w == opposite:
            continue
        is_new = w not in vset
        if is_new and (not allow_new or _dot(old_normal, w) >= 1):
            continue
        u = facet_normal(ridge + [w])
        if u is None or _dot(u, opposite) >= 1:
            continue
        if any(_dot(u, x) >= 1 for x in verts if x != w and x not in ridge):
            continue
        if is_new and any(_dot(h, w) >= 1 for h in normals):
            continue
        out.append((w, u, is_new))
    return out
