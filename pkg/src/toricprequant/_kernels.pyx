# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels for the census search (dimensions 1-3).

Same API and results as ``_pykernels``; other dimensions are delegated to it.
Coordinates are small, so 64-bit arithmetic cannot overflow here.
"""

from libc.stdlib cimport malloc, free

from . import _pykernels

cdef enum:
    MAXN = 3


cdef long long det_n(long long[MAXN][MAXN] M, int n) noexcept nogil:
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


cdef void adjugate_n(long long[MAXN][MAXN] M, int n, long long[MAXN][MAXN] A) noexcept nogil:
    # A[j][i] = cofactor(i, j)
    if n == 1:
        A[0][0] = 1
    elif n == 2:
        A[0][0] = M[1][1]
        A[0][1] = -M[0][1]
        A[1][0] = -M[1][0]
        A[1][1] = M[0][0]
    else:
        A[0][0] = M[1][1] * M[2][2] - M[1][2] * M[2][1]
        A[0][1] = M[0][2] * M[2][1] - M[0][1] * M[2][2]
        A[0][2] = M[0][1] * M[1][2] - M[0][2] * M[1][1]
        A[1][0] = M[1][2] * M[2][0] - M[1][0] * M[2][2]
        A[1][1] = M[0][0] * M[2][2] - M[0][2] * M[2][0]
        A[1][2] = M[0][2] * M[1][0] - M[0][0] * M[1][2]
        A[2][0] = M[1][0] * M[2][1] - M[1][1] * M[2][0]
        A[2][1] = M[0][1] * M[2][0] - M[0][0] * M[2][1]
        A[2][2] = M[0][0] * M[1][1] - M[0][1] * M[1][0]


cdef long long* to_array(list vecs, int n) except NULL:
    cdef int m = len(vecs)
    cdef long long* out = <long long*> malloc((m * n + 1) * sizeof(long long))
    if out == NULL:
        raise MemoryError()
    cdef int i, k
    for i in range(m):
        v = vecs[i]
        for k in range(n):
            out[i * n + k] = v[k]
    return out


cdef inline long long dot(long long* a, long long* b, int n) noexcept nogil:
    cdef long long s = 0
    cdef int k
    for k in range(n):
        s += a[k] * b[k]
    return s


cdef inline bint same(long long* a, long long* b, int n) noexcept nogil:
    cdef int k
    for k in range(n):
        if a[k] != b[k]:
            return False
    return True


def ridge_extensions(ridge, opposite, old_normal, verts, normals, candidates, allow_new):
    cdef int n = len(opposite)
    if n < 1 or n > MAXN:
        return _pykernels.ridge_extensions(ridge, opposite, old_normal, verts, normals, candidates, allow_new)
    cdef list R = [tuple(row) for row in ridge]
    cdef list V = list(verts)
    cdef list H = list(normals)
    cdef list C = list(candidates)
    cdef int nr = len(R), nv = len(V), nh = len(H), nc = len(C)
    cdef long long* r = to_array(R, n)
    cdef long long* v = to_array(V, n)
    cdef long long* h = to_array(H, n)
    cdef long long* c = to_array(C, n)
    cdef long long* opp = to_array([tuple(opposite)], n)
    cdef long long* old = to_array([tuple(old_normal)], n)
    cdef long long[MAXN][MAXN] M
    cdef long long[MAXN][MAXN] A
    cdef long long[MAXN] u
    cdef long long det
    cdef int i, j, k
    cdef bint is_new, ok, skip
    cdef bint can_add = allow_new
    cdef long long* w
    cdef long long* x
    out = []
    try:
        for i in range(nc):
            w = c + i * n
            skip = same(w, opp, n)
            for j in range(nr):
                if same(w, r + j * n, n):
                    skip = True
            if skip:
                continue
            is_new = True
            for j in range(nv):
                if same(w, v + j * n, n):
                    is_new = False
                    break
            if is_new and (not can_add or dot(old, w, n) >= 1):
                continue
            for j in range(nr):
                for k in range(n):
                    M[j][k] = r[j * n + k]
            for k in range(n):
                M[nr][k] = w[k]
            det = det_n(M, n)
            if det != 1 and det != -1:
                continue
            adjugate_n(M, n, A)
            for j in range(n):
                u[j] = 0
                for k in range(n):
                    u[j] += A[j][k]
                u[j] *= det
            if dot(u, opp, n) >= 1:
                continue
            ok = True
            for j in range(nv):
                x = v + j * n
                if same(x, w, n):
                    continue
                skip = False
                for k in range(nr):
                    if same(x, r + k * n, n):
                        skip = True
                        break
                if not skip and dot(u, x, n) >= 1:
                    ok = False
                    break
            if ok and is_new:
                for j in range(nh):
                    if dot(h + j * n, w, n) >= 1:
                        ok = False
                        break
            if ok:
                out.append((C[i], tuple([u[k] for k in range(n)]), is_new))
    finally:
        free(r); free(v); free(h); free(c); free(opp); free(old)
    return out


cdef int cmp_rows(long long* a, long long* b, int n) noexcept nogil:
    cdef int k
    for k in range(n):
        if a[k] < b[k]:
            return -1
        if a[k] > b[k]:
            return 1
    return 0


cdef void sort_rows(long long* rows, int m, int n) noexcept nogil:
    # insertion sort; m is a facet count
    cdef int i, j, k
    cdef long long tmp[MAXN]
    for i in range(1, m):
        for k in range(n):
            tmp[k] = rows[i * n + k]
        j = i - 1
        while j >= 0 and cmp_rows(rows + j * n, tmp, n) > 0:
            for k in range(n):
                rows[(j + 1) * n + k] = rows[j * n + k]
            j -= 1
        for k in range(n):
            rows[(j + 1) * n + k] = tmp[k]


cdef int cmp_mats(long long* a, long long* b, int len_) noexcept nogil:
    cdef int k
    for k in range(len_):
        if a[k] < b[k]:
            return -1
        if a[k] > b[k]:
            return 1
    return 0


cdef int PERMS3[6][3]
PERMS3[0][:] = [0, 1, 2]
PERMS3[1][:] = [0, 2, 1]
PERMS3[2][:] = [1, 0, 2]
PERMS3[3][:] = [1, 2, 0]
PERMS3[4][:] = [2, 0, 1]
PERMS3[5][:] = [2, 1, 0]
cdef int PERMS2[2][3]
PERMS2[0][:] = [0, 1, 0]
PERMS2[1][:] = [1, 0, 0]


def canonical_matrix(vectors, n):
    cdef int nn = n
    if nn < 1 or nn > MAXN:
        return _pykernels.canonical_matrix(vectors, n)
    cdef list vecs = [tuple(x) for x in vectors]
    cdef int m = len(vecs)
    if m < nn:
        return None
    cdef long long* vs = to_array(vecs, nn)
    cdef long long* img = <long long*> malloc((m * nn + 1) * sizeof(long long))
    cdef long long* cand = <long long*> malloc((m * nn + 1) * sizeof(long long))
    cdef long long* best = <long long*> malloc((m * nn + 1) * sizeof(long long))
    cdef bint have = False
    cdef long long[MAXN][MAXN] M
    cdef long long[MAXN][MAXN] A
    cdef long long det
    cdef int idx[MAXN]
    cdef int i, j, k, p, nperm
    cdef int* perm
    nperm = 1 if nn == 1 else (2 if nn == 2 else 6)
    try:
        for k in range(nn):
            idx[k] = k
        while True:
            # columns of M are the chosen vectors
            for i in range(nn):
                for k in range(nn):
                    M[k][i] = vs[idx[i] * nn + k]
            det = det_n(M, nn)
            if det == 1 or det == -1:
                adjugate_n(M, nn, A)
                for j in range(m):
                    for i in range(nn):
                        img[j * nn + i] = 0
                        for k in range(nn):
                            img[j * nn + i] += det * A[i][k] * vs[j * nn + k]
                for p in range(nperm):
                    if nn == 3:
                        perm = &PERMS3[p][0]
                    elif nn == 2:
                        perm = &PERMS2[p][0]
                    else:
                        perm = &idx[0]
                    for j in range(m):
                        for i in range(nn):
                            cand[j * nn + i] = img[j * nn + (perm[i] if nn > 1 else 0)]
                    sort_rows(cand, m, nn)
                    if not have or cmp_mats(cand, best, m * nn) < 0:
                        for j in range(m * nn):
                            best[j] = cand[j]
                        have = True
            # next combination
            i = nn - 1
            while i >= 0 and idx[i] == m - nn + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for j in range(i + 1, nn):
                idx[j] = idx[j - 1] + 1
        if not have:
            return None
        return tuple(tuple([best[j * nn + k] for k in range(nn)]) for j in range(m))
    finally:
        free(vs); free(img); free(cand); free(best)
