# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled Smith normal form kernel.

Statement-for-statement twin of ``_snf_py.smith_with_transforms``; matrix
entries stay Python ints (arbitrary precision is mandatory), only the loop
machinery is compiled away.  Outputs must be bit-identical to the pure
backend; the test suite enforces this on random matrices.
"""

import cython

BACKEND = "cython"


def smith_with_transforms(mat):
    """See ``cechtower._snf_py.smith_with_transforms``."""
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t n = len(mat[0]) if m else 0
    cdef Py_ssize_t r, k, i, j, t, pi, pj, fix

    A = [list(row) for row in mat]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    r = min(m, n)
    k = 0
    while k < r:
        pi = -1
        pj = -1
        best = 0
        for i in range(k, m):
            row = A[i]
            for j in range(k, n):
                a = row[j]
                if a != 0:
                    if a < 0:
                        a = -a
                    if best == 0 or a < best:
                        best = a
                        pi = i
                        pj = j
            if best == 1:
                break
        if pi < 0:
            break

        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            U[k], U[pi] = U[pi], U[k]
            for t in range(m):
                rowt = Uinv[t]
                rowt[k], rowt[pi] = rowt[pi], rowt[k]
        if pj != k:
            for t in range(m):
                rowt = A[t]
                rowt[k], rowt[pj] = rowt[pj], rowt[k]
            for t in range(n):
                rowt = V[t]
                rowt[k], rowt[pj] = rowt[pj], rowt[k]
            Vinv[k], Vinv[pj] = Vinv[pj], Vinv[k]
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
            for t in range(m):
                Uinv[t][k] = -Uinv[t][k]

        a = A[k][k]
        dirty = False

        for i in range(k + 1, m):
            b = A[i][k]
            if b != 0:
                q = b // a
                if q != 0:
                    Ak = A[k]
                    Ai = A[i]
                    for t in range(k, n):
                        Ai[t] -= q * Ak[t]
                    Uk = U[k]
                    Ui = U[i]
                    for t in range(m):
                        Ui[t] -= q * Uk[t]
                    for t in range(m):
                        Uinv[t][k] += q * Uinv[t][i]
                if A[i][k] != 0:
                    dirty = True

        for j in range(k + 1, n):
            b = A[k][j]
            if b != 0:
                q = b // a
                if q != 0:
                    for t in range(k, m):
                        A[t][j] -= q * A[t][k]
                    for t in range(n):
                        V[t][j] -= q * V[t][k]
                    Vj = Vinv[j]
                    Vk = Vinv[k]
                    for t in range(n):
                        Vk[t] += q * Vj[t]
                if A[k][j] != 0:
                    dirty = True

        if dirty:
            continue

        fix = -1
        for i in range(k + 1, m):
            row = A[i]
            for j in range(k + 1, n):
                if row[j] % a != 0:
                    fix = i
                    break
            if fix >= 0:
                break
        if fix >= 0:
            Ak = A[k]
            Af = A[fix]
            for t in range(k, n):
                Ak[t] += Af[t]
            Uk = U[k]
            Uf = U[fix]
            for t in range(m):
                Uk[t] += Uf[t]
            for t in range(m):
                Uinv[t][fix] -= Uinv[t][k]
            continue

        k += 1

    return U, Uinv, A, V, Vinv
