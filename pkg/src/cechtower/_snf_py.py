"""Pure-Python Smith normal form kernel.

This is the hot loop of the whole package: every kernel/image/quotient
computation reduces to a call into ``smith_with_transforms``.  The compiled
twin in ``_snf_cy.pyx`` implements the identical algorithm statement by
statement; ``_kernels`` picks whichever is importable.  Both operate on
plain Python ints, so intermediate entries may grow without bound
(arbitrary precision is required, not optional).

Algorithm: classic row/column reduction.  The pivot is always the
smallest-absolute-value nonzero entry of the working submatrix, ties broken
by row-major position; this bounds intermediate growth and makes the output
deterministic.  Divisibility of later diagonal entries is enforced by the
usual row-addition trick, so the diagonal comes out as an invariant-factor
chain in a single pass.

BACKEND identifies the implementation ("python" here, "cython" in the twin).
"""

BACKEND = "python"


def smith_with_transforms(mat):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Takes a list of m rows (each a list of n ints) and returns
    ``(U, Uinv, D, V, Vinv)`` as lists of lists with

        U * mat * V == D,    U * Uinv == I_m,    V * Vinv == I_n,

    where D is diagonal, non-negative, and each diagonal entry divides the
    next.  U and V are unimodular (|det| == 1).  Total on every matrix,
    including ones with zero rows or columns.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    A = [list(row) for row in mat]

    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    r = min(m, n)
    k = 0
    while k < r:
        # Pivot: smallest |nonzero| in A[k:, k:], row-major ties.
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
            break  # remaining submatrix is zero

        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            U[k], U[pi] = U[pi], U[k]
            # Uinv picks up the inverse swap on columns.
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

        # Clear column k below the pivot (floor quotients leave remainders
        # in [0, a), so min |nonzero| strictly decreases when not clean).
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

        # Clear row k right of the pivot.
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
            continue  # re-pick the pivot among the smaller remainders

        # Pivot row/column clean.  Enforce the divisor chain: the pivot must
        # divide every entry of the remaining submatrix.
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
            # Row addition exposes the non-divisible entry in row k; the
            # next pass shrinks the pivot to a proper divisor of a.
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
