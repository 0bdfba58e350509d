"""Exact integer linear algebra on top of the SNF kernel.

Everything here works with plain Python ints: matrices are lists of rows,
lattices are handled through generator/basis column vectors in some Z^n.
Subgroups of a finitely generated abelian group with coordinate orders
``o`` are represented by integer lattices containing the relation lattice
spanned by ``o_i * e_i``; quotients of such lattices are turned into
invariant-factor presentations by ``present_quotient``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from cechtower._kernels import smith_with_transforms
from cechtower.errors import VerificationError

Vec = list[int]
Mat = list[list[int]]


def identity_matrix(n: int) -> Mat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m: int, n: int) -> Mat:
    return [[0] * n for _ in range(m)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Mat:
    m = len(A)
    k = len(A[0]) if m else 0
    n = len(B[0]) if B else 0
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    Oi[j] += a * Bt[j]
    return out


def mat_vec(A: Sequence[Sequence[int]], x: Sequence[int]) -> Vec:
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, x):
            if a and b:
                s += a * b
        out.append(s)
    return out


def columns_to_matrix(cols: Sequence[Sequence[int]], n: int) -> Mat:
    return [[col[i] for col in cols] for i in range(n)]


def matrix_columns(A: Sequence[Sequence[int]]) -> list[Vec]:
    m = len(A)
    n = len(A[0]) if m else 0
    return [[A[i][j] for i in range(m)] for j in range(n)]


def is_zero_matrix(A: Sequence[Sequence[int]]) -> bool:
    return all(all(x == 0 for x in row) for row in A)


@dataclass(frozen=True)
class SnfResult:
    """U*A*V == D with tracked inverses; diag is the diagonal of D."""

    U: Mat
    Uinv: Mat
    D: Mat
    V: Mat
    Vinv: Mat
    m: int
    n: int
    diag: tuple[int, ...]
    rank: int


def snf(A: Sequence[Sequence[int]], m: Optional[int] = None, n: Optional[int] = None) -> SnfResult:
    if m is None:
        m = len(A)
    if n is None:
        n = len(A[0]) if m else 0
    U, Uinv, D, V, Vinv = smith_with_transforms([list(row) for row in A] if m else [])
    if not m:
        D = []
        V = identity_matrix(n)
        Vinv = identity_matrix(n)
    diag = tuple(D[i][i] for i in range(min(m, n)))
    rank = sum(1 for d in diag if d != 0)
    return SnfResult(U, Uinv, D, V, Vinv, m, n, diag, rank)


def solve_linear(res: SnfResult, y: Sequence[int]) -> Optional[Vec]:
    """One solution of A x = y over Z (zero homogeneous part), or None."""
    u = mat_vec(res.U, y)
    z = [0] * res.n
    for i in range(res.m):
        if i < res.rank:
            d = res.diag[i]
            if u[i] % d != 0:
                return None
            z[i] = u[i] // d
        elif u[i] != 0:
            return None
    return mat_vec(res.V, z)


def kernel_columns(res: SnfResult) -> list[Vec]:
    """Basis of {x : A x = 0}: the V-columns past the rank."""
    return [[res.V[i][j] for i in range(res.n)] for j in range(res.rank, res.n)]


def relation_columns(orders: Sequence[int]) -> list[Vec]:
    """Generators o_i * e_i of the relation lattice (finite-order coords only)."""
    n = len(orders)
    cols = []
    for i, o in enumerate(orders):
        if o:
            col = [0] * n
            col[i] = o
            cols.append(col)
    return cols


class Lattice:
    """A sublattice of Z^n, reduced to a canonical basis via SNF.

    The basis is the deterministic function of the generator list produced
    by the SNF transforms, so equal generator lists give equal bases.
    """

    def __init__(self, n: int, gens: Sequence[Sequence[int]]):
        self.n = n
        gens = [list(g) for g in gens]
        if gens:
            res = snf(columns_to_matrix(gens, n), n, len(gens))
            basis = []
            for i in range(res.rank):
                d = res.diag[i]
                basis.append([d * res.Uinv[t][i] for t in range(n)])
            self.basis = basis
        else:
            self.basis = []
        self._solver: Optional[SnfResult] = None

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _solve_res(self) -> SnfResult:
        if self._solver is None:
            self._solver = snf(columns_to_matrix(self.basis, self.n), self.n, len(self.basis))
        return self._solver

    def coords_of(self, v: Sequence[int]) -> Optional[Vec]:
        """Coefficients of v in the basis, or None when v is outside."""
        if not self.basis:
            return [] if all(x == 0 for x in v) else None
        return solve_linear(self._solve_res(), v)

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coords_of(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def first_missing(self, gens: Sequence[Sequence[int]]) -> Optional[Vec]:
        for g in gens:
            if g not in self:
                return list(g)
        return None


def kernel_lattice_gens(matrix: Sequence[Sequence[int]], target_orders: Sequence[int],
                        n: int) -> list[Vec]:
    """Generators of {x in Z^n : M x lies in the relation lattice of target}."""
    m = len(target_orders)
    rel = relation_columns(target_orders)
    width = n + len(rel)
    W = [[0] * width for _ in range(m)]
    for i in range(m):
        row = matrix[i] if matrix else []
        for j in range(n):
            W[i][j] = row[j]
    for j, col in enumerate(rel):
        for i in range(m):
            W[i][n + j] = -col[i]
    res = snf(W, m, width)
    return [col[:n] for col in kernel_columns(res)]


def solve_mod(matrix: Sequence[Sequence[int]], target_orders: Sequence[int],
              y: Sequence[int], n: int,
              snf_cache: Optional[SnfResult] = None) -> Optional[Vec]:
    """One x with M x == y modulo the target relations, or None.

    The caller may pass a cached SNF of the augmented matrix [M | -R]
    (as produced by :func:`augmented_snf`) to amortize repeated solves.
    """
    res = snf_cache if snf_cache is not None else augmented_snf(matrix, target_orders, n)
    w = solve_linear(res, y)
    if w is None:
        return None
    return w[:n]


def augmented_snf(matrix: Sequence[Sequence[int]], target_orders: Sequence[int],
                  n: int) -> SnfResult:
    m = len(target_orders)
    rel = relation_columns(target_orders)
    width = n + len(rel)
    W = [[0] * width for _ in range(m)]
    for i in range(m):
        row = matrix[i] if matrix else []
        for j in range(n):
            W[i][j] = row[j]
    for j, col in enumerate(rel):
        for i in range(m):
            W[i][n + j] = -col[i]
    return snf(W, m, width)


def lattice_preimage_gens(map_cols: Sequence[Sequence[int]], m: int,
                          w_gens: Sequence[Sequence[int]]) -> list[Vec]:
    """Generators of {y in Z^g : sum_j y_j * col_j lies in lattice(w_gens)}.

    ``map_cols`` are g column vectors in Z^m.  Computed as the projection
    of the kernel of the block matrix [cols | -W].
    """
    g = len(map_cols)
    w = [list(v) for v in w_gens]
    width = g + len(w)
    W = [[0] * width for _ in range(m)]
    for j, col in enumerate(map_cols):
        for i in range(m):
            W[i][j] = col[i]
    for j, col in enumerate(w):
        for i in range(m):
            W[i][g + j] = -col[i]
    res = snf(W, m, width)
    return [col[:g] for col in kernel_columns(res)]


def lattice_intersection_gens(n: int, gens_a: Sequence[Sequence[int]],
                              gens_b: Sequence[Sequence[int]]) -> list[Vec]:
    """Generators of the intersection of two lattices in Z^n."""
    a = [list(g) for g in gens_a]
    b = [list(g) for g in gens_b]
    if not a or not b:
        return []
    W = [[0] * (len(a) + len(b)) for _ in range(n)]
    for j, col in enumerate(a):
        for i in range(n):
            W[i][j] = col[i]
    for j, col in enumerate(b):
        for i in range(n):
            W[i][len(a) + j] = -col[i]
    res = snf(W, n, len(a) + len(b))
    out = []
    for col in kernel_columns(res):
        coeffs = col[: len(a)]
        vec = [0] * n
        for j, c in enumerate(coeffs):
            if c:
                gj = a[j]
                for i in range(n):
                    vec[i] += c * gj[i]
        out.append(vec)
    return out


@dataclass
class Presentation:
    """Invariant-factor presentation of S/T for lattices T <= S <= Z^n.

    torsion/free_rank describe the quotient; ``lift_cols[k]`` is an ambient
    vector mapping onto the k-th generator (torsion generators first, then
    free ones); ``project`` sends any ambient vector inside S to normalized
    quotient coordinates.
    """

    n: int
    torsion: tuple[int, ...]
    free_rank: int
    lift_cols: list[Vec]
    project: Callable[[Sequence[int]], Vec] = field(repr=False)


def present_quotient(n: int, s_gens: Sequence[Sequence[int]],
                     t_gens: Sequence[Sequence[int]]) -> Presentation:
    """Present the quotient of lattice(s_gens) by lattice(t_gens)."""
    S = Lattice(n, s_gens)
    B = S.basis
    s = len(B)
    cols = []
    for t in t_gens:
        c = S.coords_of(t)
        if c is None:
            raise VerificationError("denominator lattice is not contained in the numerator")
        cols.append(c)
    res = snf(columns_to_matrix(cols, s), s, len(cols))
    kept_torsion = [i for i in range(res.rank) if res.diag[i] > 1]
    free_idx = list(range(res.rank, s))
    torsion = tuple(res.diag[i] for i in kept_torsion)
    kept = kept_torsion + free_idx
    orders = [res.diag[i] for i in kept_torsion] + [0] * len(free_idx)

    lift_cols = []
    for i in kept:
        z = [res.Uinv[t][i] for t in range(s)]
        amb = [0] * n
        for t, zt in enumerate(z):
            if zt:
                bt = B[t]
                for j in range(n):
                    amb[j] += zt * bt[j]
        lift_cols.append(amb)

    U = res.U

    def project(v: Sequence[int]) -> Vec:
        c = S.coords_of(v)
        if c is None:
            raise VerificationError("vector outside the presented subgroup")
        out = []
        for pos, i in enumerate(kept):
            y = 0
            Ui = U[i]
            for t in range(s):
                if Ui[t] and c[t]:
                    y += Ui[t] * c[t]
            o = orders[pos]
            out.append(y % o if o else y)
        return out

    return Presentation(n, torsion, len(free_idx), lift_cols, project)
