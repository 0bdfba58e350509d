"""Finite groups by Cayley table, central extensions, and the obstruction
to lifting transition data through them.

A transition cocycle assigns quotient-group elements to the edges of a
site, multiplicatively compatible on triangles.  Lifting it edge by edge
through a central extension and measuring the failure on each triangle
yields a 2-cochain with values in the (abelian) kernel; centrality makes
it a Cech 2-cocycle, and its class is the obstruction to finding a lift
that is itself a transition cocycle.  ``brute_force_lift`` is the
independent oracle for that claim: it searches every kernel twist of the
canonical lift.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from cechtower.abelian import FgAbGroup, GroupElement
from cechtower.cochain import (
    Cochain,
    CohomologyClass,
    SimplicialComplex,
    cech_complex,
    class_of,
    coboundary,
    cochain_from_values,
)
from cechtower.errors import BudgetExceededError, ValidationError, VerificationError

ASSOCIATIVITY_BUDGET = 1 << 21  # caps order**3 in the table check
LIFT_SEARCH_BUDGET = 1 << 20


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication table over element indices 0..order-1.

    All group laws are checked exhaustively at construction; the
    associativity scan is cubic in the order and budget-guarded.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        m = self.order
        if m <= 0:
            raise ValidationError("group order must be positive")
        if m ** 3 > ASSOCIATIVITY_BUDGET:
            raise BudgetExceededError(
                f"refusing to check associativity for order {m} "
                f"({m ** 3} triples)")
        if len(self.table) != m or any(len(r) != m for r in self.table):
            raise ValidationError("multiplication table must be order x order")
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                if not 0 <= v < m:
                    raise ValidationError(f"table entry ({i},{j}) out of range")
        if not 0 <= self.identity < m:
            raise ValidationError("identity index out of range")
        e = self.identity
        for g in range(m):
            if self.table[e][g] != g or self.table[g][e] != g:
                raise ValidationError(f"identity law fails at element {g}")
        inverse = [None] * m
        for g in range(m):
            for h in range(m):
                if self.table[g][h] == e and self.table[h][g] == e:
                    inverse[g] = h
                    break
            if inverse[g] is None:
                raise ValidationError(f"element {g} has no inverse")
        for a in range(m):
            for b in range(m):
                ab = self.table[a][b]
                for c in range(m):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValidationError(
                            f"associativity fails at triple ({a},{b},{c})")
        object.__setattr__(self, "inverse", tuple(inverse))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))


def cyclic_table(m: int) -> FiniteGroup:
    return FiniteGroup(m, tuple(tuple((a + b) % m for b in range(m))
                                for a in range(m)), 0)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pair (a, b) gets index a * h.order + b."""
    m, n = g.order, h.order
    table = [[0] * (m * n) for _ in range(m * n)]
    for a1 in range(m):
        for b1 in range(n):
            for a2 in range(m):
                for b2 in range(n):
                    table[a1 * n + b1][a2 * n + b2] = (
                        g.table[a1][a2] * n + h.table[b1][b2])
    return FiniteGroup(m * n, tuple(tuple(r) for r in table),
                       g.identity * n + h.identity)


def dihedral_group(n: int) -> FiniteGroup:
    """Order 2n: indices 0..n-1 are rotations r^i, n..2n-1 are r^i s."""
    if n < 1:
        raise ValidationError("dihedral parameter must be >= 1")
    m = 2 * n

    def mul(x, y):
        i, a = x % n, x // n
        j, b = y % n, y // n
        if a == 0:
            return ((i + j) % n) + n * b
        # reflections conjugate rotations: (r^i s)(r^j ...) = r^{i-j} s ...
        return ((i - j) % n) + n * (1 - b)

    table = tuple(tuple(mul(x, y) for y in range(m)) for x in range(m))
    return FiniteGroup(m, table, 0)


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of {0..n-1} in lexicographic order, composed left-first:
    (p*q)(i) = p[q[i]]."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms)
        for p in perms)
    return FiniteGroup(len(perms), table, index[tuple(range(n))])


def abelian_element_index(g: FgAbGroup, el: GroupElement) -> int:
    """Position of an element in the mixed-radix enumeration order of
    FgAbGroup.elements() (last coordinate varies fastest)."""
    idx = 0
    for c, d in zip(el.coords, g.torsion):
        idx = idx * d + c
    return idx


def abelian_element_from_index(g: FgAbGroup, idx: int) -> GroupElement:
    coords = []
    for d in reversed(g.torsion):
        coords.append(idx % d)
        idx //= d
    return GroupElement(g, tuple(reversed(coords)))


def group_from_abelian(g: FgAbGroup) -> FiniteGroup:
    """Cayley-table form of a finite abelian group, element order matching
    ``FgAbGroup.elements()``."""
    if g.free_rank:
        raise ValidationError("only finite groups have Cayley tables")
    els = list(g.elements())
    table = tuple(
        tuple(abelian_element_index(g, a + b) for b in els) for a in els)
    return FiniteGroup(len(els), table, 0)


@dataclass(frozen=True)
class CentralExtension:
    """kernel_elements[k] is the image in G of the k-th element of the
    abelian kernel group (enumeration order of FgAbGroup.elements())."""

    group: FiniteGroup
    kernel_group: FgAbGroup
    kernel_elements: tuple[int, ...]
    quotient: FiniteGroup
    projection: tuple[int, ...]

    def __post_init__(self):
        g, q = self.group, self.quotient
        lab = self.kernel_group
        ke = self.kernel_elements
        if lab.free_rank:
            raise ValidationError("the kernel must be a finite group")
        size = lab.order()
        if len(ke) != size:
            raise ValidationError(
                f"kernel enumeration has {len(ke)} entries for a group of order {size}")
        if len(set(ke)) != size:
            raise ValidationError("kernel elements are not distinct in G")
        for v in ke:
            if not 0 <= v < g.order:
                raise ValidationError(f"kernel element index {v} out of range")
        els = list(lab.elements())
        index = {el.coords: i for i, el in enumerate(els)}
        if ke[index[lab.zero().coords]] != g.identity:
            raise ValidationError("the kernel's zero must map to the identity of G")
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                if g.table[ke[i]][ke[j]] != ke[index[(a + b).coords]]:
                    raise ValidationError(
                        f"kernel embedding is not a homomorphism at pair ({i},{j})")
        for v in ke:
            for x in range(g.order):
                if g.table[v][x] != g.table[x][v]:
                    raise ValidationError(
                        f"kernel is not central: elements {v} and {x} do not commute")
        if len(self.projection) != g.order:
            raise ValidationError("projection must assign a quotient element to "
                                  "every group element")
        for x, v in enumerate(self.projection):
            if not 0 <= v < q.order:
                raise ValidationError(f"projection of element {x} out of range")
        for a in range(g.order):
            for b in range(g.order):
                if self.projection[g.table[a][b]] != \
                        q.table[self.projection[a]][self.projection[b]]:
                    raise ValidationError(
                        f"projection is not a homomorphism at pair ({a},{b})")
        if set(self.projection) != set(range(q.order)):
            raise ValidationError("projection is not surjective")
        kernel_set = {x for x in range(g.order)
                      if self.projection[x] == q.identity}
        if kernel_set != set(ke):
            raise ValidationError(
                "kernel of the projection differs from the embedded kernel group")

    def section(self) -> tuple[int, ...]:
        """Canonical set-section of the projection: the lowest G-index in
        each fiber, except that the identity lifts to the identity."""
        sec = [None] * self.quotient.order
        for x in range(self.group.order):
            qx = self.projection[x]
            if sec[qx] is None:
                sec[qx] = x
        sec[self.quotient.identity] = self.group.identity
        return tuple(sec)

    def kernel_index_of(self, g_index: int) -> int:
        """Position in kernel_elements of a G-element lying in the kernel."""
        try:
            return self.kernel_elements.index(g_index)
        except ValueError:
            raise VerificationError(
                f"group element {g_index} is outside the central kernel") from None


def validate_extension(g: FiniteGroup, kernel_group: FgAbGroup,
                       kernel_elements: Sequence[int], projection: Sequence[int],
                       q: FiniteGroup) -> CentralExtension:
    return CentralExtension(g, kernel_group, tuple(kernel_elements),
                            q, tuple(projection))


@dataclass(frozen=True)
class TransitionCocycle:
    """Quotient-valued edge labels with the triangle law g_ij g_jk = g_ik.

    ``values[e]`` is the label of the e-th edge in the site's lexicographic
    edge order (the i<j orientation; the reverse orientation is the
    inverse and is never stored).
    """

    site: SimplicialComplex
    quotient: FiniteGroup
    values: tuple[int, ...]

    def __post_init__(self):
        edges = self.site.cells(1)
        if len(self.values) != len(edges):
            raise ValidationError(
                f"need one label per edge: got {len(self.values)}, "
                f"site has {len(edges)}")
        for e, v in enumerate(self.values):
            if not 0 <= v < self.quotient.order:
                raise ValidationError(f"label on edge {edges[e]} out of range")
        for tri in self.site.cells(2):
            i, j, k = tri
            gij = self.value_on(i, j)
            gjk = self.value_on(j, k)
            gik = self.value_on(i, k)
            if self.quotient.table[gij][gjk] != gik:
                raise ValidationError(f"cocycle law fails on triangle {tri}")

    def value_on(self, i: int, j: int) -> int:
        if i < j:
            return self.values[self.site.cell_index(1, (i, j))]
        return self.quotient.inv(self.values[self.site.cell_index(1, (j, i))])


def transition_from_values(site: SimplicialComplex, quotient: FiniteGroup,
                           labels: Mapping[tuple[int, int], int]) -> TransitionCocycle:
    edges = site.cells(1)
    vals = []
    for e in edges:
        if e not in labels:
            raise ValidationError(f"missing label for edge {e}")
        vals.append(labels[e])
    extra = set(map(tuple, labels)) - set(edges)
    if extra:
        raise ValidationError(f"labels on non-edges: {sorted(extra)}")
    return TransitionCocycle(site, quotient, tuple(vals))


def lifting_obstruction(t: TransitionCocycle, ext: CentralExtension,
                        section: Optional[Sequence[int]] = None
                        ) -> tuple[Cochain, CohomologyClass]:
    """Kernel-valued triangle defect of the lifted transition data.

    Lifts each edge label through the chosen set-section (canonical by
    default) and measures c_ijk = lift(ik)^{-1} lift(ij) lift(jk) on every
    triangle.  The result is checked to be a 2-cocycle and returned with
    its class in H^2 of the site with kernel coefficients.
    """
    if t.quotient != ext.quotient:
        raise ValidationError("transition cocycle and extension have different "
                              "quotient groups")
    g = ext.group
    sec = ext.section() if section is None else tuple(section)
    if len(sec) != ext.quotient.order:
        raise ValidationError("section must assign a lift to every quotient element")
    for qi, x in enumerate(sec):
        if ext.projection[x] != qi:
            raise ValidationError(f"section does not lift quotient element {qi}")

    site = t.site
    lab = ext.kernel_group
    comp = cech_complex(site, lab)
    values = {}
    for tri in site.cells(2):
        i, j, k = tri
        lifted_ij = sec[t.value_on(i, j)]
        lifted_jk = sec[t.value_on(j, k)]
        lifted_ik = sec[t.value_on(i, k)]
        defect = g.mul(g.mul(g.inv(lifted_ik), lifted_ij), lifted_jk)
        if ext.projection[defect] != ext.quotient.identity:
            raise VerificationError(f"triangle defect on {tri} escapes the kernel")
        el = abelian_element_from_index(lab, ext.kernel_index_of(defect))
        values[tri] = el.coords
    cochain = cochain_from_values(comp, 2, values)
    if not coboundary(cochain).is_zero:
        raise VerificationError("lifting defect is not a 2-cocycle")
    return cochain, class_of(comp, cochain)


def brute_force_lift(t: TransitionCocycle, ext: CentralExtension,
                     budget: int = LIFT_SEARCH_BUDGET
                     ) -> Optional[dict[tuple[int, int], int]]:
    """Exhaustive search for a G-valued transition cocycle lifting t.

    Tries every per-edge kernel twist of the canonical lift, in the
    deterministic enumeration order of the kernel group.  Returns the
    first valid lift as an edge -> G-index mapping, or None when the
    search space is exhausted.
    """
    if t.quotient != ext.quotient:
        raise ValidationError("transition cocycle and extension have different "
                              "quotient groups")
    site = t.site
    edges = site.cells(1)
    n_edges = len(edges)
    ksize = len(ext.kernel_elements)
    states = ksize ** n_edges
    if states > budget:
        raise BudgetExceededError(
            f"lift search needs {states} states, budget is {budget}")

    g = ext.group
    sec = ext.section()
    base = [sec[t.values[e]] for e in range(n_edges)]
    # candidate lift of edge e under twist l, twists commute with everything
    cand = [[g.mul(base[e], ke) for ke in ext.kernel_elements]
            for e in range(n_edges)]
    triangles = []
    for tri in site.cells(2):
        i, j, k = tri
        triangles.append((site.cell_index(1, (i, j)),
                          site.cell_index(1, (j, k)),
                          site.cell_index(1, (i, k))))

    for choice in itertools.product(range(ksize), repeat=n_edges):
        ok = True
        for eij, ejk, eik in triangles:
            if g.table[cand[eij][choice[eij]]][cand[ejk][choice[ejk]]] != \
                    cand[eik][choice[eik]]:
                ok = False
                break
        if ok:
            return {edges[e]: cand[e][choice[e]] for e in range(n_edges)}
    return None
