"""Finite simplicial sites and their cochain complexes.

A site is the nerve of a covering family: vertices are cover indices and a
p-simplex records a nonempty (p+1)-fold intersection.  Cochains live on
strictly increasing vertex tuples with the alternating-sign coboundary;
coefficients are constant (one finitely generated abelian group).

Coordinate layout of a cochain group C^p = L^k (k cells in degree p):
generator-major, i.e. coordinate g*k + s holds the g-th L-coordinate of
the value on cell number s.  This keeps C^p in invariant-factor form with
no reshuffling, because repeating each invariant factor k times preserves
the divisor chain.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from cechtower import _intlin
from cechtower.abelian import (
    FgAbGroup,
    GroupElement,
    Homomorphism,
    hom_validate,
    trivial_group,
    zero_hom,
)
from cechtower.errors import BudgetExceededError, ValidationError

BAR_GENERATOR_BUDGET = 1 << 16


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplices grouped by dimension, each a strictly increasing tuple."""

    vertex_count: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if self.vertex_count <= 0:
            raise ValidationError("vertex_count must be positive")
        seen = set()
        for p, level in enumerate(self.simplices):
            if tuple(sorted(level)) != tuple(level):
                raise ValidationError(f"dimension {p} is not lexicographically sorted")
            for s in level:
                if len(s) != p + 1:
                    raise ValidationError(f"simplex {s} listed in dimension {p}")
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise ValidationError(f"simplex {s} is not strictly increasing")
                if s[0] < 0 or s[-1] >= self.vertex_count:
                    raise ValidationError(f"simplex {s} has a vertex out of range")
                seen.add(s)
        for v in range(self.vertex_count):
            if (v,) not in seen:
                raise ValidationError(f"vertex {v} is missing from the 0-simplices")
        for level in self.simplices[1:]:
            for s in level:
                for face in itertools.combinations(s, len(s) - 1):
                    if face not in seen:
                        raise ValidationError(
                            f"complex is not downward closed: face {face} of {s} missing")
        index = tuple({s: i for i, s in enumerate(level)} for level in self.simplices)
        object.__setattr__(self, "_index", index)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def cells(self, p: int) -> tuple[tuple[int, ...], ...]:
        if 0 <= p <= self.dim:
            return self.simplices[p]
        return ()

    def cell_index(self, p: int, s: tuple[int, ...]) -> int:
        return self._index[p][s]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(level) for p, level in enumerate(self.simplices))

    def facets(self) -> tuple[tuple[int, ...], ...]:
        """Maximal simplices, ordered by dimension then lexicographically."""
        non_maximal = set()
        for level in self.simplices[1:]:
            for s in level:
                for face in itertools.combinations(s, len(s) - 1):
                    non_maximal.add(face)
        out = []
        for level in self.simplices:
            out.extend(s for s in level if s not in non_maximal)
        return tuple(out)


def build_complex_from_facets(vertex_count: int,
                              facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Downward closure of the given facets; isolated vertices are allowed.

    Every vertex 0..vertex_count-1 becomes a 0-simplex whether or not a
    facet mentions it.
    """
    levels: dict[int, set] = {0: {(v,) for v in range(vertex_count)}}
    for fi, f in enumerate(facets):
        if len(f) == 0:
            raise ValidationError(f"facet {fi} is empty")
        for v in f:
            if not 0 <= v < vertex_count:
                raise ValidationError(f"facet {fi}: vertex {v} out of range")
        if len(set(f)) != len(f):
            dup = next(v for v in f if list(f).count(v) > 1)
            raise ValidationError(f"facet {fi}: repeated vertex {dup}")
        s = tuple(sorted(f))
        for size in range(1, len(s) + 1):
            for face in itertools.combinations(s, size):
                levels.setdefault(size - 1, set()).add(face)
    top = max(levels)
    simplices = tuple(tuple(sorted(levels.get(p, ()))) for p in range(top + 1))
    return SimplicialComplex(vertex_count, simplices)


def suspension(x: SimplicialComplex) -> SimplicialComplex:
    """Join with two new apex vertices (placed after the existing ones)."""
    a = x.vertex_count
    b = x.vertex_count + 1
    new_facets = []
    for f in x.facets():
        new_facets.append(f + (a,))
        new_facets.append(f + (b,))
    return build_complex_from_facets(x.vertex_count + 2, new_facets)


def power_group(coefficients: FgAbGroup, k: int) -> FgAbGroup:
    """L^k in generator-major coordinates (still invariant-factor form)."""
    return FgAbGroup(coefficients.free_rank * k,
                     tuple(d for d in coefficients.torsion for _ in range(k)))


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """Graded groups with differentials composing to zero.

    ``cells``/``coefficients`` carry the per-cell structure for complexes
    built from a site or a bar construction; plain graded complexes may
    leave them unset.  Degrees outside the stored range behave as zero
    groups with zero maps.
    """

    groups: tuple[FgAbGroup, ...]
    diffs: tuple[Homomorphism, ...]
    coefficients: Optional[FgAbGroup] = None
    cells: Optional[tuple[tuple, ...]] = None
    base: Optional[SimplicialComplex] = None

    def __post_init__(self):
        if len(self.diffs) != max(len(self.groups) - 1, 0):
            raise ValidationError("need exactly one differential per adjacent degree pair")
        for p, d in enumerate(self.diffs):
            if d.source != self.groups[p] or d.target != self.groups[p + 1]:
                raise ValidationError(f"differential {p} does not match the graded groups")
        for p in range(len(self.diffs) - 1):
            if not self.diffs[p + 1].compose(self.diffs[p]).is_zero:
                raise ValidationError(f"d∘d != 0 between degrees {p} and {p + 2}")
        if self.cells is not None and len(self.cells) != len(self.groups):
            raise ValidationError("cell table must cover every stored degree")
        object.__setattr__(self, "_cohomology_cache", {})
        object.__setattr__(self, "_cache_lock", threading.Lock())

    @property
    def max_degree(self) -> int:
        return len(self.groups) - 1

    def group(self, p: int) -> FgAbGroup:
        if 0 <= p <= self.max_degree:
            return self.groups[p]
        return trivial_group()

    def differential(self, p: int) -> Homomorphism:
        if 0 <= p < self.max_degree:
            return self.diffs[p]
        return zero_hom(self.group(p), self.group(p + 1))

    def ncells(self, p: int) -> int:
        if self.cells is None:
            raise ValidationError("complex carries no cell structure")
        return len(self.cells[p]) if 0 <= p <= self.max_degree else 0

    def cell_list(self, p: int) -> tuple:
        if self.cells is None:
            raise ValidationError("complex carries no cell structure")
        return self.cells[p] if 0 <= p <= self.max_degree else ()


@dataclass(frozen=True, eq=False)
class Cochain:
    complex: CochainComplex
    degree: int
    coords: tuple[int, ...]

    def __post_init__(self):
        group = self.complex.group(self.degree)
        object.__setattr__(self, "coords", group.normalize(self.coords))

    @property
    def group(self) -> FgAbGroup:
        return self.complex.group(self.degree)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain)
                and self.complex is other.complex
                and self.degree == other.degree
                and self.coords == other.coords)

    def __add__(self, other: "Cochain") -> "Cochain":
        if other.complex is not self.complex or other.degree != self.degree:
            raise ValidationError("cochains live in different groups")
        return Cochain(self.complex, self.degree,
                       tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Cochain":
        return Cochain(self.complex, self.degree, tuple(-a for a in self.coords))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.complex, self.degree, tuple(k * a for a in self.coords))

    def value_at(self, cell) -> GroupElement:
        """The coefficient-group value on one cell (generator-major strides)."""
        coeff = self.complex.coefficients
        if coeff is None:
            raise ValidationError("complex carries no cell structure")
        k = self.complex.ncells(self.degree)
        cells = self.complex.cell_list(self.degree)
        s = cells.index(tuple(cell))
        return GroupElement(coeff, tuple(self.coords[g * k + s]
                                         for g in range(coeff.ngens)))


def zero_cochain(complex_: CochainComplex, degree: int) -> Cochain:
    return Cochain(complex_, degree, (0,) * complex_.group(degree).ngens)


def cochain_from_values(complex_: CochainComplex, degree: int,
                        values: Mapping[tuple[int, ...], Sequence[int]]) -> Cochain:
    """Assemble a cochain from per-cell coefficient coordinates."""
    coeff = complex_.coefficients
    if coeff is None:
        raise ValidationError("complex carries no cell structure")
    cells = complex_.cell_list(degree)
    k = len(cells)
    coords = [0] * (coeff.ngens * k)
    for cell, val in values.items():
        cell = tuple(cell)
        if cell not in cells:
            raise ValidationError(f"{cell} is not a cell of degree {degree}")
        if len(val) != coeff.ngens:
            raise ValidationError(
                f"value on {cell} has {len(val)} coordinates, expected {coeff.ngens}")
        s = cells.index(cell)
        for g, v in enumerate(val):
            coords[g * k + s] = v
    return Cochain(complex_, degree, tuple(coords))


@lru_cache(maxsize=None)
def cech_complex(x: SimplicialComplex, coefficients: FgAbGroup) -> CochainComplex:
    """The Cech complex of the site with constant coefficients.

    Stored degrees run to dim+1 (the top group is trivial) so that the top
    nontrivial degree still has an outgoing differential.  Instances are
    memoized on (site, coefficients): class coordinates computed through
    the same pair are directly comparable.
    """
    g = coefficients.ngens
    dim = x.dim
    cells = tuple(x.cells(p) for p in range(dim + 1)) + ((),)
    groups = tuple(power_group(coefficients, len(c)) for c in cells)
    diffs = []
    for p in range(dim + 1):
        src, tgt = cells[p], cells[p + 1]
        k0, k1 = len(src), len(tgt)
        rows = [[0] * (g * k0) for _ in range(g * k1)]
        for ti, tau in enumerate(tgt):
            for j in range(len(tau)):
                face = tau[:j] + tau[j + 1:]
                si = x.cell_index(p, face)
                sign = -1 if j % 2 else 1
                for gen in range(g):
                    rows[gen * k1 + ti][gen * k0 + si] = sign
        diffs.append(Homomorphism(groups[p], groups[p + 1],
                                  tuple(tuple(r) for r in rows)))
    return CochainComplex(groups, tuple(diffs), coefficients, cells, x)


def coboundary(c: Cochain) -> Cochain:
    """Apply the differential; degrees past the top land in the zero group."""
    d = c.complex.differential(c.degree)
    return Cochain(c.complex, c.degree + 1,
                   tuple(_intlin.mat_vec(d.matrix, c.coords)))


def _violated_cell(c: Cochain, image_coords: Sequence[int]):
    k = None
    if c.complex.cells is not None:
        k = c.complex.ncells(c.degree + 1)
    for idx, v in enumerate(image_coords):
        if v != 0:
            if k:
                return c.complex.cell_list(c.degree + 1)[idx % k]
            return idx
    return None


@dataclass(frozen=True)
class Cohomology:
    """H^p with chosen representatives and the fixed projection.

    The projection is deterministic for the complex instance it was
    computed on; coordinates are only comparable within that instance.
    """

    degree: int
    group: FgAbGroup
    representatives: tuple[Cochain, ...]
    _presentation: _intlin.Presentation = field(repr=False)

    def coords_of(self, c: Cochain) -> tuple[int, ...]:
        image = coboundary(c)
        if not image.is_zero:
            raise ValidationError(
                f"not a cocycle: coboundary does not vanish on "
                f"{_violated_cell(c, image.coords)}")
        return tuple(self._presentation.project(list(c.coords)))


def cohomology(complex_: CochainComplex, p: int) -> Cohomology:
    """Kernel/image quotient at degree p in invariant-factor form.

    Results are cached on the complex instance (thread-safe memo).
    """
    with complex_._cache_lock:
        hit = complex_._cohomology_cache.get(p)
    if hit is not None:
        return hit

    amb = complex_.group(p)
    n = amb.ngens
    out_diff = complex_.differential(p)
    ker_gens = _intlin.kernel_lattice_gens(out_diff.matrix, out_diff.target.orders, n)
    rel = _intlin.relation_columns(amb.orders)
    if p - 1 >= 0:
        in_diff = complex_.differential(p - 1)
        img_gens = in_diff.columns() + rel
    else:
        img_gens = rel
    pres = _intlin.present_quotient(n, ker_gens, img_gens)
    group = FgAbGroup(pres.free_rank, pres.torsion)
    reps = tuple(Cochain(complex_, p, tuple(col)) for col in pres.lift_cols)
    result = Cohomology(p, group, reps, pres)

    with complex_._cache_lock:
        complex_._cohomology_cache.setdefault(p, result)
        return complex_._cohomology_cache[p]


@dataclass(frozen=True)
class CohomologyClass:
    """Class equality is coordinate equality under the fixed projection."""

    degree: int
    group: FgAbGroup
    coords: tuple[int, ...]
    representative: Cochain = field(compare=False)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def class_of(complex_: CochainComplex, c: Cochain) -> CohomologyClass:
    if c.complex is not complex_:
        raise ValidationError("cochain does not belong to this complex instance")
    h = cohomology(complex_, c.degree)
    coords = h.coords_of(c)
    return CohomologyClass(c.degree, h.group, coords, c)


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a module by validated automorphisms.

    ``action[i]`` is the automorphism matrix attached to element i of the
    acting group; the assignment must respect every Cayley-table product.
    """

    group: object  # liftgerbe.FiniteGroup (duck-typed to avoid an import cycle)
    module: FgAbGroup
    action: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        m = self.group.order
        if len(self.action) != m:
            raise ValidationError("need exactly one matrix per group element")
        homs = []
        for i, mat in enumerate(self.action):
            report = hom_validate(self.module, self.module, mat)
            if not report.ok:
                raise ValidationError(f"action of element {i}: {report.message}")
            h = Homomorphism(self.module, self.module, mat)
            homs.append(h)
        object.__setattr__(self, "action",
                           tuple(h.matrix for h in homs))
        from cechtower.abelian import hom_invariants
        for i, h in enumerate(homs):
            inv = hom_invariants(h)
            if not inv.kernel.is_trivial or not inv.cokernel.is_trivial:
                raise ValidationError(f"action of element {i} is not an automorphism")
        table = self.group.table
        for a in range(m):
            for b in range(m):
                prod = Homomorphism(
                    self.module, self.module,
                    tuple(tuple(r) for r in _intlin.mat_mul(self.action[a],
                                                            self.action[b])))
                if prod.matrix != homs[table[a][b]].matrix:
                    raise ValidationError(
                        f"action is not a homomorphism at the pair ({a}, {b})")

    def matrix_of(self, i: int) -> tuple[tuple[int, ...], ...]:
        return self.action[i]


def trivial_action(group, module: FgAbGroup) -> GroupAction:
    ident = tuple(tuple(1 if i == j else 0 for j in range(module.ngens))
                  for i in range(module.ngens))
    return GroupAction(group, module, (ident,) * group.order)


def bar_complex(group, action: GroupAction, max_degree: int,
                budget: int = BAR_GENERATOR_BUDGET) -> CochainComplex:
    """Unnormalized inhomogeneous bar complex of a finite group.

    C^p = Maps(H^p, M) with the action twisting the leading face:
    (df)(h_1,..,h_{p+1}) = h_1·f(h_2,..) + sum_i (-1)^i f(..,h_i h_{i+1},..)
    + (-1)^{p+1} f(h_1,..,h_p).  One extra degree beyond ``max_degree`` is
    stored so cohomology at ``max_degree`` is computed against the true
    outgoing differential.
    """
    if action.group is not group and action.group != group:
        raise ValidationError("action does not belong to the given group")
    m = group.order
    module = action.module
    ng = module.ngens
    top = max_degree + 1
    if m ** top * max(ng, 1) > budget:
        raise BudgetExceededError(
            f"bar complex needs {m ** top * max(ng, 1)} generators at degree "
            f"{top}, budget is {budget}")

    cells = tuple(tuple(itertools.product(range(m), repeat=p))
                  for p in range(top + 1))
    groups = tuple(power_group(module, len(c)) for c in cells)
    index = [{cell: i for i, cell in enumerate(level)} for level in cells]
    table = group.table

    diffs = []
    for p in range(top):
        src, tgt = cells[p], cells[p + 1]
        k0, k1 = len(src), len(tgt)
        rows = [[0] * (ng * k0) for _ in range(ng * k1)]
        for ti, w in enumerate(tgt):
            rho = action.matrix_of(w[0])
            si = index[p][w[1:]]
            for gt in range(ng):
                row = rows[gt * k1 + ti]
                for gs in range(ng):
                    row[gs * k0 + si] += rho[gt][gs]
            for i in range(1, p + 1):
                merged = w[:i - 1] + (table[w[i - 1]][w[i]],) + w[i + 1:]
                si = index[p][merged]
                sign = -1 if i % 2 else 1
                for g in range(ng):
                    rows[g * k1 + ti][g * k0 + si] += sign
            si = index[p][w[:p]]
            sign = -1 if (p + 1) % 2 else 1
            for g in range(ng):
                rows[g * k1 + ti][g * k0 + si] += sign
        diffs.append(Homomorphism(groups[p], groups[p + 1],
                                  tuple(tuple(r) for r in rows)))
    return CochainComplex(groups, tuple(diffs), module, cells, None)


def cech_induced(x: SimplicialComplex, h: Homomorphism, p: int) -> Homomorphism:
    """The cochain-level map C^p(X, source) -> C^p(X, target) of a
    coefficient homomorphism, acting cellwise."""
    src = cech_complex(x, h.source)
    tgt = cech_complex(x, h.target)
    k = src.ncells(p)
    ga, gb = h.source.ngens, h.target.ngens
    rows = [[0] * (ga * k) for _ in range(gb * k)]
    for s in range(k):
        for i in range(gb):
            for j in range(ga):
                v = h.matrix[i][j]
                if v:
                    rows[i * k + s][j * k + s] = v
    return Homomorphism(src.group(p), tgt.group(p), tuple(tuple(r) for r in rows))


def map_coefficients(x: SimplicialComplex, h: Homomorphism, c: Cochain) -> Cochain:
    """Push a cochain through a coefficient homomorphism."""
    ind = cech_induced(x, h, c.degree)
    tgt = cech_complex(x, h.target)
    return Cochain(tgt, c.degree, tuple(_intlin.mat_vec(ind.matrix, c.coords)))
