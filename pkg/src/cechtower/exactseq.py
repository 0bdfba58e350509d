"""Short exact coefficient sequences and the connecting morphism.

The connecting map lifts a cocycle through the quotient map cellwise,
takes its coboundary in the middle coefficients, and pulls the result back
through the injection.  The lift uses the canonical solution for each
coefficient generator, extended linearly per cell, so outputs are
reproducible; independence of the section is a theorem the test suite
re-proves on every fixture rather than an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from cechtower import _intlin
from cechtower.abelian import (
    FgAbGroup,
    GroupElement,
    Homomorphism,
    hom_invariants,
    is_exact_at,
    solve_in_group,
    trivial_group,
    zero_hom,
)
from cechtower.cochain import (
    Cochain,
    CochainComplex,
    SimplicialComplex,
    cech_complex,
    cech_induced,
    class_of,
    coboundary,
    cohomology,
    map_coefficients,
)
from cechtower.errors import ValidationError, VerificationError


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> a -(iota)-> b -(pi)-> c -> 0, fully verified at construction."""

    a: FgAbGroup
    b: FgAbGroup
    c: FgAbGroup
    iota: Homomorphism
    pi: Homomorphism

    def __post_init__(self):
        if self.iota.source != self.a or self.iota.target != self.b:
            raise ValidationError("iota must map the first group into the middle one")
        if self.pi.source != self.b or self.pi.target != self.c:
            raise ValidationError("pi must map the middle group onto the last one")
        inv_iota = hom_invariants(self.iota)
        if not inv_iota.kernel.is_trivial:
            witness = inv_iota.kernel_inclusion.apply(inv_iota.kernel.generator(0))
            raise ValidationError(
                f"iota is not injective: kernel element {witness.coords}")
        inv_pi = hom_invariants(self.pi)
        if not inv_pi.cokernel.is_trivial:
            raise ValidationError(
                f"pi is not surjective: cokernel {inv_pi.cokernel}")
        mid = is_exact_at(self.iota, self.pi)
        if not mid.ok:
            raise ValidationError(
                f"not exact at the middle group ({mid.side}): "
                f"witness {mid.witness.coords}")


def validate_ses(a: FgAbGroup, b: FgAbGroup, c: FgAbGroup,
                 iota: Homomorphism, pi: Homomorphism) -> ShortExactSequence:
    return ShortExactSequence(a, b, c, iota, pi)


@lru_cache(maxsize=None)
def _check_degreewise(x: SimplicialComplex, ses: ShortExactSequence, p: int) -> None:
    """Re-verify 0 -> C^p(A) -> C^p(B) -> C^p(C) -> 0 instead of trusting it."""
    iota_p = cech_induced(x, ses.iota, p)
    pi_p = cech_induced(x, ses.pi, p)
    if not hom_invariants(iota_p).kernel.is_trivial:
        raise VerificationError(f"cochain-level injection fails in degree {p}")
    if not hom_invariants(pi_p).cokernel.is_trivial:
        raise VerificationError(f"cochain-level surjection fails in degree {p}")
    if not is_exact_at(iota_p, pi_p).ok:
        raise VerificationError(f"cochain-level middle exactness fails in degree {p}")


@lru_cache(maxsize=None)
def _section_matrix(ses: ShortExactSequence) -> tuple[tuple[int, ...], ...]:
    """Canonical set-section of pi, one solve per generator of c.

    Linear extension of the generator images; this is a genuine section
    (pi is linear) but usually not a homomorphism, so it stays a raw
    matrix rather than a Homomorphism.
    """
    cols = []
    for g in range(ses.c.ngens):
        sol = solve_in_group(ses.pi, ses.c.generator(g))
        if sol is None:
            raise VerificationError("pi lost surjectivity after validation")
        cols.append(sol.coords)
    return tuple(tuple(col[i] for col in cols) for i in range(ses.b.ngens))


def connecting(x: SimplicialComplex, ses: ShortExactSequence, c: Cochain,
               twist: Optional[Sequence[GroupElement]] = None) -> Cochain:
    """The degree-raising image of a cocycle under the exact sequence.

    ``twist`` optionally perturbs the lift by one kernel element per cell
    (used to verify section independence); the default lift is canonical.
    Output is a (p+1)-cocycle with coefficients in ses.a, living in the
    shared complex instance for (x, ses.a).
    """
    comp_c = cech_complex(x, ses.c)
    if c.complex is not comp_c:
        raise ValidationError("cochain does not live in the C-coefficient complex of x")
    p = c.degree
    if not coboundary(c).is_zero:
        raise ValidationError("connecting morphism needs a cocycle input")
    _check_degreewise(x, ses, p)
    _check_degreewise(x, ses, p + 1)

    comp_b = cech_complex(x, ses.b)
    comp_a = cech_complex(x, ses.a)
    k = comp_c.ncells(p)
    nc, nb = ses.c.ngens, ses.b.ngens
    sec = _section_matrix(ses)

    lift = [0] * (nb * k)
    for s in range(k):
        vals = [c.coords[g * k + s] for g in range(nc)]
        img = _intlin.mat_vec(sec, vals)
        for g in range(nb):
            lift[g * k + s] = img[g]
    if twist is not None:
        if len(twist) != k:
            raise ValidationError("need one twist element per cell")
        for s, t in enumerate(twist):
            if t.group != ses.a:
                raise ValidationError("twist elements must come from the kernel group")
            shifted = ses.iota.apply(t)
            for g in range(nb):
                lift[g * k + s] += shifted.coords[g]

    d_b = comp_b.differential(p)
    image = _intlin.mat_vec(d_b.matrix, lift)
    k1 = comp_b.ncells(p + 1)

    out = [0] * (ses.a.ngens * k1)
    for s in range(k1):
        w = GroupElement(ses.b, tuple(image[g * k1 + s] for g in range(nb)))
        if not ses.pi.apply(w).is_zero:
            raise VerificationError("coboundary of the lift escapes the kernel of pi")
        back = solve_in_group(ses.iota, w)
        if back is None:
            raise VerificationError("kernel element has no preimage under iota")
        for g in range(ses.a.ngens):
            out[g * k1 + s] = back.coords[g]

    result = Cochain(comp_a, p + 1, tuple(out))
    if not coboundary(result).is_zero:
        raise VerificationError("connecting morphism produced a non-cocycle")
    return result


@dataclass(frozen=True)
class LesNode:
    label: str
    group: FgAbGroup


@dataclass(frozen=True)
class LesExactness:
    label: str
    ok: bool
    witness: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class LesReport:
    """The materialized sequence ...-> H^p(A) -> H^p(B) -> H^p(C) -> ...

    ``maps[i]`` goes from ``nodes[i]`` to ``nodes[i+1]``; ``exact_at`` has
    one verdict per node that has maps on both sides (every node except
    the final one, because a zero map leads in from the left).
    """

    nodes: tuple[LesNode, ...]
    maps: tuple[Homomorphism, ...]
    exact_at: tuple[LesExactness, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.exact_at)


def _induced_on_cohomology(x: SimplicialComplex, h: Homomorphism,
                           p: int) -> Homomorphism:
    """H^p(X, h.source) -> H^p(X, h.target) by mapping representatives."""
    hs = cohomology(cech_complex(x, h.source), p)
    ht = cohomology(cech_complex(x, h.target), p)
    cols = [ht.coords_of(map_coefficients(x, h, rep)) for rep in hs.representatives]
    return Homomorphism(hs.group, ht.group, tuple(
        tuple(col[i] for col in cols) for i in range(ht.group.ngens)))


def _connecting_on_cohomology(x: SimplicialComplex, ses: ShortExactSequence,
                              p: int) -> Homomorphism:
    hc = cohomology(cech_complex(x, ses.c), p)
    ha = cohomology(cech_complex(x, ses.a), p + 1)
    cols = [ha.coords_of(connecting(x, ses, rep)) for rep in hc.representatives]
    return Homomorphism(hc.group, ha.group, tuple(
        tuple(col[i] for col in cols) for i in range(ha.group.ngens)))


def long_exact_sequence(x: SimplicialComplex, ses: ShortExactSequence,
                        max_degree: int) -> LesReport:
    """Materialize the cohomology sequence of the coefficient sequence and
    check exactness at every position."""
    nodes: list[LesNode] = []
    maps: list[Homomorphism] = []
    for p in range(max_degree + 1):
        ga = cohomology(cech_complex(x, ses.a), p).group
        gb = cohomology(cech_complex(x, ses.b), p).group
        gc = cohomology(cech_complex(x, ses.c), p).group
        nodes.append(LesNode(f"H^{p}(A)", ga))
        maps.append(_induced_on_cohomology(x, ses.iota, p))
        nodes.append(LesNode(f"H^{p}(B)", gb))
        maps.append(_induced_on_cohomology(x, ses.pi, p))
        nodes.append(LesNode(f"H^{p}(C)", gc))
        maps.append(_connecting_on_cohomology(x, ses, p))
    tail = cohomology(cech_complex(x, ses.a), max_degree + 1).group
    nodes.append(LesNode(f"H^{max_degree + 1}(A)", tail))

    exact = []
    incoming = zero_hom(trivial_group(), nodes[0].group)
    for i, outgoing in enumerate(maps):
        verdict = is_exact_at(incoming, outgoing)
        exact.append(LesExactness(
            nodes[i].label, verdict.ok,
            verdict.witness.coords if verdict.witness else None))
        incoming = outgoing
    return LesReport(tuple(nodes), tuple(maps), tuple(exact))


def connecting_class(x: SimplicialComplex, ses: ShortExactSequence, c: Cochain):
    """Connecting morphism followed by class projection (convenience)."""
    out = connecting(x, ses, c)
    return class_of(cech_complex(x, ses.a), out)
