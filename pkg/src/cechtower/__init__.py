"""Exact Cech cohomology of finite simplicial sites.

Computes cohomology with finitely generated abelian coefficients by exact
integer arithmetic, and on top of it: connecting morphisms and long exact
sequences, iterated connecting-morphism class towers, filtered-complex
spectral terms, and lifting obstructions of central extensions.
"""

from cechtower._kernels import BACKEND as KERNEL_BACKEND
from cechtower.abelian import (
    FgAbGroup,
    GroupElement,
    Homomorphism,
    cyclic_group,
    free_group,
    hom_invariants,
    is_exact_at,
    smith_normal_form,
    solve_in_group,
    trivial_group,
)
from cechtower.errors import (
    BudgetExceededError,
    CechTowerError,
    SchemaError,
    ValidationError,
    VerificationError,
)

__all__ = [
    "BudgetExceededError",
    "CechTowerError",
    "FgAbGroup",
    "GroupElement",
    "Homomorphism",
    "KERNEL_BACKEND",
    "SchemaError",
    "ValidationError",
    "VerificationError",
    "cyclic_group",
    "free_group",
    "hom_invariants",
    "is_exact_at",
    "smith_normal_form",
    "solve_in_group",
    "trivial_group",
]
