"""Vectors, semilinear sets, Presburger formulas and the Hilbert basis solver."""

from .constraint import (
    Constraint,
    conjoin,
    contains,
    dim_of,
    disjoin,
    embed,
    form_of,
    full,
    intersect_image,
    negate,
    pullback,
    to_generators,
)
from .hilbert import HilbertResult, hilbert_basis, some_solution
from .presburger import (
    Cong,
    Formula,
    Less,
    Literal,
    Term,
    cong,
    const,
    eq,
    formula_eval,
    formula_negate,
    formula_to_generators,
    is_satisfiable,
    le,
    lt,
    positive_dnf,
    satisfying_point,
    var,
)
from .qaffine import AffineForm, QAffineSet, QClause
from .sets import (
    Cardinality,
    Kind,
    LinearSet,
    SemilinearSet,
    iter_box,
    nat_vector,
    sl_affine_image,
    sl_cardinality,
    sl_concat,
    sl_intersect,
    sl_intersects,
    sl_linear_image,
    sl_member,
    sl_members_upto,
    sl_preimage,
    sl_project,
    sl_union,
    unit,
)

__all__ = [
    "AffineForm",
    "Cardinality",
    "Cong",
    "Constraint",
    "Formula",
    "HilbertResult",
    "Kind",
    "Less",
    "LinearSet",
    "Literal",
    "QAffineSet",
    "QClause",
    "SemilinearSet",
    "Term",
    "cong",
    "conjoin",
    "const",
    "contains",
    "dim_of",
    "disjoin",
    "embed",
    "eq",
    "form_of",
    "formula_eval",
    "formula_negate",
    "formula_to_generators",
    "full",
    "hilbert_basis",
    "intersect_image",
    "is_satisfiable",
    "iter_box",
    "le",
    "lt",
    "nat_vector",
    "negate",
    "positive_dnf",
    "satisfying_point",
    "some_solution",
    "pullback",
    "sl_affine_image",
    "sl_cardinality",
    "sl_concat",
    "sl_intersect",
    "sl_intersects",
    "sl_linear_image",
    "sl_member",
    "sl_members_upto",
    "sl_preimage",
    "sl_project",
    "sl_union",
    "to_generators",
    "unit",
    "var",
]
