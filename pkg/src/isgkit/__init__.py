"""Finite inverse semigroups: natural order, joins and meets, and law checks."""

__version__ = "0.1.0"

from .budget import BudgetError, SubsetBudget
from .core import (
    AxiomError,
    InverseSemigroup,
    PartialBijection,
    SemigroupError,
    close_under_ops,
    compose,
    from_cayley_table,
    idempotents,
    invert,
)
from .order import ExtremumResult, NaturalOrder, natural_leq
from .verify import LawReport, Verdict

__all__ = [
    "AxiomError",
    "BudgetError",
    "ExtremumResult",
    "InverseSemigroup",
    "LawReport",
    "NaturalOrder",
    "PartialBijection",
    "SemigroupError",
    "SubsetBudget",
    "Verdict",
    "close_under_ops",
    "compose",
    "from_cayley_table",
    "idempotents",
    "invert",
    "natural_leq",
]
