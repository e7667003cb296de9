"""Enumeration budgets for checks that quantify over subsets of a carrier."""

from __future__ import annotations

import os
import random
from collections.abc import Iterator, Sequence
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .order import NaturalOrder

CEILING_ENV = "ISGKIT_SUBSET_CEILING"
DEFAULT_CEILING = 1 << 20
DEFAULT_MAX_SUBSET_SIZE = 3

EXHAUSTIVE = "exhaustive"
BOUNDED = "bounded"


class BudgetError(ValueError):
    pass


def subset_ceiling() -> int:
    """Largest number of subsets exhaustive mode may enumerate."""
    raw = os.environ.get(CEILING_ENV)
    if raw is None or raw == "":
        return DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise BudgetError(f"{CEILING_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise BudgetError(f"{CEILING_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class SubsetBudget:
    mode: str = BOUNDED
    max_subset_size: int = DEFAULT_MAX_SUBSET_SIZE
    sample_count: int = 0
    seed: int = 0
    include_empty_set: bool = True

    def __post_init__(self) -> None:
        if self.mode not in (EXHAUSTIVE, BOUNDED):
            raise BudgetError(f"unknown budget mode {self.mode!r}")
        if self.max_subset_size < 0:
            raise BudgetError("max_subset_size must be >= 0")
        if self.sample_count < 0:
            raise BudgetError("sample_count must be >= 0")

    @classmethod
    def exhaustive(cls, include_empty_set: bool = True) -> SubsetBudget:
        return cls(mode=EXHAUSTIVE, include_empty_set=include_empty_set)

    @classmethod
    def bounded(
        cls,
        max_subset_size: int = DEFAULT_MAX_SUBSET_SIZE,
        sample_count: int = 0,
        seed: int = 0,
        include_empty_set: bool = True,
    ) -> SubsetBudget:
        return cls(BOUNDED, max_subset_size, sample_count, seed, include_empty_set)

    @classmethod
    def default_for(cls, universe_size: int, include_empty_set: bool = True) -> SubsetBudget:
        """Exhaustive when the ceiling allows it, otherwise bounded."""
        if exhaustive_feasible(universe_size):
            return cls.exhaustive(include_empty_set)
        return cls.bounded(include_empty_set=include_empty_set)

    @property
    def is_exhaustive(self) -> bool:
        return self.mode == EXHAUSTIVE

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.is_exhaustive:
            d["max_subset_size"] = None
            d["sample_count"] = 0
        return d


def exhaustive_feasible(universe_size: int, ceiling: Optional[int] = None) -> bool:
    if ceiling is None:
        ceiling = subset_ceiling()
    return universe_size < 63 and (1 << universe_size) <= ceiling


def enumerate_subsets(
    universe: Sequence[int],
    budget: SubsetBudget,
    order: Optional[NaturalOrder] = None,
) -> Iterator[tuple[int, ...]]:
    """Yield the subsets of ``universe`` that ``budget`` asks for.

    Subsets come out as sorted tuples, smallest first and lexicographic
    within one size.  Bounded mode then appends ``sample_count`` seeded
    random subsets larger than ``max_subset_size``.  Sample ``k`` draws from
    its own generator keyed on ``(seed, k)``, so any partition of the sample
    indices reproduces the same subsets.  When ``order`` is given, each
    sample first picks a random anchor element and draws from its
    downsegment if that is large enough, so that sampled families often
    have a join.
    """
    universe = sorted(universe)
    n = len(universe)
    if budget.is_exhaustive:
        if not exhaustive_feasible(n):
            raise BudgetError(
                f"exhaustive enumeration of 2^{n} subsets exceeds the ceiling "
                f"of {subset_ceiling()} ({CEILING_ENV})"
            )
        top = n
    else:
        top = min(budget.max_subset_size, n)
    start = 0 if budget.include_empty_set else 1
    for k in range(start, top + 1):
        yield from combinations(universe, k)
    if budget.is_exhaustive or budget.sample_count == 0 or n <= budget.max_subset_size:
        return
    yield from _samples(universe, budget, order)


def _samples(
    universe: list[int], budget: SubsetBudget, order: Optional[NaturalOrder]
) -> Iterator[tuple[int, ...]]:
    K = budget.max_subset_size
    members = set(universe)
    for k in range(budget.sample_count):
        rng = random.Random(f"isgkit:{budget.seed}:{k}")
        pool = universe
        if order is not None:
            anchor = universe[rng.randrange(len(universe))]
            seg = [s for s in sorted(order.downsegment(anchor)) if s in members]
            if len(seg) > K:
                pool = seg
        size = rng.randint(K + 1, len(pool))
        yield tuple(sorted(rng.sample(pool, size)))


def count_subsets(universe_size: int, budget: SubsetBudget) -> int:
    """Number of subsets :func:`enumerate_subsets` yields."""
    from math import comb

    top = universe_size if budget.is_exhaustive else min(budget.max_subset_size, universe_size)
    start = 0 if budget.include_empty_set else 1
    total = sum(comb(universe_size, k) for k in range(start, top + 1))
    if not budget.is_exhaustive and universe_size > budget.max_subset_size:
        total += budget.sample_count
    return total
