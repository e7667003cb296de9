"""Natural partial order, bound sets, joins and meets.

Down- and up-sets are stored as Python ``int`` bitmasks, bit ``i`` standing
for element ``i``.  Joins and meets are plain bound-set scans over those
masks; nothing assumes lattice structure.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .core import ElementId, InverseSemigroup

NO_BOUNDS = "no bounds"
NO_LEAST = "no least bound"
NO_GREATEST = "no greatest bound"


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class ExtremumResult:
    """Outcome of a join or meet query.

    Equality looks only at existence and the witness; ``reason`` and
    ``bounds`` are diagnostics.
    """

    witness: Optional[ElementId]
    reason: Optional[str] = field(default=None, compare=False)
    bounds: frozenset[ElementId] = field(default=frozenset(), compare=False)

    @classmethod
    def found(cls, w: ElementId) -> ExtremumResult:
        return cls(w)

    @classmethod
    def missing(cls, reason: str, bounds: Iterable[ElementId] = ()) -> ExtremumResult:
        return cls(None, reason, frozenset(bounds))

    @property
    def exists(self) -> bool:
        return self.witness is not None

    def __repr__(self) -> str:
        if self.exists:
            return f"Exists({self.witness})"
        return f"NotExists({self.reason!r}, bounds={sorted(self.bounds)})"


def natural_leq(S: InverseSemigroup, s: ElementId, t: ElementId) -> bool:
    """``s <= t`` iff ``s = s s^-1 t``."""
    P = S.product
    return P[P[s][S.inverse[s]]][t] == s


class NaturalOrder:
    """The natural partial order of ``S``, precomputed once.

    ``down[t]`` is the bitmask of ``{s : s <= t}`` and ``up[s]`` the bitmask
    of ``{t : s <= t}``.
    """

    def __init__(self, S: InverseSemigroup):
        self.semigroup = S
        n = S.size
        P, inv = S.product, S.inverse
        down = [0] * n
        up = [0] * n
        for s in range(n):
            row = P[P[s][inv[s]]]
            for t in range(n):
                if row[t] == s:
                    down[t] |= 1 << s
                    up[s] |= 1 << t
        self.down: tuple[int, ...] = tuple(down)
        self.up: tuple[int, ...] = tuple(up)
        self.full = (1 << n) - 1

    @property
    def size(self) -> int:
        return self.semigroup.size

    def leq(self, s: ElementId, t: ElementId) -> bool:
        return bool(self.down[t] >> s & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(s, t) for t in range(self.size)] for s in range(self.size)]

    def downsegment(self, t: ElementId) -> frozenset[ElementId]:
        seg = frozenset(bits(self.down[t]))
        if self.semigroup.is_idempotent(t):
            assert all(self.semigroup.is_idempotent(s) for s in seg)
        return seg

    def comparable_pairs(self) -> int:
        """Number of pairs ``(s, t)`` with ``s <= t``, reflexive ones included."""
        return sum(m.bit_count() for m in self.down)

    # mask-level engine -------------------------------------------------

    def upper_mask(self, X: Iterable[ElementId]) -> int:
        m = self.full
        up = self.up
        for x in X:
            m &= up[x]
        return m

    def lower_mask(self, X: Iterable[ElementId]) -> int:
        m = self.full
        down = self.down
        for x in X:
            m &= down[x]
        return m

    def least_in(self, mask: int) -> Optional[ElementId]:
        """The minimum of the set ``mask`` if it has one."""
        up = self.up
        for w in bits(mask):
            if mask & ~up[w] == 0:
                return w
        return None

    def greatest_in(self, mask: int) -> Optional[ElementId]:
        down = self.down
        for w in bits(mask):
            if mask & ~down[w] == 0:
                return w
        return None

    def join_id(self, X: Iterable[ElementId]) -> Optional[ElementId]:
        """Fast path of :meth:`join` returning the join or ``None``."""
        return self.least_in(self.upper_mask(X))

    # public queries ----------------------------------------------------

    def upper_bounds(self, X: Iterable[ElementId]) -> frozenset[ElementId]:
        return frozenset(bits(self.upper_mask(X)))

    def lower_bounds(self, X: Iterable[ElementId]) -> frozenset[ElementId]:
        return frozenset(bits(self.lower_mask(X)))

    def join(self, X: Iterable[ElementId]) -> ExtremumResult:
        """Least upper bound of ``X``; for empty ``X`` the minimum of ``S``."""
        U = self.upper_mask(X)
        if not U:
            return ExtremumResult.missing(NO_BOUNDS)
        w = self.least_in(U)
        if w is None:
            return ExtremumResult.missing(NO_LEAST, bits(U))
        return ExtremumResult.found(w)

    def meet(self, x: ElementId, y: ElementId) -> ExtremumResult:
        Z = self.down[x] & self.down[y]
        if not Z:
            return ExtremumResult.missing(NO_BOUNDS)
        w = self.greatest_in(Z)
        if w is None:
            return ExtremumResult.missing(NO_GREATEST, bits(Z))
        return ExtremumResult.found(w)

    def minimum(self) -> ExtremumResult:
        return self.join(())

    @cached_property
    def meet_table(self) -> tuple[tuple[Optional[ElementId], ...], ...]:
        """``meet_table[x][y]`` is ``x ^ y`` or ``None``."""
        n = self.size
        down = self.down
        rows = []
        for x in range(n):
            rows.append(tuple(self.greatest_in(down[x] & down[y]) for y in range(n)))
        return tuple(rows)


def downsegment(order: NaturalOrder, t: ElementId) -> frozenset[ElementId]:
    return order.downsegment(t)


def upper_bounds(order: NaturalOrder, X: Iterable[ElementId]) -> frozenset[ElementId]:
    return order.upper_bounds(X)


def lower_bounds(order: NaturalOrder, X: Iterable[ElementId]) -> frozenset[ElementId]:
    return order.lower_bounds(X)


def join(order: NaturalOrder, X: Iterable[ElementId]) -> ExtremumResult:
    return order.join(X)


def meet(order: NaturalOrder, x: ElementId, y: ElementId) -> ExtremumResult:
    return order.meet(x, y)
