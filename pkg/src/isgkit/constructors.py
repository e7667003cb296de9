"""Standard finite inverse semigroups used as fixtures and by ``isgkit gen``."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Optional

from .core import (
    AxiomError,
    InverseSemigroup,
    PartialBijection,
    close_under_ops,
    from_cayley_table,
    from_elements,
)

MAX_SYMMETRIC_DEGREE = 5

FAMILIES = ("symmetric-inverse", "semilattice", "cyclic-group", "brandt", "adjoin-zero", "builtin")


class SemilatticeError(AxiomError):
    def __init__(self, message: str, witness: tuple[int, ...]):
        super().__init__(message)
        self.witness = witness


def symmetric_inverse_monoid(n: int) -> InverseSemigroup:
    """All partial bijections of ``{0..n-1}``, listed lexicographically."""
    if not 0 <= n <= MAX_SYMMETRIC_DEGREE:
        raise ValueError(f"n must be in 0..{MAX_SYMMETRIC_DEGREE}, got {n}")
    maps = []
    for images in cartesian([None, *range(n)], repeat=n):
        defined = [v for v in images if v is not None]
        if len(defined) == len(set(defined)):
            maps.append(PartialBijection(images))
    maps.sort(key=PartialBijection.sort_key)
    return from_elements(maps, metadata={"family": "symmetric-inverse", "n": n})


def meet_table_from_order(size: int, leq: Callable[[int, int], bool]) -> list[list[int]]:
    """Greatest-lower-bound table of a finite meet-semilattice given by ``leq``."""
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            lower = [c for c in range(size) if leq(c, a) and leq(c, b)]
            glb = [c for c in lower if all(leq(d, c) for d in lower)]
            if len(glb) != 1:
                raise ValueError(f"elements {a} and {b} have no meet")
            row.append(glb[0])
        table.append(row)
    return table


def semilattice_from_meet_table(
    size: int,
    table: Sequence[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
    *,
    metadata: Optional[dict[str, Any]] = None,
) -> InverseSemigroup:
    """A meet-semilattice as an inverse semigroup: product is meet, ``s^-1 = s``."""
    if len(table) != size or any(len(row) != size for row in table):
        raise ValueError(f"meet table must be {size}x{size}")
    r = range(size)
    for a in r:
        if table[a][a] != a:
            raise SemilatticeError(f"not idempotent: {a}*{a} = {table[a][a]}", (a,))
    for a in r:
        for b in r:
            if table[a][b] != table[b][a]:
                raise SemilatticeError(f"not commutative: ({a},{b})", (a, b))
    S = from_cayley_table(size, table, list(r), labels, metadata=metadata)
    P = S.product
    for a in r:
        for b in r:
            natural = P[P[a][a]][b] == a
            assert natural == (P[a][b] == a), f"natural order disagrees at ({a},{b})"
    return S


def _lattice(labels: Sequence[str], covers: Sequence[tuple[str, str]], name: str) -> InverseSemigroup:
    idx = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in covers:
        rel[idx[lo]][idx[hi]] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if rel[i][k] and rel[k][j]:
                    rel[i][j] = True
    table = meet_table_from_order(n, lambda a, b: rel[a][b])
    return semilattice_from_meet_table(
        n, table, labels, metadata={"family": "semilattice", "name": name}
    )


def chain(k: int) -> InverseSemigroup:
    if k < 1:
        raise ValueError("a chain needs at least one element")
    labels = [str(i) for i in range(k)]
    table = [[min(a, b) for b in range(k)] for a in range(k)]
    return semilattice_from_meet_table(
        k, table, labels, metadata={"family": "semilattice", "name": f"chain{k}"}
    )


def pentagon() -> InverseSemigroup:
    """N5: ``0 < a < c < 1`` and ``0 < b < 1``."""
    return _lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        "n5",
    )


def diamond() -> InverseSemigroup:
    """M3: bottom, three pairwise incomparable atoms, top."""
    return _lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        "m3",
    )


def square() -> InverseSemigroup:
    """The four-element Boolean lattice ``0 < a, b < 1``."""
    return _lattice(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], "square"
    )


def cyclic_group(n: int) -> InverseSemigroup:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return from_cayley_table(
        n, table, [(n - k) % n for k in range(n)], metadata={"family": "cyclic-group", "n": n}
    )


def brandt(n: int) -> InverseSemigroup:
    """Combinatorial Brandt semigroup: matrix units ``(i,j)`` plus a zero (listed last)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    units = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    zero = len(units)
    idx = {u: k for k, u in enumerate(units)}

    def mul(a: int, b: int) -> int:
        if a == zero or b == zero:
            return zero
        (i, j), (k, l) = units[a], units[b]
        return idx[(i, l)] if j == k else zero

    size = zero + 1
    table = [[mul(a, b) for b in range(size)] for a in range(size)]
    inverse = [idx[(j, i)] for i, j in units] + [zero]
    labels = [f"({i},{j})" for i, j in units] + ["0"]
    return from_cayley_table(size, table, inverse, labels, metadata={"family": "brandt", "n": n})


def adjoin_zero(S: InverseSemigroup) -> InverseSemigroup:
    """``S`` plus a new absorbing element, appended as the last element."""
    n = S.size
    z = n
    table = [list(row) + [z] for row in S.product] + [[z] * (n + 1)]
    label = "z"
    while label in S.labels:
        label += "'"
    meta = {"family": "adjoin-zero", "inner": dict(S.metadata)}
    return from_cayley_table(
        n + 1, table, list(S.inverse) + [z], list(S.labels) + [label], metadata=meta
    )


def gapped_i4() -> InverseSemigroup:
    """A 27-element inverse subsemigroup of I4 in which some meets do not exist.

    ``[3 1 2 0]`` and the identity have lower bounds ``id|{1}`` and
    ``id|{2}`` but no greatest one.  It is not infinitely distributive.
    """
    return close_under_ops(
        [PartialBijection((3, None, 1, None)), PartialBijection((3, 1, 2, 0))],
        metadata={"family": "generated", "degree": 4},
    )


def _builtin(factory, name):
    def build():
        S = factory()
        return S.with_metadata(name=name)
    return build


BUILTINS: dict[str, Callable[[], InverseSemigroup]] = {
    "trivial": _builtin(lambda: symmetric_inverse_monoid(0), "trivial"),
    "i1": _builtin(lambda: symmetric_inverse_monoid(1), "i1"),
    "i2": _builtin(lambda: symmetric_inverse_monoid(2), "i2"),
    "i3": _builtin(lambda: symmetric_inverse_monoid(3), "i3"),
    "b2": _builtin(lambda: brandt(2), "b2"),
    "b3": _builtin(lambda: brandt(3), "b3"),
    "c2": _builtin(lambda: cyclic_group(2), "c2"),
    "c3": _builtin(lambda: cyclic_group(3), "c3"),
    "c2z": _builtin(lambda: adjoin_zero(cyclic_group(2)), "c2z"),
    "chain2": _builtin(lambda: chain(2), "chain2"),
    "chain3": _builtin(lambda: chain(3), "chain3"),
    "square": _builtin(square, "square"),
    "n5": _builtin(pentagon, "n5"),
    "m3": _builtin(diamond, "m3"),
    "i4gap": _builtin(gapped_i4, "i4gap"),
}


def builtin(name: str) -> InverseSemigroup:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ValueError(
            f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}"
        ) from None


@dataclass(frozen=True)
class FamilySpec:
    """Parameters naming one member of a constructor family."""

    family: str
    n: Optional[int] = None
    table: Optional[Sequence[Sequence[int]]] = None
    labels: Optional[Sequence[str]] = None
    inner: Optional[InverseSemigroup] = None
    name: Optional[str] = None

    def validate(self) -> None:
        f = self.family
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")
        if f in ("symmetric-inverse", "cyclic-group", "brandt") and self.n is None:
            raise ValueError(f"family {f} needs n")
        if f == "symmetric-inverse" and not 0 <= self.n <= MAX_SYMMETRIC_DEGREE:
            raise ValueError(f"n must be in 0..{MAX_SYMMETRIC_DEGREE}, got {self.n}")
        if f == "cyclic-group" and self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if f == "brandt" and self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if f == "semilattice" and self.table is None:
            raise ValueError("family semilattice needs a meet table")
        if f == "adjoin-zero" and self.inner is None:
            raise ValueError("family adjoin-zero needs an inner semigroup")
        if f == "builtin" and self.name not in BUILTINS:
            raise ValueError(
                f"unknown builtin {self.name!r}; choose from {', '.join(sorted(BUILTINS))}"
            )

    def build(self) -> InverseSemigroup:
        self.validate()
        f = self.family
        if f == "symmetric-inverse":
            return symmetric_inverse_monoid(self.n)
        if f == "cyclic-group":
            return cyclic_group(self.n)
        if f == "brandt":
            return brandt(self.n)
        if f == "semilattice":
            return semilattice_from_meet_table(
                len(self.table), self.table, self.labels, metadata={"family": "semilattice"}
            )
        if f == "adjoin-zero":
            return adjoin_zero(self.inner)
        return builtin(self.name)
