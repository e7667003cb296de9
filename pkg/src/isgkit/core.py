"""Elements, semigroup construction and inverse-semigroup axiom validation.

Products follow the functional convention ``(p*q)(i) = p(q(i))``: apply ``q``
first, then ``p``.  Every table in the package uses this convention.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

ElementId = int

DEFAULT_ELEMENT_CAP = 100_000


class SemigroupError(ValueError):
    """Base class for every construction or validation failure."""


class MalformedTableError(SemigroupError):
    """Structural problem with a table: wrong shape or an out-of-range entry."""

    def __init__(self, message: str, row: Optional[int] = None, col: Optional[int] = None):
        super().__init__(message)
        self.row = row
        self.col = col


class AxiomError(SemigroupError):
    """A well-formed table that is not an inverse semigroup."""


class NotAssociativeError(AxiomError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.triple = (a, b, c)


class IdempotentsDoNotCommuteError(AxiomError):
    def __init__(self, e: int, f: int):
        super().__init__(f"idempotents do not commute: ({e},{f})")
        self.pair = (e, f)


class NotRegularError(AxiomError):
    def __init__(self, element: int, message: Optional[str] = None):
        super().__init__(message or f"element {element} has no inverse")
        self.element = element


class AmbiguousInverseError(AxiomError):
    def __init__(self, element: int, candidates: Sequence[int]):
        super().__init__(
            f"element {element} has {len(candidates)} inverses: {list(candidates)}"
        )
        self.element = element
        self.candidates = tuple(candidates)


class ClosureCapExceeded(SemigroupError):
    def __init__(self, cap: int):
        super().__init__(f"closure exceeded the element cap of {cap}")
        self.cap = cap


@dataclass(frozen=True, order=False)
class PartialBijection:
    """An injective partial map on ``{0, ..., degree-1}``.

    ``images[i]`` is the image of point ``i`` or ``None`` where undefined.
    """

    images: tuple[Optional[int], ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        seen = set()
        for i, v in enumerate(images):
            if v is None:
                continue
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise ValueError(f"image of {i} is {v!r}, outside 0..{n - 1}")
            if v in seen:
                raise ValueError(f"not injective: {v} is hit twice")
            seen.add(v)

    @classmethod
    def from_pairs(cls, degree: int, pairs: Mapping[int, int] | Iterable[tuple[int, int]]) -> PartialBijection:
        images: list[Optional[int]] = [None] * degree
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        for src, dst in items:
            images[src] = dst
        return cls(tuple(images))

    @classmethod
    def identity(cls, degree: int, domain: Optional[Iterable[int]] = None) -> PartialBijection:
        if domain is None:
            return cls(tuple(range(degree)))
        dom = set(domain)
        return cls(tuple(i if i in dom else None for i in range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.images) if v is not None)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(v for v in self.images if v is not None)

    def graph(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, v) for i, v in enumerate(self.images) if v is not None)

    def sort_key(self) -> tuple[int, ...]:
        # undefined sorts before every defined image
        return tuple(-1 if v is None else v for v in self.images)

    def __call__(self, i: int) -> Optional[int]:
        return self.images[i]

    def __mul__(self, other: PartialBijection) -> PartialBijection:
        return compose(self, other)

    def __str__(self) -> str:
        sep = " " if self.degree <= 10 else ","
        return "[" + sep.join("-" if v is None else str(v) for v in self.images) + "]"


def compose(p: PartialBijection, q: PartialBijection) -> PartialBijection:
    """Return ``p*q``, i.e. apply ``q`` then ``p``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    pi = p.images
    return PartialBijection(tuple(None if v is None else pi[v] for v in q.images))


def invert(p: PartialBijection) -> PartialBijection:
    images: list[Optional[int]] = [None] * p.degree
    for i, v in enumerate(p.images):
        if v is not None:
            images[v] = i
    return PartialBijection(tuple(images))


@dataclass(frozen=True)
class InverseSemigroup:
    """A finite inverse semigroup given by its product and inverse tables.

    Build instances through :func:`from_cayley_table` or
    :func:`close_under_ops`; the raw constructor does not validate.
    ``elements`` holds the concrete partial bijections when the semigroup
    came from that model.
    """

    product: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    labels: tuple[str, ...]
    elements: Optional[tuple[PartialBijection, ...]] = field(default=None, compare=False, repr=False)
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.product)

    def __len__(self) -> int:
        return len(self.product)

    def mul(self, a: ElementId, b: ElementId) -> ElementId:
        return self.product[a][b]

    def inv(self, a: ElementId) -> ElementId:
        return self.inverse[a]

    def label(self, a: ElementId) -> str:
        return self.labels[a]

    def index(self, label: str) -> ElementId:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def is_idempotent(self, a: ElementId) -> bool:
        return self.product[a][a] == a

    def idempotents(self) -> frozenset[ElementId]:
        return idempotents(self)

    def zero(self) -> Optional[ElementId]:
        """The absorbing element, if there is one."""
        n = self.size
        for z in range(n):
            row = self.product[z]
            if all(row[s] == z and self.product[s][z] == z for s in range(n)):
                return z
        return None

    def with_metadata(self, **extra: Any) -> InverseSemigroup:
        meta = dict(self.metadata)
        meta.update(extra)
        return InverseSemigroup(self.product, self.inverse, self.labels, self.elements, meta)


def idempotents(S: InverseSemigroup) -> frozenset[ElementId]:
    E = frozenset(e for e in range(S.size) if S.product[e][e] == e)
    P = S.product
    for e in E:
        for f in E:
            ef = P[e][f]
            assert ef in E and ef == P[f][e], f"idempotents {e},{f} not a semilattice"
    return E


def _check_shape(size: int, product: Sequence[Sequence[int]]) -> np.ndarray:
    if size < 1:
        raise MalformedTableError("a semigroup needs at least one element")
    if len(product) != size:
        raise MalformedTableError(f"product table has {len(product)} rows, expected {size}")
    for r, row in enumerate(product):
        if len(row) != size:
            raise MalformedTableError(
                f"product row {r} has {len(row)} entries, expected {size}", row=r
            )
        for c, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < size:
                raise MalformedTableError(f"index out of range at ({r},{c})", row=r, col=c)
    return np.asarray(product, dtype=np.int64).reshape(size, size)


def _check_associative(P: np.ndarray) -> None:
    n = P.shape[0]
    block = max(1, 4_000_000 // (n * n))
    for start in range(0, n, block):
        rows = P[start:start + block]
        left = P[rows]  # left[i, b, c] = (a_i b) c
        right = rows[:, P]  # right[i, b, c] = a_i (b c)
        bad = np.argwhere(left != right)
        if bad.size:
            i, b, c = (int(v) for v in bad[0])
            raise NotAssociativeError(start + i, b, c)


def _check_idempotents_commute(P: np.ndarray) -> None:
    ar = np.arange(P.shape[0])
    E = ar[P[ar, ar] == ar]
    sub = P[np.ix_(E, E)]
    bad = np.argwhere(sub != sub.T)
    if bad.size:
        i, j = sorted(int(v) for v in bad[0])
        raise IdempotentsDoNotCommuteError(int(E[i]), int(E[j]))


def _derive_inverse(P: np.ndarray) -> tuple[int, ...]:
    n = P.shape[0]
    ar = np.arange(n)
    out = []
    for s in range(n):
        sts = P[P[s, :], s] == s
        tst = P[P[:, s], ar] == ar
        cands = ar[sts & tst]
        if cands.size == 0:
            raise NotRegularError(s)
        if cands.size > 1:
            raise AmbiguousInverseError(s, [int(c) for c in cands])
        out.append(int(cands[0]))
    return tuple(out)


def _check_inverse(P: np.ndarray, inverse: Sequence[int]) -> tuple[int, ...]:
    n = P.shape[0]
    if len(inverse) != n:
        raise MalformedTableError(f"inverse table has {len(inverse)} entries, expected {n}")
    for s, t in enumerate(inverse):
        if not isinstance(t, (int, np.integer)) or isinstance(t, bool) or not 0 <= t < n:
            raise MalformedTableError(f"inverse index out of range at ({s})", row=s)
    inv = tuple(int(t) for t in inverse)
    for s, t in enumerate(inv):
        if P[P[s, t], s] != s or P[P[t, s], t] != t:
            raise NotRegularError(s, f"inverse table entry {s} -> {t} is not an inverse")
        if inv[t] != s:
            raise NotRegularError(s, f"inverse table is not an involution at {s}")
    return inv


def from_cayley_table(
    size: int,
    product: Sequence[Sequence[int]],
    inverse: Optional[Sequence[int]] = None,
    labels: Optional[Sequence[str]] = None,
    *,
    metadata: Optional[Mapping[str, Any]] = None,
) -> InverseSemigroup:
    """Validate a Cayley table and wrap it as an :class:`InverseSemigroup`.

    Checks run in this order: table shape and ranges, associativity,
    commuting idempotents, then inverses.  If ``inverse`` is omitted, each
    element's unique inverse is derived; a missing or non-unique inverse is
    an error.
    """
    P = _check_shape(size, product)
    _check_associative(P)
    _check_idempotents_commute(P)
    inv = _derive_inverse(P) if inverse is None else _check_inverse(P, inverse)
    if labels is None:
        labels = [str(i) for i in range(size)]
    elif len(labels) != size:
        raise MalformedTableError(f"{len(labels)} labels for {size} elements")
    if len(set(labels)) != size:
        raise MalformedTableError("labels are not distinct")
    return InverseSemigroup(
        product=tuple(tuple(int(v) for v in row) for row in P.tolist()),
        inverse=inv,
        labels=tuple(str(l) for l in labels),
        metadata=dict(metadata or {}),
    )


def from_elements(
    elements: Sequence[PartialBijection], *, metadata: Optional[Mapping[str, Any]] = None
) -> InverseSemigroup:
    """Tabulate a carrier of partial bijections already closed under the operations."""
    index = {p: i for i, p in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate elements")
    try:
        product = tuple(tuple(index[compose(p, q)] for q in elements) for p in elements)
        inverse = tuple(index[invert(p)] for p in elements)
    except KeyError as exc:
        raise ValueError(f"carrier not closed: {exc.args[0]} missing") from None
    return InverseSemigroup(
        product=product,
        inverse=inverse,
        labels=tuple(str(p) for p in elements),
        elements=tuple(elements),
        metadata=dict(metadata or {}),
    )


def close_under_ops(
    generators: Iterable[PartialBijection],
    *,
    cap: int = DEFAULT_ELEMENT_CAP,
    metadata: Optional[Mapping[str, Any]] = None,
) -> InverseSemigroup:
    """Inverse subsemigroup of partial bijections generated by ``generators``.

    The carrier is listed breadth-first: the generators in input order, then
    each later layer sorted lexicographically by image sequence.
    """
    gens: list[PartialBijection] = []
    for g in generators:
        if g not in gens:
            gens.append(g)
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have different degrees")

    steps = list(gens)
    for g in gens:
        gi = invert(g)
        if gi not in steps:
            steps.append(gi)

    carrier = list(gens)
    seen = set(carrier)
    if len(carrier) > cap:
        raise ClosureCapExceeded(cap)
    frontier = list(gens)
    while frontier:
        fresh = set()
        for p in frontier:
            for q in [invert(p)] + [compose(p, a) for a in steps]:
                if q not in seen:
                    fresh.add(q)
        layer = sorted(fresh, key=PartialBijection.sort_key)
        if len(carrier) + len(layer) > cap:
            raise ClosureCapExceeded(cap)
        carrier.extend(layer)
        seen.update(layer)
        frontier = layer
    return from_elements(carrier, metadata=metadata)
