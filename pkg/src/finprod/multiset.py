"""Finite-support multisets: the free commutative monoid on an index set."""
from __future__ import annotations

from collections.abc import Mapping
from typing import Hashable, Iterable

from .errors import ValidationError
from .monoid import IndexedFamily, MonoidSpec, canonical_sorted, fprod

__all__ = [
    "Multiset",
    "EMPTY",
    "mset_add",
    "mset_delta",
    "mpower",
    "eval_multiset",
]


class Multiset(Mapping):
    """Immutable map ``index -> positive count``; absent indices count 0.

    Zero counts are dropped on construction, so two multisets are equal
    exactly when their stored maps are.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping | Iterable[Hashable] = ()):
        if isinstance(counts, Mapping):
            items = counts.items()
        else:
            tally: dict = {}
            for i in counts:
                tally[i] = tally.get(i, 0) + 1
            items = tally.items()
        stored = {}
        for i, k in items:
            if isinstance(k, bool) or not isinstance(k, int):
                raise ValidationError(f"count for {i!r} must be an integer, got {k!r}")
            if k < 0:
                raise ValidationError(f"count for {i!r} is negative: {k}")
            if k:
                stored[i] = k
        self._counts = stored
        self._hash = None

    def __getitem__(self, i) -> int:
        return self._counts.get(i, 0)

    def __iter__(self):
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, i) -> bool:
        return i in self._counts

    def __eq__(self, other) -> bool:
        if isinstance(other, Multiset):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __add__(self, other: Multiset) -> Multiset:
        return mset_add(self, other)

    def __repr__(self) -> str:
        body = ", ".join(f"{i!r}: {self._counts[i]}" for i in canonical_sorted(self._counts))
        return f"Multiset({{{body}}})"

    def support(self) -> frozenset:
        return frozenset(self._counts)

    def size(self) -> int:
        """Total count, with multiplicity."""
        return sum(self._counts.values())


EMPTY = Multiset()


def mset_add(m: Multiset, n: Multiset) -> Multiset:
    """Pointwise sum of counts."""
    counts = dict(m.items())
    for i, k in n.items():
        counts[i] = counts.get(i, 0) + k
    return Multiset(counts)


def mset_delta(i: Hashable) -> Multiset:
    return Multiset({i: 1})


def mpower(x, k: int, m: MonoidSpec, fast: bool = False):
    """``x`` multiplied by itself ``k`` times; the identity when ``k == 0``.

    ``fast=True`` uses square-and-multiply, which needs only associativity
    and agrees with the iterated product.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValidationError(f"exponent must be a non-negative integer, got {k!r}")
    if not fast:
        acc = m.identity
        for _ in range(k):
            acc = m.op(acc, x)
        return acc
    acc, base = m.identity, x
    while k:
        if k & 1:
            acc = m.op(acc, base)
        k >>= 1
        if k:
            base = m.op(base, base)
    return acc


def eval_multiset(family: IndexedFamily, ms: Multiset, mon: MonoidSpec, fast: bool = False):
    """Evaluate ``ms`` as ``prod over supp(ms) of a(i) ** ms(i)``.

    This is the unique monoid map sending each singleton ``{i: 1}`` to
    ``a(i)``; the empty multiset goes to the identity.
    """
    powers = IndexedFamily(lambda i: mpower(family(i), ms[i], mon, fast=fast))
    return fprod(powers, ms.support(), mon)
