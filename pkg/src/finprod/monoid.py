"""Monoids and finite products over finite index sets.

A product over a *list* of factors needs only a monoid.  A product over a
*set* of indices needs a commutative monoid, because a set carries no order
and every enumeration of it has to give the same value.  This module provides
both, plus a structural-recursion evaluator used as an independent oracle for
the set product.
"""
from __future__ import annotations

import math
import operator
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .errors import (
    CommutativityError,
    IndexLookupError,
    LawViolationError,
    PropertyViolationError,
    ValidationError,
)

__all__ = [
    "MonoidSpec",
    "MonoidHom",
    "IndexedFamily",
    "Enumeration",
    "canonical_sorted",
    "index_set",
    "check_laws",
    "mfold_enumerated",
    "fprod",
    "fprod_recursive_oracle",
    "remove_max",
    "remove_random",
    "fsum",
    "hom_pushforward",
    "INT_ADD",
    "INT_MUL",
    "RAT_ADD",
    "RAT_MUL",
    "REAL_ADD",
    "REAL_MUL",
    "SORTED_MERGE",
    "STRING_CONCAT",
    "MATRIX2_MUL",
    "mod_mul",
    "matmul2",
]

APPROX_REL_TOL = 1e-12


@dataclass(frozen=True)
class MonoidSpec:
    """A carrier with an associative operation, its identity, and a commutativity flag.

    The carrier is implicit: whatever values ``op`` accepts.  ``approximate``
    marks floating-point carriers, whose operations are only associative up
    to rounding; :meth:`equal` then compares with a relative tolerance.
    """

    op: Callable[[Any, Any], Any]
    identity: Any
    commutative: bool
    name: str = "monoid"
    approximate: bool = False
    eq: Callable[[Any, Any], bool] | None = field(default=None, compare=False)

    def equal(self, x, y) -> bool:
        if self.eq is not None:
            return self.eq(x, y)
        if self.approximate:
            return math.isclose(x, y, rel_tol=APPROX_REL_TOL)
        return x == y

    def fold(self, values: Iterable) -> Any:
        return reduce(self.op, values, self.identity)

    def __repr__(self) -> str:
        return f"MonoidSpec({self.name!r}, commutative={self.commutative})"


@dataclass(frozen=True)
class MonoidHom:
    """A structure-preserving map ``source -> target``."""

    source: MonoidSpec
    target: MonoidSpec
    map: Callable[[Any], Any]

    def __call__(self, x):
        return self.map(x)

    def check(self, samples: Sequence) -> None:
        """Spot-check identity preservation and multiplicativity on ``samples``."""
        if not self.target.equal(self.map(self.source.identity), self.target.identity):
            raise LawViolationError("homomorphism does not preserve the identity")
        for x in samples:
            for y in samples:
                lhs = self.map(self.source.op(x, y))
                rhs = self.target.op(self.map(x), self.map(y))
                if not self.target.equal(lhs, rhs):
                    raise LawViolationError(
                        f"homomorphism not multiplicative at ({x!r}, {y!r})"
                    )


class IndexedFamily:
    """A family ``i -> a(i)`` over an index universe.

    ``universe=None`` means the lookup accepts any index (e.g. all naturals).
    Built from a mapping, the universe defaults to the mapping's keys.
    """

    __slots__ = ("_lookup", "universe")

    def __init__(self, lookup: Callable[[Any], Any] | Mapping, universe: Iterable | None = None):
        if isinstance(lookup, Mapping):
            table = dict(lookup)
            if universe is None:
                universe = table.keys()
            lookup = table.__getitem__
        self._lookup = lookup
        self.universe = None if universe is None else frozenset(universe)

    def __call__(self, i):
        if self.universe is not None and i not in self.universe:
            raise IndexLookupError(f"index {i!r} is outside the family's universe")
        try:
            return self._lookup(i)
        except KeyError:
            raise IndexLookupError(f"index {i!r} is outside the family's universe") from None

    def compose(self, f: Callable[[Any], Any]) -> IndexedFamily:
        """The family ``i -> f(a(i))`` on the same universe."""
        return IndexedFamily(lambda i: f(self(i)), self.universe)

    def __repr__(self) -> str:
        if self.universe is None:
            return "IndexedFamily(<unrestricted>)"
        return f"IndexedFamily(universe={set(self.universe)!r})"


def canonical_sorted(items: Iterable) -> list:
    """Sort by natural order, falling back to (type name, repr) for mixed types."""
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=lambda x: (type(x).__name__, repr(x)))


def index_set(indices: Iterable[Hashable]) -> frozenset:
    """Coerce to a finite index set; sequences with repeated entries are rejected."""
    if isinstance(indices, (set, frozenset)):
        return frozenset(indices)
    items = list(indices)
    result = frozenset(items)
    if len(result) != len(items):
        raise ValidationError("index set contains duplicate indices")
    return result


@dataclass(frozen=True)
class Enumeration:
    """An ordering of a finite index set: a sequence without repeats."""

    order: tuple

    def __init__(self, order: Iterable) -> None:
        order = tuple(order)
        if len(set(order)) != len(order):
            raise ValidationError(f"enumeration repeats an index: {order!r}")
        object.__setattr__(self, "order", order)

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def as_set(self) -> frozenset:
        return frozenset(self.order)

    def permuted(self, perm: Sequence[int]) -> Enumeration:
        """Reorder by ``perm``: position ``k`` receives ``order[perm[k]]``."""
        return Enumeration(self.order[k] for k in perm)


def check_laws(m: MonoidSpec, samples: Sequence) -> None:
    """Raise :class:`LawViolationError` if ``m`` breaks a monoid law on ``samples``.

    Associativity is checked on all triples, so keep samples small.
    """
    e = m.identity
    for x in samples:
        if not (m.equal(m.op(e, x), x) and m.equal(m.op(x, e), x)):
            raise LawViolationError(f"{m.name}: identity is not neutral for {x!r}")
    for x in samples:
        for y in samples:
            xy = m.op(x, y)
            if m.commutative and not m.equal(xy, m.op(y, x)):
                raise LawViolationError(f"{m.name}: {x!r} and {y!r} do not commute")
            for z in samples:
                if not m.equal(m.op(xy, z), m.op(x, m.op(y, z))):
                    raise LawViolationError(
                        f"{m.name}: associativity fails on ({x!r}, {y!r}, {z!r})"
                    )


def _require_commutative(m: MonoidSpec) -> None:
    if not m.commutative:
        raise CommutativityError(
            f"{m.name} is not commutative; a product over a set is undefined "
            "(use mfold_enumerated for an ordered product)"
        )


def mfold_enumerated(family: IndexedFamily, enum: Enumeration | Sequence, m: MonoidSpec):
    """Multiply ``a(e(1)) * ... * a(e(n))`` left to right; the identity when empty."""
    if not isinstance(enum, Enumeration):
        enum = Enumeration(enum)
    acc = m.identity
    for i in enum:
        acc = m.op(acc, family(i))
    return acc


def fprod(family: IndexedFamily, P: Iterable, m: MonoidSpec):
    """Product of ``family`` over the finite set ``P`` in a commutative monoid.

    Evaluated along the ascending canonical ordering of ``P``; any other
    ordering gives the same value.
    """
    _require_commutative(m)
    return mfold_enumerated(family, canonical_sorted(index_set(P)), m)


def remove_max(Q: frozenset):
    """Removal rule for the recursive oracle: the largest index."""
    return canonical_sorted(Q)[-1]


def remove_random(rng: random.Random) -> Callable[[frozenset], Any]:
    """Removal rule picking a pseudo-random index on every step."""

    def choose(Q: frozenset):
        return rng.choice(canonical_sorted(Q))

    return choose


def fprod_recursive_oracle(
    family: IndexedFamily,
    P: Iterable,
    m: MonoidSpec,
    choose: Callable[[frozenset], Any] = remove_max,
):
    """The unique ``f`` with ``f({}) = 1`` and ``f(Q + {x}) = f(Q) * a(x)``.

    Evaluated by plain structural recursion: pick ``x = choose(P)``, recurse
    on ``P - {x}``, multiply by ``a(x)``.  It shares no code path with
    :func:`fprod` and serves as a differential oracle for it.
    """
    _require_commutative(m)
    P = index_set(P)

    def f(Q: frozenset):
        if not Q:
            return m.identity
        x = choose(Q)
        if x not in Q:
            raise ValidationError(f"removal rule chose {x!r}, which is not in the set")
        return m.op(f(Q - {x}), family(x))

    return f(P)


def fsum(family: IndexedFamily, P: Iterable):
    """Sum over ``P`` of exact integers or rationals; 0 on the empty set."""
    return fprod(family, P, INT_ADD)


def hom_pushforward(h: MonoidHom, family: IndexedFamily, P: Iterable):
    """Return ``fprod(h . a, P)`` after checking it equals ``h(fprod(a, P))``."""
    P = index_set(P)
    pushed = fprod(family.compose(h.map), P, h.target)
    mapped = h.map(fprod(family, P, h.source))
    if not h.target.equal(pushed, mapped):
        raise PropertyViolationError(
            f"h(prod a) = {mapped!r} differs from prod(h . a) = {pushed!r}"
        )
    return pushed


# Stock monoids

INT_ADD = MonoidSpec(operator.add, 0, True, "(Z,+,0)")
INT_MUL = MonoidSpec(operator.mul, 1, True, "(Z,*,1)")
RAT_ADD = MonoidSpec(operator.add, Fraction(0), True, "(Q,+,0)")
RAT_MUL = MonoidSpec(operator.mul, Fraction(1), True, "(Q,*,1)")
REAL_ADD = MonoidSpec(operator.add, 0.0, True, "(R,+,0)", approximate=True)
REAL_MUL = MonoidSpec(operator.mul, 1.0, True, "(R,*,1)", approximate=True)

# Sorted strings under merge: a concrete free commutative monoid on characters.
SORTED_MERGE = MonoidSpec(lambda x, y: "".join(sorted(x + y)), "", True, "sorted-merge")
STRING_CONCAT = MonoidSpec(operator.add, "", False, "string-concat")


def matmul2(x, y):
    """Product of 2x2 matrices given as ``((a, b), (c, d))``."""
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


MATRIX2_MUL = MonoidSpec(matmul2, ((1, 0), (0, 1)), False, "2x2-matrices")


def mod_mul(n: int) -> MonoidSpec:
    """Multiplicative monoid of residues modulo ``n``."""
    return MonoidSpec(lambda x, y: (x * y) % n, 1 % n, True, f"(Z/{n},*,1)")
