"""Words under concatenation, their evaluation, and subset expansion in semirings."""
from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .errors import LawViolationError, PropertyViolationError, SizeBoundError
from .monoid import IndexedFamily, MonoidSpec, canonical_sorted, check_laws, fprod, index_set

__all__ = [
    "Word",
    "EMPTY_WORD",
    "word_concat",
    "eval_word",
    "SemiringSpec",
    "check_semiring_laws",
    "poly_expand",
    "increment_product",
    "check_expansion",
    "INT_SEMIRING",
    "RAT_SEMIRING",
    "BOOL_SEMIRING",
    "TROPICAL_SEMIRING",
    "DEFAULT_EXPAND_BOUND",
]

DEFAULT_EXPAND_BOUND = 20


class Word(tuple):
    """A finite sequence of letters; ``+`` is concatenation."""

    def __new__(cls, letters: Iterable = ()):
        return super().__new__(cls, letters)

    def __add__(self, other):
        return Word(tuple.__add__(self, tuple(other)))

    def __repr__(self) -> str:
        return f"Word({list(self)!r})"


EMPTY_WORD = Word()


def word_concat(u: Sequence, v: Sequence) -> Word:
    return Word(u) + Word(v)


def eval_word(w: Sequence, m: MonoidSpec):
    """Left fold of ``m.op`` over the letters of ``w``.

    This is the unique monoid map from words to ``m`` sending a one-letter
    word to its letter; ``m`` may be non-commutative.
    """
    acc = m.identity
    for letter in w:
        acc = m.op(acc, letter)
    return acc


@dataclass(frozen=True)
class SemiringSpec:
    """Two commutative monoids on one carrier, with ``mul`` distributing over ``add``."""

    add: Callable[[Any, Any], Any]
    zero: Any
    mul: Callable[[Any, Any], Any]
    one: Any
    name: str = "semiring"

    @property
    def additive(self) -> MonoidSpec:
        return MonoidSpec(self.add, self.zero, True, f"{self.name}/add")

    @property
    def multiplicative(self) -> MonoidSpec:
        return MonoidSpec(self.mul, self.one, True, f"{self.name}/mul")


def check_semiring_laws(s: SemiringSpec, samples: Sequence) -> None:
    check_laws(s.additive, samples)
    check_laws(s.multiplicative, samples)
    for x in samples:
        if s.mul(x, s.zero) != s.zero:
            raise LawViolationError(f"{s.name}: zero does not annihilate {x!r}")
        for y in samples:
            for z in samples:
                if s.mul(x, s.add(y, z)) != s.add(s.mul(x, y), s.mul(x, z)):
                    raise LawViolationError(
                        f"{s.name}: distributivity fails on ({x!r}, {y!r}, {z!r})"
                    )


def poly_expand(
    b: IndexedFamily,
    P: Iterable,
    s: SemiringSpec,
    max_size: int = DEFAULT_EXPAND_BOUND,
):
    """Sum over all subsets ``S`` of ``P`` of the product of ``b`` over ``S``.

    The empty subset contributes the empty product, ``s.one``.  Subsets are
    visited in binary-counter order over the ascending index list.
    """
    indices = canonical_sorted(index_set(P))
    if len(indices) > max_size:
        raise SizeBoundError(
            f"subset expansion over {len(indices)} indices exceeds the bound {max_size}"
        )
    values = [b(i) for i in indices]
    # products[mask] is the product over the subset encoded by mask, built
    # from the subset without its highest index, so factors stay ascending
    products = [s.one] * (1 << len(indices))
    total = s.add(s.zero, s.one)
    for mask in range(1, 1 << len(indices)):
        top = mask.bit_length() - 1
        products[mask] = s.mul(products[mask ^ (1 << top)], values[top])
        total = s.add(total, products[mask])
    return total


def increment_product(b: IndexedFamily, P: Iterable, s: SemiringSpec):
    """Product over ``P`` of ``1 + b(x)``."""
    return fprod(b.compose(lambda v: s.add(s.one, v)), P, s.multiplicative)


def check_expansion(
    b: IndexedFamily,
    P: Iterable,
    s: SemiringSpec,
    max_size: int = DEFAULT_EXPAND_BOUND,
) -> tuple:
    """Return ``(product, expansion)``; raise if the two sides differ."""
    P = index_set(P)
    expansion = poly_expand(b, P, s, max_size)
    product = increment_product(b, P, s)
    if product != expansion:
        raise PropertyViolationError(
            f"product of increments {product!r} != subset expansion {expansion!r}"
        )
    return product, expansion


INT_SEMIRING = SemiringSpec(operator.add, 0, operator.mul, 1, "Z")
RAT_SEMIRING = SemiringSpec(operator.add, Fraction(0), operator.mul, Fraction(1), "Q")
BOOL_SEMIRING = SemiringSpec(operator.or_, False, operator.and_, True, "Boolean")
TROPICAL_SEMIRING = SemiringSpec(min, float("inf"), operator.add, 0, "min-plus")
