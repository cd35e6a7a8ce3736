"""Trace monoids: words modulo swapping adjacent independent letters.

Letters are any hashable values; words are sequences of letters (a ``str``
works when every letter is a single character).  Functions returning words
return tuples.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import HypothesisError, SizeBoundError, ValidationError
from .monoid import MonoidSpec, canonical_sorted

__all__ = [
    "IndependenceAlphabet",
    "make_alphabet",
    "parse_alphabet",
    "trace_equiv",
    "trace_equiv_bfs_oracle",
    "trace_class",
    "normal_form",
    "trace_concat",
    "eval_trace",
    "BFS_MAX_LENGTH",
]

BFS_MAX_LENGTH = 10


@dataclass(frozen=True)
class IndependenceAlphabet:
    """Letters plus the unordered pairs of letters that may be swapped."""

    letters: frozenset
    independent: frozenset  # of 2-element frozensets

    def __post_init__(self) -> None:
        for pair in self.independent:
            if len(pair) != 2:
                raise ValidationError(f"independence pair {set(pair)!r} is reflexive")
            unknown = pair - self.letters
            if unknown:
                raise ValidationError(f"independence pair uses unknown letters {set(unknown)!r}")

    def is_independent(self, a: Hashable, b: Hashable) -> bool:
        return frozenset((a, b)) in self.independent

    @cached_property
    def _dependent_pairs(self) -> tuple:
        return tuple(
            (a, b)
            for a, b in combinations(canonical_sorted(self.letters), 2)
            if not self.is_independent(a, b)
        )

    def dependent_pairs(self) -> list[tuple]:
        """Unordered pairs of distinct, dependent letters."""
        return list(self._dependent_pairs)

    def validate_word(self, w: Sequence) -> tuple:
        w = tuple(w)
        for x in w:
            if x not in self.letters:
                raise ValidationError(f"letter {x!r} is not in the alphabet")
        return w


def make_alphabet(letters: Iterable[Hashable], pairs: Iterable[tuple] = ()) -> IndependenceAlphabet:
    """Build an alphabet; ``pairs`` may list each independent pair in either or both orders."""
    letters = frozenset(letters)
    independent = set()
    for a, b in pairs:
        if a == b:
            raise ValidationError(f"letter {a!r} cannot be independent of itself")
        for x in (a, b):
            if x not in letters:
                raise ValidationError(f"independence pair uses unknown letter {x!r}")
        independent.add(frozenset((a, b)))
    return IndependenceAlphabet(letters, frozenset(independent))


def parse_alphabet(text: str) -> IndependenceAlphabet:
    """Parse the alphabet text format.

    First non-blank line: whitespace-separated single-character letters.
    Every later non-blank line: two letters forming an independent pair.
    """
    lines = [(n, line.split()) for n, line in enumerate(text.splitlines(), 1) if line.strip()]
    if not lines:
        raise ValidationError("alphabet file is empty")
    _, letters = lines[0]
    for x in letters:
        if len(x) != 1:
            raise ValidationError(f"line {lines[0][0]}: letter {x!r} is not a single character")
    if len(set(letters)) != len(letters):
        raise ValidationError(f"line {lines[0][0]}: duplicate letter")
    pairs = []
    for n, fields in lines[1:]:
        if len(fields) != 2:
            raise ValidationError(f"line {n}: expected two letters, got {len(fields)}")
        pairs.append(tuple(fields))
    try:
        return make_alphabet(letters, pairs)
    except ValidationError as exc:
        raise ValidationError(f"alphabet: {exc}") from None


def trace_equiv(u: Sequence, v: Sequence, alph: IndependenceAlphabet) -> bool:
    """Decide whether ``u`` and ``v`` represent the same trace.

    Two words are equivalent iff they have the same letter counts and the
    same subsequence on every pair of distinct dependent letters.
    """
    u = alph.validate_word(u)
    v = alph.validate_word(v)
    if Counter(u) != Counter(v):
        return False
    for a, b in alph._dependent_pairs:
        keep = (a, b)
        if [x for x in u if x in keep] != [x for x in v if x in keep]:
            return False
    return True


def _swap_neighbours(w: tuple, alph: IndependenceAlphabet):
    for k in range(len(w) - 1):
        a, b = w[k], w[k + 1]
        if a != b and alph.is_independent(a, b):
            yield w[:k] + (b, a) + w[k + 2:]


def trace_class(u: Sequence, alph: IndependenceAlphabet, max_length: int = BFS_MAX_LENGTH) -> set:
    """All words reachable from ``u`` by swapping adjacent independent letters."""
    u = alph.validate_word(u)
    if len(u) > max_length:
        raise SizeBoundError(f"word length {len(u)} exceeds the search bound {max_length}")
    seen = {u}
    queue = deque([u])
    while queue:
        for nxt in _swap_neighbours(queue.popleft(), alph):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def trace_equiv_bfs_oracle(
    u: Sequence, v: Sequence, alph: IndependenceAlphabet, max_length: int = BFS_MAX_LENGTH
) -> bool:
    """Ground-truth equivalence by breadth-first search over single swaps."""
    u = alph.validate_word(u)
    v = alph.validate_word(v)
    if len(v) > max_length:
        raise SizeBoundError(f"word length {len(v)} exceeds the search bound {max_length}")
    if len(u) > max_length:
        raise SizeBoundError(f"word length {len(u)} exceeds the search bound {max_length}")
    seen = {u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            return True
        for nxt in _swap_neighbours(w, alph):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def _rank(alph: IndependenceAlphabet, order: Sequence | None) -> dict:
    if order is None:
        order = canonical_sorted(alph.letters)
    rank = {x: k for k, x in enumerate(order)}
    missing = alph.letters - rank.keys()
    if missing:
        raise ValidationError(f"letter order omits {set(missing)!r}")
    return rank


def normal_form(u: Sequence, alph: IndependenceAlphabet, order: Sequence | None = None) -> tuple:
    """Lexicographically least word equivalent to ``u`` under ``order``.

    ``order`` lists the letters from least to greatest and defaults to their
    natural sort order.  Greedy: at each step emit the least letter whose
    first remaining occurrence is preceded only by letters independent of it.
    """
    u = list(alph.validate_word(u))
    rank = _rank(alph, order)
    out = []
    while u:
        best = None
        blockers = []
        for k, x in enumerate(u):
            if x not in blockers and all(alph.is_independent(x, y) for y in blockers):
                if best is None or rank[x] < rank[u[best]]:
                    best = k
            blockers.append(x)
        out.append(u.pop(best))
    return tuple(out)


def trace_concat(
    u: Sequence, v: Sequence, alph: IndependenceAlphabet, order: Sequence | None = None
) -> tuple:
    """Normal form of the product of the traces of ``u`` and ``v``."""
    return normal_form(tuple(u) + tuple(v), alph, order)


def eval_trace(u: Sequence, labels: Mapping[Any, Any], m: MonoidSpec, alph: IndependenceAlphabet):
    """Evaluate the trace of ``u`` by multiplying the labels of its letters.

    Requires ``labels[a]`` and ``labels[b]`` to commute for every independent
    pair ``{a, b}``; this is what makes the value independent of the chosen
    representative, and it is checked before evaluating.
    """
    u = alph.validate_word(u)
    missing = alph.letters - labels.keys()
    if missing:
        raise ValidationError(f"no label for letters {set(missing)!r}")
    for pair in alph.independent:
        a, b = canonical_sorted(pair)
        la, lb = labels[a], labels[b]
        if not m.equal(m.op(la, lb), m.op(lb, la)):
            raise HypothesisError(
                f"labels of independent letters {a!r} and {b!r} do not commute", (a, b)
            )
    acc = m.identity
    for x in u:
        acc = m.op(acc, labels[x])
    return acc
