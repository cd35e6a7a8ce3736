"""Products over labeled finite posets (heaps of pieces)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .errors import HypothesisError, SizeBoundError, ValidationError
from .monoid import MonoidSpec, canonical_sorted

__all__ = [
    "LabeledPoset",
    "parse_poset",
    "is_linear_extension",
    "enumerate_linear_extensions",
    "linear_extension_product",
    "check_incomparable_commutation",
    "find_noncommuting_pair",
    "heap_prod",
    "EXTENSION_MAX_NODES",
]

EXTENSION_MAX_NODES = 10


def _transitive_closure(nodes: frozenset, pairs: Iterable[tuple]) -> frozenset:
    succ = {x: set() for x in nodes}
    for a, b in pairs:
        succ[a].add(b)
    closure = set()
    for start in nodes:
        stack = list(succ[start])
        seen = set()
        while stack:
            y = stack.pop()
            if y in seen:
                continue
            seen.add(y)
            stack.extend(succ[y])
        closure.update((start, y) for y in seen)
    return frozenset(closure)


@dataclass(frozen=True)
class LabeledPoset:
    """Finite strict order ``lt`` on ``nodes`` with a label per node.

    The constructor expects the full relation and checks it is irreflexive
    and transitive; use :meth:`from_relations` to start from covers.
    """

    nodes: frozenset
    lt: frozenset
    labels: Mapping[Hashable, Any]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "lt", frozenset(self.lt))
        object.__setattr__(self, "labels", dict(self.labels))
        for a, b in self.lt:
            if a not in self.nodes or b not in self.nodes:
                raise ValidationError(f"order relation mentions unknown node in ({a!r}, {b!r})")
            if a == b:
                raise ValidationError(f"order relation is not irreflexive at {a!r}")
        if _transitive_closure(self.nodes, self.lt) != self.lt:
            raise ValidationError("order relation is not transitive")
        missing = self.nodes - self.labels.keys()
        if missing:
            raise ValidationError(f"no label for nodes {set(missing)!r}")

    @classmethod
    def from_relations(
        cls, nodes: Iterable[Hashable], relations: Iterable[tuple], labels: Mapping
    ) -> LabeledPoset:
        """Build from a cover (or any generating) relation by transitive closure.

        A cycle in ``relations`` makes the closure reflexive and is rejected.
        """
        nodes = frozenset(nodes)
        relations = list(relations)
        for a, b in relations:
            if a not in nodes or b not in nodes:
                raise ValidationError(f"relation ({a!r}, {b!r}) mentions an unknown node")
        closure = _transitive_closure(nodes, relations)
        cyclic = canonical_sorted(a for a, b in closure if a == b)
        if cyclic:
            raise ValidationError(f"order relation has a cycle through {cyclic[0]!r}")
        return cls(nodes, closure, labels)

    def less(self, x, y) -> bool:
        return (x, y) in self.lt

    def comparable(self, x, y) -> bool:
        return x == y or (x, y) in self.lt or (y, x) in self.lt

    def maximal(self) -> list:
        """Maximal nodes in canonical order."""
        below = {a for a, _ in self.lt}
        return canonical_sorted(self.nodes - below)

    def minimal(self) -> list:
        above = {b for _, b in self.lt}
        return canonical_sorted(self.nodes - above)

    def without(self, node) -> LabeledPoset:
        """The induced subposet on ``nodes - {node}``."""
        rest = self.nodes - {node}
        return LabeledPoset(
            rest,
            frozenset((a, b) for a, b in self.lt if a != node and b != node),
            {x: self.labels[x] for x in rest},
        )

    def __len__(self) -> int:
        return len(self.nodes)


def parse_poset(text: str, label: Callable[[str], Any] = int) -> LabeledPoset:
    """Parse ``node <name> <label>`` and ``lt <a> <b>`` lines (``a`` below ``b``).

    Blank lines and lines starting with ``#`` are skipped.
    """
    labels: dict = {}
    relations = []
    for n, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        kind = fields[0]
        if kind == "node" and len(fields) == 3:
            name = fields[1]
            if name in labels:
                raise ValidationError(f"line {n}: node {name!r} declared twice")
            try:
                labels[name] = label(fields[2])
            except ValueError:
                raise ValidationError(f"line {n}: bad label {fields[2]!r}") from None
        elif kind == "lt" and len(fields) == 3:
            relations.append((n, fields[1], fields[2]))
        else:
            raise ValidationError(f"line {n}: cannot parse {line.strip()!r}")
    for n, a, b in relations:
        for x in (a, b):
            if x not in labels:
                raise ValidationError(f"line {n}: undeclared node {x!r}")
    return LabeledPoset.from_relations(labels, [(a, b) for _, a, b in relations], labels)


def is_linear_extension(p: LabeledPoset, seq: Sequence) -> bool:
    seq = tuple(seq)
    if len(seq) != len(p.nodes) or set(seq) != p.nodes:
        return False
    position = {x: k for k, x in enumerate(seq)}
    return all(position[a] < position[b] for a, b in p.lt)


def enumerate_linear_extensions(p: LabeledPoset, max_nodes: int = EXTENSION_MAX_NODES) -> list:
    """All linear extensions, by backtracking over the currently minimal nodes."""
    if len(p.nodes) > max_nodes:
        raise SizeBoundError(f"{len(p.nodes)} nodes exceeds the enumeration bound {max_nodes}")
    order = canonical_sorted(p.nodes)
    preds = {x: 0 for x in order}
    succ = {x: [] for x in order}
    for a, b in p.lt:
        preds[b] += 1
        succ[a].append(b)
    placed = set()
    prefix: list = []
    out: list = []

    def extend():
        if len(prefix) == len(order):
            out.append(tuple(prefix))
            return
        for x in order:
            if x in placed or preds[x]:
                continue
            placed.add(x)
            prefix.append(x)
            for y in succ[x]:
                preds[y] -= 1
            extend()
            for y in succ[x]:
                preds[y] += 1
            prefix.pop()
            placed.discard(x)

    extend()
    return out


def linear_extension_product(p: LabeledPoset, seq: Sequence, m: MonoidSpec):
    """Multiply labels along ``seq``, which must be a linear extension of ``p``."""
    if not is_linear_extension(p, seq):
        raise ValidationError(f"{tuple(seq)!r} is not a linear extension")
    acc = m.identity
    for x in seq:
        acc = m.op(acc, p.labels[x])
    return acc


def find_noncommuting_pair(p: LabeledPoset, m: MonoidSpec) -> tuple | None:
    """First incomparable pair (canonical order) whose labels do not commute."""
    for x, y in combinations(canonical_sorted(p.nodes), 2):
        if p.comparable(x, y):
            continue
        lx, ly = p.labels[x], p.labels[y]
        if not m.equal(m.op(lx, ly), m.op(ly, lx)):
            return (x, y)
    return None


def check_incomparable_commutation(p: LabeledPoset, m: MonoidSpec) -> bool:
    return find_noncommuting_pair(p, m) is None


def heap_prod(p: LabeledPoset, m: MonoidSpec, extension: Sequence | None = None):
    """Product of the heap ``p``: the common value over all linear extensions.

    Computed by removing a maximal node (the least one in canonical order),
    evaluating the rest, and multiplying by the removed label on the right.
    Incomparable labels must commute, otherwise :class:`HypothesisError` is
    raised.  Passing ``extension`` skips that check and evaluates along the
    given linear extension, which is only meaningful for diagnostics.
    """
    if extension is not None:
        return linear_extension_product(p, extension, m)
    bad = find_noncommuting_pair(p, m)
    if bad is not None:
        raise HypothesisError(
            f"incomparable nodes {bad[0]!r} and {bad[1]!r} have non-commuting labels", bad
        )
    return _heap_prod_recursive(p, m)


def _heap_prod_recursive(p: LabeledPoset, m: MonoidSpec):
    # Unrolled recursion: peel maximal nodes off the top, then multiply the
    # peeled labels back in bottom-up, i.e. prod(P) = prod(P - {top}) * l(top).
    above = {x: 0 for x in p.nodes}
    below = {x: [] for x in p.nodes}
    for a, b in p.lt:
        above[a] += 1
        below[b].append(a)
    remaining = set(p.nodes)
    peeled = []
    while remaining:
        top = canonical_sorted(x for x in remaining if not above[x])[0]
        remaining.discard(top)
        peeled.append(top)
        for x in below[top]:
            above[x] -= 1
    acc = m.identity
    for x in reversed(peeled):
        acc = m.op(acc, p.labels[x])
    return acc
