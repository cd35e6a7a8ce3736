"""Diagonal determinants, the product-limit survival estimator, and partial products.

Every product here is a finite product over an index set, so each routine
has a well-defined answer on empty input: the multiplicative identity.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

from .errors import EmptyTableError, PropertyViolationError, ValidationError
from .monoid import INT_MUL, IndexedFamily, fprod

__all__ = [
    "det_diag",
    "SurvivalRecord",
    "SurvivalInput",
    "RiskRow",
    "RiskTable",
    "SurvivalCurve",
    "build_risk_table",
    "kaplan_meier",
    "survival_at",
    "product_limit",
    "PartialProductSeq",
    "partial_products",
    "eventually_constant_limit",
]


def _index_family(values: Sequence) -> IndexedFamily:
    """The family ``k -> values[k - 1]`` on ``{1, ..., len(values)}``."""
    return IndexedFamily({k: v for k, v in enumerate(values, 1)})


def det_diag(d: Sequence):
    """Determinant of ``diag(d)``: the product of the diagonal, 1 for the 0x0 matrix."""
    d = list(d)
    return fprod(_index_family(d), range(1, len(d) + 1), INT_MUL)


# Kaplan-Meier

class SurvivalRecord(NamedTuple):
    time: Fraction
    event: bool


@dataclass(frozen=True)
class SurvivalInput:
    """Raw follow-up data: one ``(time, event)`` record per subject.

    ``event`` is True for an observed event and False for a censored record.
    Times are stored as exact rationals.
    """

    records: tuple

    def __init__(self, records: Iterable[tuple]) -> None:
        clean = []
        for time, event in records:
            if isinstance(time, float):
                if time != time or time in (float("inf"), float("-inf")):
                    raise ValidationError(f"time {time!r} is not finite")
                time = Fraction(time)
            elif not isinstance(time, Rational):
                raise ValidationError(f"time {time!r} is not a rational number")
            time = Fraction(time)
            if time < 0:
                raise ValidationError(f"time {time} is negative")
            clean.append(SurvivalRecord(time, bool(event)))
        object.__setattr__(self, "records", tuple(clean))

    def __len__(self) -> int:
        return len(self.records)


class RiskRow(NamedTuple):
    t: Fraction
    events: int
    at_risk: int


@dataclass(frozen=True)
class RiskTable:
    """Distinct event times in increasing order with event and at-risk counts."""

    rows: tuple

    def __post_init__(self) -> None:
        rows = tuple(RiskRow(*r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        for prev, row in zip(rows, rows[1:]):
            if not prev.t < row.t:
                raise ValidationError(f"event times not strictly increasing at {row.t}")
            if row.at_risk > prev.at_risk:
                raise ValidationError(f"at-risk count increases at {row.t}")
        for row in rows:
            if row.events < 1:
                raise ValidationError(f"no events at t={row.t}")

    def __len__(self) -> int:
        return len(self.rows)

    def factor(self, j: int) -> Fraction:
        """``1 - d_j / n_j`` for the 1-based row ``j``."""
        row = self.rows[j - 1]
        if row.events > row.at_risk:
            raise ValidationError(
                f"t={row.t}: {row.events} events exceed {row.at_risk} at risk"
            )
        return 1 - Fraction(row.events, row.at_risk)


@dataclass(frozen=True)
class SurvivalCurve:
    """Right-continuous step function; the value is 1 before the first step."""

    steps: tuple  # of (t, S(t))

    @property
    def times(self) -> list:
        return [t for t, _ in self.steps]

    @property
    def values(self) -> list:
        return [s for _, s in self.steps]


def build_risk_table(data: SurvivalInput | Iterable[tuple]) -> RiskTable:
    """Tabulate events and subjects at risk at each distinct event time.

    At a time shared by events and censorings, the censored subjects are
    still counted at risk (events are processed first).
    """
    if not isinstance(data, SurvivalInput):
        data = SurvivalInput(data)
    event_times = sorted({r.time for r in data.records if r.event})
    if not event_times:
        raise EmptyTableError("survival data contains no events")
    times = sorted(r.time for r in data.records)
    rows = []
    for t in event_times:
        d = sum(1 for r in data.records if r.event and r.time == t)
        n = len(times) - bisect.bisect_left(times, t)
        rows.append(RiskRow(t, d, n))
    return RiskTable(tuple(rows))


def kaplan_meier(table: RiskTable) -> SurvivalCurve:
    """Product-limit curve by the update ``S(t_j) = S(t_{j-1}) * (1 - d_j/n_j)``."""
    s = Fraction(1)
    steps = []
    for j, row in enumerate(table.rows, 1):
        s = s * table.factor(j)
        steps.append((row.t, s))
    return SurvivalCurve(tuple(steps))


def survival_at(curve: SurvivalCurve, t) -> Fraction:
    """Value at the last step time ``<= t``, or 1 before the first step."""
    k = bisect.bisect_right(curve.times, t)
    return Fraction(1) if k == 0 else curve.steps[k - 1][1]


def product_limit(table: RiskTable, t) -> Fraction:
    """``S(t)`` straight from its definition: the product of the factors of all ``t_j <= t``."""
    factors = IndexedFamily(table.factor, range(1, len(table) + 1))
    active = {j for j, row in enumerate(table.rows, 1) if row.t <= t}
    return fprod(factors, active, INT_MUL)


# Partial products

@dataclass(frozen=True)
class PartialProductSeq:
    terms: tuple
    products: tuple  # products[k] = P_k, products[0] = 1

    @property
    def last(self):
        return self.products[-1]


def partial_products(a: Sequence) -> PartialProductSeq:
    """``P_0 = 1`` and ``P_k = P_{k-1} * (1 + a_k)``.

    Also verifies the block identity ``P_N = P_{m-1} * prod_{n=m..N} (1 + a_n)``
    for every ``1 <= m <= N``, with the block taken as a finite set product.
    """
    terms = tuple(a)
    products = [1]
    for x in terms:
        products.append(products[-1] * (1 + x))
    shifted = _index_family([1 + x for x in terms])
    n = len(terms)
    for m in range(1, n + 1):
        block = fprod(shifted, range(m, n + 1), INT_MUL)
        if products[m - 1] * block != products[n]:
            raise PropertyViolationError(f"block identity fails at m={m}")
    return PartialProductSeq(terms, tuple(products))


def eventually_constant_limit(a: Sequence, zero_tail_start: int):
    """Limit of the partial products when ``a_n = 0`` for every ``n > zero_tail_start``.

    ``a`` lists ``a_1, a_2, ...``; terms past its end are taken as 0.  The
    limit is the finite product ``P_{zero_tail_start}``.
    """
    if isinstance(zero_tail_start, bool) or not isinstance(zero_tail_start, int):
        raise ValidationError("zero_tail_start must be an integer")
    if zero_tail_start < 0:
        raise ValidationError("zero_tail_start must be non-negative")
    terms = list(a)
    for n, x in enumerate(terms, 1):
        if n > zero_tail_start and x != 0:
            raise ValidationError(f"a_{n} = {x} is non-zero past the declared tail start")
    head = terms[:zero_tail_start]
    return partial_products(head).last
