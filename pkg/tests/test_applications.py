from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finprod import (
    EmptyTableError,
    ValidationError,
    build_risk_table,
    det_diag,
    eventually_constant_limit,
    kaplan_meier,
    partial_products,
    survival_at,
)
from finprod.applications import RiskTable, SurvivalInput, product_limit

EXAMPLE = [(1, True), (2, True), (2, False), (3, True)]

records = st.lists(
    st.tuples(st.integers(0, 8).map(Fraction), st.booleans()), min_size=1, max_size=20
).filter(lambda rs: any(e for _, e in rs))
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))


def redistribute_to_the_right(recs):
    """Kaplan-Meier by mass redistribution: each censored subject hands its
    mass equally to everyone ordered after it.  Events sort before censorings
    at tied times.  Returns {event time: S(t)}."""
    order = sorted(recs, key=lambda r: (r[0], not r[1]))
    mass = [Fraction(1, len(order))] * len(order)
    for k, (_, event) in enumerate(order):
        rest = len(order) - k - 1
        if not event and rest:
            share = mass[k] / rest
            for j in range(k + 1, len(order)):
                mass[j] += share
            mass[k] = Fraction(0)
    out = {}
    for t in sorted({t for t, e in order if e}):
        dead = sum(m for (s, e), m in zip(order, mass) if e and s <= t)
        out[t] = 1 - dead
    return out


class TestDetDiag:
    def test_empty(self):
        assert det_diag([]) == 1

    def test_small(self):
        assert det_diag([2, 3]) == 2 * 3
        assert det_diag([4, 0, 7]) == 0
        assert det_diag([Fraction(1, 2), Fraction(4, 3)]) == Fraction(2, 3)

    @given(st.lists(rationals, max_size=10), st.lists(rationals, max_size=10))
    def test_multiplicative(self, left, right):
        assert det_diag(left + right) == det_diag(left) * det_diag(right)


class TestRiskTable:
    def test_example(self):
        table = build_risk_table(EXAMPLE)
        assert [tuple(r) for r in table.rows] == [(1, 1, 4), (2, 1, 3), (3, 1, 1)]

    def test_single(self):
        assert [tuple(r) for r in build_risk_table([(5, True)]).rows] == [(5, 1, 1)]

    def test_all_censored(self):
        with pytest.raises(EmptyTableError):
            build_risk_table([(1, False), (2, False)])
        with pytest.raises(EmptyTableError):
            build_risk_table([])

    def test_bad_times(self):
        with pytest.raises(ValidationError):
            SurvivalInput([(-1, True)])
        with pytest.raises(ValidationError):
            SurvivalInput([(float("nan"), True)])
        with pytest.raises(ValidationError):
            SurvivalInput([("3", True)])
        assert SurvivalInput([(0.5, True)]).records[0].time == Fraction(1, 2)

    def test_table_invariants(self):
        with pytest.raises(ValidationError):
            RiskTable(((2, 1, 3), (1, 1, 2)))
        with pytest.raises(ValidationError):
            RiskTable(((1, 1, 3), (2, 1, 4)))
        with pytest.raises(ValidationError):
            RiskTable(((1, 0, 3),))

    @given(records)
    def test_invariants_hold(self, recs):
        rows = build_risk_table(recs).rows
        for row in rows:
            assert 1 <= row.events <= row.at_risk
        assert all(a.t < b.t and a.at_risk >= b.at_risk for a, b in zip(rows, rows[1:]))


class TestKaplanMeier:
    def test_example(self):
        curve = kaplan_meier(build_risk_table(EXAMPLE))
        assert curve.steps == ((1, Fraction(3, 4)), (2, Fraction(1, 2)), (3, Fraction(0)))
        assert Fraction(3, 4) * Fraction(2, 3) * Fraction(0, 1) == 0
        assert redistribute_to_the_right(EXAMPLE) == {1: Fraction(3, 4), 2: Fraction(1, 2), 3: 0}

    def test_single_row(self):
        curve = kaplan_meier(RiskTable(((7, 1, 4),)))
        assert curve.values == [Fraction(3, 4)]

    def test_events_exceed_risk_set(self):
        with pytest.raises(ValidationError):
            kaplan_meier(RiskTable(((1, 3, 2),)))

    def test_survival_at(self):
        curve = kaplan_meier(build_risk_table(EXAMPLE))
        assert survival_at(curve, Fraction(1, 2)) == 1
        assert survival_at(curve, 0) == 1
        assert survival_at(curve, 1) == Fraction(3, 4)
        assert survival_at(curve, Fraction(3, 2)) == Fraction(3, 4)
        assert survival_at(curve, 2) == Fraction(1, 2)
        assert survival_at(curve, 100) == 0

    @given(records)
    def test_matches_redistribution(self, recs):
        curve = kaplan_meier(build_risk_table(recs))
        assert dict(curve.steps) == redistribute_to_the_right(recs)

    @given(records, st.integers(-1, 10))
    def test_product_limit_and_monotone(self, recs, t):
        table = build_risk_table(recs)
        curve = kaplan_meier(table)
        assert survival_at(curve, t) == product_limit(table, t)
        values = [Fraction(1)] + curve.values
        assert all(0 <= v <= 1 for v in values)
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert survival_at(curve, table.rows[0].t - 1) == 1

    @given(records)
    def test_step_identity(self, recs):
        table = build_risk_table(recs)
        prev = Fraction(1)
        for (t, s), row in zip(kaplan_meier(table).steps, table.rows):
            assert s == prev * (1 - Fraction(row.events, row.at_risk))
            prev = s


class TestPartialProducts:
    def test_empty(self):
        assert partial_products([]).products == (1,)

    def test_zeros(self):
        assert partial_products([0, 0, 0]).products == (1, 1, 1, 1)

    def test_ones(self):
        assert partial_products([1, 1]).products == (1, 2, 4)

    @given(st.lists(rationals, max_size=12))
    def test_recurrence(self, a):
        seq = partial_products(a)
        assert seq.products[0] == 1
        for k, x in enumerate(a, 1):
            assert seq.products[k] == seq.products[k - 1] * (1 + x)


class TestEventuallyConstant:
    def test_all_zero(self):
        assert eventually_constant_limit([0, 0, 0, 0], 0) == 1
        assert eventually_constant_limit([], 0) == 1

    def test_one_then_zeros(self):
        assert eventually_constant_limit([1, 0, 0, 0], 1) == 2

    def test_tail_violation(self):
        with pytest.raises(ValidationError):
            eventually_constant_limit([1, 5, 0], 1)
        with pytest.raises(ValidationError):
            eventually_constant_limit([0], -1)

    def test_tail_start_past_listed_terms(self):
        assert eventually_constant_limit([1, 1], 5) == 4

    @given(st.lists(rationals, max_size=8), st.integers(0, 6))
    def test_equals_any_later_partial_product(self, head, extra):
        a = head + [0] * extra
        limit = eventually_constant_limit(a, len(head))
        products = partial_products(a).products
        assert all(p == limit for p in products[len(head):])
