import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finprod import (
    INT_MUL,
    MATRIX2_MUL,
    SORTED_MERGE,
    CommutativityError,
    IndexedFamily,
    Multiset,
    ValidationError,
    eval_multiset,
    fprod,
    mfold_enumerated,
    mpower,
    mset_add,
    mset_delta,
)
from finprod.monoid import matmul2
from finprod.multiset import EMPTY

multisets = st.dictionaries(st.integers(0, 6), st.integers(0, 5), max_size=5).map(Multiset)
primes = IndexedFamily({0: 2, 1: 3, 2: 5, 3: 7, 4: 11, 5: 13, 6: 17})
letters = IndexedFamily(dict(enumerate("abcdefg")))


class TestMultiset:
    def test_add_identity(self):
        m = Multiset({1: 2, 5: 1})
        assert mset_add(EMPTY, m) == m
        assert mset_add(m, Multiset()) == m

    def test_add_delta_twice(self):
        assert mset_add(mset_delta("i"), mset_delta("i")) == Multiset({"i": 2})

    def test_add_pointwise(self):
        assert mset_add(Multiset({1: 2, 2: 1}), Multiset({2: 3})) == Multiset({1: 2, 2: 4})

    def test_delta(self):
        assert mset_delta(3) == Multiset({3: 1})
        assert mset_delta(3).support() == {3}
        assert mset_add(mset_delta(1), mset_delta(2)) == Multiset({1: 1, 2: 1})

    def test_canonical_form(self):
        m = Multiset({1: 0, 2: 3})
        assert dict(m) == {2: 3}
        assert m == Multiset({2: 3})
        assert hash(m) == hash(Multiset({2: 3}))
        assert m[1] == 0 and 1 not in m

    def test_from_iterable(self):
        assert Multiset("abca") == Multiset({"a": 2, "b": 1, "c": 1})

    def test_rejects_bad_counts(self):
        with pytest.raises(ValidationError):
            Multiset({1: -1})
        with pytest.raises(ValidationError):
            Multiset({1: 1.5})

    def test_counts_are_unbounded(self):
        big = Multiset({0: 2**70})
        assert (big + big)[0] == 2**71

    @given(multisets, multisets)
    def test_add_never_stores_zero(self, m, n):
        s = m + n
        assert all(k >= 1 for k in s.values())
        assert s.size() == m.size() + n.size()


class TestMpower:
    def test_zero_exponent(self):
        assert mpower(5, 0, INT_MUL) == 1
        assert mpower(((1, 1), (0, 1)), 0, MATRIX2_MUL) == ((1, 0), (0, 1))

    def test_small(self):
        assert mpower(2, 3, INT_MUL) == 2 * 2 * 2 == 8
        assert mpower(9, 1, INT_MUL) == 9

    @given(st.integers(-4, 4), st.integers(0, 40))
    def test_fast_agrees(self, x, k):
        assert mpower(x, k, INT_MUL, fast=True) == mpower(x, k, INT_MUL) == x**k

    @given(st.integers(0, 20))
    def test_fast_agrees_noncommutative(self, k):
        X = ((1, 1), (0, 1))
        assert mpower(X, k, MATRIX2_MUL, fast=True) == mpower(X, k, MATRIX2_MUL) == ((1, k), (0, 1))

    def test_negative_exponent(self):
        with pytest.raises(ValidationError):
            mpower(2, -1, INT_MUL)


class TestEvalMultiset:
    def test_empty(self):
        assert eval_multiset(primes, EMPTY, INT_MUL) == 1

    def test_delta(self):
        for i in range(7):
            assert eval_multiset(primes, mset_delta(i), INT_MUL) == primes(i)

    def test_worked(self):
        a = IndexedFamily({1: 2, 2: 3})
        assert eval_multiset(a, Multiset({1: 2, 2: 1}), INT_MUL) == 2 * 2 * 3 == 12

    def test_noncommutative_rejected(self):
        with pytest.raises(CommutativityError):
            eval_multiset(IndexedFamily({1: ((1, 1), (0, 1))}), mset_delta(1), MATRIX2_MUL)

    @given(multisets, multisets)
    def test_hom_law(self, m, n):
        for fam, mon in ((primes, INT_MUL), (letters, SORTED_MERGE)):
            assert eval_multiset(fam, m + n, mon) == mon.op(eval_multiset(fam, m, mon), eval_multiset(fam, n, mon))

    @given(multisets)
    def test_sorted_merge_is_free(self, m):
        # in the free commutative monoid on letters, evaluation is injective
        word = eval_multiset(letters, m, SORTED_MERGE)
        assert Multiset(word) == Multiset({letters(i): k for i, k in m.items()})

    @given(multisets, st.randoms(use_true_random=False))
    def test_generator_decomposition(self, m, rnd):
        deltas = [i for i, k in m.items() for _ in range(k)]
        rnd.shuffle(deltas)
        acc = INT_MUL.identity
        for i in deltas:
            acc = INT_MUL.op(acc, eval_multiset(primes, mset_delta(i), INT_MUL))
        assert acc == eval_multiset(primes, m, INT_MUL)

    @given(st.frozensets(st.integers(0, 6), max_size=7))
    def test_sets_are_multisets(self, P):
        assert eval_multiset(primes, Multiset(dict.fromkeys(P, 1)), INT_MUL) == fprod(primes, P, INT_MUL)

    @given(multisets)
    def test_fast_path(self, m):
        assert eval_multiset(primes, m, INT_MUL, fast=True) == eval_multiset(primes, m, INT_MUL)
