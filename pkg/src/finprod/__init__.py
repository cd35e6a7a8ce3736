"""Finite products over finite index sets in commutative monoids, and relatives.

The empty product is the identity throughout: of an enumeration, a set, a
word, a multiset, a trace, a heap, a risk table, or a partial-product prefix.
"""
from .errors import (
    CommutativityError,
    EmptyTableError,
    FinprodError,
    HypothesisError,
    IndexLookupError,
    LawViolationError,
    PropertyViolationError,
    SizeBoundError,
    ValidationError,
)
from .monoid import (
    INT_ADD,
    INT_MUL,
    MATRIX2_MUL,
    RAT_ADD,
    RAT_MUL,
    REAL_ADD,
    REAL_MUL,
    SORTED_MERGE,
    STRING_CONCAT,
    Enumeration,
    IndexedFamily,
    MonoidHom,
    MonoidSpec,
    check_laws,
    fprod,
    fprod_recursive_oracle,
    fsum,
    hom_pushforward,
    mfold_enumerated,
    mod_mul,
)
from .words import (
    BOOL_SEMIRING,
    INT_SEMIRING,
    RAT_SEMIRING,
    TROPICAL_SEMIRING,
    SemiringSpec,
    Word,
    check_expansion,
    check_semiring_laws,
    eval_word,
    poly_expand,
    word_concat,
)
from .multiset import Multiset, eval_multiset, mpower, mset_add, mset_delta
from .trace import (
    IndependenceAlphabet,
    eval_trace,
    make_alphabet,
    normal_form,
    trace_concat,
    trace_equiv,
    trace_equiv_bfs_oracle,
)
from .heap import (
    LabeledPoset,
    check_incomparable_commutation,
    enumerate_linear_extensions,
    heap_prod,
    is_linear_extension,
)
from .applications import (
    build_risk_table,
    det_diag,
    eventually_constant_limit,
    kaplan_meier,
    partial_products,
    survival_at,
)

__version__ = "0.1.0"
