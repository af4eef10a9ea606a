import pytest
from hypothesis import given, settings

from algebraic_orders.closure import (
    FiniteLayout,
    GeometricLayout,
    OmegaLayout,
    ProductLayout,
    SumLayout,
    ZeroLayout,
    ordinal_layout,
    scheme_for_ordinal,
    scheme_geometric,
    scheme_product,
    scheme_sum,
)
from algebraic_orders.errors import InputError, OutOfRangeError
from algebraic_orders.ordinal import Ordinal, format_ordinal, parse_ordinal
from algebraic_orders.scheme import format_scheme, frontier, parse_scheme, unfold, validate
from algebraic_orders.words import lex_compare

import corpus
from strategies import below_tower

OMEGA = parse_scheme(corpus.OMEGA)
ONE = parse_scheme("F = 1")
TWO = parse_scheme("N = +(1, 1)")
THREE = parse_scheme("N = +(1, +(1, 1))")


def leaves(s, depth):
    return ["".join(w) for w, _ in frontier(unfold(s, depth))]


def test_sum_of_omegas_splits_into_two_chains():
    s = scheme_sum(OMEGA, OMEGA)
    assert format_scheme(s) == "S = +(X, X_1)\nX = +(1, X)\nX_1 = +(1, X_1)\n"
    words = leaves(s, 6)
    left = [w[1:] for w in words if w[0] == "0"]
    right = [w[1:] for w in words if w[0] == "1"]
    assert left == right == ["0", "10", "110", "1110", "11110"]


def test_sum_of_single_leaves():
    assert leaves(scheme_sum(ONE, ONE), 2) == ["0", "1"]


def test_sum_with_divergent_left_operand():
    s = scheme_sum(parse_scheme("Z = Z"), OMEGA)
    for d in range(8):
        assert all(w.startswith("1") for w in leaves(s, d))


def test_product_of_omegas_is_omega_squared():
    s = scheme_product(OMEGA, OMEGA)
    layout = ProductLayout(outer=OmegaLayout(), inner=OmegaLayout())
    words = leaves(s, 10)
    values = [layout.decode(w) for w in words]
    assert values == sorted(values) and len(set(values)) == len(values)
    assert all(v < parse_ordinal("w^2") for v in values)


def test_product_with_single_leaf_keeps_frontier():
    s = scheme_product(OMEGA, ONE)
    assert leaves(s, 12)[:5] == leaves(OMEGA, 6)[:5]


def test_product_of_finite_schemes():
    assert len(leaves(scheme_product(TWO, THREE), 6)) == 6


def test_geometric_of_omega_is_the_omega_omega_system():
    s = scheme_geometric(OMEGA)
    assert format_scheme(s) == "F0 = G(1)\nG(x0) = +(x0, G(X(x0)))\nX(x0) = +(x0, X(x0))\n"
    reference = parse_scheme(corpus.OMEGA_OMEGA)
    for d in range(10):
        assert leaves(s, d) == leaves(reference, d)


def test_geometric_of_single_leaf_is_omega():
    words = leaves(scheme_geometric(ONE), 12)
    assert words[:4] == ["0", "10", "110", "1110"]


def test_geometric_of_two_is_an_increasing_chain():
    words = [w for w, _ in frontier(unfold(scheme_geometric(TWO), 10))]
    assert len(words) >= 8
    assert all(lex_compare(u, v).is_less for u, v in zip(words, words[1:]))
    layout = GeometricLayout(FiniteLayout(2))
    vals = [layout.decode(w) for w in words]
    assert [int(v) for v in vals] == list(range(len(vals)))


def test_compositions_stay_valid():
    for s in corpus.random_compositions(11, 40):
        validate(s)
        assert parse_scheme(format_scheme(s)) == s


def test_closure_renames_apart():
    s = scheme_product(scheme_sum(OMEGA, OMEGA), scheme_sum(OMEGA, OMEGA))
    names = [eq.name for eq in s.equations]
    assert len(names) == len(set(names))


# -- synthesized schemes ------------------------------------------------------------------

def test_scheme_for_small_ordinals():
    assert format_scheme(scheme_for_ordinal(parse_ordinal("w"))) == "X = +(1, X)\n"
    assert format_scheme(scheme_for_ordinal(3)) == "N = +(1, +(1, 1))\n"
    assert leaves(scheme_for_ordinal(0), 10) == []


def test_layout_of_omega_squared_times_two_plus_one():
    layout = ordinal_layout(parse_ordinal("w^2*2+1"))
    square = ProductLayout(outer=OmegaLayout(), inner=OmegaLayout())
    assert layout == SumLayout(SumLayout(square, square), FiniteLayout(1))
    assert ordinal_layout(0) == ZeroLayout()


def test_out_of_range_rejected():
    with pytest.raises(OutOfRangeError):
        scheme_for_ordinal(parse_ordinal("w^w^w"))
    with pytest.raises(OutOfRangeError):
        scheme_for_ordinal(parse_ordinal("w^(w^w+1)"))


def test_synthesis_is_deterministic():
    a = parse_ordinal("w^(w^2+3)*2+w^5+7")
    assert scheme_for_ordinal(a) == scheme_for_ordinal(a)


def test_decode_rejects_non_leaves():
    layout = ordinal_layout(parse_ordinal("w*2"))
    with pytest.raises(InputError):
        layout.decode("1")
    with pytest.raises(InputError):
        layout.decode("0101")


@settings(max_examples=40, deadline=None)
@given(below_tower(2))
def test_decode_is_order_embedding(a):
    layout = ordinal_layout(a)
    assert layout.value == a
    s = layout.scheme()
    words = [w for w, _ in frontier(unfold(s, 9))]
    values = [layout.decode(w) for w in words]
    assert all(x < y for x, y in zip(values, values[1:])), format_ordinal(a)
    assert all(v < a for v in values)
