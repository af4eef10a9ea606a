"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from algebraic_orders.ordinal import Ordinal

binary_words = st.text(alphabet="01", max_size=10).map(tuple)
nonempty_binary_words = st.text(alphabet="01", min_size=1, max_size=10).map(tuple)


@st.composite
def cnf_from_exponents(draw, exponents, max_terms=3, max_coeff=4):
    """An ordinal whose CNF exponents are drawn from ``exponents``."""
    chosen = draw(st.lists(exponents, max_size=max_terms))
    distinct = sorted(set(chosen), reverse=True)
    coeffs = draw(st.lists(st.integers(1, max_coeff), min_size=len(distinct), max_size=len(distinct)))
    return Ordinal(tuple(zip(distinct, coeffs)))


def below_omega_power(n):
    """Ordinals below w^n (finite exponents < n)."""
    return cnf_from_exponents(st.integers(0, n - 1).map(Ordinal.of))


def below_tower(n):
    """Ordinals below w^(w^n)."""
    return cnf_from_exponents(below_omega_power(n))


finite_ordinals = st.integers(0, 50).map(Ordinal.of)
