"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from schubdeg.exactpoly import Poly
from schubdeg.permgroup import Permutation

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, family="y", arity=None, max_degree=4, max_terms=5):
    arity = draw(st.integers(1, 4)) if arity is None else arity
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        deg = draw(st.integers(0, max_degree))
        e = [0] * arity
        for _ in range(deg):
            e[draw(st.integers(0, arity - 1))] += 1
        terms[tuple(e)] = draw(rationals)
    return Poly(family, arity, terms)


@st.composite
def homogeneous_polys(draw, family="y", arity=3, degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        e = [0] * arity
        for _ in range(degree):
            e[draw(st.integers(0, arity - 1))] += 1
        terms[tuple(e)] = draw(rationals.filter(bool))
    return Poly(family, arity, terms)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


def nonzero_fraction():
    return rationals.filter(lambda v: v != 0).map(Fraction)
