from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from schubdeg.degrees import d_chains, vandermonde
from schubdeg.exactpoly import (
    ArityMismatchError,
    Poly,
    apply_diff_operator,
    aux_family,
    compose,
    d_pairing,
    determinant,
    divides_exactly,
    dumps,
    evaluate,
    from_json,
    integrate_aux,
    loads,
    partial_derivative,
    poly_sum,
    scale,
    substitute,
    to_json,
    to_str,
)
from schubdeg.permgroup import Permutation
from schubdeg.schubert import schubert_poly
from strategies import polys, rationals

half = Fraction(1, 2)


def ys(n):
    return Poly.gens("y", n)


class TestConstruction:
    def test_zero_coefficients_dropped(self):
        p = Poly("y", 2, {(1, 0): 0, (0, 1): Fraction(2, 4)})
        assert p.as_dict() == {(0, 1): half}

    def test_exponent_length_checked(self):
        with pytest.raises(ArityMismatchError):
            Poly("y", 2, {(1,): 1})

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Poly("y", 1, {(-1,): 1})

    def test_canonical_order_is_graded_lex_descending(self):
        y1, y2, y3 = ys(3)
        p = y3 + y1 * y2 + y1 ** 2 + 1
        assert [e for e, _ in p.terms] == [(2, 0, 0), (1, 1, 0), (0, 0, 1), (0, 0, 0)]

    def test_string_form(self):
        y1, y2 = ys(2)
        assert to_str(y1 * y2 + half * y2 ** 2) == "y1*y2 + 1/2*y2^2"
        assert to_str(Poly.zero("y", 2)) == "0"
        assert to_str(-y1 + 3) == "-y1 + 3"

    def test_aux_family_names_last_variable_t(self):
        p = Poly.var(aux_family("y"), 3, 3)
        assert str(p) == "t"


class TestArithmetic:
    def test_additive_inverse(self):
        y1 = ys(1)[0]
        assert (y1 + (-y1)).is_zero()

    def test_sum_of_two_terms(self):
        y1, y2 = ys(2)
        p = y1 * y2 + y2 ** 2 / 2
        assert len(p) == 2

    def test_Y_sum_from_interval_example(self):
        Y1, Y2 = Poly.gens("Y", 2)
        assert Y1 * Y2 + Y2 * (Y1 + Y2) == 2 * Y1 * Y2 + Y2 ** 2

    def test_vandermonde_three(self):
        y1, y2, y3 = ys(3)
        v = (y1 - y2) * (y1 - y3) * (y2 - y3)
        assert len(v) == 6 and v.is_homogeneous(3)
        assert v == vandermonde(3)

    def test_scale_by_zero(self):
        assert scale(ys(2)[0], 0).is_zero()

    def test_monomial_product(self):
        x1, x2 = Poly.gens("x", 2)
        assert x1 * (x1 * x2) == Poly.monomial("x", (2, 1))

    def test_family_mismatch(self):
        with pytest.raises(ArityMismatchError):
            Poly.var("x", 2, 1) + Poly.var("y", 2, 1)
        with pytest.raises(ArityMismatchError):
            Poly.var("y", 2, 1) * Poly.var("y", 3, 1)

    def test_exact_division(self):
        y1, y2 = ys(2)
        assert ((y1 ** 2 - y2 ** 2) / (y1 - y2)) == y1 + y2
        with pytest.raises(ArithmeticError):
            (y1 ** 2 + y2) / (y1 - y2)

    @given(polys(arity=3), polys(arity=3), polys(arity=3))
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p
        assert p - p == 0

    @given(polys(arity=2), rationals, rationals)
    def test_evaluation_is_a_ring_map(self, p, a, b):
        q = p * p + 3 * p
        v = evaluate(p, [a, b])
        assert evaluate(q, [a, b]) == v * v + 3 * v


class TestCalculus:
    def test_derivative_examples(self):
        y1, y2, y3 = ys(3)
        assert partial_derivative(y1 ** 2 / 2, 1) == y1
        assert partial_derivative(y1, 2).is_zero()
        v = (y1 - y2) * (y1 - y3) * (y2 - y3)
        assert partial_derivative(partial_derivative(v, 1), 2) == 2 * y1 - 2 * y2
        assert partial_derivative(partial_derivative(v, 2), 1) == 2 * y1 - 2 * y2

    def test_derivative_index_range(self):
        with pytest.raises(IndexError):
            partial_derivative(ys(2)[0], 3)

    def test_diff_operator_examples(self):
        x1, x2 = Poly.gens("x", 2)
        y1, y2 = ys(2)
        assert apply_diff_operator(x1, y1 ** 2) == 2 * y1
        assert apply_diff_operator(x1 * x2, y1 * y2) == 1

    def test_diff_operator_degree_mismatch_has_zero_constant(self):
        op = schubert_poly(Permutation.parse("132"), 3)
        d = d_chains(Permutation.identity(3), Permutation.longest(3), 3).y_form
        assert apply_diff_operator(op, d).constant_term() == 0

    def test_pairing_examples(self):
        x = Poly.monomial("x", (2, 1))
        assert d_pairing(x, Poly.monomial("y", (2, 1), half)) == 1
        assert d_pairing(Poly.monomial("x", (2, 0)), Poly.monomial("y", (1, 1))) == 0

    def test_pairing_on_schubert_and_degree(self):
        n = 3
        S231 = schubert_poly(Permutation.parse("231"), n)
        D = {w: d_chains(Permutation.identity(n), Permutation.parse(w), n).y_form for w in ("231", "312")}
        assert d_pairing(S231, D["231"]) == 1
        assert d_pairing(S231, D["312"]) == 0

    def test_pairing_dual_bases(self):
        from math import factorial

        exps = [a for a in product(range(4), repeat=3) if sum(a) <= 5]
        for a in exps:
            fa = Poly.monomial("x", a)
            for b in exps:
                denom = factorial(b[0]) * factorial(b[1]) * factorial(b[2])
                gb = Poly.monomial("y", b, Fraction(1, denom))
                assert d_pairing(fa, gb) == (1 if a == b else 0)

    @given(polys(family="x", arity=3, max_degree=2), polys(family="x", arity=3, max_degree=2),
           polys(arity=3, max_degree=5))
    def test_diff_operator_is_multiplicative(self, f, g, h):
        fg = (f * g).relabel("x")
        assert apply_diff_operator(fg, h) == apply_diff_operator(f, apply_diff_operator(g, h))

    @given(polys(family="x", arity=3), polys(arity=3))
    def test_pairing_is_symmetric(self, f, g):
        assert d_pairing(f, g) == d_pairing(g.relabel("x"), f.relabel("y"))


class TestSubstitution:
    def test_Y_bridge(self):
        Y1, Y2 = Poly.gens("Y", 2)
        y1, y2, y3 = ys(3)
        out = substitute(y1 - y2, {1: Y1 + Y2, 2: Y2, 3: Poly.zero("Y", 2)})
        assert out == Y1

    def test_identity_substitution(self):
        y1, y2 = ys(2)
        p = y1 ** 2 * y2 + 3
        assert substitute(p, {}) == p
        assert compose(p, [y1, y2]) == p

    def test_translation_invariance_with_slack_variable(self):
        n = 4
        for w in ("2413", "4132", "3412"):
            d = d_chains(Permutation.identity(n), Permutation.parse(w), n).y_form
            g = Poly.gens("y", n + 1)
            c = g[n]
            assert compose(d, [g[i] + c for i in range(n)]) == d.extend(n + 1)

    def test_partial_substitution_needs_same_ring(self):
        y1, y2 = ys(2)
        with pytest.raises(ArityMismatchError):
            substitute(y1 + y2, {1: Poly.var("Y", 1, 1)})


class TestIntegration:
    def ring(self, n):
        fam = aux_family("y")
        return [Poly.var(fam, n + 1, i) for i in range(1, n + 2)]

    def test_integrate_one(self):
        v = self.ring(2)
        y1, y2 = ys(2)
        one = Poly.one(v[0].family, 3)
        assert integrate_aux(one, Poly.zero("y", 2), y1 - y2) == y1 - y2

    def test_integrate_t(self):
        t = self.ring(1)[1]
        u = ys(1)[0]
        assert integrate_aux(t, Poly.zero("y", 1), u) == u ** 2 / 2

    def test_integrate_linear_form(self):
        # integral over [0, Y_j] of (Y_i - a t) for a = -1
        fam = aux_family("Y")
        Yi, Yj, t = (Poly.var(fam, 3, i) for i in (1, 2, 3))
        a = -1
        out = integrate_aux(Yi - a * t, Poly.zero("Y", 2), Poly.var("Y", 2, 2))
        Y1, Y2 = Poly.gens("Y", 2)
        assert out == Y1 * Y2 - a * Y2 ** 2 / 2

    def test_bounds_must_be_in_base_ring(self):
        t = self.ring(1)[1]
        with pytest.raises(ArityMismatchError):
            integrate_aux(t, Poly.zero("y", 2), ys(2)[0])

    @pytest.mark.parametrize("e", [e for e in product(range(3), repeat=3) if sum(e) <= 5])
    def test_fundamental_theorem(self, e):
        # F(y1, y2) = int_0^{y2} p(y1, y2, t) dt, so dF/dy2 = p(y1, y2, y2) + int_0^{y2} dp/dy2 dt
        fam = aux_family("y")
        p = Poly.monomial(fam, e)
        y1, y2 = Poly.gens("y", 2)
        zero = Poly.zero("y", 2)
        F = integrate_aux(p, zero, y2)
        boundary = compose(p, [y1, y2, y2])
        inner = integrate_aux(partial_derivative(p, 2), zero, y2)
        assert partial_derivative(F, 2) == boundary + inner


class TestEvaluationAndDivision:
    def test_w0_at_rho(self):
        d = d_chains(Permutation.identity(3), Permutation.longest(3), 3).y_form
        assert evaluate(d, [2, 1, 0]) == 1

    def test_zero_evaluates_to_zero(self):
        assert evaluate(Poly.zero("y", 3), [5, 6, 7]) == 0

    def test_P3_at_ones(self):
        from schubdeg.parking import parking_polynomial

        assert parking_polynomial(3)(1, 1, 1) == 16

    def test_divides(self):
        y1, y2, y3 = ys(3)
        d = d_chains(Permutation.identity(3), Permutation.longest(3), 3).y_form
        ok, q = divides_exactly(y1 - y2, d)
        assert ok and q * (y1 - y2) == d
        ok, q = divides_exactly(y1 - y2, y1)
        assert not ok and q is None

    def test_parabolic_vandermonde_divides_with_constant_quotient(self):
        n = 6
        w = Permutation.parse("321456")
        d = d_chains(Permutation.identity(n), w, n).y_form
        y = ys(n)
        prod = (y[0] - y[1]) * (y[0] - y[2]) * (y[1] - y[2])
        ok, q = divides_exactly(prod, d)
        assert ok and q.degree() == 0

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divides_exactly(Poly.zero("y", 1), ys(1)[0])

    @given(polys(arity=3, max_degree=3), polys(arity=3, max_degree=2))
    def test_division_recovers_factor(self, p, q):
        if q.is_zero():
            return
        ok, quot = divides_exactly(q, p * q)
        assert ok and quot == p


class TestSerialization:
    def test_json_shape(self):
        y1, y2 = ys(3)[:2]
        p = y1 * y2 / 2
        assert to_json(p) == {"family": "y", "arity": 3, "terms": [{"c": "1/2", "e": [1, 1, 0]}]}

    @given(polys())
    def test_round_trip(self, p):
        assert loads(dumps(p)) == p
        assert dumps(loads(dumps(p))) == dumps(p)
        assert from_json(to_json(p)) == p

    def test_duplicate_terms_rejected(self):
        with pytest.raises(ValueError):
            from_json({"family": "y", "arity": 1, "terms": [{"c": "1", "e": [1]}, {"c": "2", "e": [1]}]})


class TestDeterminant:
    def test_rational_matrix(self):
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[Fraction(1, 2), 0], [0, 4]]) == 2

    def test_polynomial_matrix(self):
        y1, y2 = ys(2)
        assert determinant([[y1, 1], [y2, 1]]) == y1 - y2

    @given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
    def test_matches_leibniz(self, M):
        from itertools import permutations

        from schubdeg.permgroup import Permutation as P

        want = 0
        for s in permutations(range(3)):
            term = P([v + 1 for v in s]).sign()
            for i, j in enumerate(s):
                term *= M[i][j]
            want += term
        assert determinant(M) == want


def test_poly_sum_empty():
    assert poly_sum([], "y", 3) == Poly.zero("y", 3)
