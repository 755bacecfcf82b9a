from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from schubdeg.degrees import d_chains
from schubdeg.demazure import (
    EhrhartFitError,
    GTPolytopeSpec,
    PoleError,
    alternating_character_check,
    alternating_character_value,
    demazure_character,
    demazure_dimension,
    demazure_flagged,
    ehrhart_polynomial,
    flagged_schur_det,
    flagged_schur_tableaux,
    flagged_tableaux,
    generic_points,
    gt_character,
    gt_count,
    gt_lattice_points,
    gt_volume,
    lagrange_coefficients,
    phi_plus,
    w_b,
)
from schubdeg.exactpoly import Poly, evaluate
from schubdeg.operators import demazure_T
from schubdeg.permgroup import (
    Permutation,
    all_flags,
    all_perms,
    avoiding,
    avoids,
    flag,
    is_dominant,
    isolated_entry_path,
    long_cycle,
    shape,
)
from schubdeg.schubert import schubert_poly

P = Permutation.parse
SWEEP_LAMBDAS = [(3, 2, 1, 0), (2, 2, 1, 0), (2, 1, 1, 0)]
AVOIDERS4 = avoiding(4, "312")


def schur(lam):
    n = len(lam)
    return flagged_schur_tableaux(lam, (1,) * n, (n,) * n, n, family="z")


class TestFlaggedSchur:
    def test_single_box(self):
        for n in range(1, 5):
            assert flagged_schur_tableaux((1,), (1,), (n,), n) == sum(Poly.gens("x", n), Poly.zero("x", n))

    def test_full_schur_count(self):
        tabs = list(flagged_tableaux((2, 1), (1, 1), (3, 3)))
        assert len(tabs) == 8
        assert evaluate(schur((2, 1, 0)), [1, 1, 1]) == 8

    def test_dominant_shape_has_one_tableau(self):
        for w in all_perms(4):
            if is_dominant(w) and w.length:
                mu, b = shape(w), flag(w)
                tabs = list(flagged_tableaux(mu, (1,) * len(mu), b))
                assert len(tabs) == 1
                assert all(v == i + 1 for i, row in enumerate(tabs[0]) for v in row)

    def test_empty_shape(self):
        assert flagged_schur_det((), (), (), 3) == 1
        assert flagged_schur_tableaux((0, 0), (1, 1), (1, 2), 3) == 1

    @pytest.mark.parametrize("mu", [(0,), (1,), (2,), (1, 1), (2, 1), (2, 0), (1, 0)])
    def test_det_matches_tableaux(self, mu):
        for b in all_flags(3):
            bb = b[:len(mu)]
            a = (1,) * len(mu)
            assert flagged_schur_det(mu, a, bb, 3) == flagged_schur_tableaux(mu, a, bb, 3)

    def test_det_with_lower_flags(self):
        for a in [(1, 2), (2, 2), (1, 1)]:
            for b in [(2, 3), (3, 3)]:
                assert flagged_schur_det((2, 1), a, b, 3) == flagged_schur_tableaux((2, 1), a, b, 3)

    def test_vexillary(self):
        for w in all_perms(4):
            if avoids(w, "2143"):
                mu, b = shape(w), flag(w)
                s = flagged_schur_det(mu, (1,) * len(mu), b, 4)
                assert s == schubert_poly(w, 4)

    def test_flag_too_large(self):
        with pytest.raises(ValueError):
            flagged_schur_tableaux((1,), (1,), (4,), 3)


class TestDemazureCharacters:
    def test_identity(self):
        lam = (3, 1, 0)
        assert demazure_character(lam, Permutation.identity(3)) == Poly.monomial("z", lam)

    def test_longest_is_full_schur(self):
        for lam in [(2, 1, 0), (3, 1, 1), (2, 2, 0)]:
            assert demazure_character(lam, Permutation.longest(3)) == schur(lam)

    def test_rejects_non_partition(self):
        with pytest.raises(ValueError):
            demazure_character((0, 1), P("21"))

    @pytest.mark.parametrize("lam", SWEEP_LAMBDAS)
    @pytest.mark.parametrize("w", AVOIDERS4, ids=str)
    def test_sweep(self, lam, w):
        ch = demazure_character(lam, w)
        assert ch == demazure_flagged(lam, w)
        assert ch == demazure_flagged(lam, w, "det")
        assert ch == gt_character(GTPolytopeSpec(lam, w))
        dim = demazure_dimension(lam, w)
        assert dim == demazure_dimension(lam, w, "char") == demazure_dimension(lam, w, "gt")
        assert dim == evaluate(ch, [1] * 4)

    def test_word_independence(self):
        from schubdeg.operators import apply_word
        from schubdeg.permgroup import all_reduced_words

        lam = (3, 2, 1, 0)
        z = Poly.monomial("z", lam)
        for w in (P("3421"), P("4231"), P("2413")):
            outs = {apply_word(word, z, "T") for word in all_reduced_words(w)}
            assert len(outs) == 1


class TestDimensions:
    def test_examples(self):
        assert demazure_dimension((2, 1, 0), P("231")) == 5
        assert demazure_dimension((0, 0, 0), P("231")) == 1
        assert demazure_dimension((1, 0, 0), Permutation.longest(3)) == 3

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            demazure_dimension((1, 0), P("21"), "magic")


class TestGelfandTsetlin:
    def test_example_points(self):
        spec = GTPolytopeSpec((2, 1, 0), P("231"))
        pts = list(gt_lattice_points(spec))
        assert len(pts) == 5
        assert gt_character(spec) == demazure_flagged((2, 1, 0), P("231"))

    def test_zero_lambda(self):
        spec = GTPolytopeSpec((0, 0, 0), P("231"))
        assert len(list(gt_lattice_points(spec))) == 1

    def test_other_lambda(self):
        assert gt_count((1, 1, 0), P("231")) == demazure_dimension((1, 1, 0), P("231"))

    def test_free_coordinates(self):
        for w in AVOIDERS4:
            assert GTPolytopeSpec((3, 2, 1, 0), w).free_count() == w.length

    def test_interlacing(self):
        spec = GTPolytopeSpec((4, 2, 1, 0), Permutation.longest(4))
        for p in gt_lattice_points(spec):
            for i in range(2, 5):
                for j in range(1, i):
                    assert p[(i, j)] >= p[(i - 1, j)] >= p[(i, j + 1)]

    def test_rejects_312(self):
        with pytest.raises(ValueError):
            GTPolytopeSpec((2, 1, 0), P("312"))

    @pytest.mark.parametrize("backend", ["numpy", "numba"])
    def test_backends(self, backend):
        for w in AVOIDERS4:
            assert gt_count((3, 2, 1, 0), w, backend) == len(list(gt_lattice_points(GTPolytopeSpec((3, 2, 1, 0), w))))


class TestVolume:
    def test_example(self):
        assert gt_volume((2, 1, 0), P("231")) == Fraction(3, 2)
        assert evaluate(d_chains(Permutation.identity(3), P("231")).y_form, [2, 1, 0]) == Fraction(3, 2)

    def test_zero_lambda(self):
        assert gt_volume((0, 0, 0), P("231")) == 0

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_long_cycle(self, r):
        rho = tuple(range(r, -1, -1))
        assert gt_volume(rho, long_cycle(r)) == Fraction((r + 1) ** (r - 1), factorial(r))

    def test_rejects_rational(self):
        with pytest.raises(ValueError):
            gt_volume((Fraction(1, 2), 0), P("21"))

    @pytest.mark.parametrize("lam", SWEEP_LAMBDAS)
    @pytest.mark.parametrize("w", AVOIDERS4, ids=str)
    def test_leading_coefficient_sweep(self, lam, w):
        coeffs = ehrhart_polynomial(lam, w)
        assert coeffs == ehrhart_polynomial(lam, w, counter="det")
        d = evaluate(d_chains(Permutation.identity(4), w).y_form, lam)
        assert coeffs[w.length] == d
        assert all(c == 0 for c in coeffs[w.length + 1:])

    def test_lagrange(self):
        pts = [(k, 3 * k * k - k + 2) for k in range(3)]
        assert lagrange_coefficients(pts) == [2, -1, 3]

    def test_fit_error_type(self):
        assert issubclass(EhrhartFitError, ArithmeticError)


class TestAlternatingFormula:
    def test_longest_at_example_point(self):
        r = alternating_character_check((2, 1, 0), Permutation.longest(3), (2, 3, 5))
        assert r["ok"]

    def test_zero_lambda(self):
        for w in avoiding(3, "312"):
            assert alternating_character_value((0, 0, 0), w, (2, 3, 5)) == 1

    @pytest.mark.parametrize("w", avoiding(3, "312"), ids=str)
    def test_all_S3(self, w):
        assert alternating_character_check((2, 1, 0), w, (2, 3, 5))["ok"]

    @pytest.mark.parametrize("lam", SWEEP_LAMBDAS)
    def test_S4_sweep(self, lam):
        for w in AVOIDERS4:
            assert alternating_character_check(lam, w)["ok"]

    def test_sizes(self):
        for w in AVOIDERS4:
            from schubdeg.permgroup import b_of

            b = b_of(w)
            expected = 1
            for i, bi in enumerate(b):
                expected *= bi - i
            assert len(w_b(b)) == expected
            assert all(len(phi_plus(u, b)) == w.length for u in w_b(b))

    def test_pole(self):
        with pytest.raises(PoleError):
            alternating_character_value((2, 1, 0), Permutation.longest(3), (1, 1, 1))

    def test_points_are_deterministic(self):
        assert next(generic_points(3)) == (2, 3, 5)
        assert next(generic_points(3, seed=1)) == (3, 5, 7)

    @given(st.lists(st.integers(2, 40), min_size=3, max_size=3, unique=True))
    def test_random_points(self, pt):
        try:
            r = alternating_character_check((2, 1, 0), P("231"), pt)
        except PoleError:
            return
        assert r["ok"]


class TestIsolatedEntrySteps:
    @pytest.mark.parametrize("lam", [(3, 2, 1, 0), (2, 1, 1, 0)])
    def test_T_k_moves_flag(self, lam):
        n = 4
        for b in all_flags(n):
            prev = tuple(range(1, n + 1))
            for nxt, k in isolated_entry_path(b):
                before = flagged_schur_tableaux(lam, (1,) * n, prev, n, family="z")
                after = flagged_schur_tableaux(lam, (1,) * n, nxt, n, family="z")
                assert demazure_T(k, before) == after
                prev = nxt

