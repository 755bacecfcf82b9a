from itertools import permutations, product
from math import comb

import pytest
from hypothesis import given

from schubdeg.permgroup import (
    CartanMatrix,
    Permutation,
    ReducedWord,
    all_flags,
    all_perms,
    all_reduced_words,
    avoiding,
    avoids,
    b_of,
    bruhat_covers_up,
    bruhat_interval,
    bruhat_leq,
    code,
    code_to_dominant,
    flag,
    flag_to_312,
    is_dominant,
    is_strictly_dominant,
    isolated_entry_path,
    long_cycle,
    path_word,
    perm_from_code,
    reduced_word,
    saturated_chains,
    shape,
)
from strategies import perms

P = Permutation.parse


def catalan(n):
    return comb(2 * n, n) // (n + 1)


class TestBasics:
    def test_parse_and_format(self):
        assert str(P("41532")) == "41532"
        w = long_cycle(9)
        assert w.word == (2, 3, 4, 5, 6, 7, 8, 9, 10, 1)
        assert str(w) == "2,3,4,5,6,7,8,9,10,1"
        assert P(str(w)) == w

    def test_rejects_non_permutations(self):
        with pytest.raises(ValueError):
            Permutation([1, 1, 2])

    def test_length_and_longest(self):
        assert Permutation.longest(4).length == 6
        assert P("41532").length == 6
        assert Permutation.identity(5).length == 0

    def test_composition_convention(self):
        u, v = P("231"), P("213")
        assert (u * v).word == tuple(u[v[i]] for i in range(1, 4))

    def test_stability_under_fixed_points(self):
        w = P("2413")
        assert w.extend(6) == w
        assert code(w.extend(6))[:4] == code(w)[:4]

    @given(perms(5))
    def test_inverse(self, w):
        assert w * w.inverse() == Permutation.identity(5)
        assert w.inverse().length == w.length

    @given(perms(5))
    def test_sign_matches_length(self, w):
        assert w.sign() == (-1) ** w.length


class TestCodes:
    def test_code_examples(self):
        assert code(P("41532")) == (3, 0, 2, 1, 0)
        assert code(P("761829543")) == (6, 5, 0, 4, 0, 3, 2, 1, 0)
        assert code(Permutation.identity(4)) == (0, 0, 0, 0)

    def test_shape_and_flag(self):
        w = P("41532")
        assert shape(w) == (3, 2, 1)
        assert flag(Permutation.identity(3)) == ()

    @pytest.mark.parametrize("n", range(1, 6))
    def test_code_is_a_bijection(self, n):
        codes = {code(w) for w in all_perms(n)}
        boxes = set(product(*[range(n - i) for i in range(n)]))
        assert codes == boxes
        for c in boxes:
            assert code(perm_from_code(c)) == c

    def test_code_to_dominant(self):
        for n in range(1, 6):
            assert code_to_dominant(tuple(range(n - 1, -1, -1))) == Permutation.longest(n)
            assert code_to_dominant((0,) * n) == Permutation.identity(n)
        dominant = avoiding(5, "132")
        assert len(dominant) == 42
        for w in dominant:
            assert code_to_dominant(code(w)) == w
            assert is_dominant(w)

    def test_code_to_dominant_rejects(self):
        with pytest.raises(ValueError):
            code_to_dominant((1, 2, 0))


class TestPatterns:
    def test_catalan_example(self):
        assert len(avoiding(4, "312")) == 14

    @pytest.mark.parametrize("pattern", ["".join(p) for p in permutations("123")])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_catalan_counts(self, pattern, n):
        assert len(avoiding(n, pattern)) == catalan(n)

    def test_identity_avoids_descents(self):
        e = Permutation.identity(6)
        for pat in ("21", "132", "312", "4321"):
            assert avoids(e, pat)

    def test_strictly_dominant(self):
        S5 = all_perms(5)
        strict = [w for w in S5 if is_strictly_dominant(w)]
        assert len(strict) == 16
        assert strict == [w for w in S5 if avoids(w, "132") and avoids(w, "231")]
        for n in range(1, 7):
            assert sum(is_strictly_dominant(w) for w in all_perms(n)) == 2 ** (n - 1)


class TestBruhat:
    def test_covers_of_identity(self):
        covers = {(str(c.target), c.i, c.j) for c in bruhat_covers_up(Permutation.identity(3))}
        assert covers == {("213", 1, 2), ("132", 2, 3)}

    def test_covers_of_longest(self):
        assert bruhat_covers_up(Permutation.longest(4)) == []

    def test_covers_of_213(self):
        covers = {(str(c.target), c.i, c.j) for c in bruhat_covers_up(P("213"))}
        assert covers == {("231", 2, 3), ("312", 1, 3)}

    @given(perms(5))
    def test_cover_lengths(self, u):
        for c in bruhat_covers_up(u):
            assert c.target.length == u.length + 1
            assert c.target == u * Permutation.transposition(c.i, c.j, 5)

    def test_chains_to_231(self):
        chains = list(saturated_chains(Permutation.identity(3), P("231")))
        assert len(chains) == 2
        assert {str(ch[0].target) for ch in chains} == {"213", "132"}

    def test_trivial_chain(self):
        w = P("2413")
        assert list(saturated_chains(w, w)) == [[]]

    def test_maximal_chain_counts(self):
        # id to w0 in S_3 goes through either side of the hexagon
        assert len(list(saturated_chains(Permutation.identity(3), Permutation.longest(3)))) == 4
        assert len(list(saturated_chains(Permutation.identity(4), Permutation.longest(4)))) == 168

    def test_incomparable_gives_no_chain(self):
        assert list(saturated_chains(P("213"), P("132"))) == []

    def test_methods_agree_on_S4(self):
        S4 = all_perms(4)
        for u in S4:
            for w in S4:
                t = bruhat_leq(u, w)
                assert t == bruhat_leq(u, w, "subword") == bruhat_leq(u, w, "chains")

    def test_interval(self):
        assert len(bruhat_interval(Permutation.identity(3), Permutation.longest(3))) == 6
        assert set(bruhat_interval(Permutation.identity(3), P("231"))) == {
            Permutation.identity(3), P("213"), P("132"), P("231")}


class TestReducedWords:
    def test_reduced_word_product(self):
        for w in all_perms(4):
            word = reduced_word(w)
            assert len(word) == w.length
            assert Permutation.from_word(word, 4) == w

    def test_reduced_word_type(self):
        assert ReducedWord((1, 2, 1)).perm(3) == Permutation.longest(3)
        with pytest.raises(ValueError):
            ReducedWord((1, 1))

    def test_all_reduced_words(self):
        assert sorted(all_reduced_words(Permutation.longest(3))) == [(1, 2, 1), (2, 1, 2)]
        assert len(all_reduced_words(Permutation.longest(4))) == 16


class TestFlags:
    def test_flag_example(self):
        assert flag_to_312((3, 3, 3, 5, 5)) == P("32154")
        assert b_of(P("32154")) == (3, 3, 3, 5, 5)

    def test_identity_flag(self):
        for n in range(1, 6):
            assert flag_to_312(tuple(range(1, n + 1))) == Permutation.identity(n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_round_trip(self, n):
        avoiders = avoiding(n, "312")
        flags = all_flags(n)
        assert len(flags) == len(avoiders) == catalan(n)
        assert {flag_to_312(b) for b in flags} == set(avoiders)
        for w in avoiders:
            b = b_of(w)
            assert flag_to_312(b) == w
            assert w.length == sum(b) - comb(n + 1, 2)

    def test_b_of_rejects_312(self):
        with pytest.raises(ValueError):
            b_of(P("312"))

    def test_invalid_flag(self):
        with pytest.raises(ValueError):
            flag_to_312((2, 1, 3))
        with pytest.raises(ValueError):
            isolated_entry_path((1, 3, 2))

    def test_path_example(self):
        assert path_word((3, 3, 3, 5, 5)) == (2, 1, 2, 4)
        assert isolated_entry_path((1, 2, 3, 4)) == []

    @pytest.mark.parametrize("n", range(1, 6))
    def test_path_words_are_reduced_with_312_avoiding_prefixes(self, n):
        for b in all_flags(n):
            word = path_word(b)
            w = flag_to_312(b)
            assert Permutation.from_word(word, n) == w
            assert len(word) == w.length
            for k in range(len(word) + 1):
                assert avoids(Permutation.from_word(word[k:], n), "312")


class TestCartan:
    def test_type_a(self):
        C = CartanMatrix.type_a(3)
        assert C(1, 2) == -1 and C(1, 3) == 0 and C(2, 2) == 2
        assert C.is_genuine()

    def test_parse_and_validation(self):
        assert CartanMatrix.parse("2,-1;-2,2")(2, 1) == -2
        assert not CartanMatrix.parse("2,1;1,2").is_genuine()
        with pytest.raises(ValueError):
            CartanMatrix.parse("1,0;0,2")
