import itertools
import math

import pytest
from sympy.functions.combinatorial.numbers import partition as npartitions
from hypothesis import given, strategies as st

from klr.roots import RootSystemError, convex_order_from_reduced_word, lex_order, type_a
from klr.shapes import (
    Multipartition,
    SkewShape,
    enumerate_multipartitions,
    is_separating,
    leading_tableau,
    multipartition_contents,
    multipartition_tableaux,
    parse_shape,
    root_partition_of_shape,
    shape_of_sigma,
    sigma_of_shape,
    skew_shapes,
    split_many,
    split_row,
    standard_tableaux,
)


def permutations_with_descent_set(n, S):
    """MacMahon's inclusion-exclusion: sum over T in S of (-1)^{|S-T|} times a multinomial."""
    S = sorted(S)
    total = 0
    for k in range(len(S) + 1):
        for T in itertools.combinations(S, k):
            cuts = [0, *T, n]
            parts = [b - a for a, b in zip(cuts, cuts[1:])]
            m = math.factorial(n)
            for p in parts:
                m //= math.factorial(p)
            total += (-1) ** (len(S) - k) * m
    return total


def hook_count(part):
    n = sum(part)
    conj = [sum(1 for r in part if r > c) for c in range(part[0])] if part else []
    hooks = 1
    for a, row in enumerate(part):
        for b in range(row):
            hooks *= (row - b - 1) + (conj[b] - a - 1) + 1
    return math.factorial(n) // hooks


shapes_st = st.integers(1, 7).flatmap(
    lambda d: st.sets(st.integers(1, d - 1) if d > 1 else st.nothing()).map(lambda cuts: SkewShape.from_cuts(1, d, cuts))
)


class TestSkewShapes:
    @pytest.mark.parametrize("d", range(1, 7))
    def test_count(self, d):
        shapes = skew_shapes(3, 3 + d - 1)
        assert len(shapes) == 2 ** (d - 1)
        assert len(set(shapes)) == len(shapes)

    def test_parse_and_print(self):
        lam = parse_shape("1,2|3")
        assert lam.rows == ((1, 2), (3,))
        assert str(lam) == "1,2|3"
        assert lam.top_down() == "3 / 12"
        with pytest.raises(ValueError):
            parse_shape("1,3")

    def test_boxes_geometry(self):
        lam = parse_shape("1,2|3")
        b = lam.boxes()
        # box of content 3 sits directly above box of content 2
        assert b[3][1] == b[2][1] and b[3][0] == b[2][0] - 1

    @given(shapes_st)
    def test_sigma_round_trip(self, lam):
        assert shape_of_sigma(lam.low, sigma_of_shape(lam)) == lam
        assert len(sigma_of_shape(lam)) == lam.size - 1

    @given(shapes_st, st.data())
    def test_split_row_is_an_involution(self, lam, data):
        if lam.size < 2:
            return
        r = data.draw(st.integers(1, lam.size - 1))
        assert split_row(split_row(lam, r), r) == lam
        flipped = [a != b for a, b in zip(sigma_of_shape(lam), sigma_of_shape(split_row(lam, r)))]
        assert flipped == [k == r - 1 for k in range(lam.size - 1)]

    def test_split_many_commutes(self):
        lam = parse_shape("1,2,3,4")
        assert split_many(lam, [1, 3]) == split_many(lam, [3, 1]) == parse_shape("1|2,3|4")

    def test_split_out_of_range(self):
        with pytest.raises(ValueError):
            split_row(parse_shape("1,2"), 2)

    def test_root_partition_of_shape(self):
        o = lex_order(type_a(3))
        pi = root_partition_of_shape(parse_shape("1|2,3"), o)
        assert pi.roots == ((0, 1, 1), (1, 0, 0))
        for lam in skew_shapes(1, 3):
            assert root_partition_of_shape(lam, o).content == (1, 1, 1)
        other = convex_order_from_reduced_word(type_a(2), (2, 1, 2))
        with pytest.raises(RootSystemError):
            root_partition_of_shape(parse_shape("1|2"), other)


class TestTableaux:
    @given(shapes_st)
    def test_count_matches_descent_set_formula(self, lam):
        assert len(standard_tableaux(lam)) == permutations_with_descent_set(lam.size, lam.cuts)

    @given(shapes_st)
    def test_words_have_the_right_content(self, lam):
        for t in standard_tableaux(lam):
            assert sorted(t.word) == list(range(lam.low, lam.high + 1))

    def test_single_row_and_column(self):
        row = parse_shape("1,2,3")
        col = parse_shape("1|2|3")
        assert [t.word for t in standard_tableaux(row)] == [(1, 2, 3)]
        assert [t.word for t in standard_tableaux(col)] == [(3, 2, 1)]

    @given(shapes_st)
    def test_leading_tableau_is_standard_and_reads_rows_top_down(self, lam):
        t = leading_tableau(lam)
        assert t.is_standard()
        assert t.word == tuple(c for row in reversed(lam.rows) for c in row)

    @given(shapes_st, st.data())
    def test_swap_preserves_standardness_unless_adjacent(self, lam, data):
        if lam.size < 2:
            return
        tabs = standard_tableaux(lam)
        t = data.draw(st.sampled_from(tabs))
        r = data.draw(st.integers(1, lam.size - 1))
        w = t.word
        adjacent = abs(w[r - 1] - w[r]) == 1
        assert t.swap(r).is_standard() == (not adjacent)


class TestMultipartitions:
    def test_rejects_non_partitions(self):
        with pytest.raises(ValueError):
            Multipartition(((1, 2),))

    @pytest.mark.parametrize("d", range(0, 7))
    def test_counts(self, d):
        assert len(enumerate_multipartitions(d, 1)) == npartitions(d)
        assert len(enumerate_multipartitions(d, 2)) == sum(npartitions(k) * npartitions(d - k) for k in range(d + 1))

    @pytest.mark.parametrize("d", range(1, 6))
    def test_tableaux_count_matches_hook_length_formula(self, d):
        for mu in enumerate_multipartitions(d, 2):
            sizes = [sum(p) for p in mu.components]
            expected = math.factorial(d)
            for p, s in zip(mu.components, sizes):
                expected = expected // math.factorial(s) * hook_count(p)
            assert len(multipartition_tableaux(mu)) == expected

    def test_contents_and_separation(self):
        mu = Multipartition(((2,), (1,)))
        assert multipartition_contents(mu, (0, 5)) == {(1, 1, 1): 0, (1, 1, 2): 1, (2, 1, 1): 5}
        assert is_separating(mu, (0, 5))
        assert not is_separating(mu, (0, 1))
        assert is_separating(Multipartition(((2, 2),)), (0,))

    def test_diagonal_repeats_allowed_only_on_one_diagonal(self):
        # (2,2) has content 0 twice, both on diagonal 0
        mu = Multipartition(((2, 2),))
        contents = multipartition_contents(mu, (0,))
        assert sorted(contents.values()) == [-1, 0, 0, 1]
        assert is_separating(mu, (0,))
        assert not is_separating(Multipartition(((1,), (1,))), (0, 0))


class TestWorkedExamples:
    def test_row_splitting_examples(self):
        lam = parse_shape("1,2|3,4,5,6")
        assert split_row(lam, 4) == parse_shape("1,2|3,4|5,6")
        assert split_row(lam, 2) == parse_shape("1,2,3,4,5,6")

    def test_sign_sequences(self):
        assert sigma_of_shape(parse_shape("1,2,3")) == (1, 1)
        assert sigma_of_shape(parse_shape("1|2|3")) == (-1, -1)
        assert sigma_of_shape(parse_shape("1|2,3")) == (-1, 1)

    def test_tableau_words(self):
        assert {t.word for t in standard_tableaux(parse_shape("1,2|3"))} == {(1, 3, 2), (3, 1, 2)}
        assert {t.word for t in standard_tableaux(parse_shape("1|2,3"))} == {(2, 1, 3), (2, 3, 1)}

    @pytest.mark.parametrize("d", range(1, 7))
    def test_words_partition_the_orbit(self, d):
        words = [t.word for lam in skew_shapes(1, d) for t in standard_tableaux(lam)]
        assert len(words) == len(set(words)) == math.factorial(d)

    @pytest.mark.parametrize("d", range(2, 7))
    def test_any_two_shapes_differ_by_unique_splittings(self, d):
        shapes = skew_shapes(1, d)
        for lam, mu in itertools.product(shapes, repeat=2):
            hits = [S for k in range(d) for S in itertools.combinations(range(1, d), k) if split_many(mu, S) == lam]
            assert len(hits) == 1
