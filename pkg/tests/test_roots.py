import itertools

import pytest
from hypothesis import given, settings, strategies as st

from klr.core import LaurentPoly, quantum_integer
from klr.roots import (
    ConvexOrder,
    RootPartition,
    RootSystemError,
    bilex_leq,
    cartan_type,
    compare_bilex,
    convex_order_from_reduced_word,
    default_choices,
    kappa_and_word,
    kappa_of_partition,
    lex_order,
    lex_reduced_word,
    minimal_pairs,
    p_number,
    positive_roots,
    qplus_elements,
    root_partitions,
    shift_sh,
    shift_sh_prime,
    type_a,
    validate_convexity,
)


def reduced_words_of_longest(n):
    """All reduced words of the longest element of S_{n+1}, by brute-force search over permutations."""
    target = tuple(range(n, -1, -1))
    length = n * (n + 1) // 2
    out = []

    def rec(perm, word):
        if len(word) == length:
            if perm == target:
                out.append(tuple(word))
            return
        for i in range(1, n + 1):
            if perm[i - 1] < perm[i]:
                p = list(perm)
                p[i - 1], p[i] = p[i], p[i - 1]
                rec(tuple(p), word + [i])

    rec(tuple(range(n + 1)), [])
    return out


def kostant_count(c, alpha):
    """Number of multisets of positive roots summing to alpha."""
    roots = positive_roots(c)
    ht = sum(alpha)
    total = 0
    for k in range(1, ht + 1):
        for combo in itertools.combinations_with_replacement(roots, k):
            if tuple(map(sum, zip(*combo))) == tuple(alpha):
                total += 1
    return total


class TestCartanData:
    @pytest.mark.parametrize(
        "name,count",
        [("A1", 1), ("A2", 3), ("A3", 6), ("A4", 10), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24), ("E6", 36)],
    )
    def test_number_of_positive_roots(self, name, count):
        assert len(positive_roots(cartan_type(name))) == count

    def test_a2_roots(self):
        assert set(positive_roots(type_a(2))) == {(1, 0), (0, 1), (1, 1)}

    def test_type_a_roots_are_intervals(self):
        c = type_a(4)
        for r in positive_roots(c):
            support = [k for k, x in enumerate(r) if x]
            assert set(r) <= {0, 1}
            assert support == list(range(support[0], support[-1] + 1))

    def test_form_is_symmetric_and_reflections_preserve_it(self):
        for name in ("B3", "G2", "C3"):
            c = cartan_type(name)
            roots = positive_roots(c)
            for a, b in itertools.product(roots, repeat=2):
                assert c.form(a, b) == c.form(b, a)
                for i in c.labels:
                    assert c.form(c.reflect(i, a), c.reflect(i, b)) == c.form(a, b)

    def test_labels_shift_with_start(self):
        c = type_a(3, start=-1)
        assert c.labels == (-1, 0, 1)
        assert c.root_label(c.interval_root(-1, 0)) == "-1:0"

    def test_unknown_type_rejected(self):
        with pytest.raises(RootSystemError):
            cartan_type("Z9")

    def test_qplus_elements_counts(self):
        # compositions of h into r nonnegative parts
        c = type_a(3)
        assert len(qplus_elements(c, 2)) == 3 + 6


class TestConvexOrders:
    def test_a2_examples(self):
        c = type_a(2)
        assert convex_order_from_reduced_word(c, (1, 2, 1)).increasing == ((1, 0), (1, 1), (0, 1))
        assert convex_order_from_reduced_word(c, (2, 1, 2)).increasing == ((0, 1), (1, 1), (1, 0))

    def test_validate_examples(self):
        c = type_a(2)
        assert validate_convexity(ConvexOrder(c, ((0, 1), (1, 1), (1, 0))))
        assert not validate_convexity(ConvexOrder(c, ((1, 1), (0, 1), (1, 0))))

    @pytest.mark.parametrize("n,expected", [(2, 2), (3, 16)])
    def test_convex_orders_counted_by_brute_force(self, n, expected):
        # every total order is tested; convex orders biject with reduced words of w0
        c = type_a(n)
        roots = positive_roots(c)
        found = {perm for perm in itertools.permutations(roots) if validate_convexity(ConvexOrder(c, perm))}
        assert len(found) == expected
        papi = {convex_order_from_reduced_word(c, w).decreasing for w in reduced_words_of_longest(n)}
        assert papi == found

    def test_every_papi_order_in_b3_is_convex(self):
        c = cartan_type("B3")
        w = (1, 2, 3, 1, 2, 3, 1, 2, 3)
        assert validate_convexity(convex_order_from_reduced_word(c, w))

    def test_non_reduced_word_rejected(self):
        with pytest.raises(RootSystemError):
            convex_order_from_reduced_word(type_a(2), (1, 1, 2))

    def test_lex_order_matches_word_comparison(self):
        for n in (2, 3, 4):
            c = type_a(n)
            o = lex_order(c)
            assert convex_order_from_reduced_word(c, lex_reduced_word(c)) == o
            words = {r: tuple(range(c.interval(r)[0], c.interval(r)[1] + 1)) for r in positive_roots(c)}
            for a, b in itertools.permutations(positive_roots(c), 2):
                assert o.less(a, b) == (words[a] < words[b])


class TestRootPartitions:
    def test_small_examples(self):
        o = lex_order(type_a(2))
        assert {p.roots for p in root_partitions((1, 1), o)} == {((1, 1),), ((0, 1), (1, 0))}
        assert len(root_partitions((1, 1, 1), lex_order(type_a(3)))) == 4

    @pytest.mark.parametrize("name", ["A3", "B2", "G2"])
    def test_count_is_kostant_partition_function(self, name):
        c = cartan_type(name)
        o = convex_order_from_reduced_word(c, lex_reduced_word(c)) if c.is_type_a() else _some_order(c)
        for alpha in qplus_elements(c, 4):
            parts = root_partitions(alpha, o)
            assert len(parts) == kostant_count(c, alpha)
            assert len(set(parts)) == len(parts)
            for p in parts:
                assert p.content == alpha
                assert all(not o.less(a, b) for a, b in zip(p.roots, p.roots[1:]))

    def test_bilex_examples(self):
        o = lex_order(type_a(3))
        P = lambda *rs: RootPartition.from_roots(o, rs)
        a1, a2, a3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
        a23, a12 = (0, 1, 1), (1, 1, 0)
        assert compare_bilex(P(a23, a1), P(a3, a2, a1)) == "less"
        assert compare_bilex(P(a23, a1), P(a3, a12)) == "incomparable"
        assert compare_bilex(P(a23, a1), P(a23, a1)) == "equal"
        assert compare_bilex(P(a3, a2, a1), P(a23, a1)) == "greater"

    def test_bilex_is_a_partial_order(self):
        o = lex_order(type_a(3))
        parts = root_partitions((1, 2, 1), o)
        for a, b in itertools.product(parts, repeat=2):
            if bilex_leq(a, b) and bilex_leq(b, a):
                assert a == b
            for c in parts:
                if bilex_leq(a, b) and bilex_leq(b, c):
                    assert bilex_leq(a, c)

    def test_single_root_is_minimal(self):
        # (rho) is the bilex-smallest element of its content
        o = lex_order(type_a(3))
        for rho in positive_roots(o.cartan):
            top = RootPartition.from_roots(o, [rho])
            assert all(bilex_leq(top, p) for p in root_partitions(rho, o))

    def test_shifts(self):
        o = lex_order(type_a(3))
        P = lambda *rs: RootPartition.from_roots(o, rs)
        assert shift_sh(P((1, 0, 0), (1, 0, 0))) == 1
        assert shift_sh(P((0, 1, 0), (1, 0, 0))) == 0
        assert shift_sh(P(*[(1, 1, 1)] * 3)) == 3
        assert shift_sh_prime(P((0, 1, 0), (1, 0, 0))) == -1

    def test_non_root_rejected(self):
        with pytest.raises(RootSystemError):
            RootPartition.from_roots(lex_order(type_a(2)), [(2, 0)])


def _some_order(c):
    n = len(positive_roots(c))
    r = c.labels
    return convex_order_from_reduced_word(c, tuple(r[k % len(r)] for k in range(n)))


class TestMinimalPairs:
    def test_a3_example(self):
        o = lex_order(type_a(3))
        pairs = {(m.beta, m.gamma) for m in minimal_pairs((1, 1, 1), o)}
        assert pairs == {((0, 1, 1), (1, 0, 0)), ((0, 0, 1), (1, 1, 0))}

    def test_type_a_p_is_zero(self):
        o = lex_order(type_a(4))
        for rho in positive_roots(o.cartan):
            for m in minimal_pairs(rho, o):
                assert m.p == 0
                assert m.rho == rho
                assert o.less(m.gamma, m.beta) or o.less(m.beta, m.gamma)

    def test_p_number_in_b2(self):
        c = cartan_type("B2")
        # alpha_1 is short here: (2,1) - (1,0) and (2,1) - 2(1,0) are roots
        assert p_number(c, (2, 1), (1, 0)) == 2
        assert p_number(c, (0, 1), (1, 0)) == 0

    def test_kappa_type_a(self):
        c = type_a(4)
        choices = default_choices(lex_order(c))
        for rho in positive_roots(c):
            word, kappa = kappa_and_word(rho, choices, c)
            assert kappa == 1
            assert c.content(word) == rho

    def test_kappa_word_a2(self):
        c = type_a(2)
        assert kappa_and_word((1, 1), default_choices(lex_order(c)), c) == ((1, 2), LaurentPoly.one())

    def test_kappa_of_square(self):
        o = lex_order(type_a(2))
        pi = RootPartition.from_roots(o, [(1, 0), (1, 0)])
        assert kappa_of_partition(pi, default_choices(o)) == ((1, 1), quantum_integer(2))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
    def test_kappa_of_partition_word_has_right_content(self, idx):
        c = type_a(3)
        o = lex_order(c)
        roots = [o.decreasing[k] for k in idx]
        pi = RootPartition.from_roots(o, roots)
        word, kappa = kappa_of_partition(pi, default_choices(o))
        assert c.content(word) == pi.content
        assert kappa.is_bar_invariant()
