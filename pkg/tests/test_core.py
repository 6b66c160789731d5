import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from klr.core import (
    GF,
    QQ,
    EmptySeriesError,
    LaurentPoly,
    TruncatedSeries,
    bar,
    expand_inverse_cyclotomic,
    parse_field,
    nullspace,
    quantum_factorial,
    quantum_integer,
    rank,
    solve,
)
from klr.core.laurent import series_product
from klr.core.linalg import Echelon, Lattice

Q = sympy.Symbol("q")

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def to_sympy(p: LaurentPoly):
    return sum((v * Q ** e for e, v in p.items()), sympy.Integer(0))


def from_sympy(expr, offset: int = 64) -> LaurentPoly:
    poly = sympy.Poly(sympy.expand(expr * Q ** offset), Q)
    return LaurentPoly({e - offset: int(c) for (e,), c in poly.as_dict().items()})


class TestQuantumNumbers:
    def test_small_values(self):
        q = LaurentPoly.q()
        assert quantum_integer(3) == q * q + 1 + LaurentPoly.monomial(-2)
        assert quantum_integer(0) == 0
        assert quantum_factorial(0) == 1
        assert quantum_factorial(2) == q + LaurentPoly.monomial(-1)

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_integer_matches_ratio_formula(self, n, d):
        closed = (Q ** (d * n) - Q ** (-d * n)) / (Q ** d - Q ** (-d))
        assert from_sympy(sympy.cancel(closed)) == quantum_integer(n, d)

    @pytest.mark.parametrize("n", range(0, 6))
    def test_factorial_counts_permutations_at_one(self, n):
        assert quantum_factorial(n).at_one() == math.factorial(n)
        assert quantum_factorial(n).is_bar_invariant()

    def test_factorial_is_poincare_polynomial_of_lengths(self):
        # sum over S_n of q^{2 l(w) - n(n-1)/2}
        n = 4
        counts = {}
        for w in itertools.permutations(range(n)):
            inv = sum(1 for a, b in itertools.combinations(range(n), 2) if w[a] > w[b])
            e = 2 * inv - n * (n - 1) // 2
            counts[e] = counts.get(e, 0) + 1
        assert quantum_factorial(n) == LaurentPoly(counts)

    def test_negative_input_rejected(self):
        with pytest.raises(ValueError):
            quantum_integer(-1)


class TestLaurentRing:
    @given(polys, polys)
    def test_product_agrees_with_sympy(self, a, b):
        assert from_sympy(to_sympy(a) * to_sympy(b)) == a * b

    @given(polys, polys, polys)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == 0

    @given(polys, polys)
    def test_bar_is_ring_involution(self, a, b):
        assert bar(bar(a)) == a
        assert bar(a * b) == bar(a) * bar(b)
        assert bar(a + b) == bar(a) + bar(b)

    @given(polys, polys)
    def test_exact_division_inverts_multiplication(self, a, b):
        if b.is_zero():
            return
        assert (a * b).divide_exact(b) == a

    def test_inexact_division_raises(self):
        with pytest.raises(ArithmeticError):
            LaurentPoly({0: 1}).divide_exact(LaurentPoly({0: 1, 1: 1}))
        with pytest.raises(ZeroDivisionError):
            LaurentPoly.one().divide_exact(LaurentPoly())

    def test_bar_examples(self):
        assert bar(LaurentPoly({2: 1, 0: 3})) == LaurentPoly({-2: 1, 0: 3})
        assert quantum_integer(2).is_bar_invariant()
        assert bar(LaurentPoly()) == 0

    @given(polys)
    def test_json_round_trip(self, a):
        assert LaurentPoly.from_json(a.to_json()) == a

    @given(polys, st.integers(1, 3))
    def test_power_substitution(self, a, d):
        assert from_sympy(to_sympy(a).subs(Q, Q ** d)) == a.evaluate_power(d)

    def test_repr(self):
        assert repr(LaurentPoly({2: 1, 0: 1, -2: -2})) == "q^2 + 1 - 2*q^-2"


class TestSeries:
    def test_inverse_cyclotomic(self):
        assert expand_inverse_cyclotomic(1, 6) == TruncatedSeries({0: 1, 2: 1, 4: 1, 6: 1}, 6)
        assert expand_inverse_cyclotomic(2, 6) == TruncatedSeries({0: 1, 4: 1}, 6)
        assert expand_inverse_cyclotomic(1, 0) == TruncatedSeries({0: 1}, 0)
        with pytest.raises(EmptySeriesError):
            expand_inverse_cyclotomic(1, -1)

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_inverse_times_denominator_is_one(self, r):
        D = 12
        s = expand_inverse_cyclotomic(r, D) * TruncatedSeries({0: 1, 2 * r: -1}, D)
        assert s == TruncatedSeries.one(D)

    def test_product_matches_sympy_series(self):
        D = 10
        got = series_product([expand_inverse_cyclotomic(1, D), expand_inverse_cyclotomic(2, D)], D)
        ref = sympy.series(1 / ((1 - Q ** 2) * (1 - Q ** 4)), Q, 0, D + 1).removeO()
        assert got == TruncatedSeries(from_sympy(ref).coeffs, D)

    def test_coefficients_above_cutoff_are_dropped(self):
        s = TruncatedSeries({0: 1, 5: 1}, 3)
        assert 5 not in s.coeffs
        with pytest.raises(IndexError):
            s[5]
        assert s.shift(2).cutoff == 5


class TestFields:
    def test_rationals(self):
        assert QQ(3) / QQ(6) == Fraction(1, 2)
        assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_prime_field_inverse(self, p):
        F = GF(p)
        for x in range(1, p):
            assert F(x * F.inv(x)) == 1

    def test_reduces_fractions(self):
        F = GF(5)
        assert F(Fraction(1, 2)) == 3
        with pytest.raises((ZeroDivisionError, ArithmeticError, ValueError)):
            F(Fraction(1, 5))

    def test_composite_modulus_rejected(self):
        with pytest.raises(ValueError):
            GF(4)

    def test_parse_field(self):
        assert parse_field("rational") == QQ
        assert parse_field("3") == GF(3)


small_rows = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


def _dicts(rows):
    return [{k: v for k, v in enumerate(r) if v} for r in rows]


def _span_size_mod_p(rows, p):
    vecs = {tuple(x % p for x in r) for r in rows}
    span = {(0,) * len(rows[0])}
    for v in vecs:
        span = {tuple((a + c * b) % p for a, b in zip(s, v)) for s in span for c in range(p)}
    return len(span)


class TestLinearAlgebra:
    @given(small_rows)
    def test_rank_over_rationals_matches_sympy(self, rows):
        assert rank(_dicts(rows), QQ) == sympy.Matrix(rows).rank()

    @given(small_rows, st.sampled_from([2, 3]))
    @settings(max_examples=60)
    def test_rank_mod_p_matches_span_count(self, rows, p):
        assert p ** rank(_dicts(rows), GF(p)) == _span_size_mod_p(rows, p)

    @given(small_rows)
    def test_nullspace_vectors_solve_the_system(self, rows):
        unknowns = list(range(4))
        ns = nullspace(_dicts(rows), unknowns, QQ)
        assert len(ns) == 4 - sympy.Matrix(rows).rank()
        for v in ns:
            for r in rows:
                assert sum(Fraction(r[k]) * v.get(k, 0) for k in unknowns) == 0

    def test_solve(self):
        cols = [{0: 1, 1: 1}, {1: 1}]
        assert solve(cols, {0: 2, 1: 5}, QQ) == [2, 3]
        assert solve([{0: 1}], {1: 1}, QQ) is None

    def test_echelon_membership_and_coordinates(self):
        e = Echelon(QQ)
        e.add({0: 1, 1: 2})
        e.add({1: 1})
        assert e.contains({0: 3, 1: 1})
        assert not e.contains({2: 1})
        assert e.rank == 2

    @given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=4))
    def test_lattice_covolume_is_gcd_of_minors(self, gens):
        lat = Lattice()
        for g in gens:
            lat.add({k: v for k, v in enumerate(g) if v})
        minors = [abs(a[0] * b[1] - a[1] * b[0]) for a, b in itertools.combinations(gens, 2)]
        g = math.gcd(*minors)
        if g == 0:
            assert lat.rank < 2
            return
        basis = lat.basis()
        assert lat.rank == 2
        det = abs(basis[0].get(0, 0) * basis[1].get(1, 0) - basis[0].get(1, 0) * basis[1].get(0, 0))
        assert det == g

    @given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3),
           st.lists(st.integers(-3, 3), min_size=3, max_size=3))
    def test_lattice_contains_integer_combinations(self, gens, coeffs):
        lat = Lattice()
        for g in gens:
            lat.add({k: v for k, v in enumerate(g) if v})
        v = [sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(3)]
        assert lat.coordinates({k: x for k, x in enumerate(v) if x}) is not None

    def test_lattice_rejects_fractional_points(self):
        lat = Lattice()
        lat.add({0: 2})
        assert lat.coordinates({0: 1}) is None
        assert lat.coordinates({0: 4}) == {0: 2}
