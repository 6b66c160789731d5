import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from klr.core import LaurentPoly, TruncatedSeries
from klr.homology import (
    BnAlgebra,
    BnSimple,
    bn_resolution,
    costandard_resolution,
    cuspidal_resolution,
    cuspidal_resolution_prime,
    dimension_report,
    euler_characteristic,
    euler_check,
    ext_against,
    ext_bn,
    ext_bn_closed_form,
    flip,
    format_signs,
    iota,
    parse_signs,
    shape_cartan,
    sign_sequences,
    splitting_distance,
    standard_resolution,
    verify_complex,
    verify_iota,
)
from klr.modules import algebra_for, homogeneous, proper_costandard, proper_standard
from klr.roots import RootPartition, RootSystemError, cartan_type, convex_order_from_reduced_word, lex_order, qplus_elements, root_partitions, type_a
from klr.shapes import skew_shapes, split_many

signs = st.integers(1, 5).flatmap(lambda n: st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n).map(tuple))


def ext_by_matrices(C, M):
    """Graded Ext from explicit Hom-complex matrices, ranks computed by sympy degree by degree."""
    spaces = []
    for col in C.columns:
        cells = []
        for a, s in enumerate(col):
            for k, (w, dg) in enumerate(zip(M.words, M.degrees)):
                if tuple(w) == tuple(s.idem):
                    cells.append((a, k, dg - s.shift))
        spaces.append(cells)

    def delta(k, t):
        # cochains on P_{k-1} -> cochains on P_k, restricted to internal degree t
        src = [c for c in spaces[k - 1] if c[2] == t]
        dst = [c for c in spaces[k] if c[2] == t]
        row = {(a, j): r for r, (a, j, _) in enumerate(dst)}
        mat = sympy.zeros(len(dst), len(src))
        for col_idx, (b, j, _) in enumerate(src):
            for (a, b2), x in C.diffs.get(k, {}).items():
                if b2 != b:
                    continue
                for j2, c in M.apply_element(x, {j: 1}).items():
                    mat[row[(a, j2)], col_idx] += sympy.Rational(c)
        return mat

    out = {}
    for k in range(len(spaces)):
        for t in sorted({c[2] for c in spaces[k]}):
            n = sum(1 for c in spaces[k] if c[2] == t)
            into = delta(k, t).rank() if k > 0 else 0
            outof = delta(k + 1, t).rank() if k + 1 < len(spaces) else 0
            dim = n - outof - into
            if dim:
                out[k] = out.get(k, LaurentPoly()) + LaurentPoly.monomial(t, dim)
    return out


def bn_dim(i, j, cutoff):
    """dim_q e(j) B_n e(i): each loop contributes q^{parity}/(1 - q^2)."""
    total = TruncatedSeries({0: 1}, cutoff)
    for a, b in zip(i, j):
        start = 0 if a == b else 1
        total = total * TruncatedSeries({d: 1 for d in range(start, cutoff + 1, 2)}, cutoff)
    return total


class TestBn:
    def test_parse_and_format(self):
        assert parse_signs("+-pm") == (1, -1, 1, -1)
        assert format_signs((1, -1)) == "+-"
        for bad in ("", "+x", "1-"):
            with pytest.raises(ValueError):
                parse_signs(bad)

    def test_idempotents_and_relations(self):
        B = BnAlgebra(3)
        es = {s: B.e(s) for s in sign_sequences(3)}
        for s, t in itertools.product(es, repeat=2):
            assert es[s] * es[t] == (es[s] if s == t else B.zero())
        assert sum(es.values(), B.zero()) == B.one()
        for r, s in itertools.product(range(1, 4), repeat=2):
            assert B.b(r) * B.b(s) == B.b(s) * B.b(r)
        for r in range(1, 4):
            for s in es:
                assert es[s] * B.b(r) == B.b(r) * es[flip(s, [r])]

    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_associative(self, data):
        B = BnAlgebra(3)
        keys = B.basis(2)
        pick = lambda: B.element({k: data.draw(st.integers(-2, 2)) for k in data.draw(st.lists(st.sampled_from(keys), max_size=3))})
        x, y, z = pick(), pick(), pick()
        assert (x * y) * z == x * (y * z)

    def test_basis_size(self):
        # 2^n idempotents times monomials of degree <= D in n variables
        B = BnAlgebra(3)
        assert len(B.basis(2)) == 8 * (1 + 3 + 6)

    @pytest.mark.parametrize("n", range(1, 5))
    def test_koszul_resolution_is_a_complex(self, n):
        for s in sign_sequences(n):
            C = bn_resolution(s)
            assert verify_complex(C).ok
            assert C.column_sizes() == [len(list(itertools.combinations(range(n), m))) for m in range(n + 1)]

    @pytest.mark.parametrize("n", range(2, 5))
    def test_literal_sign_rule_fails_unless_all_earlier_signs_are_minus(self, n):
        for s in sign_sequences(n):
            ok = verify_complex(bn_resolution(s, sign_rule="literal")).ok
            assert ok == all(x == -1 for x in s[:-1])

    def test_unknown_sign_rule(self):
        with pytest.raises(ValueError):
            bn_resolution((1,), sign_rule="other")

    def test_perturbed_differential_is_caught(self):
        C = bn_resolution((1, -1, 1))
        key = next(iter(C.diffs[2]))
        C.diffs[2][key] = C.diffs[2][key].scale(2)
        assert not verify_complex(C).ok

    @pytest.mark.parametrize("n", range(1, 5))
    def test_euler_characteristic_is_a_delta(self, n):
        for s in sign_sequences(n):
            C = bn_resolution(s)
            for t in sign_sequences(n):
                got = euler_characteristic(C, t, bn_dim, 8)
                assert got == TruncatedSeries({0: 1} if s == t else {}, 8)

    @settings(max_examples=40, deadline=None)
    @given(signs, st.data())
    def test_ext_closed_form(self, s, data):
        t = tuple(data.draw(st.sampled_from((1, -1))) for _ in s)
        e = ext_bn(s, t)
        assert e == ext_bn_closed_form(s, t)
        assert e == ext_by_matrices(bn_resolution(s), BnSimple(t))

    def test_ext_length_mismatch(self):
        with pytest.raises(ValueError):
            ext_bn((1,), (1, 1))


class TestIota:
    @pytest.mark.parametrize("high", range(2, 5))
    def test_relations_and_independence(self, high):
        rep = verify_iota(1, high, 3)
        assert rep.ok, rep.relation
        n = high - 1
        # ranks by degree count monomials times idempotents
        assert rep.ranks == {d: 2 ** n * len([m for m in itertools.product(range(d + 1), repeat=n) if sum(m) == d]) for d in range(4)}

    def test_iota_is_multiplicative(self):
        B = BnAlgebra(2)
        alg = algebra_for(shape_cartan(1, 3))
        for k1, k2 in itertools.product(B.basis(2), repeat=2):
            x, y = B.element({k1: 1}), B.element({k2: 1})
            assert iota(x * y, 1, alg) == alg.multiply(iota(x, 1, alg), iota(y, 1, alg))


class TestCuspidalResolutions:
    @pytest.mark.parametrize("high", range(1, 5))
    def test_complexes_and_euler_characteristics(self, high):
        c = shape_cartan(1, high)
        for lam in skew_shapes(1, high):
            ch = homogeneous(lam, c).character()
            for build in (cuspidal_resolution_prime, cuspidal_resolution):
                C = build(lam)
                assert verify_complex(C).ok
                assert euler_check(C, ch, 8).ok

    def test_dropped_sign_breaks_the_square(self):
        lam = skew_shapes(1, 3)[0]
        C = cuspidal_resolution(lam, drop_sign=((1, 3), 3))
        assert not verify_complex(C).ok

    def test_wrong_target_fails_euler_check(self):
        shapes = skew_shapes(1, 3)
        c = shape_cartan(1, 3)
        rep = euler_check(cuspidal_resolution_prime(shapes[0]), homogeneous(shapes[1], c).character(), 6)
        assert not rep.ok and rep.mismatches

    @pytest.mark.parametrize("high", range(1, 4))
    def test_ext_against_matrix_oracle(self, high):
        c = shape_cartan(1, high)
        shapes = skew_shapes(1, high)
        mods = {mu: homogeneous(mu, c) for mu in shapes}
        for lam, mu in itertools.product(shapes, repeat=2):
            m = splitting_distance(lam, mu)
            prime = ext_against(cuspidal_resolution_prime(lam), mods[mu])
            assert prime == ext_by_matrices(cuspidal_resolution_prime(lam), mods[mu])
            assert prime == {m: LaurentPoly.monomial(-m)}
            full = ext_against(cuspidal_resolution(lam), mods[mu])
            assert full == ext_by_matrices(cuspidal_resolution(lam), mods[mu])
            assert full == {m: LaurentPoly.monomial(-m), m + 1: LaurentPoly.monomial(-m - 2)}


class TestSplittingDistance:
    @pytest.mark.parametrize("d", range(1, 6))
    def test_counts_the_unique_splitting_set(self, d):
        shapes = skew_shapes(1, d)
        for lam, mu in itertools.product(shapes, repeat=2):
            S = next(S for k in range(d) for S in itertools.combinations(range(1, d), k) if split_many(mu, S) == lam)
            assert splitting_distance(lam, mu) == len(S) == splitting_distance(mu, lam)


class TestStandardResolutions:
    O3 = lex_order(type_a(3))

    @pytest.mark.parametrize("alpha", qplus_elements(type_a(3), 3), ids=str)
    def test_standard_and_costandard(self, alpha):
        for pi in root_partitions(alpha, self.O3):
            for build, target in ((standard_resolution, proper_standard), (costandard_resolution, proper_costandard)):
                C = build(pi)
                assert verify_complex(C).ok
                assert euler_check(C, target(pi).character(), 8).ok

    @pytest.mark.parametrize("alpha", [(1, 1, 0), (1, 1, 1), (0, 2, 1)], ids=str)
    def test_ext_between_standard_and_costandard(self, alpha):
        for pi, sigma in itertools.product(root_partitions(alpha, self.O3), repeat=2):
            e = ext_against(standard_resolution(pi), proper_costandard(sigma))
            assert e == ext_by_matrices(standard_resolution(pi), proper_costandard(sigma))
            if pi != sigma:
                assert e == {}

    def test_only_type_a(self):
        o = convex_order_from_reduced_word(cartan_type("B2"), (1, 2, 1, 2))
        pi = RootPartition.from_roots(o, [o.decreasing[0]])
        with pytest.raises(RootSystemError):
            standard_resolution(pi)


class TestDimensionFormula:
    @pytest.mark.parametrize("alpha", qplus_elements(type_a(2), 3), ids=str)
    def test_basis_side_equals_standard_side(self, alpha):
        rep = dimension_report(alpha, lex_order(type_a(2)), 8)
        assert rep.equal, rep.to_json()
