import itertools
import random

import pytest

from klr.core import GF, QQ, LaurentPoly, quantum_factorial
from klr.engine.perms import act
from klr.modules import (
    ModuleError,
    classify,
    cuspidal,
    cyclotomic_check,
    decompose,
    direct_sum,
    dual,
    e_tilde,
    eps,
    f_tilde,
    generated_submodule,
    head,
    hom_space,
    homogeneous,
    induce,
    induce_many,
    irreducible,
    irreducible_by_extremal,
    label_of,
    normalize,
    proper_costandard,
    proper_standard,
    quotient,
    reduce_mod_p,
    restrict,
    semisimple_S,
    shift,
    simple_power,
    socle,
    standard_character,
    truncated_root_module,
    verify_module,
)
from klr.modules.constructions import algebra_for, first_block
from klr.roots import RootPartition, bilex_leq, lex_order, positive_roots, qplus_elements, root_partitions, type_a
from klr.shapes import Multipartition, parse_shape, skew_shapes
from klr.words import Character, restrict_character, shuffle, shuffle_many

A2, A3 = type_a(2), type_a(3)
O2, O3 = lex_order(A2), lex_order(A3)


def P(order, *roots):
    return RootPartition.from_roots(order, roots)


def respects_multiplication(M, samples=60, seed=0, y_rate=0.2):
    """Act by random products through the engine and compare with acting factor by factor."""
    alg = algebra_for(M.cartan, M.field)
    rng = random.Random(seed)
    d = M.height
    for _ in range(samples):
        k = rng.randrange(M.dim)
        v = {k: M.field.one}
        i = M.words[k]
        w1 = tuple(rng.sample(range(d), d))
        m1 = tuple(int(rng.random() < y_rate) for _ in range(d))
        b = alg.basis_element(w1, m1, i)
        j = act(w1, i)
        w2 = tuple(rng.sample(range(d), d))
        m2 = tuple(int(rng.random() < y_rate) for _ in range(d))
        a = alg.basis_element(w2, m2, j)
        lhs = M.apply_element(alg.multiply(a, b), v)
        rhs = M.apply_element(a, M.apply_element(b, v))
        if lhs != rhs:
            return False
    return True


class TestBasicModules:
    def test_cuspidal_is_one_dimensional(self):
        for rho in positive_roots(A3):
            L = cuspidal(rho, A3)
            assert L.dim == 1 and verify_module(L).ok
            assert L.content == rho

    def test_homogeneous_character_is_tableau_words(self):
        lam = parse_shape("1,2|3")
        L = homogeneous(lam, A3)
        assert L.character() == Character({(1, 3, 2): 1, (3, 1, 2): 1})

    @pytest.mark.parametrize("lam", skew_shapes(1, 4), ids=str)
    def test_homogeneous_respects_multiplication(self, lam):
        L = homogeneous(lam, type_a(4))
        assert verify_module(L).ok
        assert respects_multiplication(L)

    def test_flipped_psi_sign_is_caught(self):
        L = homogeneous(parse_shape("1|2,3"), A3)
        g = ("psi", 2)
        k = next(k for k, col in enumerate(L.act[g]) if col)
        (j, c), = L.act[g][k].items()
        L.act[g][k] = {j: -c}
        assert not verify_module(L).ok
        assert not respects_multiplication(L, samples=200, y_rate=0)

    def test_simple_powers(self):
        for a in range(1, 5):
            L = simple_power(2, a, A3)
            assert L.character() == Character({(2,) * a: quantum_factorial(a)})
            assert verify_module(L).ok

    def test_semisimple_module(self):
        S = semisimple_S((0,), Multipartition(((2, 1),)))
        assert verify_module(S).ok
        assert S.dim == 2
        assert cyclotomic_check(S, {0: 1})
        with pytest.raises(ModuleError):
            semisimple_S((0, 0), Multipartition(((1,), (1,))))

    def test_cyclotomic_check_fails_when_y1_acts(self):
        L = simple_power(1, 2, A2)
        assert not cyclotomic_check(L, {1: 1})
        assert cyclotomic_check(L, {1: 2})


class TestFunctors:
    def test_dual_and_shift(self):
        M = proper_standard(P(O2, (0, 1), (1, 0)))
        assert dual(dual(M)).character() == M.character()
        assert dual(M).character() == M.character().bar()
        assert shift(M, 3).character() == M.character().shift(3)
        assert verify_module(dual(M)).ok

    def test_induction_character_is_shuffle(self):
        L1, L2 = homogeneous(parse_shape("1|2"), A3), cuspidal((0, 0, 1), A3)
        N = induce(L1, L2)
        assert N.character() == shuffle(A3, L1.character(), L2.character())
        assert verify_module(N).ok
        assert respects_multiplication(N, seed=4)

    def test_induction_is_associative_on_characters(self):
        mods = [cuspidal((1, 0, 0), A3), cuspidal((0, 1, 0), A3), cuspidal((0, 1, 1), A3)]
        chars = [m.character() for m in mods]
        assert induce_many(mods).character() == shuffle_many(A3, chars)
        assert induce(mods[0], induce(mods[1], mods[2])).character() == induce(induce(mods[0], mods[1]), mods[2]).character()

    def test_restriction(self):
        L = irreducible(P(O3, (0, 1, 1), (1, 0, 0)))
        blocks = ((0, 1, 1), (1, 0, 0))
        R = restrict(L, blocks)
        assert R.block_character() == restrict_character(A3, L.character(), blocks)
        assert verify_module(first_block(R)).ok
        with pytest.raises(ModuleError):
            restrict(L, ((1, 0, 0),))

    def test_direct_sum_and_quotient(self):
        M = proper_standard(P(O2, (1, 0), (1, 0)))
        S = direct_sum([M, M])
        assert S.character() == M.character().scale(2)
        sub, _ = generated_submodule(S, [{0: QQ.one}])
        Q = quotient(S, [{0: QQ.one}])
        assert Q.dim == S.dim - sub.dim
        assert Q.character() + sub.character() == S.character()
        assert verify_module(Q).ok

    def test_generated_submodule_of_proper_standard(self):
        M = proper_standard(P(O2, (0, 1), (1, 0)))
        k = M.words.index((1, 2))
        sub, _ = generated_submodule(M, [{k: QQ.one}])
        assert verify_module(sub).ok
        assert sub.character() == Character({(1, 2): LaurentPoly.monomial(M.degrees[k])})


class TestHomAndHeads:
    def test_schur_lemma(self):
        irr = list(classify((1, 1, 1), O3).values())
        for a, b in itertools.product(range(len(irr)), repeat=2):
            dims = sum(len(hom_space(irr[a], irr[b], s)) for s in range(-4, 5))
            assert dims == (1 if a == b else 0)

    def test_hom_space_respects_shift(self):
        L = irreducible(P(O2, (1, 1)))
        assert len(hom_space(L, shift(L, 2), 2)) == 1
        assert hom_space(L, shift(L, 2), 0) == []

    def test_head_of_proper_standard_is_irreducible(self):
        for pi in root_partitions((1, 1, 1), O3):
            M = proper_standard(pi)
            L = irreducible(pi)
            assert normalize(head(M, method="form")).character() == L.character()
            assert normalize(socle(proper_costandard(pi), method="form")).character() == L.character()

    def test_head_by_words_needs_a_weight(self):
        with pytest.raises(ModuleError):
            head(proper_standard(P(O2, (1, 1))), words=[(2, 1)])

    def test_unknown_head_method(self):
        with pytest.raises(ModuleError):
            head(proper_standard(P(O2, (1, 1))), method="guess")


class TestClassification:
    @pytest.mark.parametrize("alpha", qplus_elements(A3, 4), ids=str)
    def test_irreducibles(self, alpha):
        irr = classify(alpha, O3)
        assert len(irr) == len(root_partitions(alpha, O3))
        for pi, L in irr.items():
            assert verify_module(L).ok
            assert L.character().is_bar_invariant()
            assert label_of(L, O3) == pi
            assert decompose(L.character(), O3) == {pi: LaurentPoly.one()}

    def test_standard_is_unitriangular(self):
        for pi in root_partitions((1, 2, 1), O3):
            row = decompose(proper_standard(pi).character(), O3)
            assert row[pi] == 1
            assert all(bilex_leq(s, pi) for s in row)

    def test_decompose_rejects_non_characters(self):
        with pytest.raises(ModuleError):
            decompose(Character({(1, 2): 1, (2, 1): -1}), O2)

    def test_decompose_of_sum(self):
        a, b = P(O2, (1, 1)), P(O2, (0, 1), (1, 0))
        x = irreducible(a).character().shift(2) + irreducible(b).character().scale(3)
        assert decompose(x, O2) == {a: LaurentPoly.monomial(2), b: LaurentPoly({0: 3})}

    def test_irreducible_by_extremal_word(self):
        L = irreducible_by_extremal(((1, 1), (2, 1)), A2)
        assert L.character() == Character({(1, 2): 1})
        with pytest.raises((ModuleError, ValueError)):
            irreducible_by_extremal(((1, 1), (1, 1)), A2)


class TestCrystal:
    def test_f_then_e_returns(self):
        for pi in root_partitions((1, 1, 1), O3):
            L = irreducible(pi)
            for i in A3.labels:
                F = f_tilde(L, i)
                assert eps(F, i) == eps(L, i) + 1
                assert e_tilde(F, i).character() == L.character()

    def test_e_tilde_of_eps_zero(self):
        L = irreducible(P(O2, (1, 1)))
        assert eps(L, 1) == 0
        assert e_tilde(L, 1) is None


class TestStandardModules:
    def test_root_module_series(self):
        for rho in positive_roots(A3):
            pi = P(O3, rho)
            series = standard_character(pi, 8)
            M = truncated_root_module(rho, 8, A3)
            assert verify_module(M).ok
            counts = {}
            for w, dg in zip(M.words, M.degrees):
                counts.setdefault(w, {})
                counts[w][dg] = counts[w].get(dg, 0) + 1
            assert {w: s.coeffs for w, s in series.items()} == counts

    def test_reduction_mod_p(self):
        pi = P(O3, (0, 1, 1), (1, 0, 0))
        for p in (2, 3):
            red = reduce_mod_p(pi, p)
            assert red.module.field == GF(p)
            assert verify_module(red.module).ok
            assert red.row[pi] == 1
