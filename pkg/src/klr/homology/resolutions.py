"""Explicit projective resolutions: ``B_n`` Koszul complexes, cuspidal blocks, proper (co)standard modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..core.fields import QQ, Field
from ..core.laurent import LaurentPoly, TruncatedSeries
from ..engine.algebra import words_of_content
from ..engine.algebra import KlrAlgebra, KlrElement
from ..engine.elements import psi_element, rank_by_degree, z_element
from ..modules.constructions import algebra_for
from ..roots import CartanData, RootPartition, RootSystemError, shift_sh, shift_sh_prime
from ..shapes import SkewShape, leading_word, shape_of_sigma, sigma_of_shape, split_many
from ..words import Character
from .bn import BnAlgebra, BnElement, Sign, flip, sign_sequences
from .complex import ChainComplex, Summand, euler_characteristic, ext_against

__all__ = [
    "bn_resolution",
    "BnSimple",
    "ext_bn",
    "ext_bn_closed_form",
    "iota",
    "iota_b",
    "verify_iota",
    "IotaReport",
    "cuspidal_resolution_prime",
    "cuspidal_resolution",
    "standard_resolution",
    "costandard_resolution",
    "splitting_distance",
    "shape_cartan",
    "dimension_function",
    "euler_check",
    "EulerReport",
]


def _subsets(n: int, m: int, universe: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """``m``-subsets in increasing lexicographic order."""
    items = list(universe) if universe is not None else list(range(1, n + 1))
    return list(itertools.combinations(items, m))


def _koszul(T: Sequence[int], t: int) -> int:
    return -1 if sum(1 for u in T if u < t) % 2 else 1


# -- B_n -----------------------------------------------------------------------------


def bn_resolution(sigma: Sign, field: Field = QQ, sign_rule: str = "koszul") -> ChainComplex:
    """Tensor product of the one-loop resolutions ``0 -> qP(-s) -> P(s)``.

    ``sign_rule="koszul"`` uses ``(-1)^(k-1)`` on the ``k``-th removed index, which is the sign of
    the tensor product of complexes.  ``sign_rule="literal"`` uses ``prod_{l<k} sigma_{r_l}``
    and serves as a negative control: it fails to square to zero whenever a plus sign is skipped.
    """
    sigma = tuple(sigma)
    n = len(sigma)
    B = BnAlgebra(n, field)
    columns, diffs = [], {}
    for m in range(n + 1):
        columns.append([Summand(m, flip(sigma, T), (T,)) for T in _subsets(n, m)])
    for m in range(1, n + 1):
        pos = {s.label[0]: a for a, s in enumerate(columns[m - 1])}
        d = {}
        for a, s in enumerate(columns[m]):
            T = s.label[0]
            for k, r in enumerate(T):
                rest = T[:k] + T[k + 1:]
                if sign_rule == "koszul":
                    sign = -1 if k % 2 else 1
                elif sign_rule == "literal":
                    sign = 1
                    for r2 in T[:k]:
                        sign *= sigma[r2 - 1]
                else:
                    raise ValueError(f"unknown sign rule {sign_rule!r}")
                target = columns[m - 1][pos[rest]].idem
                d[(a, pos[rest])] = B.b(r, target).scale(sign)
        diffs[m] = d
    return ChainComplex(B, columns, diffs, name=f"P({''.join('+' if x > 0 else '-' for x in sigma)})")


@dataclass
class BnSimple:
    """The one-dimensional module ``L(tau)``: ``e(tau)`` acts as 1, every ``b_r`` as 0."""

    tau: Sign
    field: Field = QQ

    @property
    def words(self):
        return [tuple(self.tau)]

    @property
    def degrees(self):
        return [0]

    def apply_element(self, x: BnElement, v: dict) -> dict:
        c = x.terms.get(((0,) * len(self.tau), tuple(self.tau)), 0)
        out = {k: self.field(a * c) for k, a in v.items()}
        return {k: a for k, a in out.items() if not self.field.is_zero(a)}


def ext_bn(sigma: Sign, tau: Sign, field: Field = QQ) -> dict[int, LaurentPoly]:
    if len(sigma) != len(tau):
        raise ValueError("sign sequences of different lengths")
    return ext_against(bn_resolution(sigma, field), BnSimple(tuple(tau), field))


def ext_bn_closed_form(sigma: Sign, tau: Sign) -> dict[int, LaurentPoly]:
    """``q^{-m}`` in homological degree ``m``, the number of positions where the signs differ."""
    m = sum(1 for a, b in zip(sigma, tau) if a != b)
    return {m: LaurentPoly.monomial(-m)}


# -- the cuspidal block ---------------------------------------------------------------


def shape_cartan(low: int, high: int) -> CartanData:
    from ..modules.constructions import cartan_for_contents

    return cartan_for_contents(low, high)


def _shape_of_signs(low: int, sigma: Sign) -> SkewShape:
    return shape_of_sigma(low, sigma)


def iota_b(alg: KlrAlgebra, low: int, n: int, r: int, sigma: Sign) -> KlrElement:
    """``iota(b_r e(sigma^lam)) = psi(sp_r lam, lam) 1_{i^lam}``."""
    lam = _shape_of_signs(low, sigma)
    return psi_element(alg, split_many(lam, [r]), lam)


def iota(x: BnElement, low: int, alg: KlrAlgebra | None = None) -> KlrElement:
    """Image of an element of ``B_n`` in ``e R'_rho e`` for the root on contents ``low .. low+n``."""
    n = x.alg.n
    alg = alg or algebra_for(shape_cartan(low, low + n))
    out = alg.zero()
    for (m, sigma), c in x.terms.items():
        lam = _shape_of_signs(low, sigma)
        y = alg.idempotent(leading_word(lam))
        # b^m e(sigma) = b_1^{m_1} ... b_n^{m_n} e(sigma): apply factors right to left
        cur = sigma
        for r in range(n, 0, -1):
            for _ in range(m[r - 1]):
                y = alg.multiply(iota_b(alg, low, n, r, cur), y)
                cur = flip(cur, [r])
        out = out + y.scale(c)
    return out


@dataclass
class IotaReport:
    ok: bool
    relation: str | None = None
    witness: object = None
    ranks: dict | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "relation": self.relation, "witness": repr(self.witness) if self.witness is not None else None,
                "ranks": {str(k): v for k, v in (self.ranks or {}).items()}}


def verify_iota(low: int, high: int, max_degree: int = 3) -> IotaReport:
    """Check the ``B_n`` relations on the images and linear independence of the image of the monomial basis."""
    n = high - low
    alg = algebra_for(shape_cartan(low, high))
    B = BnAlgebra(n)
    sigmas = sign_sequences(n)
    ids = {s: alg.idempotent(leading_word(_shape_of_signs(low, s))) for s in sigmas}
    # orthogonality and completeness
    for s in sigmas:
        for t in sigmas:
            prod = alg.multiply(ids[s], ids[t])
            if prod != (ids[s] if s == t else alg.zero()):
                return IotaReport(False, "ERB1", (s, t))
    total = alg.zero()
    for s in sigmas:
        total = total + ids[s]
    words = {leading_word(_shape_of_signs(low, s)) for s in sigmas}
    if len(words) != len(sigmas):
        return IotaReport(False, "ERB1", "idempotents not distinct")
    b = {r: sum((iota_b(alg, low, n, r, s) for s in sigmas), alg.zero()) for r in range(1, n + 1)}
    for r in range(1, n + 1):
        for s in range(r + 1, n + 1):
            if alg.multiply(b[r], b[s]) != alg.multiply(b[s], b[r]):
                return IotaReport(False, "ERB2", (r, s))
        for sg in sigmas:
            lhs = alg.multiply(ids[sg], b[r])
            rhs = alg.multiply(b[r], ids[flip(sg, [r])])
            if lhs != rhs:
                return IotaReport(False, "ERB3", (r, sg))
    # independence of the images of b^m e(sigma), degree by degree
    images = []
    counts: dict[int, int] = {}
    for key in B.basis(max_degree):
        x = iota(B.element({key: 1}), low, alg)
        if x.is_zero():
            return IotaReport(False, "basis", key)
        images.append(x)
        dg = x.degrees()
        if len(dg) != 1 or dg != {sum(key[0])}:
            return IotaReport(False, "degree", key)
        counts[sum(key[0])] = counts.get(sum(key[0]), 0) + 1
    ranks = rank_by_degree(alg, images, max_degree)
    if ranks != {d: c for d, c in counts.items()}:
        return IotaReport(False, "basis", {"ranks": ranks, "expected": counts}, ranks)
    return IotaReport(True, ranks=ranks)


def _shape_summands(lam: SkewShape, universe: Sequence[int], shift_fn) -> list[list[Summand]]:
    d = lam.size
    cols = []
    for m in range(len(universe) + 1):
        col = []
        for T in _subsets(0, m, universe):
            mu = split_many(lam, [t for t in T if t < d])
            col.append(Summand(shift_fn(T), leading_word(mu), (T,)))
        cols.append(col)
    return cols


def cuspidal_resolution_prime(lam: SkewShape, alg: KlrAlgebra | None = None) -> ChainComplex:
    """Resolution of ``L^lam`` over ``R'_rho``: summands ``q^|T| R' 1_{i^{sp_T lam}}``, ``T`` in ``[1, n]``."""
    d = lam.size
    alg = alg or algebra_for(shape_cartan(lam.low, lam.high))
    cols = _shape_summands(lam, range(1, d), len)
    diffs = {}
    for m in range(1, len(cols)):
        pos = {s.label[0]: a for a, s in enumerate(cols[m - 1])}
        dm = {}
        for a, s in enumerate(cols[m]):
            T = s.label[0]
            src = split_many(lam, T)
            for t in T:
                rest = tuple(u for u in T if u != t)
                dm[(a, pos[rest])] = psi_element(alg, src, split_many(lam, rest)).scale(_koszul(T, t))
        diffs[m] = dm
    C = ChainComplex(alg, cols, diffs, name=f"P'({lam})")
    C.meta.update({"shape": lam, "ring": "prime"})
    return C


def cuspidal_resolution(lam: SkewShape, alg: KlrAlgebra | None = None, drop_sign: tuple | None = None) -> ChainComplex:
    """Resolution of ``L^lam`` over ``R_rho``: ``P' (x) (O[z] -z-> O[z])``, with ``d`` standing for ``z``.

    ``drop_sign=(T, t)`` omits the sign on one edge (negative control).
    """
    d = lam.size
    alg = alg or algebra_for(shape_cartan(lam.low, lam.high))

    def s_of(T):
        return len(T) + 1 if d in T else len(T)

    cols = _shape_summands(lam, range(1, d + 1), s_of)
    word = leading_word(SkewShape(((tuple(range(lam.low, lam.high + 1))),)))
    z = z_element(alg, word)
    diffs = {}
    for m in range(1, len(cols)):
        pos = {s.label[0]: a for a, s in enumerate(cols[m - 1])}
        dm = {}
        for a, s in enumerate(cols[m]):
            T = s.label[0]
            src = split_many(lam, [u for u in T if u < d])
            for t in T:
                rest = tuple(u for u in T if u != t)
                sign = _koszul(T, t)
                if drop_sign == (T, t):
                    sign = 1
                if t < d:
                    x = psi_element(alg, src, split_many(lam, [u for u in rest if u < d]))
                else:
                    x = alg.multiply(z, alg.idempotent(leading_word(src)))
                dm[(a, pos[rest])] = x.scale(sign)
        diffs[m] = dm
    C = ChainComplex(alg, cols, diffs, name=f"P({lam})")
    C.meta.update({"shape": lam, "ring": "full"})
    return C


def splitting_distance(lam: SkewShape, mu: SkewShape) -> int:
    """Number of ``r`` with ``sp_r`` needed to pass from ``mu`` to ``lam``."""
    return sum(1 for a, b in zip(sigma_of_shape(lam), sigma_of_shape(mu)) if a != b)


# -- induced products ----------------------------------------------------------------------


def _embed(alg: KlrAlgebra, x: KlrElement, left: tuple, right: tuple) -> KlrElement:
    """``1_left (x) x (x) 1_right`` inside the parabolic subalgebra."""
    a, b = len(left), len(right)
    terms = {}
    for (w, m, i), c in x.terms.items():
        w2 = tuple(range(a)) + tuple(a + v for v in w) + tuple(range(a + len(w), a + len(w) + b))
        m2 = (0,) * a + tuple(m) + (0,) * b
        terms[(w2, m2, left + tuple(i) + right)] = c
    return KlrElement(alg, terms)


def _product_complex(factors: Sequence[ChainComplex], alg: KlrAlgebra, shift: int, name: str) -> ChainComplex:
    """Induction product of complexes: total complex of the outer tensor product, words concatenated."""
    n_total = sum(len(C.columns) - 1 for C in factors)
    cells: list[list[tuple]] = [[] for _ in range(n_total + 1)]
    for combo in itertools.product(*[[(k, a) for k, col in enumerate(C.columns) for a in range(len(col))] for C in factors]):
        k = sum(c[0] for c in combo)
        cells[k].append(combo)
    for col in cells:
        col.sort(key=lambda combo: [(c[0], factors[j].columns[c[0]][c[1]].label) for j, c in enumerate(combo)])
    columns = []
    for col in cells:
        out = []
        for combo in col:
            parts = [factors[j].columns[k][a] for j, (k, a) in enumerate(combo)]
            out.append(Summand(shift + sum(p.shift for p in parts), tuple(x for p in parts for x in p.idem),
                               tuple(p.label for p in parts)))
        columns.append(out)
    diffs = {}
    for k in range(1, n_total + 1):
        pos = {combo: a for a, combo in enumerate(cells[k - 1])}
        dk = {}
        for a, combo in enumerate(cells[k]):
            before = 0
            for j, (kj, aj) in enumerate(combo):
                if kj > 0:
                    sign = -1 if before % 2 else 1
                    left = tuple(x for jj in range(j) for x in factors[jj].columns[combo[jj][0]][combo[jj][1]].idem)
                    right = tuple(x for jj in range(j + 1, len(combo)) for x in factors[jj].columns[combo[jj][0]][combo[jj][1]].idem)
                    for (src, dst), x in factors[j].diffs[kj].items():
                        if src != aj:
                            continue
                        target = combo[:j] + ((kj - 1, dst),) + combo[j + 1:]
                        b = pos[target]
                        y = _embed(alg, x, left, right).scale(sign)
                        dk[(a, b)] = dk[(a, b)] + y if (a, b) in dk else y
                before += kj
        diffs[k] = dk
    return ChainComplex(alg, columns, diffs, name=name)


def _cuspidal_row_resolution(rho, cartan: CartanData, alg: KlrAlgebra) -> ChainComplex:
    k, l = cartan.interval(tuple(rho))
    lam = SkewShape((tuple(range(k, l + 1)),))
    return cuspidal_resolution(lam, alg)


def standard_resolution(pi: RootPartition, field: Field = QQ) -> ChainComplex:
    """``q^{sh(pi)} P(L_{beta_1}) o ... o P(L_{beta_l})``."""
    c = pi.order.cartan
    if not c.is_type_a():
        raise RootSystemError("explicit resolutions are only available in type A")
    alg = algebra_for(c, field)
    factors = [_cuspidal_row_resolution(r, c, alg) for r in pi.roots]
    C = _product_complex(factors, alg, shift_sh(pi), f"P(Delta{pi.label()})")
    C.meta["partition"] = pi
    return C


def costandard_resolution(pi: RootPartition, field: Field = QQ) -> ChainComplex:
    """``q^{sh'(pi)} P(L_{beta_l}) o ... o P(L_{beta_1})``."""
    c = pi.order.cartan
    if not c.is_type_a():
        raise RootSystemError("explicit resolutions are only available in type A")
    alg = algebra_for(c, field)
    factors = [_cuspidal_row_resolution(r, c, alg) for r in reversed(pi.roots)]
    C = _product_complex(factors, alg, shift_sh_prime(pi), f"P(Nabla{pi.label()})")
    C.meta["partition"] = pi
    return C


# -- Euler characteristics -------------------------------------------------------------


def dimension_function(C: ChainComplex):
    """``(i, j, D) -> dim_q 1_j A 1_i`` for the ring the complex lives over.

    ``R_rho = R'_rho (x) F[z_rho]`` with ``z_rho`` of degree ``(rho, rho)``, so the ``R'`` dimension
    is the ``R`` dimension times ``1 - q^{(rho, rho)}``.
    """
    alg = C.algebra
    if C.meta.get("ring") != "prime":
        return alg.graded_dim_closed_form
    lam = C.meta["shape"]
    rho = alg.cartan.interval_root(lam.low, lam.high)
    factor = LaurentPoly({0: 1, alg.cartan.form(rho, rho): -1})

    def prime_dim(i, j, cutoff):
        return alg.graded_dim_closed_form(i, j, cutoff) * factor

    return prime_dim


@dataclass
class EulerReport:
    ok: bool
    mismatches: dict

    def to_json(self) -> dict:
        return {"ok": self.ok, "mismatches": {"".join(map(str, w)): [str(a), str(b)] for w, (a, b) in self.mismatches.items()}}


def euler_check(C: ChainComplex, target: Character, cutoff: int = 20, dim_fn=None) -> EulerReport:
    """Compare the alternating sum of the columns with ``target`` at every word of the block."""
    dim_fn = dim_fn or dimension_function(C)
    words = {s.idem for col in C.columns for s in col}
    if not words:
        return EulerReport(True, {})
    alg = C.algebra
    content = alg.cartan.content(next(iter(words)))
    bad = {}
    for j in words_of_content(alg.cartan, content):
        got = euler_characteristic(C, j, dim_fn, cutoff)
        want = TruncatedSeries(dict(target[j].items()), cutoff) if j in target.terms else TruncatedSeries({}, cutoff)
        if got != want:
            bad[j] = (got, want)
    return EulerReport(not bad, bad)
