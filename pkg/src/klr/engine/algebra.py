"""KLR algebras by generators and relations, computed in the basis ``psi_w y^m 1_i``.

Every element is a combination of basis triples ``(w, m, i)`` meaning
``psi_{red(w)} y_1^{m_1} ... y_d^{m_d} 1_i`` where ``red(w)`` is the reduced word
from :func:`reduced_word`.  Left multiplication by a generator is computed by a
memoized recursion on ``w`` that only ever uses the defining relations; the
right idempotent never changes, and right factors ``y^m`` just add exponents.
"""

from __future__ import annotations

import re
import sys
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..core.fields import QQ, Field
from ..core.laurent import LaurentPoly, TruncatedSeries, expand_inverse_cyclotomic
from ..roots import CartanData
from .perms import (
    Perm,
    act,
    identity,
    inversions,
    is_left_descent,
    left_s,
    perms_taking,
    reduced_word,
)

Word = tuple[int, ...]
Key = tuple[Perm, tuple[int, ...], Word]
Combo = dict  # (w, m) -> int, for a fixed right idempotent

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100000))

__all__ = ["KlrAlgebra", "KlrElement", "words_of_content", "EngineError"]


class EngineError(ValueError):
    pass


def words_of_content(cartan: CartanData, alpha: Sequence[int]) -> list[Word]:
    """All words of content ``alpha`` in lexicographic order."""
    labels = cartan.labels
    out: list[Word] = []

    def rec(rest: list[int], acc: list[int]):
        if not any(rest):
            out.append(tuple(acc))
            return
        for k, lab in enumerate(labels):
            if rest[k]:
                rest[k] -= 1
                acc.append(lab)
                rec(rest, acc)
                acc.pop()
                rest[k] += 1

    rec(list(alpha), [])
    return out


def _add(acc: Combo, combo: Mapping, scale: int = 1) -> None:
    for k, v in combo.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _shift_y(combo: Mapping, m: tuple[int, ...]) -> Combo:
    if not any(m):
        return dict(combo)
    return {(w, tuple(a + b for a, b in zip(mm, m))): c for (w, mm), c in combo.items()}


class KlrAlgebra:
    """The family ``R_alpha`` for one Cartan datum over one field; caches are per instance."""

    def __init__(self, cartan: CartanData, field: Field = QQ):
        self.cartan = cartan
        self.field = field
        self._psi: dict = {}
        self._y: dict = {}
        self._prod: dict = {}
        self._dim_cache: dict = {}
        self._pos = {lab: k for k, lab in enumerate(cartan.labels)}

    # -- polynomials from the relations --------------------------------------

    def eps(self, i: int, j: int) -> int:
        return 1 if self._pos[i] < self._pos[j] else -1

    def q_poly(self, word: Word, r: int) -> dict:
        """``Q_{i_r, i_{r+1}}(y_r, y_{r+1})`` as an exponent dict."""
        d = len(word)
        i, j = word[r - 1], word[r]
        if i == j:
            return {}
        cij = self.cartan.c(i, j)
        if cij == 0:
            return {(0,) * d: 1}
        cji = self.cartan.c(j, i)
        e = self.eps(i, j)
        mu = [0] * d
        mu[r - 1] = -cij
        mv = [0] * d
        mv[r] = -cji
        return {tuple(mu): e, tuple(mv): -e}

    def braid_poly(self, word: Word, a: int) -> dict:
        """Right side of the braid relation at positions ``a, a+1, a+2`` of ``word``."""
        d = len(word)
        i, k = word[a - 1], word[a]
        if word[a + 1] != i or i == k:
            return {}
        cik = self.cartan.c(i, k)
        if cik == 0:
            return {}
        e = -cik
        sign = self.eps(i, k)
        out = {}
        for s in range(e):
            m = [0] * d
            m[a + 1] += s
            m[a - 1] += e - 1 - s
            out[tuple(m)] = out.get(tuple(m), 0) + sign
        return out

    # -- left multiplication on basis vectors (integer combos) ----------------

    def _basis(self, w: Perm) -> Combo:
        return {(w, (0,) * len(w)): 1}

    def _lmul_psi_combo(self, r: int, combo: Mapping, i: Word) -> Combo:
        acc: Combo = {}
        for (w, m), c in combo.items():
            _add(acc, _shift_y(self.lmul_psi(r, w, i), m), c)
        return acc

    def _lmul_y_combo(self, t: int, combo: Mapping, i: Word) -> Combo:
        acc: Combo = {}
        for (w, m), c in combo.items():
            _add(acc, _shift_y(self.lmul_y(t, w, i), m), c)
        return acc

    def _lmul_poly_combo(self, poly: Mapping, combo: Mapping, i: Word) -> Combo:
        acc: Combo = {}
        for mono, c in poly.items():
            cur = dict(combo)
            for t, e in enumerate(mono, start=1):
                for _ in range(e):
                    cur = self._lmul_y_combo(t, cur, i)
            _add(acc, cur, c)
        return acc

    def lmul_y(self, t: int, w: Perm, i: Word) -> Combo:
        """``y_t psi_w 1_i``."""
        key = (t, w, i)
        hit = self._y.get(key)
        if hit is not None:
            return hit
        d = len(w)
        if w == identity(d):
            m = [0] * d
            m[t - 1] = 1
            res = {(w, tuple(m)): 1}
        else:
            t1 = reduced_word(w)[0]
            u = left_s(t1, w)
            j = act(u, i)
            st = t1 + 1 if t == t1 else t1 if t == t1 + 1 else t
            res = self._lmul_psi_combo(t1, self.lmul_y(st, u, i), i)
            if j[t1 - 1] == j[t1]:
                corr = (1 if t == t1 + 1 else 0) - (1 if t == t1 else 0)
                if corr:
                    _add(res, self._basis(u), corr)
        self._y[key] = res
        return res

    def lmul_psi(self, r: int, w: Perm, i: Word) -> Combo:
        """``psi_r psi_w 1_i``."""
        key = (r, w, i)
        hit = self._psi.get(key)
        if hit is not None:
            return hit
        res = self._lmul_psi_uncached(r, w, i)
        self._psi[key] = res
        return res

    def _braid_sign(self, r: int, t: int) -> int:
        """``psi_r psi_t psi_r = psi_t psi_r psi_t + sign * P``."""
        return 1 if r == min(r, t) + 1 else -1

    def _lmul_psi_uncached(self, r: int, w: Perm, i: Word) -> Combo:
        L = self._lmul_psi_combo
        if not is_left_descent(r, w):
            v = left_s(r, w)
            t = reduced_word(v)[0]
            if t == r:
                return self._basis(v)
            if abs(t - r) > 1:
                v2 = left_s(t, w)
                D = L(t, self._basis(v2), i)
                _add(D, self._basis(w), -1)
                res = L(t, L(r, self._basis(v2), i), i)
                _add(res, L(r, D, i), -1)
                return res
            v3 = left_s(r, left_s(t, w))
            X = self._basis(v3)
            D = L(t, L(r, X, i), i)
            _add(D, self._basis(w), -1)
            res = L(t, L(r, L(t, X, i), i), i)
            P = self.braid_poly(act(v3, i), min(r, t))
            if P:
                _add(res, self._lmul_poly_combo(P, X, i), self._braid_sign(r, t))
            _add(res, L(r, D, i), -1)
            return res
        t1 = reduced_word(w)[0]
        u = left_s(t1, w)
        if t1 == r:
            return self._lmul_poly_combo(self.q_poly(act(u, i), r), self._basis(u), i)
        if abs(t1 - r) > 1:
            return L(t1, L(r, self._basis(u), i), i)
        v3 = left_s(t1, left_s(r, u))
        X = self._basis(v3)
        D = L(r, L(t1, X, i), i)
        _add(D, self._basis(u), -1)
        Y = L(t1, X, i)
        QX = self._lmul_poly_combo(self.q_poly(act(v3, i), t1), X, i)
        res = L(t1, L(r, QX, i), i)
        P = self.braid_poly(act(left_s(t1, v3), i), min(r, t1))
        if P:
            _add(res, self._lmul_poly_combo(P, Y, i), self._braid_sign(r, t1))
        _add(res, L(r, L(t1, D, i), i), -1)
        return res

    # -- elements ---------------------------------------------------------------

    def element(self, terms: Mapping[Key, object]) -> "KlrElement":
        return KlrElement(self, terms)

    def zero(self) -> "KlrElement":
        return KlrElement(self, {})

    def idempotent(self, i: Sequence[int]) -> "KlrElement":
        i = tuple(i)
        return KlrElement(self, {(identity(len(i)), (0,) * len(i), i): 1})

    def one(self, alpha: Sequence[int]) -> "KlrElement":
        terms = {}
        for i in words_of_content(self.cartan, alpha):
            terms[(identity(len(i)), (0,) * len(i), i)] = 1
        return KlrElement(self, terms)

    def basis_element(self, w: Perm, m: Sequence[int], i: Sequence[int]) -> "KlrElement":
        return KlrElement(self, {(tuple(w), tuple(m), tuple(i)): 1})

    def y(self, r: int, i: Sequence[int]) -> "KlrElement":
        return self.left_y(r, self.idempotent(i))

    def psi(self, r: int, i: Sequence[int]) -> "KlrElement":
        """``psi_r 1_i``."""
        return self.left_psi(r, self.idempotent(i))

    def left_psi(self, r: int, x: "KlrElement") -> "KlrElement":
        return self._left(x, lambda w, i: self.lmul_psi(r, w, i))

    def left_y(self, r: int, x: "KlrElement") -> "KlrElement":
        return self._left(x, lambda w, i: self.lmul_y(r, w, i))

    def left_idempotent(self, j: Sequence[int], x: "KlrElement") -> "KlrElement":
        j = tuple(j)
        return KlrElement(self, {k: c for k, c in x.terms.items() if act(k[0], k[2]) == j})

    def _left(self, x: "KlrElement", op) -> "KlrElement":
        f = self.field
        out: dict = {}
        for (w, m, i), c in x.terms.items():
            for (w2, m2), c2 in op(w, i).items():
                key = (w2, tuple(a + b for a, b in zip(m2, m)), i)
                out[key] = out.get(key, 0) + c * c2
        return KlrElement(self, {k: f(v) for k, v in out.items()})

    def _basis_times_basis(self, w: Perm, m: tuple[int, ...], w2: Perm, i2: Word) -> Combo:
        """``psi_w y^m psi_{w2} 1_{i2}`` as an integer combo."""
        key = (w, m, w2, i2)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        cur = self._basis(w2)
        for t, e in enumerate(m, start=1):
            for _ in range(e):
                cur = self._lmul_y_combo(t, cur, i2)
        for r in reversed(reduced_word(w)):
            cur = self._lmul_psi_combo(r, cur, i2)
        self._prod[key] = cur
        return cur

    def multiply(self, a: "KlrElement", b: "KlrElement") -> "KlrElement":
        f = self.field
        if a.terms and b.terms:
            ca = self.cartan.content(next(iter(a.terms))[2])
            cb = self.cartan.content(next(iter(b.terms))[2])
            if ca != cb:
                raise EngineError("content mismatch")
        out: dict = {}
        by_left: dict[Word, list] = {}
        for (w2, m2, i2), c2 in b.terms.items():
            by_left.setdefault(act(w2, i2), []).append((w2, m2, i2, c2))
        for (w, m, i), c in a.terms.items():
            for w2, m2, i2, c2 in by_left.get(i, ()):
                for (w3, m3), c3 in self._basis_times_basis(w, m, w2, i2).items():
                    key = (w3, tuple(x + y for x, y in zip(m3, m2)), i2)
                    out[key] = out.get(key, 0) + c * c2 * c3
        return KlrElement(self, {k: f(v) for k, v in out.items()})

    def tau(self, x: "KlrElement") -> "KlrElement":
        """Anti-involution fixing the generators."""
        out = self.zero()
        for (w, m, i), c in x.terms.items():
            cur = self.idempotent(act(w, i))
            for r in reduced_word(w):
                cur = self.left_psi(r, cur)
            for t, e in enumerate(m, start=1):
                for _ in range(e):
                    cur = self.left_y(t, cur)
            out = out + cur.scale(c)
        return out

    # -- grading ---------------------------------------------------------------

    def degree_of(self, w: Perm, m: Sequence[int], i: Word) -> int:
        form = self.cartan.form_simple
        deg = sum(e * form(i[r], i[r]) for r, e in enumerate(m))
        for a, b in inversions(w):
            deg -= form(i[a], i[b])
        return deg

    def graded_dim_closed_form(self, i: Sequence[int], j: Sequence[int], cutoff: int = 20) -> TruncatedSeries:
        """``dim_q 1_j R 1_i`` from the basis theorem, truncated at ``cutoff``."""
        i, j = tuple(i), tuple(j)
        key = (i, j, cutoff)
        hit = self._dim_cache.get(key)
        if hit is None:
            hit = self._dim_cache[key] = self._graded_dim(i, j, cutoff)
        return hit

    def _graded_dim(self, i: Word, j: Word, cutoff: int) -> TruncatedSeries:
        form = self.cartan.form_simple
        poly_part = LaurentPoly()
        for w in perms_taking(i, j):
            poly_part = poly_part + LaurentPoly.monomial(self.degree_of(w, (0,) * len(i), i))
        if not poly_part:
            return TruncatedSeries({}, cutoff)
        lo = poly_part.min_degree()
        if cutoff < lo:
            return TruncatedSeries({}, cutoff)
        series = TruncatedSeries.one(cutoff - lo)
        for r in range(len(i)):
            series = series * expand_inverse_cyclotomic(form(i[r], i[r]) // 2, cutoff - lo)
        return (series * poly_part).truncate(cutoff)

    def basis_in_degrees(self, i: Sequence[int], j: Sequence[int], cutoff: int) -> list[Key]:
        """All basis triples of ``1_j R 1_i`` with degree at most ``cutoff``."""
        i, j = tuple(i), tuple(j)
        d = len(i)
        ydeg = [self.cartan.form_simple(x, x) for x in i]
        out = []
        for w in perms_taking(i, j):
            base = self.degree_of(w, (0,) * d, i)
            if base > cutoff:
                continue
            for m in _exponent_vectors(ydeg, cutoff - base):
                out.append((w, m, i))
        return out

    # -- generator expressions -------------------------------------------------

    def normal_form(self, expr: "str | Sequence", alpha: Sequence[int] | None = None) -> "KlrElement":
        """Evaluate a product of generators, e.g. ``"psi1 y2 e(1,1)"`` or a list of such products.

        Factors are ``e(i_1,...,i_d)``, ``y<r>`` and ``psi<r>``; a leading integer or
        fraction is a coefficient; products are separated by ``+``.
        """
        if isinstance(expr, str):
            summands = [s.strip() for s in expr.split("+") if s.strip()]
        else:
            summands = list(expr)
        total = self.zero()
        for s in summands:
            coeff, factors = _parse_product(s) if isinstance(s, str) else (1, list(s))
            words = {tuple(arg) for kind, arg in factors if kind == "e"}
            if alpha is None:
                if not words:
                    raise EngineError("content needed for an expression without idempotents")
                alpha_s = self.cartan.content(next(iter(words)))
            else:
                alpha_s = tuple(alpha)
            for wd in words:
                if self.cartan.content(wd) != alpha_s:
                    raise EngineError(f"idempotent {wd} has the wrong content")
            cur = self.one(alpha_s)
            d = sum(alpha_s)
            for kind, arg in reversed(factors):
                if kind == "e":
                    cur = self.left_idempotent(arg, cur)
                elif kind == "y":
                    if not 1 <= arg <= d:
                        raise EngineError(f"y{arg} out of range")
                    cur = self.left_y(arg, cur)
                else:
                    if not 1 <= arg < d:
                        raise EngineError(f"psi{arg} out of range")
                    cur = self.left_psi(arg, cur)
            total = total + cur.scale(coeff)
        return total


def _exponent_vectors(weights: Sequence[int], budget: int):
    if not weights:
        yield ()
        return
    w0 = weights[0]
    for e in range(budget // w0 + 1):
        for rest in _exponent_vectors(weights[1:], budget - e * w0):
            yield (e,) + rest


_FACTOR = re.compile(r"e\(([^)]*)\)|y(\d+)|psi(\d+)|(-?\d+(?:/\d+)?)|(\S)")


def _parse_product(text: str):
    coeff = Fraction(1)
    factors = []
    for m in _FACTOR.finditer(text.replace("*", " ")):
        e, y, p, num, bad = m.groups()
        if e is not None:
            factors.append(("e", tuple(int(x) for x in e.replace(" ", "").split(",") if x)))
        elif y is not None:
            factors.append(("y", int(y)))
        elif p is not None:
            factors.append(("psi", int(p)))
        elif num is not None:
            coeff *= Fraction(num)
        elif bad.strip() and bad not in "·":
            raise EngineError(f"cannot parse generator expression near {bad!r}")
    return coeff, factors


class KlrElement:
    """Immutable combination of basis triples with field coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: KlrAlgebra, terms: Mapping[Key, object]):
        f = alg.field
        self.alg = alg
        clean = {}
        for k, v in terms.items():
            v = f(v)
            if not f.is_zero(v):
                clean[k] = v
        self.terms: dict[Key, object] = clean

    def __add__(self, other: "KlrElement") -> "KlrElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return KlrElement(self.alg, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "KlrElement") -> "KlrElement":
        return self + (-other)

    def scale(self, c) -> "KlrElement":
        f = self.alg.field
        c = f(c)
        return KlrElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "KlrElement") -> "KlrElement":
        return self.alg.multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, KlrElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.alg.degree_of(*k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self) -> list:
        """Shorter permutations first, then higher powers of earlier ``y``'s, then words."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(reduced_word(kv[0][0])), reduced_word(kv[0][0]), tuple(-e for e in kv[0][1]), kv[0][2]),
        )

    def to_json(self) -> list[dict]:
        out = []
        for (w, m, i), c in self.sorted_terms():
            out.append({"perm": list(reduced_word(w)), "yexp": list(m), "word": list(i), "coeff": _scalar_json(c)})
        return out

    @classmethod
    def from_json(cls, alg: KlrAlgebra, data: Iterable[Mapping]) -> "KlrElement":
        from .perms import from_word

        terms = {}
        for t in data:
            d = len(t["word"])
            c = t["coeff"]
            terms[(from_word(t["perm"], d), tuple(t["yexp"]), tuple(t["word"]))] = Fraction(c) if isinstance(c, str) else c
        return cls(alg, terms)

    def to_tex(self) -> str:
        """Compact TeX such as ``y_11_{112}+\\psi_1y_2^{2}1_{121}``; words of one-digit letters."""
        if not self.terms:
            return "0"
        out = ""
        for (w, m, i), c in self.sorted_terms():
            mono = "".join(f"\\psi_{r}" for r in reduced_word(w))
            for r, e in enumerate(m, start=1):
                if e:
                    mono += f"y_{r}" + (f"^{{{e}}}" if e > 1 else "")
            mono += "1_{" + "".join(map(str, i)) + "}"
            if c == 1:
                out += ("+" if out else "") + mono
            elif c == -1:
                out += "-" + mono
            else:
                out += ("+" if out and c > 0 else "") + f"{c}" + mono
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (w, m, i), c in self.sorted_terms():
            mono = [f"psi{r}" for r in reduced_word(w)]
            for r, e in enumerate(m, start=1):
                if e:
                    mono.append(f"y{r}" + (f"^{e}" if e > 1 else ""))
            mono.append("e(" + ",".join(map(str, i)) + ")")
            s = " ".join(mono)
            bits.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(bits)


def _scalar_json(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return int(c)
