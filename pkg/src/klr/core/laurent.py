"""Integer Laurent polynomials in ``q`` and bounded-below truncated series.

>>> q = LaurentPoly.q()
>>> (q + 1) * (q - 1)
q^2 - 1
>>> quantum_integer(3)
q^2 + 1 + q^-2
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "TruncatedSeries",
    "EmptySeriesError",
    "quantum_integer",
    "quantum_factorial",
    "bar",
    "expand_inverse_cyclotomic",
    "DEFAULT_CUTOFF",
]

DEFAULT_CUTOFF = 20


class LaurentPoly:
    """An element of ``Z[q, q^-1]`` stored as ``{exponent: coefficient}``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c: dict[int, int] = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c
        self._hash: int | None = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def q(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def coerce(cls, x: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls({0: x})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def at_one(self) -> int:
        return sum(self._c.values())

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + v1 * v2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        return LaurentPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                ((e, v),) = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({-e * (-n): v ** (-n)})
            raise ValueError("only monomials with unit coefficient are invertible")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by ``q^s``."""
        return LaurentPoly._raw({e + s: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ``ArithmeticError`` if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        top, low = other.max_degree(), other.min_degree()
        lead = other._c[top]
        floor = self.min_degree() - low
        rem = dict(self._c)
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            qe = e - top
            v = rem[e]
            if qe < floor or v % lead:
                raise ArithmeticError("inexact division")
            k = v // lead
            quot[qe] = k
            for oe, ov in other._c.items():
                ne = oe + qe
                s = rem.get(ne, 0) - k * ov
                if s:
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        return LaurentPoly._raw(quot)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                mono = str(abs(v))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                if abs(v) != 1:
                    mono = f"{abs(v)}*{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, mono))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, mono in parts[1:]:
            s += f" {sign} {mono}"
        return s

    def to_json(self) -> dict[str, int]:
        return {str(e): self._c[e] for e in sorted(self._c)}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(v) for e, v in data.items()})

    def evaluate_power(self, d: int) -> "LaurentPoly":
        """Substitute ``q -> q^d``."""
        return LaurentPoly._raw({e * d: v for e, v in self._c.items()})


def bar(x: LaurentPoly) -> LaurentPoly:
    """The involution ``q -> q^-1``."""
    return x.bar()


def quantum_integer(n: int, d: int = 1) -> LaurentPoly:
    """``[n]`` in the variable ``q^d``: ``q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}``."""
    if n < 0 or d < 1:
        raise ValueError("quantum_integer needs n >= 0 and d >= 1")
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


def quantum_factorial(n: int, d: int = 1) -> LaurentPoly:
    out = LaurentPoly.one()
    for m in range(1, n + 1):
        out = out * quantum_integer(m, d)
    return out


class EmptySeriesError(ValueError):
    """Raised when a truncation cutoff lies below the minimal degree of a series."""


class TruncatedSeries:
    """Integer series ``sum_{n >= min_degree} c_n q^n`` known up to ``cutoff``.

    Coefficients above ``cutoff`` are discarded by every operation; the cutoff of
    a result is the minimum of the cutoffs of its operands.
    """

    __slots__ = ("coeffs", "cutoff")

    def __init__(self, coeffs: Mapping[int, int], cutoff: int):
        self.cutoff = int(cutoff)
        self.coeffs = {int(e): int(v) for e, v in coeffs.items() if v and e <= cutoff}

    @classmethod
    def from_poly(cls, p: LaurentPoly, cutoff: int) -> "TruncatedSeries":
        return cls(p.coeffs, cutoff)

    @classmethod
    def one(cls, cutoff: int) -> "TruncatedSeries":
        return cls({0: 1}, cutoff)

    @property
    def min_degree(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, e: int) -> int:
        if e > self.cutoff:
            raise IndexError(f"degree {e} is above the cutoff {self.cutoff}")
        return self.coeffs.get(e, 0)

    def _check(self, other: "TruncatedSeries | LaurentPoly | int") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries(LaurentPoly.coerce(other).coeffs, self.cutoff)

    def __add__(self, other):
        other = self._check(other)
        cut = min(self.cutoff, other.cutoff)
        c = dict(self.coeffs)
        for e, v in other.coeffs.items():
            c[e] = c.get(e, 0) + v
        return TruncatedSeries(c, cut)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({e: -v for e, v in self.coeffs.items()}, self.cutoff)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries({e: v * other for e, v in self.coeffs.items()}, self.cutoff)
        if isinstance(other, LaurentPoly):
            if other.is_zero():
                return TruncatedSeries({}, self.cutoff)
            cut = self.cutoff + other.min_degree()
            c: dict[int, int] = {}
            for e1, v1 in self.coeffs.items():
                for e2, v2 in other.items():
                    c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
            return TruncatedSeries(c, cut)
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries({}, min(self.cutoff, other.cutoff))
        # a product is known up to min(cut_a + low_b, cut_b + low_a)
        cut = min(self.cutoff + other.min_degree, other.cutoff + self.min_degree)
        c: dict[int, int] = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = e1 + e2
                if e <= cut:
                    c[e] = c.get(e, 0) + v1 * v2
        return TruncatedSeries(c, cut)

    __rmul__ = __mul__

    def shift(self, s: int) -> "TruncatedSeries":
        return TruncatedSeries({e + s: v for e, v in self.coeffs.items()}, self.cutoff + s)

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot raise the cutoff of a truncated series")
        return TruncatedSeries(self.coeffs, cutoff)

    def agrees_with(self, other: "TruncatedSeries", upto: int | None = None) -> bool:
        cut = min(self.cutoff, other.cutoff)
        if upto is not None:
            cut = min(cut, upto)
        keys = {e for e in self.coeffs if e <= cut} | {e for e in other.coeffs if e <= cut}
        return all(self.coeffs.get(e, 0) == other.coeffs.get(e, 0) for e in keys)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.agrees_with(other)

    def __hash__(self):
        return hash((self.cutoff, frozenset(self.coeffs.items())))

    def __repr__(self):
        poly = LaurentPoly(self.coeffs)
        return f"({poly!r} + O(q^{self.cutoff + 1}))"

    def to_json(self) -> dict:
        return {"coeffs": LaurentPoly(self.coeffs).to_json(), "cutoff": self.cutoff}


def expand_inverse_cyclotomic(r: int, cutoff: int) -> TruncatedSeries:
    """Geometric expansion of ``1 / (1 - q^{2r})`` up to degree ``cutoff``."""
    if r < 1:
        raise ValueError("r must be positive")
    if cutoff < 0:
        raise EmptySeriesError("cutoff below the minimal degree 0")
    return TruncatedSeries({2 * r * k: 1 for k in range(cutoff // (2 * r) + 1)}, cutoff)


def series_product(factors: Iterable[TruncatedSeries], cutoff: int) -> TruncatedSeries:
    out = TruncatedSeries.one(cutoff)
    for f in factors:
        out = out * f
    return out
