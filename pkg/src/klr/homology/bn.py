"""The basic algebra ``B_n``: n commuting loops ``b_r`` on the sign sequences ``{+-}^n``.

Basis elements are ``b_1^{m_1} ... b_n^{m_n} e(sigma)``, stored as ``(m, sigma)`` with
``sigma`` a tuple of ``+1``/``-1``.  ``e(sigma) b_r = b_r e(eps_r sigma)`` where ``eps_r``
flips the ``r``-th sign.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from ..core.fields import QQ, Field

Sign = tuple[int, ...]
Key = tuple[tuple[int, ...], Sign]

__all__ = ["BnAlgebra", "BnElement", "sign_sequences", "flip", "parse_signs", "format_signs"]


def sign_sequences(n: int) -> list[Sign]:
    return [tuple(s) for s in itertools.product((1, -1), repeat=n)]


def flip(sigma: Sign, positions: Iterable[int]) -> Sign:
    """``eps_{r_1} ... eps_{r_m} sigma`` (positions 1-based)."""
    s = list(sigma)
    for r in positions:
        s[r - 1] = -s[r - 1]
    return tuple(s)


def parse_signs(text: str) -> Sign:
    """``"+-+"``; ``p`` and ``m`` may stand in for ``+`` and ``-`` (handy on command lines)."""
    if not text or any(ch not in "+-pm" for ch in text):
        raise ValueError(f"sign sequence {text!r} must consist of '+'/'p' and '-'/'m'")
    return tuple(1 if ch in "+p" else -1 for ch in text)


def format_signs(sigma: Sign) -> str:
    return "".join("+" if s > 0 else "-" for s in sigma)


class BnAlgebra:
    def __init__(self, n: int, field: Field = QQ):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.field = field

    def __repr__(self):
        return f"B_{self.n}"

    def element(self, terms: Mapping[Key, object]) -> "BnElement":
        return BnElement(self, terms)

    def zero(self) -> "BnElement":
        return BnElement(self, {})

    def e(self, sigma: Sequence[int]) -> "BnElement":
        sigma = tuple(sigma)
        if len(sigma) != self.n or any(s not in (1, -1) for s in sigma):
            raise ValueError("bad sign sequence")
        return BnElement(self, {((0,) * self.n, sigma): 1})

    def one(self) -> "BnElement":
        return BnElement(self, {((0,) * self.n, s): 1 for s in sign_sequences(self.n)})

    def b(self, r: int, sigma: Sequence[int] | None = None) -> "BnElement":
        """``b_r`` or ``b_r e(sigma)``."""
        if not 1 <= r <= self.n:
            raise ValueError(f"b_{r} out of range")
        m = tuple(1 if k == r - 1 else 0 for k in range(self.n))
        sigmas = [tuple(sigma)] if sigma is not None else sign_sequences(self.n)
        return BnElement(self, {(m, s): 1 for s in sigmas})

    def monomial(self, m: Sequence[int], sigma: Sequence[int]) -> "BnElement":
        return BnElement(self, {(tuple(m), tuple(sigma)): 1})

    def multiply(self, x: "BnElement", y: "BnElement") -> "BnElement":
        """``(b^m e(s)) (b^m' e(s')) = b^{m+m'} e(s')`` when ``s' = eps^{m'} s``, else 0."""
        f = self.field
        out: dict = {}
        for (m, s), c in x.terms.items():
            for (m2, s2), c2 in y.terms.items():
                moved = flip(s, [r + 1 for r in range(self.n) if m2[r] % 2])
                if moved != s2:
                    continue
                key = (tuple(a + b for a, b in zip(m, m2)), s2)
                out[key] = f(out.get(key, 0) + c * c2)
        return BnElement(self, out)

    def basis(self, max_degree: int) -> list[Key]:
        """The monomial basis in degrees ``<= max_degree``."""
        out = []
        for deg in range(max_degree + 1):
            for m in _compositions(deg, self.n):
                for s in sign_sequences(self.n):
                    out.append((m, s))
        return out

    @staticmethod
    def degree_of(key: Key) -> int:
        return sum(key[0])


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


class BnElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: BnAlgebra, terms: Mapping[Key, object]):
        f = alg.field
        self.alg = alg
        self.terms = {k: f(v) for k, v in terms.items() if not f.is_zero(f(v))}

    def __add__(self, other: "BnElement") -> "BnElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BnElement(self.alg, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "BnElement") -> "BnElement":
        return self + (-other)

    def scale(self, c) -> "BnElement":
        return BnElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "BnElement") -> "BnElement":
        return self.alg.multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, BnElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(m) for m, _ in self.terms}

    def to_json(self) -> list[dict]:
        return [{"b": list(m), "e": format_signs(s), "coeff": int(c) if not hasattr(c, "denominator") or c.denominator == 1 else str(c)}
                for (m, s), c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (m, s), c in sorted(self.terms.items()):
            mono = "".join(f"b{r + 1}" + (f"^{a}" if a > 1 else "") for r, a in enumerate(m) if a)
            bits.append(f"{c}*{mono or ''}e({format_signs(s)})")
        return " + ".join(bits)
