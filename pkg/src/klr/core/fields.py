"""Ground fields: the rationals and prime fields.

Scalars are plain Python objects (``Fraction`` for Q, ``int`` in ``[0, p)`` for F_p);
a ``Field`` knows how to normalize and invert them.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["Field", "QQ", "GF", "parse_field"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class Field:
    characteristic: int = 0

    def __call__(self, x) -> object:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)


class _Rationals(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = _Rationals()


class GF(Field):
    """The prime field with ``p`` elements."""

    def __init__(self, p: int):
        if not _is_prime(p) or p >= 2 ** 31:
            raise ValueError(f"{p} is not a prime below 2^31")
        self.characteristic = p
        self.p = p

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(x), -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def parse_field(text: str | int | None) -> Field:
    """``None``, ``"Q"``, ``"rational"`` or ``0`` give QQ; a prime gives GF(p)."""
    if text is None or text in ("Q", "QQ", "rational", 0, "0"):
        return QQ
    return GF(int(text))
