"""Sparse exact linear algebra over a ``Field``.

Vectors are dicts ``{index: scalar}`` with no stored zeros.  ``Echelon`` keeps an
incrementally reduced row basis and supports membership tests, reduction and
rank counting; ``nullspace`` solves homogeneous systems given as sparse rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .fields import Field

Vec = dict

__all__ = ["Echelon", "Lattice", "nullspace", "rank", "vec_add", "vec_scale", "solve"]


def vec_add(a: Mapping, b: Mapping, field: Field, scale=1) -> dict:
    """Return ``a + scale*b``."""
    out = dict(a)
    for k, v in b.items():
        s = field(out.get(k, 0) + scale * v)
        if field.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a: Mapping, c, field: Field) -> dict:
    if field.is_zero(field(c)):
        return {}
    return {k: field(v * c) for k, v in a.items()}


class Echelon:
    """Row-echelon basis of a subspace, pivots chosen by a fixed column order.

    Each stored row is normalized so its pivot entry is 1 and no other stored row
    has a nonzero entry in that pivot column (fully reduced form).
    """

    def __init__(self, field: Field, key=None):
        self.field = field
        self.rows: dict[Hashable, dict] = {}
        self._key = key

    def _pivot(self, v: Mapping) -> Hashable:
        return min(v, key=self._key) if self._key else min(v)

    def reduce(self, v: Mapping) -> dict:
        f = self.field
        out = {k: f(x) for k, x in v.items() if not f.is_zero(f(x))}
        for p in [k for k in out if k in self.rows]:
            c = out.get(p)
            if c is None or f.is_zero(c):
                continue
            out = vec_add(out, self.rows[p], f, -c)
        return out

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        f = self.field
        r = self.reduce(v)
        if not r:
            return False
        p = self._pivot(r)
        inv = f.inv(r[p])
        r = {k: f(x * inv) for k, x in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c is not None and not f.is_zero(c):
                self.rows[q] = vec_add(row, r, f, -c)
        self.rows[p] = r
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping) -> dict | None:
        """Coefficients of ``v`` in the stored rows (keyed by pivot), or None."""
        f = self.field
        out = {k: f(x) for k, x in v.items() if not f.is_zero(f(x))}
        coords = {}
        for p in sorted(self.rows, key=self._key):
            c = out.get(p)
            if c is None or f.is_zero(c):
                continue
            coords[p] = c
            out = vec_add(out, self.rows[p], f, -c)
        if out:
            return None
        return coords

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows, key=self._key)]


def rank(vectors: Iterable[Mapping], field: Field) -> int:
    e = Echelon(field)
    for v in vectors:
        e.add(v)
    return e.rank


def nullspace(rows: Iterable[Mapping], unknowns: list[Hashable], field: Field) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}`` with ``x`` indexed by ``unknowns``."""
    order = {u: n for n, u in enumerate(unknowns)}
    e = Echelon(field, key=lambda u: order[u])
    for r in rows:
        e.add(r)
    pivots = set(e.rows)
    basis = []
    for free in unknowns:
        if free in pivots:
            continue
        x = {free: field.one}
        for p, row in e.rows.items():
            c = row.get(free)
            if c is not None and not field.is_zero(c):
                x[p] = field(-c)
        basis.append(x)
    return basis


def solve(columns: list[Mapping], target: Mapping, field: Field) -> list | None:
    """Find scalars ``a`` with ``sum a_k columns[k] = target``; None if impossible."""
    tags = []
    for k, col in enumerate(columns):
        v = dict(col)
        v[("__tag__", k)] = field.one
        tags.append(v)
    # augment each column by a tag coordinate so coordinates can be recovered
    aug = Echelon(field, key=lambda u: (1, u[1]) if isinstance(u, tuple) and u[:1] == ("__tag__",) else (0, repr(u)))
    for v in tags:
        aug.add(v)
    t = aug.reduce(target)
    if any(not (isinstance(k, tuple) and k[:1] == ("__tag__",)) for k in t):
        return None
    sol = [field.zero] * len(columns)
    for k, c in t.items():
        sol[k[1]] = field(-c)
    return sol


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class Lattice:
    """A finitely generated subgroup of ``Q^n`` in echelon form (rows keyed by leading index)."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    @staticmethod
    def _combine(u: Mapping, a, v: Mapping, b) -> dict:
        out = {k: a * x for k, x in u.items()}
        for k, x in v.items():
            s = out.get(k, 0) + b * x
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return {k: x for k, x in out.items() if x}

    def add(self, v: Mapping) -> list[dict]:
        """Insert ``v``; return the rows that were created or changed (empty if ``v`` was already inside)."""
        v = {k: Fraction(x) for k, x in v.items() if x}
        changed: list[dict] = []
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                if v[p] < 0:
                    v = {k: -x for k, x in v.items()}
                self.rows[p] = v
                changed.append(v)
                return changed
            a, b = row[p], v[p]
            A, B = a.numerator * b.denominator, b.numerator * a.denominator
            g, s, t = _xgcd(A, B)
            if g < 0:
                g, s, t = -g, -s, -t
            if g == abs(A):
                v = self._combine(v, 1, row, -Fraction(B, A))
                continue
            new_row = self._combine(row, s, v, t)
            v = self._combine(row, Fraction(B, g), v, -Fraction(A, g))
            if new_row != row:
                self.rows[p] = new_row
                changed.append(new_row)
        return changed

    def coordinates(self, v: Mapping) -> dict[int, int] | None:
        """Integer coefficients of ``v`` against the rows, or None if ``v`` is not in the lattice."""
        v = {k: Fraction(x) for k, x in v.items() if x}
        out = {}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                return None
            c = v[p] / row[p]
            if c.denominator != 1:
                return None
            out[p] = int(c)
            v = self._combine(v, 1, row, -c)
        return out

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]
