"""Skew shapes with one box per content, their tableaux, and multipartitions.

A skew shape for the root ``alpha_k + ... + alpha_l`` is a composition of the
content interval ``[k, l]`` into consecutive rows.  Rows are listed bottom-first:
the bottom row holds content ``k``.  The first box of each row sits directly
above the last box of the row below it, which is the only column adjacency.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

__all__ = [
    "SkewShape",
    "Tableau",
    "skew_shapes",
    "sigma_of_shape",
    "shape_of_sigma",
    "split_row",
    "standard_tableaux",
    "root_partition_of_shape",
    "Multipartition",
    "multipartition_contents",
    "is_separating",
    "multipartition_tableaux",
    "parse_shape",
]


@dataclass(frozen=True)
class SkewShape:
    """Rows of contents, bottom row first."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [c for r in self.rows for c in r]
        if not flat or any(not r for r in self.rows):
            raise ValueError("a skew shape needs nonempty rows")
        if flat != list(range(flat[0], flat[0] + len(flat))):
            raise ValueError("rows must cover a content interval consecutively, bottom row first")

    @property
    def low(self) -> int:
        return self.rows[0][0]

    @property
    def high(self) -> int:
        return self.rows[-1][-1]

    @property
    def size(self) -> int:
        return self.high - self.low + 1

    @cached_property
    def cuts(self) -> frozenset[int]:
        """Box numbers ``r`` (1-based from the bottom-left) that end their row, excluding the last box."""
        out = set()
        r = 0
        for row in self.rows[:-1]:
            r += len(row)
            out.add(r)
        return frozenset(out)

    @classmethod
    def from_cuts(cls, low: int, high: int, cuts: Iterator[int] | frozenset[int]) -> "SkewShape":
        d = high - low + 1
        cuts = sorted(set(cuts))
        if any(c < 1 or c >= d for c in cuts):
            raise ValueError("cut positions must lie in 1..d-1")
        rows = []
        start = 0
        for c in cuts + [d]:
            rows.append(tuple(range(low + start, low + c)))
            start = c
        return cls(tuple(rows))

    def boxes(self) -> dict[int, tuple[int, int]]:
        """Content -> (row index, column); the bottom row has the largest row index."""
        m = len(self.rows)
        out = {}
        for k, row in enumerate(self.rows):
            i = m - k
            for c in row:
                out[c] = (i, c + i)
        return out

    def row_of_box(self, r: int) -> int:
        """Row number (1 = top) of box ``r`` (1-based from the bottom-left)."""
        c = self.low + r - 1
        m = len(self.rows)
        for k, row in enumerate(self.rows):
            if c in row:
                return m - k
        raise IndexError(r)

    def row_segment(self, top_index: int) -> tuple[int, ...]:
        """Contents of the row with number ``top_index`` counted from the top."""
        return self.rows[len(self.rows) - top_index]

    def __str__(self):
        return "|".join(",".join(map(str, r)) for r in self.rows)

    def top_down(self) -> str:
        return " / ".join("".join(map(str, r)) for r in reversed(self.rows))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def parse_shape(text: str) -> SkewShape:
    """``"1,2|3"``: rows bottom-first, contents comma separated."""
    rows = tuple(tuple(int(x) for x in part.split(",") if x.strip()) for part in text.split("|"))
    return SkewShape(rows)


def skew_shapes(low: int, high: int) -> list[SkewShape]:
    """All ``2^(d-1)`` shapes on the content interval ``[low, high]``."""
    if high < low:
        raise ValueError("empty content interval")
    d = high - low + 1
    out = []
    for bits in itertools.product((False, True), repeat=d - 1):
        out.append(SkewShape.from_cuts(low, high, frozenset(r + 1 for r, b in enumerate(bits) if b)))
    return out


def sigma_of_shape(lam: SkewShape) -> tuple[int, ...]:
    """Signs ``+1`` if box ``r`` is not at the end of its row, ``-1`` otherwise (``r < d``)."""
    return tuple(-1 if r in lam.cuts else 1 for r in range(1, lam.size))


def shape_of_sigma(low: int, sigma: Sequence[int]) -> SkewShape:
    d = len(sigma) + 1
    return SkewShape.from_cuts(low, low + d - 1, frozenset(r + 1 for r, s in enumerate(sigma) if s < 0))


def split_row(lam: SkewShape, r: int) -> SkewShape:
    """Split the row of box ``r`` after it, or glue the row above onto it if ``r`` ends its row."""
    if not 1 <= r < lam.size:
        raise ValueError(f"split position {r} out of range 1..{lam.size - 1}")
    return SkewShape.from_cuts(lam.low, lam.high, lam.cuts ^ {r})


def split_many(lam: SkewShape, positions: Sequence[int]) -> SkewShape:
    for r in positions:
        lam = split_row(lam, r)
    return lam


@dataclass(frozen=True)
class Tableau:
    """Entries indexed by box; ``entries[b]`` sits in the box of content ``low + b``."""

    shape: SkewShape
    entries: tuple[int, ...]

    @property
    def word(self) -> tuple[int, ...]:
        """Residue word: position ``r`` carries the content of the box holding ``r``."""
        w = [0] * len(self.entries)
        for b, e in enumerate(self.entries):
            w[e - 1] = self.shape.low + b
        return tuple(w)

    def is_standard(self) -> bool:
        return _is_standard(self.shape, self.entries)

    def swap(self, r: int) -> "Tableau":
        """Exchange the entries ``r`` and ``r + 1``."""
        swap = {r: r + 1, r + 1: r}
        return Tableau(self.shape, tuple(swap.get(e, e) for e in self.entries))


def _is_standard(shape: SkewShape, entries: Sequence[int]) -> bool:
    boxes = shape.boxes()
    low = shape.low
    by_pos = {pos: entries[c - low] for c, pos in boxes.items()}
    for (i, j), e in by_pos.items():
        right = by_pos.get((i, j + 1))
        if right is not None and right < e:
            return False
        below = by_pos.get((i + 1, j))
        if below is not None and below < e:
            return False
    return True


@lru_cache(maxsize=None)
def standard_tableaux(lam: SkewShape) -> tuple[Tableau, ...]:
    """All standard fillings, in lexicographic order of their entry tuples."""
    d = lam.size
    out = []
    for perm in itertools.permutations(range(1, d + 1)):
        if _is_standard(lam, perm):
            out.append(Tableau(lam, perm))
    return tuple(out)


def leading_tableau(lam: SkewShape) -> Tableau:
    """Fill rows top to bottom, each left to right."""
    entries = [0] * lam.size
    n = 1
    for row in reversed(lam.rows):
        for c in row:
            entries[c - lam.low] = n
            n += 1
    return Tableau(lam, tuple(entries))


def leading_word(lam: SkewShape) -> tuple[int, ...]:
    return leading_tableau(lam).word


def root_partition_of_shape(lam: SkewShape, order):
    """Rows read top to bottom as interval roots."""
    from .roots import RootPartition, RootSystemError

    c = order.cartan
    roots = [c.interval_root(row[0], row[-1]) for row in reversed(lam.rows)]
    for a, b in zip(roots, roots[1:]):
        if order.less(a, b):
            raise RootSystemError("rows do not give a weakly decreasing root tuple")
    return RootPartition.from_roots(order, roots)


# -- multipartitions ----------------------------------------------------------


@dataclass(frozen=True)
class Multipartition:
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for part in self.components:
            if any(a < b for a, b in zip(part, part[1:])) or any(x <= 0 for x in part):
                raise ValueError(f"{part} is not a partition")

    @property
    def size(self) -> int:
        return sum(sum(p) for p in self.components)

    def nodes(self) -> list[tuple[int, int, int]]:
        """Nodes ``(component, row, column)``, all 1-based, in reading order."""
        return [(m + 1, a + 1, b + 1) for m, part in enumerate(self.components) for a, length in enumerate(part) for b in range(length)]


def multipartition_contents(mu: Multipartition, kappa: Sequence[int]) -> dict[tuple[int, int, int], int]:
    """``cont(m, a, b) = k_m + b - a`` (no reduction: the index set is all of Z)."""
    if len(kappa) != len(mu.components):
        raise ValueError("kappa must have one entry per component")
    return {(m, a, b): kappa[m - 1] + b - a for (m, a, b) in mu.nodes()}


def is_separating(mu: Multipartition, kappa: Sequence[int]) -> bool:
    """Equal contents only occur on one diagonal of one component."""
    seen: dict[int, tuple[int, int]] = {}
    for (m, a, b), c in multipartition_contents(mu, kappa).items():
        where = (m, b - a)
        if seen.setdefault(c, where) != where:
            return False
    return True


def multipartition_tableaux(mu: Multipartition) -> list[dict[tuple[int, int, int], int]]:
    """Standard tableaux as maps node -> entry; rows and columns increase in each component."""
    nodes = mu.nodes()
    d = len(nodes)
    out = []

    def rec(filled: dict, n: int):
        if n > d:
            out.append(dict(filled))
            return
        for node in nodes:
            if node in filled:
                continue
            m, a, b = node
            if b > 1 and (m, a, b - 1) not in filled:
                continue
            if a > 1 and (m, a - 1, b) not in filled:
                continue
            filled[node] = n
            rec(filled, n + 1)
            del filled[node]

    rec({}, 1)
    return out


def enumerate_multipartitions(total: int, parts: int) -> list[Multipartition]:
    def partitions(n: int, cap: int) -> list[tuple[int, ...]]:
        if n == 0:
            return [()]
        res = []
        for first in range(min(n, cap), 0, -1):
            for rest in partitions(n - first, first):
                res.append((first,) + rest)
        return res

    out = []
    for sizes in itertools.product(range(total + 1), repeat=parts):
        if sum(sizes) != total:
            continue
        for combo in itertools.product(*[partitions(s, s) for s in sizes]):
            out.append(Multipartition(tuple(combo)))
    return out
