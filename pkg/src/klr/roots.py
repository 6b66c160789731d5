"""Cartan data of finite type, positive roots, convex orders and root partitions.

Roots and elements of the positive cone are coefficient tuples over the ordered
index set.  Type-A roots additionally have interval labels ``(k, l)`` meaning
``alpha_k + ... + alpha_l``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .core.laurent import LaurentPoly, quantum_factorial, quantum_integer

Root = tuple[int, ...]

__all__ = [
    "RootSystemError",
    "CartanData",
    "type_a",
    "cartan_type",
    "positive_roots",
    "ConvexOrder",
    "convex_order_from_reduced_word",
    "lex_reduced_word",
    "lex_order",
    "validate_convexity",
    "RootPartition",
    "root_partitions",
    "compare_bilex",
    "bilex_leq",
    "shift_sh",
    "shift_sh_prime",
    "MinimalPair",
    "p_number",
    "minimal_pairs",
    "default_choices",
    "kappa_and_word",
    "kappa_of_partition",
    "qplus_elements",
]


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    """A symmetrizable Cartan matrix of finite type on an ordered index set."""

    labels: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.labels)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise RootSystemError("Cartan matrix shape does not match the index set")
        for a in range(n):
            if self.matrix[a][a] != 2:
                raise RootSystemError("diagonal entries must be 2")
            for b in range(n):
                if a != b:
                    if self.matrix[a][b] > 0:
                        raise RootSystemError("off-diagonal entries must be <= 0")
                    if (self.matrix[a][b] == 0) != (self.matrix[b][a] == 0):
                        raise RootSystemError("c_ij = 0 must match c_ji = 0")
        if not _positive_definite(self._symmetrized()):
            raise RootSystemError("Cartan matrix is not of finite type")

    # -- index helpers -------------------------------------------------
    @cached_property
    def position(self) -> dict[int, int]:
        return {lab: k for k, lab in enumerate(self.labels)}

    @property
    def rank(self) -> int:
        return len(self.labels)

    def c(self, i: int, j: int) -> int:
        """Cartan entry ``c_ij`` for labels ``i, j``."""
        p = self.position
        return self.matrix[p[i]][p[j]]

    @cached_property
    def symmetrizers(self) -> tuple[int, ...]:
        """Positive integers ``d_i`` with ``d_i c_ij = d_j c_ji`` and min ``d_i`` = 1."""
        n = self.rank
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                a = stack.pop()
                for b in range(n):
                    if b != a and self.matrix[a][b] != 0 and d[b] is None:
                        d[b] = d[a] * self.matrix[a][b] / self.matrix[b][a]
                        stack.append(b)
        # normalize each connected component so its smallest value is 1
        comps = _components(self.matrix)
        out = [0] * n
        for comp in comps:
            low = min(d[a] for a in comp)
            scaled = [d[a] / low for a in comp]
            den = 1
            for s in scaled:
                den = den * s.denominator // _gcd(den, s.denominator)
            for a, s in zip(comp, scaled):
                out[a] = int(s * den)
        return tuple(out)

    def _symmetrized(self) -> list[list[Fraction]]:
        d = self.symmetrizers
        return [[Fraction(d[a] * self.matrix[a][b]) for b in range(self.rank)] for a in range(self.rank)]

    def form_simple(self, i: int, j: int) -> int:
        """``(alpha_i, alpha_j) = d_i c_ij``."""
        p = self.position
        return self.symmetrizers[p[i]] * self.matrix[p[i]][p[j]]

    def form(self, beta: Sequence[int], gamma: Sequence[int]) -> int:
        """Bilinear form on coefficient vectors."""
        total = 0
        d = self.symmetrizers
        for a, x in enumerate(beta):
            if not x:
                continue
            for b, y in enumerate(gamma):
                if y:
                    total += x * y * d[a] * self.matrix[a][b]
        return total

    def simple_root(self, i: int) -> Root:
        v = [0] * self.rank
        v[self.position[i]] = 1
        return tuple(v)

    def content(self, word: Iterable[int]) -> Root:
        v = [0] * self.rank
        p = self.position
        for letter in word:
            v[p[letter]] += 1
        return tuple(v)

    def height(self, alpha: Sequence[int]) -> int:
        return sum(alpha)

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        """Simple reflection ``r_i(beta) = beta - <beta, alpha_i^vee> alpha_i``."""
        a = self.position[i]
        pairing = sum(x * self.matrix[a][b] for b, x in enumerate(beta))
        v = list(beta)
        v[a] -= pairing
        return tuple(v)

    def is_simply_laced(self) -> bool:
        return all(x in (0, -1) for a, r in enumerate(self.matrix) for b, x in enumerate(r) if a != b)

    def is_type_a(self) -> bool:
        if not self.is_simply_laced():
            return False
        n = self.rank
        for a in range(n):
            for b in range(n):
                if a != b:
                    expect = -1 if abs(a - b) == 1 else 0
                    if self.matrix[a][b] != expect:
                        return False
        return True

    # -- type A interval helpers --------------------------------------
    def interval(self, beta: Sequence[int]) -> tuple[int, int]:
        """Labels ``(k, l)`` with ``beta = alpha_k + ... + alpha_l`` (type A only)."""
        support = [a for a, x in enumerate(beta) if x]
        if not support or any(beta[a] != 1 for a in support) or support != list(range(support[0], support[-1] + 1)):
            raise RootSystemError(f"{beta} is not a type-A interval root")
        return self.labels[support[0]], self.labels[support[-1]]

    def interval_root(self, k: int, l: int) -> Root:
        p = self.position
        if k not in p or l not in p or p[k] > p[l]:
            raise RootSystemError(f"no root alpha_{k}+...+alpha_{l}")
        v = [0] * self.rank
        for a in range(p[k], p[l] + 1):
            v[a] = 1
        return tuple(v)

    def root_label(self, beta: Sequence[int]) -> str:
        if self.is_type_a():
            try:
                k, l = self.interval(beta)
                return f"a{k}" if k == l else f"{k}:{l}"
            except RootSystemError:
                pass
        return "(" + ",".join(map(str, beta)) + ")"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _components(matrix) -> list[list[int]]:
    n = len(matrix)
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(n):
                if b not in seen and matrix[a][b] != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def _positive_definite(m: list[list[Fraction]]) -> bool:
    """Exact LDL^T test."""
    n = len(m)
    a = [row[:] for row in m]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def type_a(n: int, start: int = 1) -> CartanData:
    """Type ``A_n`` on labels ``start, ..., start + n - 1``."""
    if n < 1:
        raise RootSystemError("rank must be positive")
    labels = tuple(range(start, start + n))
    mat = tuple(tuple(2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(n)) for a in range(n))
    return CartanData(labels, mat, f"A{n}")


def cartan_type(name: str) -> CartanData:
    """Build Cartan data from a name such as ``"A3"``, ``"B2"``, ``"G2"``."""
    kind, n = name[0].upper(), int(name[1:])
    if kind == "A":
        return type_a(n)
    mat = [[2 if a == b else 0 for b in range(n)] for a in range(n)]

    def link(a, b, cab=-1, cba=-1):
        mat[a][b], mat[b][a] = cab, cba

    if kind in "BC":
        if n < 2:
            raise RootSystemError(f"{name} needs rank >= 2")
        for a in range(n - 2):
            link(a, a + 1)
        if kind == "B":
            link(n - 2, n - 1, -2, -1)
        else:
            link(n - 2, n - 1, -1, -2)
    elif kind == "D":
        if n < 4:
            raise RootSystemError("D_n needs n >= 4")
        for a in range(n - 2):
            link(a, a + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise RootSystemError("E_n needs n in 6, 7, 8")
        # Bourbaki labelling: 1-3-4-5-6(-7-8), 2 attached to 4
        for a, b in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
            link(a, b)
    elif kind == "F":
        if n != 4:
            raise RootSystemError("F_4 only")
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif kind == "G":
        if n != 2:
            raise RootSystemError("G_2 only")
        link(0, 1, -1, -3)
    else:
        raise RootSystemError(f"unknown Cartan type {name}")
    return CartanData(tuple(range(1, n + 1)), tuple(tuple(r) for r in mat), f"{kind}{n}")


@lru_cache(maxsize=None)
def positive_roots(c: CartanData) -> tuple[Root, ...]:
    """All positive roots, by closure of the simple roots under simple reflections."""
    found = {c.simple_root(i) for i in c.labels}
    frontier = list(found)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in c.labels:
                g = c.reflect(i, beta)
                if all(x >= 0 for x in g) and any(g) and g not in found:
                    found.add(g)
                    nxt.append(g)
        frontier = nxt
    return tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))


def _is_root(c: CartanData, beta: Sequence[int]) -> bool:
    t = tuple(beta)
    roots = set(positive_roots(c))
    return t in roots or tuple(-x for x in t) in roots


@dataclass(frozen=True)
class ConvexOrder:
    """Total order on positive roots stored as ``rho_1 > rho_2 > ... > rho_N``."""

    cartan: CartanData
    decreasing: tuple[Root, ...]

    @cached_property
    def rank_of(self) -> dict[Root, int]:
        """Position in the decreasing list; smaller index means larger root."""
        return {r: k for k, r in enumerate(self.decreasing)}

    def less(self, beta: Root, gamma: Root) -> bool:
        """``beta < gamma`` in the convex order."""
        return self.rank_of[beta] > self.rank_of[gamma]

    @property
    def increasing(self) -> tuple[Root, ...]:
        return tuple(reversed(self.decreasing))

    def labels(self) -> list[str]:
        return [self.cartan.root_label(r) for r in self.decreasing]


def convex_order_from_reduced_word(c: CartanData, word: Sequence[int]) -> ConvexOrder:
    """Papi's bijection: ``alpha_{i1} < r_{i1}(alpha_{i2}) < r_{i1} r_{i2}(alpha_{i3}) < ...``."""
    n_pos = len(positive_roots(c))
    if len(word) != n_pos:
        raise RootSystemError(f"a reduced word of w0 has length {n_pos}, got {len(word)}")
    produced: list[Root] = []
    for k, i in enumerate(word):
        if i not in c.position:
            raise RootSystemError(f"unknown simple index {i}")
        beta = c.simple_root(i)
        for j in reversed(word[:k]):
            beta = c.reflect(j, beta)
        if not all(x >= 0 for x in beta) or beta in produced:
            raise RootSystemError(f"word is not reduced: prefix {tuple(word[:k + 1])} fails")
        produced.append(beta)
    return ConvexOrder(c, tuple(reversed(produced)))


def lex_reduced_word(c: CartanData) -> tuple[int, ...]:
    """Reduced word of w0 whose Papi order is the lexicographic type-A order."""
    labs = c.labels
    n = len(labs)
    return tuple(labs[a] for k in range(n, 0, -1) for a in range(k))


def lex_order(c: CartanData) -> ConvexOrder:
    """Type A: ``rho(k,l) < rho(r,s)`` iff the word ``(k..l)`` is lexicographically below ``(r..s)``."""
    if not c.is_type_a():
        raise RootSystemError("the lexicographic order is defined for type A")

    def word(r: Root) -> tuple[int, ...]:
        k, l = c.interval(r)
        p = c.position
        return tuple(c.labels[p[k]:p[l] + 1])

    inc = sorted(positive_roots(c), key=word)
    return ConvexOrder(c, tuple(reversed(inc)))


def validate_convexity(o: ConvexOrder) -> bool:
    """Brute force: ``beta < gamma`` and ``beta + gamma`` a root force ``beta < beta+gamma < gamma``."""
    roots = set(o.decreasing)
    if len(roots) != len(positive_roots(o.cartan)) or roots != set(positive_roots(o.cartan)):
        return False
    for beta in o.decreasing:
        for gamma in o.decreasing:
            if not o.less(beta, gamma):
                continue
            s = tuple(x + y for x, y in zip(beta, gamma))
            if s in roots and not (o.less(beta, s) and o.less(s, gamma)):
                return False
    return True


@dataclass(frozen=True)
class RootPartition:
    """A weakly decreasing tuple of positive roots, stored as multiplicities."""

    order: ConvexOrder
    mult: tuple[int, ...]

    @classmethod
    def from_roots(cls, order: ConvexOrder, roots: Iterable[Root]) -> "RootPartition":
        m = [0] * len(order.decreasing)
        for r in roots:
            r = tuple(r)
            if r not in order.rank_of:
                raise RootSystemError(f"{r} is not a positive root")
            m[order.rank_of[r]] += 1
        return cls(order, tuple(m))

    @property
    def roots(self) -> tuple[Root, ...]:
        """Decreasing root tuple ``(beta_1 >= beta_2 >= ...)``."""
        out = []
        for r, m in zip(self.order.decreasing, self.mult):
            out.extend([r] * m)
        return tuple(out)

    @property
    def parts(self) -> list[tuple[Root, int]]:
        """``(rho_k, m_k)`` for nonzero multiplicities, decreasing."""
        return [(r, m) for r, m in zip(self.order.decreasing, self.mult) if m]

    @property
    def content(self) -> Root:
        n = self.order.cartan.rank
        v = [0] * n
        for r, m in self.parts:
            for a in range(n):
                v[a] += m * r[a]
        return tuple(v)

    def __len__(self) -> int:
        return sum(self.mult)

    def label(self) -> str:
        c = self.order.cartan
        bits = []
        for r, m in self.parts:
            lab = c.root_label(r)
            bits.append(lab if m == 1 else f"{lab}^{m}")
        return "(" + ",".join(bits) + ")"

    def __repr__(self):
        return f"RootPartition{self.label()}"

    def to_json(self) -> list:
        return [{"root": list(r), "mult": m} for r, m in self.parts]


def root_partitions(alpha: Sequence[int], o: ConvexOrder) -> list[RootPartition]:
    """All weakly decreasing root tuples summing to ``alpha`` (depth-first in the order)."""
    alpha = tuple(alpha)
    if any(x < 0 for x in alpha):
        raise RootSystemError("alpha must lie in the positive cone")
    roots = o.decreasing
    out: list[RootPartition] = []
    mult = [0] * len(roots)

    def rec(k: int, rest: tuple[int, ...]):
        if not any(rest):
            out.append(RootPartition(o, tuple(mult)))
            return
        if k == len(roots):
            return
        r = roots[k]
        top = min((x // y for x, y in zip(rest, r) if y), default=0)
        for m in range(top, -1, -1):
            mult[k] = m
            rec(k + 1, tuple(x - m * y for x, y in zip(rest, r)))
        mult[k] = 0

    rec(0, alpha)
    return out


def compare_bilex(pi: RootPartition, sigma: RootPartition) -> str:
    """Bilexicographic comparison: ``"less"``, ``"greater"``, ``"equal"`` or ``"incomparable"``.

    Reading the root tuples ``beta_1 >= beta_2 >= ...``, ``pi <= sigma`` when ``pi`` is
    left-lexicographically at most ``sigma`` and right-lexicographically at least
    ``sigma``.  On multiplicity vectors against the decreasing root list this means:
    at the first and at the last index where the vectors differ, ``pi`` carries the
    smaller multiplicity.
    """
    if pi.order != sigma.order:
        raise RootSystemError("partitions refer to different convex orders")
    if pi.content != sigma.content:
        raise RootSystemError("partitions of different elements cannot be compared")
    diff = [k for k, (a, b) in enumerate(zip(pi.mult, sigma.mult)) if a != b]
    if not diff:
        return "equal"
    first, last = diff[0], diff[-1]
    left = pi.mult[first] < sigma.mult[first]
    right = pi.mult[last] < sigma.mult[last]
    if left and right:
        return "less"
    if not left and not right:
        return "greater"
    return "incomparable"


def bilex_leq(pi: RootPartition, sigma: RootPartition) -> bool:
    return compare_bilex(pi, sigma) in ("less", "equal")


def shift_sh(pi: RootPartition) -> int:
    """``sum_k (rho_k, rho_k) m_k (m_k - 1) / 4``."""
    c = pi.order.cartan
    total = 0
    for r, m in pi.parts:
        total += c.form(r, r) * m * (m - 1)
    if total % 4:
        raise RootSystemError("non-integral shift")
    return total // 4


def shift_sh_prime(pi: RootPartition) -> int:
    """Shift of the proper costandard resolution: ``-sh(pi) + sum_{r<s} (beta_r, beta_s)``."""
    c = pi.order.cartan
    betas = pi.roots
    cross = sum(c.form(betas[r], betas[s]) for r in range(len(betas)) for s in range(r + 1, len(betas)))
    return -shift_sh(pi) + cross


@dataclass(frozen=True)
class MinimalPair:
    beta: Root
    gamma: Root
    p: int

    @property
    def rho(self) -> Root:
        return tuple(x + y for x, y in zip(self.beta, self.gamma))


def p_number(c: CartanData, beta: Root, gamma: Root) -> int:
    """``max{m : beta - m gamma is a root}``."""
    if not _is_root(c, beta):
        raise RootSystemError("beta must be a root")
    m = 0
    while _is_root(c, tuple(x - (m + 1) * y for x, y in zip(beta, gamma))):
        m += 1
    return m


def minimal_pairs(rho: Root, o: ConvexOrder) -> list[MinimalPair]:
    """Two-term bilex-minimal elements of ``Pi(rho)`` minus ``{(rho)}``."""
    rho = tuple(rho)
    if rho not in o.rank_of:
        raise RootSystemError("rho must be a positive root")
    if sum(rho) == 1:
        return []
    parts = [p for p in root_partitions(rho, o) if p.roots != (rho,)]
    minimal = [p for p in parts if not any(compare_bilex(q, p) == "less" for q in parts)]
    out = []
    for p in minimal:
        if len(p) == 2:
            beta, gamma = p.roots
            out.append(MinimalPair(beta, gamma, p_number(o.cartan, beta, gamma)))
    return out


def default_choices(o: ConvexOrder) -> dict[Root, MinimalPair]:
    """First minimal pair (in decreasing order of beta) for each non-simple root."""
    out = {}
    for r in o.decreasing:
        if sum(r) > 1:
            pairs = minimal_pairs(r, o)
            out[r] = pairs[0]
    return out


def kappa_and_word(
    rho: Root, choices: Mapping[Root, MinimalPair], cartan: CartanData
) -> tuple[tuple[int, ...], LaurentPoly]:
    """Recursive word ``i_rho = i_gamma i_beta`` and ``kappa_rho = [p+1] kappa_beta kappa_gamma``."""
    rho = tuple(rho)
    if sum(rho) == 1:
        (a,) = [k for k, x in enumerate(rho) if x]
        return (cartan.labels[a],), LaurentPoly.one()
    if rho not in choices:
        raise RootSystemError(f"no minimal pair chosen for {rho}")
    mp = choices[rho]
    wb, kb = kappa_and_word(mp.beta, choices, cartan)
    wg, kg = kappa_and_word(mp.gamma, choices, cartan)
    return wg + wb, quantum_integer(mp.p + 1) * kb * kg


def kappa_of_partition(pi: RootPartition, choices: Mapping[Root, MinimalPair]) -> tuple[tuple[int, ...], LaurentPoly]:
    """``i_pi`` and ``kappa_pi = prod [m_k]!_{rho_k} kappa_{rho_k}^{m_k}``."""
    c = pi.order.cartan
    word: tuple[int, ...] = ()
    kappa = LaurentPoly.one()
    for r, m in pi.parts:
        w, k = kappa_and_word(r, choices, c)
        word += w * m
        d = c.form(r, r) // 2
        kappa = kappa * quantum_factorial(m, d) * (k ** m)
    return word, kappa


def qplus_elements(c: CartanData, max_height: int, min_height: int = 1) -> list[Root]:
    """All nonzero ``alpha`` in the positive cone with ``min_height <= ht <= max_height``."""
    out = []
    for h in range(min_height, max_height + 1):
        for combo in itertools.combinations_with_replacement(range(c.rank), h):
            v = [0] * c.rank
            for a in combo:
                v[a] += 1
            out.append(tuple(v))
    return out
