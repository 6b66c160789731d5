"""Characters as word-indexed Laurent polynomials and the quantum shuffle product."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .core.laurent import LaurentPoly, quantum_factorial
from .roots import CartanData

Word = tuple[int, ...]

__all__ = [
    "Character",
    "BlockCharacter",
    "shuffle",
    "shuffle_words",
    "eps_i",
    "theta_star",
    "extremal_word",
    "expand_extremal",
    "multiplicity_at_extremal",
    "product_multiplicity_exponent",
    "mackey_character_sum",
    "restrict_character",
    "split_word",
]


class Character:
    """Finitely supported map from words to Laurent polynomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, LaurentPoly | int] | None = None):
        self.terms: dict[Word, LaurentPoly] = {}
        if terms:
            for w, c in terms.items():
                c = LaurentPoly.coerce(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def word(cls, w: Sequence[int], coeff: LaurentPoly | int = 1) -> "Character":
        return cls({tuple(w): coeff})

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.terms))

    def items(self):
        return sorted(self.terms.items())

    def __getitem__(self, w: Sequence[int]) -> LaurentPoly:
        return self.terms.get(tuple(w), LaurentPoly())

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Character") -> "Character":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, LaurentPoly()) + c
        return Character(out)

    def __neg__(self):
        return Character({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "Character":
        c = LaurentPoly.coerce(c)
        return Character({w: v * c for w, v in self.terms.items()})

    def shift(self, s: int) -> "Character":
        return Character({w: v.shift(s) for w, v in self.terms.items()})

    def bar(self) -> "Character":
        return Character({w: v.bar() for w, v in self.terms.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def total(self) -> LaurentPoly:
        out = LaurentPoly()
        for c in self.terms.values():
            out = out + c
        return out

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.items():
            ws = "(" + ",".join(map(str, w)) + ")"
            bits.append(ws if c == 1 else f"({c!r})*{ws}")
        return " + ".join(bits)

    def to_json(self) -> list[dict]:
        return [{"word": list(w), "coeff": c.to_json()} for w, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Character":
        return cls({tuple(d["word"]): LaurentPoly.from_json(d["coeff"]) for d in data})


class BlockCharacter:
    """Character of a module over a parabolic subalgebra: keys are tuples of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[Word, ...], LaurentPoly | int] | None = None):
        self.terms: dict[tuple[Word, ...], LaurentPoly] = {}
        if terms:
            for k, c in terms.items():
                c = LaurentPoly.coerce(c)
                if c:
                    key = tuple(tuple(w) for w in k)
                    self.terms[key] = self.terms.get(key, LaurentPoly()) + c
                    if not self.terms[key]:
                        del self.terms[key]

    @classmethod
    def outer(cls, chars: Sequence[Character]) -> "BlockCharacter":
        """Character of an outer tensor product."""
        out: dict = {}
        for combo in itertools.product(*[c.items() for c in chars]):
            key = tuple(w for w, _ in combo)
            coeff = LaurentPoly.one()
            for _, c in combo:
                coeff = coeff * c
            out[key] = out.get(key, LaurentPoly()) + coeff
        return cls(out)

    def __add__(self, other: "BlockCharacter") -> "BlockCharacter":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, LaurentPoly()) + c
        return BlockCharacter(out)

    def __eq__(self, other):
        if not isinstance(other, BlockCharacter):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, c in self.items():
            ks = "⊗".join("(" + ",".join(map(str, w)) + ")" for w in k)
            bits.append(ks if c == 1 else f"({c!r})*{ks}")
        return " + ".join(bits)


def shuffle_words(cartan: CartanData, u: Word, v: Word) -> dict[Word, LaurentPoly]:
    """Shuffles of ``u`` and ``v``; each letter ``b`` of ``v`` placed before a letter ``a`` of ``u`` costs ``q^{-(a,b)}``."""
    return dict(_shuffle_words(cartan, tuple(u), tuple(v)))


@lru_cache(maxsize=200000)
def _shuffle_words(cartan: CartanData, u: Word, v: Word) -> tuple:
    n, m = len(u), len(v)
    out: dict[Word, LaurentPoly] = {}
    for pos in itertools.combinations(range(n + m), n):
        pos_set = set(pos)
        w = []
        iu = iv = 0
        exp = 0
        for k in range(n + m):
            if k in pos_set:
                w.append(u[iu])
                iu += 1
            else:
                b = v[iv]
                iv += 1
                for a in u[iu:]:
                    exp -= cartan.form_simple(a, b)
                w.append(b)
        key = tuple(w)
        out[key] = out.get(key, LaurentPoly()) + LaurentPoly.monomial(exp)
    return tuple((w, c) for w, c in out.items() if c)


def shuffle(cartan: CartanData, x: Character, y: Character) -> Character:
    """Bilinear quantum shuffle product."""
    out: dict[Word, LaurentPoly] = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            c = cu * cv
            for w, e in _shuffle_words(cartan, u, v):
                out[w] = out.get(w, LaurentPoly()) + c * e
    return Character(out)


def shuffle_many(cartan: CartanData, chars: Sequence[Character]) -> Character:
    out = Character.word(())
    for c in chars:
        out = shuffle(cartan, out, c)
    return out


def theta_star(x: Character, i: int) -> Character:
    """Drop a final letter ``i``; words ending differently are killed."""
    return Character({w[:-1]: c for w, c in x.terms.items() if w and w[-1] == i})


def eps_i(x: Character, i: int) -> int:
    """Longest ``i``-tail among the words of ``x``."""
    best = 0
    for w in x.terms:
        k = 0
        while k < len(w) and w[len(w) - 1 - k] == i:
            k += 1
        best = max(best, k)
    return best


def extremal_word(x: Character, letter_order: Sequence[int] | None = None) -> tuple[tuple[int, int], ...]:
    """Exponent form ``((i_1, a_1), ..., (i_b, a_b))`` of an extremal word.

    Built from the right: take the letter with the largest tail, ties broken by the
    smallest letter (or by ``letter_order`` if given), strip that tail, repeat.
    """
    if x.is_zero():
        raise ValueError("the zero character has no extremal word")
    rank = {l: k for k, l in enumerate(letter_order)} if letter_order is not None else None
    out: list[tuple[int, int]] = []
    while x and any(x.terms):
        finals = sorted({w[-1] for w in x.terms if w}, key=(lambda l: rank[l]) if rank else None)
        best, best_eps = None, -1
        for i in finals:
            e = eps_i(x, i)
            if e > best_eps:
                best, best_eps = i, e
        for _ in range(best_eps):
            x = theta_star(x, best)
        out.append((best, best_eps))
    return tuple(reversed(out))


def extremal_word_along(x: Character, letters: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Extremal word whose letters, read from the right, follow ``letters`` (zero exponents allowed)."""
    out = []
    for i in letters:
        e = eps_i(x, i)
        for _ in range(e):
            x = theta_star(x, i)
        out.append((i, e))
    if any(w for w in x.terms):
        raise ValueError("letter sequence too short to exhaust the character")
    return tuple(reversed(out))


def expand_extremal(ew: Sequence[tuple[int, int]]) -> Word:
    return tuple(i for i, a in ew for _ in range(a))


def multiplicity_at_extremal(cartan: CartanData, x: Character, ew: Sequence[tuple[int, int]]) -> LaurentPoly:
    """Coefficient at the expanded extremal word divided by ``prod [a_t]!`` (exact)."""
    denom = LaurentPoly.one()
    for i, a in ew:
        denom = denom * quantum_factorial(a, cartan.form_simple(i, i) // 2)
    return x[expand_extremal(ew)].divide_exact(denom)


def product_multiplicity_exponent(cartan: CartanData, letters: Sequence[int], exponents: Sequence[Sequence[int]]) -> int:
    """Exponent ``m`` for the multiplicity of the joint extremal irreducible in a product.

    ``exponents[t]`` lists ``a^{(t)}_1, ..., a^{(t)}_k`` against the common ``letters``.
    """
    n = len(exponents)
    k = len(letters)
    total2 = 0  # twice the bracketed sum
    for t in range(n):
        for u in range(t + 1, n):
            for r in range(k):
                for s in range(r + 1, k):
                    total2 += 2 * exponents[u][r] * exponents[t][s] * cartan.form_simple(letters[r], letters[s])
                total2 += exponents[t][r] * exponents[u][r] * cartan.form_simple(letters[r], letters[r])
    if total2 % 2:
        raise ArithmeticError("non-integral multiplicity exponent")
    return -total2 // 2


# -- restriction and Mackey ----------------------------------------------------


def split_word(cartan: CartanData, w: Word, blocks: Sequence[Sequence[int]]) -> tuple[Word, ...] | None:
    """Cut ``w`` into consecutive pieces of the given contents, or None."""
    out = []
    pos = 0
    for b in blocks:
        h = sum(b)
        piece = w[pos:pos + h]
        if len(piece) != h or cartan.content(piece) != tuple(b):
            return None
        out.append(piece)
        pos += h
    if pos != len(w):
        return None
    return tuple(out)


def restrict_character(cartan: CartanData, x: Character, blocks: Sequence[Sequence[int]]) -> BlockCharacter:
    out = {}
    for w, c in x.terms.items():
        pieces = split_word(cartan, w, blocks)
        if pieces is not None:
            out[pieces] = c
    return BlockCharacter(out)


def induce_block_character(cartan: CartanData, m: BlockCharacter) -> Character:
    """Character of the module induced from a parabolic: shuffle the pieces in order."""
    out = Character()
    for key, c in m.terms.items():
        piece = Character.word(())
        for w in key:
            piece = shuffle(cartan, piece, Character.word(w))
        out = out + piece.scale(c)
    return out


def _vector_splits(total: Sequence[int], parts: int, caps: Sequence[Sequence[int]]) -> Iterator[list[tuple[int, ...]]]:
    """Ways of writing ``total`` as an ordered sum of ``parts`` vectors, part ``b`` bounded by ``caps[b]``."""
    if parts == 0:
        if not any(total):
            yield []
        return
    ranges = [range(min(t, c) + 1) for t, c in zip(total, caps[0])]
    for first in itertools.product(*ranges):
        rest = tuple(t - f for t, f in zip(total, first))
        for tail in _vector_splits(rest, parts - 1, caps[1:]):
            yield [tuple(first)] + tail


def mackey_matrices(gammas: Sequence[Sequence[int]], betas: Sequence[Sequence[int]]) -> list[list[list[tuple[int, ...]]]]:
    """All matrices of positive-cone vectors with row sums ``gammas`` and column sums ``betas``."""
    n, m = len(gammas), len(betas)
    out = []

    def rec(a: int, remaining: list[tuple[int, ...]], rows: list):
        if a == n:
            if all(not any(r) for r in remaining):
                out.append([list(r) for r in rows])
            return
        for split in _vector_splits(gammas[a], m, remaining):
            new_rem = [tuple(x - y for x, y in zip(rem, s)) for rem, s in zip(remaining, split)]
            rec(a + 1, new_rem, rows + [split])

    rec(0, [tuple(b) for b in betas], [])
    return out


def mackey_character_sum(
    cartan: CartanData,
    m_char: BlockCharacter,
    gammas: Sequence[Sequence[int]],
    betas: Sequence[Sequence[int]],
) -> BlockCharacter:
    """Character of ``Res_betas Ind_gammas M`` assembled from the Mackey filtration."""
    n, mcols = len(gammas), len(betas)
    if tuple(map(sum, zip(*gammas))) != tuple(map(sum, zip(*betas))):
        raise ValueError("gammas and betas must have the same sum")
    total = BlockCharacter()
    for mat in mackey_matrices(gammas, betas):
        # block sequence in row-major order and its column-major rearrangement
        seq = [mat[a][b] for a in range(n) for b in range(mcols)]
        target_pos = {a * mcols + b: b * n + a for a in range(n) for b in range(mcols)}
        shift = 0
        for p1 in range(len(seq)):
            for p2 in range(p1 + 1, len(seq)):
                if target_pos[p1] > target_pos[p2]:
                    shift -= cartan.form(seq[p1], seq[p2])
        out: dict = {}
        for key, c in m_char.terms.items():
            pieces = []
            ok = True
            for a in range(n):
                sp = split_word(cartan, key[a], mat[a])
                if sp is None:
                    ok = False
                    break
                pieces.append(sp)
            if not ok:
                continue
            columns = []
            for b in range(mcols):
                col = Character.word(())
                for a in range(n):
                    col = shuffle(cartan, col, Character.word(pieces[a][b]))
                columns.append(col)
            for k2, c2 in BlockCharacter.outer(columns).terms.items():
                out[k2] = out.get(k2, LaurentPoly()) + c2 * c.shift(shift)
        total = total + BlockCharacter(out)
    return total
