"""Permutations as 0-based one-line tuples acting on positions of words.

Generators are indexed 1-based to match ``psi_r``: ``s_r`` swaps ``r`` and ``r+1``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

Perm = tuple[int, ...]


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(a: Perm, b: Perm) -> Perm:
    """``(a b)(k) = a(b(k))``."""
    return tuple(a[x] for x in b)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, x in enumerate(w):
        out[x] = k
    return tuple(out)


def left_s(r: int, w: Perm) -> Perm:
    """``s_r w``: swap the values ``r-1`` and ``r`` (0-based)."""
    a, b = r - 1, r
    return tuple(b if x == a else a if x == b else x for x in w)


def right_s(w: Perm, r: int) -> Perm:
    """``w s_r``: swap the entries in positions ``r-1`` and ``r``."""
    w = list(w)
    w[r - 1], w[r] = w[r], w[r - 1]
    return tuple(w)


def act(w: Perm, word: Sequence[int]) -> tuple[int, ...]:
    """Place action: the letter in position ``k`` moves to position ``w(k)``."""
    out = [0] * len(word)
    for k, x in enumerate(w):
        out[x] = word[k]
    return tuple(out)


def length(w: Perm) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def inversions(w: Perm) -> list[tuple[int, int]]:
    """Position pairs ``a < b`` with ``w(a) > w(b)``."""
    return [(a, b) for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b]]


def is_left_descent(r: int, w: Perm) -> bool:
    """True when ``l(s_r w) < l(w)``."""
    pa = pb = -1
    for k, x in enumerate(w):
        if x == r - 1:
            pa = k
        elif x == r:
            pb = k
    return pa > pb


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> tuple[int, ...]:
    """Fixed reduced expression: peel off the smallest left descent repeatedly."""
    for r in range(1, len(w)):
        if is_left_descent(r, w):
            return (r,) + reduced_word(left_s(r, w))
    return ()


def from_word(word: Sequence[int], d: int) -> Perm:
    w = identity(d)
    for r in reversed(word):
        w = left_s(r, w)
    return w


def all_perms(d: int) -> list[Perm]:
    return list(itertools.permutations(range(d)))


@lru_cache(maxsize=None)
def perms_taking(i: tuple[int, ...], j: tuple[int, ...]) -> tuple[Perm, ...]:
    """All ``w`` with ``w . i = j``."""
    d = len(i)
    if sorted(i) != sorted(j):
        return ()
    slots: dict[int, list[int]] = {}
    for k, x in enumerate(j):
        slots.setdefault(x, []).append(k)
    letters = sorted(slots)
    src: dict[int, list[int]] = {x: [k for k in range(d) if i[k] == x] for x in letters}
    out = []
    for choice in itertools.product(*[itertools.permutations(slots[x]) for x in letters]):
        w = [0] * d
        for x, targets in zip(letters, choice):
            for k, tpos in zip(src[x], targets):
                w[k] = tpos
        out.append(tuple(w))
    return tuple(sorted(out))


def shuffle_perms(sizes: Sequence[int]) -> list[Perm]:
    """Minimal length left coset representatives of a parabolic: increasing on each block."""
    d = sum(sizes)
    out = []

    def rec(k: int, remaining: frozenset, acc: list):
        if k == len(sizes):
            out.append(tuple(acc))
            return
        for pos in itertools.combinations(sorted(remaining), sizes[k]):
            rec(k + 1, remaining - set(pos), acc + list(pos))

    rec(0, frozenset(range(d)), [])
    return out
