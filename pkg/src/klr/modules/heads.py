"""Heads, socles, crystal operators, classification of irreducibles and character peeling."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..core.fields import QQ, Field
from ..core.laurent import LaurentPoly
from ..engine.elements import longest_perm
from ..engine.perms import reduced_word
from ..roots import (
    CartanData,
    ConvexOrder,
    RootPartition,
    bilex_leq,
    default_choices,
    kappa_of_partition,
    root_partitions,
)
from ..words import Character, expand_extremal, extremal_word, extremal_word_along
from .constructions import cuspidal, first_block, induce, induce_many, proper_standard, restrict, trivial_module
from .module import GradedModule, ModuleError, dual, generated_submodule, hom_space, apply_hom, shift

__all__ = [
    "self_dual_shift",
    "normalize",
    "head",
    "socle",
    "simple_power",
    "eps",
    "f_tilde",
    "e_tilde",
    "top_e_tilde",
    "irreducible_by_extremal",
    "irreducible",
    "classify",
    "label_of",
    "decompose",
    "DecompositionRow",
]


def self_dual_shift(M: GradedModule) -> int:
    """The shift making the graded dimension symmetric about zero."""
    if not M.dim:
        raise ModuleError("zero module")
    lo, hi = min(M.degrees), max(M.degrees)
    if (lo + hi) % 2:
        raise ModuleError("no integral self-dual normalization exists")
    return -(lo + hi) // 2


def normalize(M: GradedModule) -> GradedModule:
    """Shift ``M`` so that its character is bar-invariant."""
    N = shift(M, self_dual_shift(M))
    if not N.character().is_bar_invariant():
        raise ModuleError("character is not bar-invariant after normalization")
    return N


def _tail(word: Sequence[int], i: int) -> int:
    n = 0
    for x in reversed(word):
        if x != i:
            break
        n += 1
    return n


def _head_from_words(M: GradedModule, words: Iterable[Sequence[int]]) -> GradedModule:
    D = dual(M)
    wanted = {tuple(w) for w in words}
    seeds = [{k: M.field.one} for k in range(D.dim) if D.words[k] in wanted]
    if not seeds:
        raise ModuleError("the requested weight space is zero")
    S, _ = generated_submodule(D, seeds)
    return dual(S)


def _head_from_form(M: GradedModule) -> GradedModule:
    D = dual(M)
    lo, hi = min(M.degrees), max(M.degrees)
    for s in range(-2 * hi, -2 * lo + 1):
        homs = hom_space(M, D, s)
        if not homs:
            continue
        phi = homs[0]
        images = [apply_hom(phi, M, {k: M.field.one}) for k in range(M.dim)]
        S, _ = generated_submodule(D, [v for v in images if v])
        return dual(S)
    raise ModuleError("no nonzero homomorphism to the dual: the head is not of the promised shape")


def head(M: GradedModule, words: Iterable[Sequence[int]] | None = None, method: str | None = None) -> GradedModule:
    """Irreducible head of ``M``.

    With ``words``, the head is dual to the submodule of ``M^*`` generated by those weight
    spaces; this needs every composition factor other than the head to vanish on them.
    Otherwise the image of a nonzero intertwiner ``M -> M^*`` is used.
    """
    method = method or ("word" if words is not None else "form")
    if method == "word":
        if words is None:
            raise ModuleError("the word method needs weight words")
        out = _head_from_words(M, words)
    elif method == "form":
        out = _head_from_form(M)
    else:
        raise ModuleError(f"unknown head method {method!r}")
    out.name = f"hd {M.name}"
    return out


def socle(M: GradedModule, words: Iterable[Sequence[int]] | None = None, method: str | None = None) -> GradedModule:
    out = dual(head(dual(M), words, method))
    out.name = f"soc {M.name}"
    return out


# -- crystal operators ---------------------------------------------------------


def simple_power(i: int, a: int, cartan: CartanData, field: Field = QQ) -> GradedModule:
    """``L(i^a)``: the normalized ``a``-fold induction power of the simple module at ``i``."""
    alpha = cartan.simple_root(i)
    L = cuspidal(alpha, cartan, field)
    M = normalize(induce_many([L] * a)) if a > 1 else L
    M.name = f"L({i}^{a})"
    return M


def eps(L: GradedModule, i: int) -> int:
    return max((_tail(w, i) for w in L.words), default=0)


def f_tilde(L: GradedModule, i: int, a: int = 1) -> GradedModule:
    """``head(L o L(i^a))``, normalized."""
    N = induce(L, simple_power(i, a, L.cartan, L.field)) if L.height else simple_power(i, a, L.cartan, L.field)
    top = eps(L, i) + a
    words = {w for w in N.words if _tail(w, i) == top}
    out = normalize(head(N, words))
    out.name = f"f{i}^{a} {L.name}" if a > 1 else f"f{i} {L.name}"
    return out


def _second_block_idempotent(h: int, m: int) -> list:
    """Generator word of the primitive nil-Hecke idempotent on positions ``h+1 .. h+m``."""
    gens = []
    for r in range(2, m + 1):
        gens += [("y", h + r)] * (r - 1)
    gens += [("psi", h + r) for r in reduced_word(longest_perm(m))]
    return gens


def top_e_tilde(L: GradedModule, i: int) -> GradedModule | None:
    """``e~_i^eps L``, cut out of ``Res L = (e~^eps L) [x] L(i^eps)`` by a nil-Hecke idempotent."""
    e = eps(L, i)
    if e == 0:
        return None
    c = L.cartan
    alpha_i = c.simple_root(i)
    rest = tuple(a - e * b for a, b in zip(L.content, alpha_i))
    if not any(rest):
        return trivial_module(c, L.field)
    R = restrict(L, (rest, tuple(e * b for b in alpha_i)))
    h = sum(rest)
    gens = _second_block_idempotent(h, e)
    images = [R.apply_word(gens, {k: L.field.one}) for k in range(R.dim)]
    F = first_block(R)
    S, _ = generated_submodule(F, [v for v in images if v])
    out = normalize(S)
    out.name = f"e{i}^{e} {L.name}"
    return out


def e_tilde(L: GradedModule, i: int, check: bool = True) -> GradedModule | None:
    """``e~_i L = f~_i^{eps-1} e~_i^eps L``; ``None`` when ``eps_i(L) = 0``.

    With ``check``, confirms that the result embeds into ``Res_{alpha - alpha_i, alpha_i} L``.
    """
    e = eps(L, i)
    if e == 0:
        return None
    out = top_e_tilde(L, i)
    if e > 1:
        out = f_tilde(out, i, e - 1) if out.height else simple_power(i, e - 1, L.cartan, L.field)
    if check and out.height:
        c = L.cartan
        alpha_i = c.simple_root(i)
        rest = tuple(a - b for a, b in zip(L.content, alpha_i))
        E = first_block(restrict(L, (rest, alpha_i)))
        lo = min(E.degrees) - max(out.degrees)
        hi = max(E.degrees) - min(out.degrees)
        if not any(hom_space(out, E, s) for s in range(lo, hi + 1)):
            raise ModuleError("e~ candidate does not embed into the restriction")
    out.name = f"e{i} {L.name}"
    return out


def irreducible_by_extremal(ew: Sequence[tuple[int, int]], cartan: CartanData, field: Field = QQ) -> GradedModule:
    """The irreducible ``f~_{i_b}^{a_b} ... f~_{i_1}^{a_1} 1`` with extremal word ``i_1^{a_1} ... i_b^{a_b}``."""
    L = trivial_module(cartan, field)
    for i, a in ew:
        if a:
            L = f_tilde(L, i, a)
    letters = [i for i, _ in reversed(ew)]
    got = extremal_word_along(L.character(), letters)
    if tuple((i, a) for i, a in got if a) != tuple((i, a) for i, a in ew if a):
        raise ModuleError("the exponent word is not extremal for the irreducible it produced")
    return L


# -- classification -------------------------------------------------------------------

_IRREDUCIBLES: dict = {}


def irreducible(pi: RootPartition, field: Field = QQ) -> GradedModule:
    """``L(pi)``: head of the proper standard module, normalized; cached per field."""
    key = (pi, field)
    hit = _IRREDUCIBLES.get(key)
    if hit is not None:
        return hit
    if len(pi) == 0:
        L = trivial_module(pi.order.cartan, field)
    else:
        D = proper_standard(pi, field)
        word, _ = kappa_of_partition(pi, default_choices(pi.order))
        L = normalize(head(D, [word]))
    L.name = f"L{pi.label()}"
    L.meta["label"] = pi
    _IRREDUCIBLES[key] = L
    return L


def classify(alpha: Sequence[int], order: ConvexOrder, field: Field = QQ) -> dict[RootPartition, GradedModule]:
    return {pi: irreducible(pi, field) for pi in root_partitions(alpha, order)}


def label_of(L: GradedModule, order: ConvexOrder) -> RootPartition:
    """The bilex-largest ``sigma`` whose word ``i_sigma`` occurs in ``L``."""
    present = set(L.words)
    choices = default_choices(order)
    cands = [s for s in root_partitions(L.content, order) if kappa_of_partition(s, choices)[0] in present]
    for s in cands:
        if all(bilex_leq(t, s) for t in cands):
            return s
    raise ModuleError("no bilex-largest partition among the occurring words")


DecompositionRow = dict  # RootPartition -> LaurentPoly


def _identify(ew, letters, candidates, chars, field):
    for pi in candidates:
        if pi not in chars:
            chars[pi] = irreducible(pi, field).character()
        try:
            if extremal_word_along(chars[pi], letters) == tuple(ew):
                return pi
        except ValueError:
            continue
    return None


def decompose(x: Character, order: ConvexOrder, field: Field = QQ) -> DecompositionRow:
    """Graded composition multiplicities by repeatedly peeling the irreducible at an extremal word.

    Only partitions ``sigma`` whose word ``i_sigma`` occurs in ``x`` can label a factor, so
    irreducibles are built for those alone, bilex-largest first.
    """
    cartan = order.cartan
    row: DecompositionRow = {}
    if x.is_zero():
        return row
    alpha = cartan.content(next(iter(x.terms)))
    choices = default_choices(order)
    present = {w for w, c in x.items() if not c.is_zero()}
    cands = [s for s in root_partitions(alpha, order) if kappa_of_partition(s, choices)[0] in present]
    ordered = []
    while cands:
        top = next(s for s in cands if not any(t != s and bilex_leq(s, t) for t in cands))
        ordered.append(top)
        cands.remove(top)
    chars: dict = {}
    while not x.is_zero():
        ew = extremal_word(x)
        letters = [i for i, _ in reversed(ew)]
        match = _identify(ew, letters, ordered, chars, field)
        if match is None:
            raise ModuleError(f"no irreducible has extremal word {ew}")
        j = expand_extremal(ew)
        try:
            m = x[j].divide_exact(chars[match][j])
        except ArithmeticError as exc:
            raise ModuleError("non-exact peel: not the character of a module") from exc
        if any(c < 0 for _, c in m.items()):
            raise ModuleError("negative multiplicity: not the character of a module")
        row[match] = row.get(match, LaurentPoly()) + m
        x = x - chars[match].scale(m)
    return row
