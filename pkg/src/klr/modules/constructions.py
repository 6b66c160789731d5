"""Explicit modules and the induction/restriction functors."""

from __future__ import annotations

from typing import Sequence

from ..core.fields import QQ, Field
from ..engine.algebra import KlrAlgebra
from ..engine.perms import Perm, act, compose, identity, inverse, shuffle_perms
from ..roots import CartanData, RootPartition, RootSystemError, shift_sh, type_a
from ..shapes import (
    Multipartition,
    SkewShape,
    is_separating,
    multipartition_contents,
    multipartition_tableaux,
    standard_tableaux,
)
from .module import GradedModule, ModuleError, dual, shift

__all__ = [
    "trivial_module",
    "cuspidal",
    "homogeneous",
    "semisimple_S",
    "induce",
    "induce_many",
    "restrict",
    "first_block",
    "proper_standard",
    "proper_costandard",
    "cartan_for_contents",
    "algebra_for",
]

_ALGEBRAS: dict = {}


def algebra_for(cartan: CartanData, field: Field = QQ) -> KlrAlgebra:
    """Shared rewriting engine per (Cartan datum, field)."""
    key = (cartan, field)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = _ALGEBRAS[key] = KlrAlgebra(cartan, field)
    return alg


def cartan_for_contents(low: int, high: int) -> CartanData:
    """Type A on labels ``min(low, 1) .. high`` (labels start at 1 unless contents go lower)."""
    start = min(low, 1)
    return type_a(max(high, start) - start + 1, start)


def _empty_act(gens, n):
    return {g: [dict() for _ in range(n)] for g in gens}


def trivial_module(cartan: CartanData, field: Field = QQ) -> GradedModule:
    """The one-dimensional module of ``R_0``."""
    return GradedModule(cartan, field, [()], [0], {}, name="1", meta={"content": (0,) * cartan.rank})


def cuspidal(rho: Sequence[int], cartan: CartanData, field: Field = QQ) -> GradedModule:
    """One-dimensional module on the word ``k, k+1, ..., l`` of the interval root ``rho``."""
    k, l = cartan.interval(tuple(rho))
    word = tuple(range(k, l + 1))
    M = GradedModule(cartan, field, [word], [0], {}, name=f"L[{cartan.root_label(tuple(rho))}]")
    M.act = _empty_act(M.generator_list(), 1)
    return M


def homogeneous(lam: SkewShape, cartan: CartanData | None = None, field: Field = QQ) -> GradedModule:
    """Basis over standard tableaux, ``psi_r`` swapping ``r, r+1`` when the result stays standard."""
    cartan = cartan or cartan_for_contents(lam.low, lam.high)
    tabs = standard_tableaux(lam)
    index = {t.entries: n for n, t in enumerate(tabs)}
    words = [t.word for t in tabs]
    M = GradedModule(cartan, field, words, [0] * len(tabs), {}, name=f"L^[{lam}]")
    M.act = _empty_act(M.generator_list(), len(tabs))
    d = lam.size
    for n, t in enumerate(tabs):
        for r in range(1, d):
            s = t.swap(r)
            m = index.get(s.entries)
            if m is not None:
                M.act[("psi", r)][n] = {m: field.one}
    return M


def semisimple_S(kappa: Sequence[int], mu: Multipartition, cartan: CartanData | None = None, field: Field = QQ) -> GradedModule:
    """Basis over standard ``mu``-tableaux with all ``y`` acting by zero; ``mu`` must be separating."""
    if not is_separating(mu, kappa):
        raise ModuleError("the multipartition is not separating")
    conts = multipartition_contents(mu, kappa)
    if not conts:
        raise ModuleError("empty multipartition")
    cartan = cartan or cartan_for_contents(min(conts.values()), max(conts.values()))
    tabs = multipartition_tableaux(mu)
    nodes = mu.nodes()

    def key(t):
        return tuple(t[n] for n in nodes)

    index = {key(t): n for n, t in enumerate(tabs)}
    words = []
    for t in tabs:
        w = [0] * len(nodes)
        for node, e in t.items():
            w[e - 1] = conts[node]
        words.append(tuple(w))
    M = GradedModule(cartan, field, words, [0] * len(tabs), {}, name=f"S{mu.components}")
    M.act = _empty_act(M.generator_list(), len(tabs))
    d = len(nodes)
    for n, t in enumerate(tabs):
        for r in range(1, d):
            swapped = tuple({r: r + 1, r + 1: r}.get(e, e) for e in key(t))
            m = index.get(swapped)
            if m is not None:
                M.act[("psi", r)][n] = {m: field.one}
    M.meta["kappa"] = tuple(kappa)
    return M


# -- induction ----------------------------------------------------------------


def _coset_split(u: Perm, a: int) -> tuple[Perm, Perm]:
    """``u = w p`` with ``w`` increasing on both blocks and ``p`` in the parabolic subgroup."""
    w = tuple(sorted(u[:a])) + tuple(sorted(u[a:]))
    p = compose(inverse(w), u)
    return w, p


class _Decomposer:
    """Write ``psi_u 1_ij`` as ``sum c psi_w psi_p y^m 1_ij`` with ``w`` a coset representative."""

    def __init__(self, alg: KlrAlgebra, a: int):
        self.alg = alg
        self.a = a
        self.cache: dict = {}

    def __call__(self, u: Perm, ij: tuple[int, ...]) -> dict:
        key = (u, ij)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        d = len(u)
        w, p = _coset_split(u, self.a)
        zero = (0,) * d
        out = {(w, p, zero): 1}
        if w != identity(d) and p != identity(d):
            prod = self.alg._basis_times_basis(w, zero, p, ij)
            if prod.get((u, zero)) != 1:
                raise ModuleError("coset factorization failed to reproduce the leading term")
            for (v, m), c in prod.items():
                if (v, m) == (u, zero):
                    continue
                for (w2, p2, m2), c2 in self(v, ij).items():
                    k = (w2, p2, tuple(x + y for x, y in zip(m2, m)))
                    s = out.get(k, 0) - c * c2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        self.cache[key] = out
        return out


def induce(M: GradedModule, N: GradedModule, alg: KlrAlgebra | None = None) -> GradedModule:
    """``M o N``: basis ``psi_w (x) m (x) n`` over shortest coset representatives ``w``."""
    if M.cartan != N.cartan or M.field != N.field:
        raise ModuleError("modules over different algebras")
    if M.blocks or N.blocks:
        raise ModuleError("induction takes modules over full algebras")
    if M.height == 0:
        return N
    if N.height == 0:
        return M
    alg = alg or algebra_for(M.cartan, M.field)
    f = M.field
    a, b = M.height, N.height
    d = a + b
    cosets = sorted(shuffle_perms([a, b]))
    cindex = {w: n for n, w in enumerate(cosets)}
    nm, nn = M.dim, N.dim
    words, degrees = [], []
    for w in cosets:
        for m in range(nm):
            for n in range(nn):
                ij = M.words[m] + N.words[n]
                words.append(act(w, ij))
                degrees.append(alg.degree_of(w, (0,) * d, ij) + M.degrees[m] + N.degrees[n])

    def idx(w, m, n):
        return (cindex[w] * nm + m) * nn + n

    decomp = _Decomposer(alg, a)

    def tensor_apply(gens_rtl: list, vec: dict) -> dict:
        """Apply parabolic generators (given right-to-left) to a tensor ``{(m, n): c}``."""
        for kind, t in gens_rtl:
            out: dict = {}
            if t <= a and not (kind == "psi" and t == a):
                for (m, n), c in vec.items():
                    for m2, x in M.act[(kind, t)][m].items():
                        out[(m2, n)] = out.get((m2, n), 0) + c * x
            elif kind == "psi" and t == a:
                raise ModuleError("parabolic element crosses the block boundary")
            else:
                for (m, n), c in vec.items():
                    for n2, x in N.act[(kind, t - a)][n].items():
                        out[(m, n2)] = out.get((m, n2), 0) + c * x
            vec = {k: f(v) for k, v in out.items() if not f.is_zero(f(v))}
            if not vec:
                break
        return vec

    from ..engine.perms import reduced_word

    def parabolic_on(p: Perm, mexp: tuple, m: int, n: int) -> dict:
        seq = []
        for t, e in enumerate(mexp, start=1):
            seq += [("y", t)] * e
        seq += [("psi", r) for r in reversed(reduced_word(p))]
        return tensor_apply(seq, {(m, n): f.one})

    gens = [("y", r) for r in range(1, d + 1)] + [("psi", r) for r in range(1, d)]
    actmat = {g: [None] * len(words) for g in gens}
    for w in cosets:
        for m in range(nm):
            for n in range(nn):
                ij = M.words[m] + N.words[n]
                src = idx(w, m, n)
                for g in gens:
                    kind, r = g
                    combo = alg.lmul_y(r, w, ij) if kind == "y" else alg.lmul_psi(r, w, ij)
                    col: dict = {}
                    for (u, mexp), c in combo.items():
                        for (w2, p2, m2), c2 in decomp(u, ij).items():
                            tot = tuple(x + y for x, y in zip(m2, mexp))
                            for (mm, nn2), c3 in parabolic_on(p2, tot, m, n).items():
                                k = idx(w2, mm, nn2)
                                col[k] = col.get(k, 0) + c * c2 * c3
                    actmat[g][src] = {k: f(v) for k, v in col.items() if not f.is_zero(f(v))}
    name = f"({M.name} o {N.name})"
    return GradedModule(M.cartan, f, words, degrees, actmat, name=name)


def induce_many(mods: Sequence[GradedModule]) -> GradedModule:
    out = mods[0]
    for M in mods[1:]:
        out = induce(out, M)
    return out


def restrict(M: GradedModule, blocks: Sequence[Sequence[int]]) -> GradedModule:
    """``1_{blocks} M`` as a module over the parabolic subalgebra."""
    from ..words import split_word

    blocks = tuple(tuple(b) for b in blocks)
    if tuple(map(sum, zip(*blocks))) != tuple(M.content):
        raise ModuleError("block contents must add up to the content of the module")
    keep = [k for k in range(M.dim) if split_word(M.cartan, M.words[k], blocks) is not None]
    pos = {k: n for n, k in enumerate(keep)}
    R = GradedModule(M.cartan, M.field, [M.words[k] for k in keep], [M.degrees[k] for k in keep], {}, blocks=blocks,
                     cutoff=M.cutoff, name=f"Res({M.name})")
    for g in R.generator_list():
        R.act[g] = [{pos[j]: c for j, c in M.act[g][k].items()} for k in keep]
    return R


def first_block(R: GradedModule) -> GradedModule:
    """Forget all but the first block of a parabolic module (degrees unchanged)."""
    if not R.blocks:
        raise ModuleError("not a parabolic module")
    h = sum(R.blocks[0])
    words = [w[:h] for w in R.words]
    out = GradedModule(R.cartan, R.field, words, list(R.degrees), {}, cutoff=R.cutoff, name=f"{R.name}|1",
                       meta={"content": tuple(R.blocks[0])})
    for g in out.generator_list():
        out.act[g] = R.act[g]
    return out


# -- standard modules --------------------------------------------------------------


def proper_standard(pi: RootPartition, field: Field = QQ) -> GradedModule:
    """``q^{sh(pi)} L_{rho_1}^{o m_1} o ... o L_{rho_N}^{o m_N}``."""
    c = pi.order.cartan
    if not c.is_type_a():
        raise RootSystemError("explicit cuspidal modules are only available in type A")
    factors = []
    for r, m in pi.parts:
        factors += [cuspidal(r, c, field)] * m
    M = induce_many(factors) if factors else trivial_module(c, field)
    M = shift(M, shift_sh(pi))
    M.name = f"Delta{pi.label()}"
    return M


def proper_costandard(pi: RootPartition, field: Field = QQ) -> GradedModule:
    M = dual(proper_standard(pi, field))
    M.name = f"Nabla{pi.label()}"
    return M
