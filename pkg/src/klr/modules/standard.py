"""Standard characters, truncations of the root module, and reduction modulo p."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.fields import GF, QQ, Field
from ..core.laurent import TruncatedSeries, expand_inverse_cyclotomic
from ..core.linalg import Lattice
from ..roots import CartanData, ConvexOrder, RootPartition, RootSystemError
from .constructions import proper_standard
from .heads import DecompositionRow, decompose, irreducible
from .module import GradedModule, ModuleError

__all__ = [
    "standard_character",
    "truncated_root_module",
    "reduce_mod_p",
    "Reduction",
    "row_to_json",
]


def _denominator(pi: RootPartition, cutoff: int) -> TruncatedSeries:
    """``prod_k prod_{r <= m_k} 1 / (1 - q_{rho_k}^{2r})`` up to ``cutoff``."""
    c = pi.order.cartan
    out = TruncatedSeries.one(cutoff)
    for rho, m in pi.parts:
        d = c.form(rho, rho) // 2
        for r in range(1, m + 1):
            out = out * expand_inverse_cyclotomic(r * d, cutoff)
    return out


def standard_character(pi: RootPartition, cutoff: int) -> dict[tuple[int, ...], TruncatedSeries]:
    """Word-by-word series of the standard module: the proper standard character over the denominator."""
    bar_ch = proper_standard(pi).character()
    out = {}
    for w, p in bar_ch.items():
        low = p.min_degree()
        if cutoff < low:
            out[w] = TruncatedSeries({}, cutoff)
            continue
        out[w] = _denominator(pi, cutoff - low) * p
    return out


def truncated_root_module(rho, cutoff: int, cartan: CartanData, field: Field = QQ) -> GradedModule:
    """Degrees ``<= cutoff`` of ``R_rho (x)_{R'_rho} L'_rho``.

    The word ``k, ..., l`` has distinct letters, so ``z_rho`` acts there as ``y_1``; every
    ``x_r = y_r - y_{r+1}`` kills the generator, hence all ``y_r`` act as ``z_rho`` and the
    basis is ``z^m v``.
    """
    if not cartan.is_type_a():
        raise RootSystemError("the root module is only modelled in type A")
    k, l = cartan.interval(tuple(rho))
    word = tuple(range(k, l + 1))
    step = cartan.form_simple(k, k)
    top = cutoff // step if cutoff >= 0 else -1
    n = top + 1
    d = len(word)
    act = {("y", r): [({m + 1: field.one} if m + 1 < n else {}) for m in range(n)] for r in range(1, d + 1)}
    act.update({("psi", r): [{} for _ in range(n)] for r in range(1, d)})
    return GradedModule(cartan, field, [word] * n, [step * m for m in range(n)], act, cutoff=cutoff,
                        name=f"Delta[{cartan.root_label(tuple(rho))}]<={cutoff}")


# -- reduction modulo p ---------------------------------------------------------------


@dataclass
class Reduction:
    row: DecompositionRow
    module: GradedModule
    seed: int


def _lattice_closure(L: GradedModule, seed: int) -> dict[tuple, Lattice]:
    buckets: dict[tuple, Lattice] = {}
    queue = buckets.setdefault((L.words[seed], L.degrees[seed]), Lattice()).add({seed: 1})
    gens = L.generator_list()
    while queue:
        v = queue.pop()
        for g in gens:
            img = L.apply(g, v)
            if not img:
                continue
            k0 = next(iter(img))
            key = (L.words[k0], L.degrees[k0])
            queue.extend(buckets.setdefault(key, Lattice()).add(img))
    return buckets


def _reduced_module(L: GradedModule, buckets: dict[tuple, Lattice], p: int) -> GradedModule:
    F = GF(p)
    basis, index, words, degrees = [], {}, [], []
    for key in sorted(buckets):
        lat = buckets[key]
        for piv in sorted(lat.rows):
            index[(key, piv)] = len(basis)
            basis.append(lat.rows[piv])
            words.append(key[0])
            degrees.append(key[1])
    act = {}
    for g in L.generator_list():
        cols = []
        for v in basis:
            img = L.apply(g, v)
            col = {}
            if img:
                k0 = next(iter(img))
                key = (L.words[k0], L.degrees[k0])
                coords = buckets[key].coordinates(img)
                if coords is None:
                    raise ModuleError("the lattice is not closed under the generators")
                for piv, c in coords.items():
                    if c % p:
                        col[index[(key, piv)]] = F(c)
            cols.append(col)
        act[g] = cols
    return GradedModule(L.cartan, F, words, degrees, act, name=f"{L.name} mod {p}")


def reduce_mod_p(pi: RootPartition, p: int, order: ConvexOrder | None = None) -> Reduction:
    """Decomposition row of ``L(pi)`` reduced modulo ``p`` through the lattice ``R_Z v``."""
    order = order or pi.order
    L = irreducible(pi, QQ)
    for seed in range(L.dim):
        buckets = _lattice_closure(L, seed)
        if sum(lat.rank for lat in buckets.values()) == L.dim:
            break
    else:
        raise ModuleError("no word vector generates a full-rank lattice")
    M = _reduced_module(L, buckets, p)
    return Reduction(decompose(M.character(), order, GF(p)), M, seed)


def row_to_json(row: DecompositionRow) -> list[dict]:
    return [{"partition": pi.label(), "coeff": c.to_json()} for pi, c in sorted(row.items(), key=lambda kv: kv[0].label())]
