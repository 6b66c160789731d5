"""Finite-dimensional graded modules given by generator matrices.

A basis vector carries a word and a degree.  Each generator ``("y", r)`` and
``("psi", r)`` is stored as a list of sparse columns: ``act[g][k]`` is the image
of basis vector ``k``.  A module over a parabolic subalgebra records its block
contents in ``blocks`` and omits the ``psi`` generators joining two blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Mapping, Sequence

from ..core.fields import Field
from ..core.laurent import LaurentPoly
from ..core.linalg import Echelon, nullspace, vec_add
from ..engine.algebra import KlrAlgebra, KlrElement
from ..engine.perms import reduced_word
from ..roots import CartanData
from ..words import BlockCharacter, Character, split_word

Vec = dict
Gen = tuple[str, int]

__all__ = [
    "GradedModule",
    "ModuleError",
    "verify_module",
    "dual",
    "shift",
    "submodule",
    "quotient",
    "generated_submodule",
    "hom_space",
    "direct_sum",
    "apply_hom",
    "cyclotomic_check",
    "VerifyReport",
]


class ModuleError(ValueError):
    pass


@dataclass
class GradedModule:
    cartan: CartanData
    field: Field
    words: list[tuple[int, ...]]
    degrees: list[int]
    act: dict[Gen, list[Vec]]
    blocks: tuple[tuple[int, ...], ...] | None = None
    cutoff: int | None = None
    name: str = ""
    meta: dict = dc_field(default_factory=dict)

    # -- shape -------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def height(self) -> int:
        if self.words:
            return len(self.words[0])
        return sum(self.meta.get("content", ()))

    @property
    def content(self) -> tuple[int, ...]:
        if self.words:
            return self.cartan.content(self.words[0])
        return tuple(self.meta.get("content", (0,) * self.cartan.rank))

    def block_boundaries(self) -> set[int]:
        if not self.blocks:
            return set()
        out, pos = set(), 0
        for b in self.blocks[:-1]:
            pos += sum(b)
            out.add(pos)
        return out

    def generator_list(self) -> list[Gen]:
        d = self.height
        cuts = self.block_boundaries()
        return [("y", r) for r in range(1, d + 1)] + [("psi", r) for r in range(1, d) if r not in cuts]

    def generator_degree(self, g: Gen, word: Sequence[int]) -> int:
        kind, r = g
        form = self.cartan.form_simple
        if kind == "y":
            return form(word[r - 1], word[r - 1])
        return -form(word[r - 1], word[r])

    def is_zero(self) -> bool:
        return self.dim == 0

    # -- characters ---------------------------------------------------------------

    def character(self) -> Character:
        out: dict = {}
        for w, n in zip(self.words, self.degrees):
            out[w] = out.get(w, LaurentPoly()) + LaurentPoly.monomial(n)
        return Character(out)

    def block_character(self) -> BlockCharacter:
        if not self.blocks:
            raise ModuleError("not a module over a parabolic subalgebra")
        out: dict = {}
        for w, n in zip(self.words, self.degrees):
            key = split_word(self.cartan, w, self.blocks)
            out[key] = out.get(key, LaurentPoly()) + LaurentPoly.monomial(n)
        return BlockCharacter(out)

    def graded_dim(self) -> LaurentPoly:
        out = LaurentPoly()
        for n in self.degrees:
            out = out + LaurentPoly.monomial(n)
        return out

    def weight_space(self, word: Sequence[int], degree: int | None = None) -> list[int]:
        word = tuple(word)
        return [k for k, (w, n) in enumerate(zip(self.words, self.degrees)) if w == word and (degree is None or n == degree)]

    def buckets(self) -> dict[tuple, list[int]]:
        out: dict = {}
        for k, key in enumerate(zip(self.words, self.degrees)):
            out.setdefault(key, []).append(k)
        return out

    # -- action -----------------------------------------------------------------

    def apply(self, g: Gen, v: Mapping) -> Vec:
        f = self.field
        out: Vec = {}
        cols = self.act.get(g)
        if cols is None:
            if g in self.generator_list():
                return {}
            raise ModuleError(f"generator {g} is not available")
        for k, c in v.items():
            for j, x in cols[k].items():
                s = out.get(j, 0) + c * x
                if f.is_zero(f(s)):
                    out.pop(j, None)
                else:
                    out[j] = f(s)
        return out

    def apply_word(self, gens: Sequence[Gen], v: Mapping) -> Vec:
        """Apply ``gens[0] gens[1] ... gens[-1]`` (rightmost first)."""
        for g in reversed(gens):
            v = self.apply(g, v)
            if not v:
                break
        return v

    def apply_idempotent(self, word: Sequence[int], v: Mapping) -> Vec:
        word = tuple(word)
        return {k: c for k, c in v.items() if self.words[k] == word}

    def apply_element(self, x: KlrElement, v: Mapping) -> Vec:
        """Action of an algebra element on a vector."""
        out: Vec = {}
        for (w, m, i), c in x.terms.items():
            u = self.apply_idempotent(i, v)
            for t, e in enumerate(m, start=1):
                for _ in range(e):
                    u = self.apply(("y", t), u)
            for r in reversed(reduced_word(w)):
                u = self.apply(("psi", r), u)
            out = vec_add(out, u, self.field, c)
        return out

    def basis_vector(self, k: int) -> Vec:
        return {k: self.field.one}

    def to_json(self) -> dict:
        dims: dict = {}
        for w, n in zip(self.words, self.degrees):
            key = ",".join(map(str, w)) + f"@{n}"
            dims[key] = dims.get(key, 0) + 1
        mats = {}
        for (kind, r), cols in sorted(self.act.items()):
            mats[f"{kind}{r}"] = [[k, j, _scalar(c)] for k, col in enumerate(cols) for j, c in sorted(col.items())]
        return {
            "dims": dims,
            "basis": [{"word": list(w), "degree": n} for w, n in zip(self.words, self.degrees)],
            "matrices": mats,
            "cutoff": self.cutoff,
        }


def _scalar(c):
    from fractions import Fraction

    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return int(c)


def _check_shape(M: GradedModule) -> None:
    for g, cols in M.act.items():
        if len(cols) != M.dim:
            raise ModuleError(f"matrix for {g} has the wrong size")


# -- building blocks ----------------------------------------------------------------


def shift(M: GradedModule, s: int) -> GradedModule:
    """``q^s M``: every degree raised by ``s``."""
    return GradedModule(M.cartan, M.field, list(M.words), [n + s for n in M.degrees], M.act, M.blocks,
                        None if M.cutoff is None else M.cutoff + s, M.name, dict(M.meta))


def dual(M: GradedModule) -> GradedModule:
    """Graded dual twisted by the generator-fixing anti-involution: transpose every matrix."""
    if M.cutoff is not None:
        raise ModuleError("the dual of a truncated module is not defined")
    act: dict = {}
    for g, cols in M.act.items():
        new = [dict() for _ in range(M.dim)]
        for k, col in enumerate(cols):
            for j, c in col.items():
                new[j][k] = c
        act[g] = new
    return GradedModule(M.cartan, M.field, list(M.words), [-n for n in M.degrees], act, M.blocks, None,
                        f"dual({M.name})", dict(M.meta))


def direct_sum(mods: Sequence[GradedModule]) -> GradedModule:
    base = mods[0]
    words, degrees, act = [], [], {}
    offset = 0
    gens = set()
    for M in mods:
        gens |= set(M.generator_list())
    for g in gens:
        act[g] = []
    for M in mods:
        words += M.words
        degrees += M.degrees
        for g in gens:
            cols = M.act.get(g, [dict() for _ in range(M.dim)])
            act[g] += [{j + offset: c for j, c in col.items()} for col in cols]
        offset += M.dim
    return GradedModule(base.cartan, base.field, words, degrees, act, base.blocks, base.cutoff, "sum", dict(base.meta))


def _span_closure(M: GradedModule, seeds: Iterable[Mapping]) -> dict[tuple, Echelon]:
    """Homogeneous span of the submodule generated by homogeneous ``seeds``, bucketed by (word, degree)."""
    f = M.field
    buckets: dict[tuple, Echelon] = {}
    queue: list[Vec] = []

    def push(v: Mapping):
        if not v:
            return
        k0 = next(iter(v))
        key = (M.words[k0], M.degrees[k0])
        e = buckets.setdefault(key, Echelon(f))
        r = e.reduce(v)
        if r:
            e.add(r)
            queue.append(r)

    for v in seeds:
        for part in _homogeneous_parts(M, v):
            push(part)
    gens = M.generator_list()
    while queue:
        v = queue.pop()
        for g in gens:
            push(M.apply(g, v))
    return buckets


def _homogeneous_parts(M: GradedModule, v: Mapping) -> list[Vec]:
    parts: dict = {}
    for k, c in v.items():
        parts.setdefault((M.words[k], M.degrees[k]), {})[k] = c
    return list(parts.values())


def _module_on_basis(M: GradedModule, basis: list[Vec], coords: Callable[[Vec], dict[int, object]], name: str) -> GradedModule:
    words, degrees = [], []
    for v in basis:
        k0 = next(iter(v))
        words.append(M.words[k0])
        degrees.append(M.degrees[k0])
    act = {}
    for g in M.generator_list():
        act[g] = [coords(M.apply(g, v)) for v in basis]
    return GradedModule(M.cartan, M.field, words, degrees, act, M.blocks, M.cutoff, name, dict(M.meta))


def generated_submodule(M: GradedModule, seeds: Iterable[Mapping], name: str = "sub") -> tuple[GradedModule, list[Vec]]:
    """Submodule generated by ``seeds``; returns it with its basis as vectors of ``M``."""
    buckets = _span_closure(M, seeds)
    basis: list[Vec] = []
    index: dict = {}
    for key in sorted(buckets, key=lambda k: (k[0], k[1])):
        e = buckets[key]
        for p in sorted(e.rows):
            index[(key, p)] = len(basis)
            basis.append(e.rows[p])

    def coords(v: Vec) -> dict:
        out = {}
        for part in _homogeneous_parts(M, v):
            k0 = next(iter(part))
            key = (M.words[k0], M.degrees[k0])
            e = buckets.get(key)
            c = e.coordinates(part) if e is not None else None
            if c is None:
                raise ModuleError("vector escaped the generated submodule")
            for p, x in c.items():
                out[index[(key, p)]] = x
        return out

    return _module_on_basis(M, basis, coords, name), basis


def submodule(M: GradedModule, vectors: Iterable[Mapping], name: str = "sub") -> GradedModule:
    return generated_submodule(M, vectors, name)[0]


def quotient(M: GradedModule, vectors: Iterable[Mapping], name: str = "quot") -> GradedModule:
    """``M`` modulo the submodule generated by ``vectors``; basis = non-pivot basis vectors."""
    buckets = _span_closure(M, vectors)
    pivots = {p for e in buckets.values() for p in e.rows}
    keep = [k for k in range(M.dim) if k not in pivots]
    pos = {k: n for n, k in enumerate(keep)}

    def reduce(v: Vec) -> dict:
        out = {}
        for part in _homogeneous_parts(M, v):
            k0 = next(iter(part))
            e = buckets.get((M.words[k0], M.degrees[k0]))
            r = e.reduce(part) if e is not None else part
            for k, c in r.items():
                out[pos[k]] = c
        return out

    words = [M.words[k] for k in keep]
    degrees = [M.degrees[k] for k in keep]
    act = {g: [reduce(M.apply(g, {k: M.field.one})) for k in keep] for g in M.generator_list()}
    return GradedModule(M.cartan, M.field, words, degrees, act, M.blocks, M.cutoff, name, dict(M.meta))


# -- homomorphisms --------------------------------------------------------------------


def hom_space(A: GradedModule, B: GradedModule, degree: int = 0) -> list[dict]:
    """Basis of homogeneous module maps ``A -> B`` raising degree by ``degree``.

    A map is a dict ``(b, a) -> scalar`` (matrix entry: coefficient of ``b`` in the image of ``a``).
    """
    f = A.field
    bb = B.buckets()
    unknowns = []
    for a in range(A.dim):
        for b in bb.get((A.words[a], A.degrees[a] + degree), ()):
            unknowns.append((b, a))
    if not unknowns:
        return []
    known = set(unknowns)
    rows = []
    for g in A.generator_list():
        for a in range(A.dim):
            # phi(g a) - g phi(a) = 0, coefficient at each basis vector of B
            eqs: dict[int, dict] = {}
            for a2, c in A.apply(g, {a: f.one}).items():
                for b in bb.get((A.words[a2], A.degrees[a2] + degree), ()):
                    eqs.setdefault(b, {})
                    eqs[b][(b, a2)] = f(eqs[b].get((b, a2), 0) + c)
            for b in bb.get((A.words[a], A.degrees[a] + degree), ()):
                for b2, c in B.apply(g, {b: f.one}).items():
                    eqs.setdefault(b2, {})
                    eqs[b2][(b, a)] = f(eqs[b2].get((b, a), 0) - c)
            for row in eqs.values():
                row = {k: v for k, v in row.items() if k in known and not f.is_zero(v)}
                if row:
                    rows.append(row)
    return nullspace(rows, unknowns, f)


def apply_hom(phi: Mapping, A: GradedModule, v: Mapping) -> Vec:
    f = A.field
    by_col: dict[int, list] = {}
    for (b, a), c in phi.items():
        by_col.setdefault(a, []).append((b, c))
    out: Vec = {}
    for a, x in v.items():
        for b, c in by_col.get(a, ()):
            out[b] = f(out.get(b, 0) + x * c)
    return {k: c for k, c in out.items() if not f.is_zero(c)}


# -- verification -----------------------------------------------------------------


@dataclass
class VerifyReport:
    ok: bool
    relation: str | None = None
    vector: int | None = None
    detail: str = ""
    checked: int = 0

    def to_json(self) -> dict:
        return {"ok": self.ok, "relation": self.relation, "vector": self.vector, "detail": self.detail, "checked": self.checked}


def verify_module(M: GradedModule, alg: KlrAlgebra | None = None) -> VerifyReport:
    """Evaluate every defining relation on every basis vector; stop at the first failure."""
    _check_shape(M)
    alg = alg or KlrAlgebra(M.cartan, M.field)
    f = M.field
    d = M.height
    gens = M.generator_list()
    have = set(gens)
    cut = M.cutoff
    checked = 0

    def fail(rel, k, detail=""):
        return VerifyReport(False, rel, k, detail, checked)

    def poly_apply(poly: Mapping, v: Vec) -> Vec:
        out: Vec = {}
        for mono, c in poly.items():
            u = dict(v)
            for t, e in enumerate(mono, start=1):
                for _ in range(e):
                    u = M.apply(("y", t), u)
            out = vec_add(out, u, f, c)
        return out

    def within(k: int, path: Sequence[Gen]) -> bool:
        """All intermediate degrees along ``path`` (rightmost first) stay at or below the cutoff."""
        if cut is None:
            return True
        word = M.words[k]
        deg = M.degrees[k]
        for g in reversed(path):
            if g[0] == "psi" and g not in have:
                return False
            deg += M.generator_degree(g, word)
            if g[0] == "psi":
                r = g[1]
                word = word[: r - 1] + (word[r], word[r - 1]) + word[r + 1:]
            if deg > cut:
                return False
        return True

    def worst(k: int, paths: Iterable[Sequence[Gen]]) -> bool:
        return all(within(k, p) for p in paths)

    for k in range(M.dim):
        v = {k: f.one}
        word = M.words[k]
        # grading and idempotents
        for g in gens:
            img = M.apply(g, v)
            if g[0] == "y":
                target = word
            else:
                r = g[1]
                target = word[: r - 1] + (word[r], word[r - 1]) + word[r + 1:]
            exp_deg = M.degrees[k] + M.generator_degree(g, word)
            for j in img:
                if M.words[j] != target:
                    return fail("R2PsiE" if g[0] == "psi" else "R2PsiY", k, f"{g} changes the word wrongly")
                if M.degrees[j] != exp_deg:
                    return fail("grading", k, f"{g} has the wrong degree")
        # y's commute
        for t in range(1, d + 1):
            for s in range(t + 1, d + 1):
                if not worst(k, [[("y", t), ("y", s)]]):
                    continue
                checked += 1
                if M.apply(("y", t), M.apply(("y", s), v)) != M.apply(("y", s), M.apply(("y", t), v)):
                    return fail("R2PsiY", k, f"y{t} y{s}")
        for r in range(1, d):
            if ("psi", r) not in have:
                continue
            # quadratic relation
            q = alg.q_poly(word, r)
            paths = [[("psi", r), ("psi", r)]] + [[("y", t)] * e for mono in q for t, e in enumerate(mono, 1) if e]
            if worst(k, paths):
                checked += 1
                lhs = M.apply(("psi", r), M.apply(("psi", r), v))
                if lhs != poly_apply(q, v):
                    return fail("R4", k, f"psi{r}^2")
            # psi-y commutation
            for t in range(1, d + 1):
                st = r + 1 if t == r else r if t == r + 1 else t
                if not worst(k, [[("y", t), ("psi", r)], [("psi", r), ("y", st)]]):
                    continue
                checked += 1
                lhs = vec_add(M.apply(("y", t), M.apply(("psi", r), v)), M.apply(("psi", r), M.apply(("y", st), v)), f, -1)
                corr = 0
                if word[r - 1] == word[r]:
                    corr = (1 if t == r + 1 else 0) - (1 if t == r else 0)
                rhs = {k: f(corr)} if corr else {}
                if lhs != rhs:
                    return fail("R6", k, f"y{t} psi{r}")
            for t in range(r + 2, d):
                if ("psi", t) not in have or not worst(k, [[("psi", r), ("psi", t)], [("psi", t), ("psi", r)]]):
                    continue
                checked += 1
                if M.apply(("psi", r), M.apply(("psi", t), v)) != M.apply(("psi", t), M.apply(("psi", r), v)):
                    return fail("R3Psi", k, f"psi{r} psi{t}")
            if r + 1 < d and ("psi", r + 1) in have:
                a = r
                P = alg.braid_poly(word, a)
                p1 = [("psi", a + 1), ("psi", a), ("psi", a + 1)]
                p2 = [("psi", a), ("psi", a + 1), ("psi", a)]
                if not worst(k, [p1, p2] + [[("y", t)] * e for mono in P for t, e in enumerate(mono, 1) if e]):
                    continue
                checked += 1
                lhs = vec_add(M.apply_word(p1, v), M.apply_word(p2, v), f, -1)
                if lhs != poly_apply(P, v):
                    return fail("R7", k, f"braid at {a}")
    return VerifyReport(True, checked=checked)


def cyclotomic_check(M: GradedModule, levels: Mapping[int, int]) -> bool:
    """``y_1^{<Lambda, alpha_{i_1}>} 1_i`` acts as zero; ``levels[i] = <Lambda, alpha_i>``."""
    f = M.field
    for k in range(M.dim):
        n = levels.get(M.words[k][0], 0)
        v = {k: f.one}
        for _ in range(n):
            v = M.apply(("y", 1), v)
        if v:
            return False
    return True
