"""Complexes of shifted projectives ``q^s A 1_i`` with right-multiplication differentials."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

from ..core.laurent import LaurentPoly, TruncatedSeries
from ..core.linalg import Echelon
from ..engine.algebra import KlrAlgebra
from ..engine.perms import act
from .bn import flip

__all__ = ["Summand", "ChainComplex", "ComplexReport", "verify_complex", "ext_against", "euler_characteristic", "HomologyError"]


class HomologyError(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    """``q^shift A 1_idem``; ``label`` records where the summand came from (e.g. a subset)."""

    shift: int
    idem: tuple
    label: tuple = ()

    def to_json(self) -> dict:
        return {"shift": self.shift, "word": list(self.idem), "label": [list(x) if isinstance(x, tuple) else x for x in self.label]}


@dataclass
class ChainComplex:
    """``columns[k]`` lists the summands of ``P_k``; ``diffs[k][(a, b)]`` is the element by which
    summand ``a`` of ``P_k`` is right-multiplied into summand ``b`` of ``P_{k-1}``."""

    algebra: Any
    columns: list[list[Summand]]
    diffs: dict[int, dict[tuple[int, int], Any]]
    name: str = ""
    meta: dict = dc_field(default_factory=dict)

    @property
    def length(self) -> int:
        top = [k for k, col in enumerate(self.columns) if col]
        return max(top) if top else 0

    def column_sizes(self) -> list[int]:
        return [len(c) for c in self.columns]

    def entry(self, k: int, a: int, b: int):
        return self.diffs.get(k, {}).get((a, b))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "columns": [[s.to_json() for s in col] for col in self.columns],
            "differentials": {
                str(k): [{"from": a, "to": b, "element": x.to_json()} for (a, b), x in sorted(d.items())]
                for k, d in sorted(self.diffs.items())
            },
        }


@dataclass
class ComplexReport:
    ok: bool
    failure: str | None = None
    witness: Any = None
    checked: int = 0

    def to_json(self) -> dict:
        return {"ok": self.ok, "failure": self.failure, "witness": repr(self.witness) if self.witness is not None else None, "checked": self.checked}


def _idem_ok(x, left, right) -> bool:
    """Every term of ``x`` starts at ``right`` and ends at ``left``."""
    for key in x.terms:
        if isinstance(x.alg, KlrAlgebra):
            w, _, i = key
            if i != right or act(w, i) != left:
                return False
        else:
            m, s = key
            if s != right or flip(s, [r + 1 for r in range(len(m)) if m[r] % 2]) != left:
                return False
    return True


def verify_complex(C: ChainComplex) -> ComplexReport:
    """Check idempotent compatibility, homogeneity of degree zero, and ``d_{k-1} d_k = 0`` exactly."""
    alg = C.algebra
    checked = 0
    for k, d in C.diffs.items():
        for (a, b), x in d.items():
            src, dst = C.columns[k][a], C.columns[k - 1][b]
            if not _idem_ok(x, src.idem, dst.idem):
                return ComplexReport(False, "idempotents", (k, src.label, dst.label))
            if not x.is_zero() and x.degrees() != {src.shift - dst.shift}:
                return ComplexReport(False, "homogeneity", (k, src.label, dst.label))
    for k in range(2, len(C.columns)):
        d1, d2 = C.diffs.get(k, {}), C.diffs.get(k - 1, {})
        by_mid: dict[int, list] = {}
        for (b, c), y in d2.items():
            by_mid.setdefault(b, []).append((c, y))
        for a in range(len(C.columns[k])):
            acc: dict[int, Any] = {}
            for (a2, b), x in d1.items():
                if a2 != a:
                    continue
                for c, y in by_mid.get(b, ()):
                    prod = alg.multiply(x, y)
                    acc[c] = acc[c] + prod if c in acc else prod
            for c, tot in acc.items():
                checked += 1
                if not tot.is_zero():
                    return ComplexReport(False, "square", (k, C.columns[k][a].label, C.columns[k - 2][c].label), checked)
    return ComplexReport(True, checked=checked)


def euler_characteristic(C: ChainComplex, word: Sequence[int], dim_fn: Callable[[tuple, tuple, int], TruncatedSeries], cutoff: int) -> TruncatedSeries:
    """``sum_k (-1)^k dim_q 1_word P_k`` with ``dim_fn(i, j, D) = dim_q 1_j A 1_i``."""
    word = tuple(word)
    total = TruncatedSeries({}, cutoff)
    for k, col in enumerate(C.columns):
        for s in col:
            part = dim_fn(s.idem, word, cutoff - s.shift).shift(s.shift)
            total = total + (part if k % 2 == 0 else -part)
    return total


def ext_against(C: ChainComplex, M) -> dict[int, LaurentPoly]:
    """Graded cohomology of ``HOM(C, M)``.

    ``HOM(q^s A 1_i, M)`` is ``1_i M`` with degrees lowered by ``s``; the induced maps act by the
    differential entries on ``M``.  ``M`` needs ``words``, ``degrees``, ``field`` and
    ``apply_element``.
    """
    f = M.field
    by_word: dict = {}
    for k, w in enumerate(M.words):
        by_word.setdefault(tuple(w), []).append(k)
    n = len(C.columns)
    coords = []  # coords[k] = list of (summand, basis index) with an internal degree
    for k in range(n):
        coords.append([(a, b) for a, s in enumerate(C.columns[k]) for b in by_word.get(tuple(s.idem), ())])

    def internal(k: int, cell) -> int:
        a, b = cell
        return M.degrees[b] - C.columns[k][a].shift

    index = [{cell: t for t, cell in enumerate(cells)} for cells in coords]
    # d^k : C^{k-1} -> C^k, image of each coordinate of C^{k-1}
    ranks: dict[int, dict[int, int]] = {}
    for k in range(1, n):
        ech: dict[int, Echelon] = {}
        entries = C.diffs.get(k, {})
        by_target: dict[int, list] = {}
        for (a, b), x in entries.items():
            by_target.setdefault(b, []).append((a, x))
        for (b, vec_index) in coords[k - 1]:
            deg = internal(k - 1, (b, vec_index))
            img: dict = {}
            for a, x in by_target.get(b, ()):
                v = M.apply_element(x, {vec_index: f.one})
                for j, c in v.items():
                    t = index[k][(a, j)]
                    img[t] = f(img.get(t, 0) + c)
            img = {t: c for t, c in img.items() if not f.is_zero(c)}
            if img:
                ech.setdefault(deg, Echelon(f)).add(img)
        ranks[k] = {deg: e.rank for deg, e in ech.items()}
    out: dict[int, LaurentPoly] = {}
    for k in range(n):
        dims: dict[int, int] = {}
        for cell in coords[k]:
            deg = internal(k, cell)
            dims[deg] = dims.get(deg, 0) + 1
        for deg in list(dims):
            dims[deg] -= ranks.get(k, {}).get(deg, 0) + ranks.get(k + 1, {}).get(deg, 0)
            if dims[deg] < 0:
                raise HomologyError("negative cohomology: the complex does not square to zero on M")
        poly = LaurentPoly({deg: c for deg, c in dims.items() if c})
        if poly:
            out[k] = poly
    return out
