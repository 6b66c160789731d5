"""Graded dimension of ``R_alpha`` two ways: the basis theorem, and a sum over proper standard modules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..core.laurent import TruncatedSeries
from ..engine.algebra import words_of_content
from ..modules.constructions import algebra_for, proper_standard
from ..modules.standard import _denominator
from ..roots import ConvexOrder, root_partitions

__all__ = ["DimensionReport", "dimension_report"]


@dataclass
class DimensionReport:
    alpha: tuple[int, ...]
    cutoff: int
    basis_side: TruncatedSeries
    standard_side: TruncatedSeries

    @property
    def equal(self) -> bool:
        return self.basis_side == self.standard_side

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "cutoff": self.cutoff,
            "basis_side": self.basis_side.to_json(),
            "standard_side": self.standard_side.to_json(),
            "equal": self.equal,
        }


def dimension_report(alpha: Sequence[int], order: ConvexOrder, cutoff: int = 20) -> DimensionReport:
    """``sum_{i,j} dim_q 1_j R 1_i`` against ``sum_pi (dim_q Dbar(pi))^2 / prod (1 - q^{2r})``."""
    alpha = tuple(alpha)
    c = order.cartan
    alg = algebra_for(c)
    words = words_of_content(c, alpha)
    left = TruncatedSeries({}, cutoff)
    for i in words:
        for j in words:
            left = left + alg.graded_dim_closed_form(i, j, cutoff)
    right = TruncatedSeries({}, cutoff)
    for pi in root_partitions(alpha, order):
        d = proper_standard(pi).graded_dim()
        sq = d * d
        low = sq.min_degree()
        if cutoff < low:
            continue
        right = right + _denominator(pi, cutoff - low) * sq
    return DimensionReport(alpha, cutoff, left, right)
