from .laurent import (
    DEFAULT_CUTOFF,
    EmptySeriesError,
    LaurentPoly,
    TruncatedSeries,
    bar,
    expand_inverse_cyclotomic,
    quantum_factorial,
    quantum_integer,
)
from .fields import GF, QQ, Field, parse_field
from .linalg import Echelon, nullspace, rank, solve

__all__ = [
    "DEFAULT_CUTOFF",
    "EmptySeriesError",
    "LaurentPoly",
    "TruncatedSeries",
    "bar",
    "expand_inverse_cyclotomic",
    "quantum_factorial",
    "quantum_integer",
    "GF",
    "QQ",
    "Field",
    "parse_field",
    "Echelon",
    "nullspace",
    "rank",
    "solve",
]
