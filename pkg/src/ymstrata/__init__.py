"""Yang-Mills strata, codimensions and equivariant Poincare series over surfaces."""

from .hn_types import (
    HNType,
    Surface,
    SymmetricClass,
    SymmetricTypeClass,
    enumerate_symmetric,
    enumerate_types,
    separating_invariant,
    tau0,
    x_mu,
)
from .morse import CodimensionError, StratumRecord, codim_nonorientable, codim_orientable
from .poincare import (
    EmptyStratumError,
    FlatSeriesTable,
    MorseSeriesReport,
    RecursionInconsistency,
    Unknown,
    VssEngine,
    bg_series,
    morse_series,
    stratum_series_nonorientable,
    stratum_series_orientable,
    vss_series,
)
from .series import Factor, TruncatedSeries, expand_rational

__version__ = "0.1.0"

__all__ = [
    "CodimensionError",
    "EmptyStratumError",
    "Factor",
    "FlatSeriesTable",
    "HNType",
    "MorseSeriesReport",
    "RecursionInconsistency",
    "StratumRecord",
    "Surface",
    "SymmetricClass",
    "SymmetricTypeClass",
    "TruncatedSeries",
    "Unknown",
    "VssEngine",
    "bg_series",
    "codim_nonorientable",
    "codim_orientable",
    "enumerate_symmetric",
    "enumerate_types",
    "expand_rational",
    "morse_series",
    "separating_invariant",
    "stratum_series_nonorientable",
    "stratum_series_orientable",
    "tau0",
    "vss_series",
    "x_mu",
]
