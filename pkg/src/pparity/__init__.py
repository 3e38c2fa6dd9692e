"""Partition parity in Ramanujan-style arithmetic progressions.

Formal q-series with fractional exponents over Z, GF(2), and Z/m;
eta-quotient expansions; decimation/dilation operators; parity streams of
the partition function with a persistent cache; bound certificates for the
smallest odd value in each progression; and cusp-order bookkeeping that
evaluates the refined congruence threshold exactly.
"""

from .congruence import (
    BoundReport,
    HeckeReport,
    delta_of,
    legacy_bound,
    legacy_bound_exact,
    nonvanishing_check,
    remark_bound,
    required_stream_length,
    smallest_odd_m,
    theorem_bound,
    verify_ramanujan,
    verify_remark2,
    verify_theorem_bound,
)
from .cusps import (
    CuspClassReport,
    OrderBounds,
    SturmEvaluation,
    cusp_classes,
    index_gamma0,
    ord2_observed,
    order_bounds,
    sturm_report,
    sturm_rhs,
)
from .errors import (
    CacheFormatError,
    DomainError,
    NonUnitError,
    PParityError,
    PrecisionExhaustedError,
    ResourceLimitError,
    RingMismatchError,
    StreamTooShortError,
)
from .eta import (
    PARITY_KERNEL_QUOTIENT,
    PARTITION_PARITY_QUOTIENT,
    EtaQuotient,
    eta_power,
    eta_quotient_expand,
)
from .partitions import (
    ResidueStream,
    even_count,
    load_cache,
    partition_exact,
    proportion_even,
    residue_stream,
    save_cache,
)
from .series import GF2, INT, FracPowerSeries, Ring, hecke_mod2, mod_ring

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CacheFormatError", "CuspClassReport", "DomainError",
    "EtaQuotient", "FracPowerSeries", "GF2", "HeckeReport", "INT",
    "NonUnitError", "OrderBounds", "PARITY_KERNEL_QUOTIENT",
    "PARTITION_PARITY_QUOTIENT", "PParityError", "PrecisionExhaustedError",
    "ResidueStream", "ResourceLimitError", "Ring", "RingMismatchError",
    "StreamTooShortError", "SturmEvaluation", "cusp_classes", "delta_of",
    "eta_power", "eta_quotient_expand", "even_count", "hecke_mod2",
    "index_gamma0", "legacy_bound", "legacy_bound_exact", "load_cache",
    "mod_ring", "nonvanishing_check", "ord2_observed", "order_bounds",
    "partition_exact", "proportion_even", "remark_bound",
    "required_stream_length", "residue_stream", "save_cache",
    "smallest_odd_m", "sturm_report", "sturm_rhs", "theorem_bound",
    "verify_ramanujan", "verify_remark2", "verify_theorem_bound",
]
