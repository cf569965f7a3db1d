"""Point counts of curves over finite fields from their first g values."""

__version__ = "0.1.0"

from .bounds import compare_to_bounds, deuring_offsets, deuring_set, hws_bound, isqrt_floor, serre_nq
from .finite_field import FieldCtx, FieldElement, PrimePower, field, find_irreducible
from .oracle import PlaneCurve, WeierstrassCubic, classify_cubics, count_points, smoothness_probe, weierstrass_count
from .parse import parse_poly
from .zeta import (
    bootstrap_basic,
    bootstrap_improved,
    counts_to_power_sums,
    newton_c_from_S,
    newton_extend_S,
    subsequence_check,
    weil_bound_check,
    zeta_numerator,
    zeta_series_check,
)

__all__ = [
    "FieldCtx", "FieldElement", "PlaneCurve", "PrimePower", "WeierstrassCubic",
    "bootstrap_basic", "bootstrap_improved", "classify_cubics", "compare_to_bounds",
    "count_points", "counts_to_power_sums", "deuring_offsets", "deuring_set", "field",
    "find_irreducible", "hws_bound", "isqrt_floor", "newton_c_from_S", "newton_extend_S",
    "parse_poly", "serre_nq", "smoothness_probe", "subsequence_check", "weierstrass_count",
    "weil_bound_check", "zeta_numerator", "zeta_series_check",
]
