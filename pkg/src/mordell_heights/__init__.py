"""Canonical heights, reduction data and explicit height bounds on Mordell curves ``y^2 = x^3 + b``."""

from .bounds import (
    BoundReport,
    ScanResult,
    TheoremId,
    TorsionPointError,
    bound_value,
    hypotheses,
    scan,
    verify,
)
from .curve import INFINITY, MordellCurve, NotOnCurveError, RationalPoint, TorsionGroup, naive_height, point
from .families import FamilyInstance, Sign, family
from .heights import HeightBreakdown, canonical_height, height_difference, limit_oracle
from .localheights import ArchHeightConfig, arch_height, local_height_nonarch, local_height_sum_nonarch
from .numtheory import DomainError, sixth_power_free
from .reduction import KodairaType, MinimalModel, ReductionData, minimal_model, reduction_data, reduction_table

__all__ = [
    "ArchHeightConfig",
    "BoundReport",
    "DomainError",
    "FamilyInstance",
    "HeightBreakdown",
    "INFINITY",
    "KodairaType",
    "MinimalModel",
    "MordellCurve",
    "NotOnCurveError",
    "RationalPoint",
    "ReductionData",
    "ScanResult",
    "Sign",
    "TheoremId",
    "TorsionGroup",
    "TorsionPointError",
    "arch_height",
    "bound_value",
    "canonical_height",
    "family",
    "height_difference",
    "hypotheses",
    "limit_oracle",
    "local_height_nonarch",
    "local_height_sum_nonarch",
    "minimal_model",
    "naive_height",
    "point",
    "reduction_data",
    "reduction_table",
    "scan",
    "sixth_power_free",
    "verify",
]

__version__ = "0.1.0"
