"""Exact Euler-Chow series: product forms, truncated expansions and
pushforwards along monoid maps."""

from .grading import GradingFunctional, TruncationSpec, auto_functional, enumerate_region, validate_functional
from .series import (
    ComparisonReport,
    ProductForm,
    TruncatedSeries,
    expand,
    geometric,
    odot,
    pf_mul,
    pf_odot,
    pf_power,
    ts_eq,
    ts_mul,
    ts_odot,
)
from .pushforward import MonoidMap, fiber, finite_fibers, push_numeric, push_symbolic

__version__ = "0.1.0"
