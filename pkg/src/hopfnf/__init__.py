"""Exact parametric normal forms of planar generalized Hopf systems."""

from .errors import (
    BadLinearPart,
    DegenerateInput,
    DimensionMismatch,
    HopfnfError,
    LinearPartError,
    NoParametricDimension,
    NonResonantTerm,
    NotGeneric,
    NotInSpan,
    SystemSyntaxError,
    UndeclaredParameter,
)
from .engine import (
    NormalizationConfig,
    distorted_normalize,
    genericity,
    hypernormalize,
    level_one,
    mode_suite,
    nonparametric_normalize,
)
from .oracle import oracle_bracket, replay
from .polar import to_polar
from .rational import Rat, rat
from .series import ParamSeries, ParamVectorField, TimeSeries
from .system import parse_system, realify
from .terms import BasisTerm, Grading, TimeTerm

__all__ = [
    "NormalizationConfig",
    "distorted_normalize",
    "genericity",
    "hypernormalize",
    "level_one",
    "mode_suite",
    "nonparametric_normalize",
    "oracle_bracket",
    "parse_system",
    "realify",
    "replay",
    "to_polar",
    "BadLinearPart",
    "BasisTerm",
    "DegenerateInput",
    "DimensionMismatch",
    "Grading",
    "HopfnfError",
    "LinearPartError",
    "NoParametricDimension",
    "NonResonantTerm",
    "NotGeneric",
    "NotInSpan",
    "ParamSeries",
    "ParamVectorField",
    "Rat",
    "SystemSyntaxError",
    "TimeSeries",
    "TimeTerm",
    "UndeclaredParameter",
    "rat",
]
