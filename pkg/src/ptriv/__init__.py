"""Exact (co)homology of stunted projective spaces and P-triviality verdicts."""

from .chain_complex import (
    ChainComplex,
    Coefficients,
    GradedGroup,
    PresentedMap,
    bockstein_integral,
    coefficient_reduction,
    cohomology,
    homology,
    suspend,
    tensor,
    validate,
    wedge,
)
from .classifier import Status, Verdict, certify, classify, phi
from .exact_linalg import FinAbGroup, IntegerMatrix, cokernel_group, smith_normal_form
from .spaces import build_complex, format_spec, parse_spec

__version__ = "0.1.0"
