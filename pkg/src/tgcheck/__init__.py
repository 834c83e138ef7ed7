"""Decide tg-hyperbolicity of alternating links in thickened surfaces with boundary."""

from .conditions import (
    CurveWitness,
    Passage,
    check_condition_ii,
    check_condition_iii,
    check_condition_iv,
    verify_curve_witness,
)
from .diagram import Diagram, DiagramError, SKDSyntaxError, parse_diagram, serialize_diagram, validate_structure
from .primeness import check_reduced, check_weakly_prime, cut_and_classify
from .regions import RegionKind, trace_regions
from .verdict import (
    AmbientAssertions,
    Status,
    Verdict,
    find_hyperbolic_staking,
    stake,
    theorem_ambient_verdict,
    theorem_thickened_verdict,
)

__version__ = "0.1.0"
