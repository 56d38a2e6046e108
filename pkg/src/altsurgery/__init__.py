"""Hyperbolicity certificates for Dehn surgery on alternating knots.

The package reads knot diagrams (PD, Gauss or DT codes), finds their twist
regions, applies a length criterion to the surgery slope, classifies
diagrams with few twist regions, and combines these into a verdict with an
auditable certificate.
"""

from .census import BoxFill, Lemma2Report, enumerate_fat_graphs, substitute, verify_lemma2
from .classify import (
    ContinuedFraction,
    KnotClass,
    MontesinosForm,
    TwoBridgeFraction,
    classify_small_twist_diagram,
    classify_two_bridge,
    eval_continued_fraction,
    is_alternating_montesinos,
    is_delman_exception,
    montesinos_normalize,
)
from .diagram import DiagramCode, PlanarDiagram, faces, from_dt, from_gauss, is_alternating, is_connected_prime, parse
from .errors import (
    AltSurgeryError,
    ClassificationGap,
    DiagramError,
    InternalInvariantError,
    MalformedCode,
    MeridianSlope,
    MultiComponent,
    NonRealizable,
    NotAlternating,
    NotPrime,
    SlopeSyntaxError,
    TwistTooLarge,
)
from .fatgraph import FatGraph
from .gate import Slope, certify_by_length, length_lower_bound
from .twist import TwistRegion, reduced_twist_graph, twist_number, twist_regions
from .verdict import (
    CertificateStep,
    SurfaceBoundData,
    Verdict,
    certify_surgery,
    exceptional_count_bound,
    max_twist_crossing,
)

__version__ = "0.1.0"
SCHEMA = "altsurgery/1"

__all__ = [
    "AltSurgeryError",
    "BoxFill",
    "CertificateStep",
    "ClassificationGap",
    "ContinuedFraction",
    "DiagramCode",
    "DiagramError",
    "FatGraph",
    "InternalInvariantError",
    "KnotClass",
    "Lemma2Report",
    "MalformedCode",
    "MeridianSlope",
    "MontesinosForm",
    "MultiComponent",
    "NonRealizable",
    "NotAlternating",
    "NotPrime",
    "PlanarDiagram",
    "SCHEMA",
    "Slope",
    "SlopeSyntaxError",
    "SurfaceBoundData",
    "TwistRegion",
    "TwistTooLarge",
    "TwoBridgeFraction",
    "Verdict",
    "certify_by_length",
    "certify_surgery",
    "classify_small_twist_diagram",
    "classify_two_bridge",
    "enumerate_fat_graphs",
    "eval_continued_fraction",
    "exceptional_count_bound",
    "faces",
    "from_dt",
    "from_gauss",
    "is_alternating",
    "is_alternating_montesinos",
    "is_connected_prime",
    "is_delman_exception",
    "length_lower_bound",
    "max_twist_crossing",
    "montesinos_normalize",
    "parse",
    "reduced_twist_graph",
    "substitute",
    "twist_number",
    "twist_regions",
    "verify_lemma2",
]
