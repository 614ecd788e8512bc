"""Exact invariant bookkeeping for closed smooth 4-manifolds.

Descriptors carry Euler characteristic, signature, b1, a fundamental-group
tag, the w2 type, simplicial volume, volume entropy and a set of
certificates.  Constructions (connected sum, torus surgery, blow-up) update
all of them; predicates return tri-state verdicts with exact margins in
``Q + Q*pi^2 + Q/pi^2``.
"""

__version__ = "0.1.0"

from .admissibility import BFVerdict, check_bf
from .arith import (
    DEFAULT_PI2,
    UNDECIDABLE,
    PiQuantity,
    PiSquareInterval,
    RadicalBound,
    certified_pi2_interval,
    pq_sign,
    pq_to_decimal,
    use_pi2_interval,
)
from .blocks import make_block, parse_block
from .errors import FourfoldError
from .families import Witness, WitnessQuery, find_witnesses, kappa_constant
from .geography import HomeoModel, abbkp_status, classify_homeo, geography_scan, theoremB_build
from .lemmas import lemma_check
from .manifold import (
    Bounded,
    CertKind,
    Certificate,
    Known,
    ManifoldDescriptor,
    Unknown,
    W2,
    derive_betti,
    validate_descriptor,
)
from .obstructions import (
    curvature_bounds,
    ht_report,
    min_scalar_bound,
    monopole_family,
    obstructed_sum,
    property_check,
    ricci_flow_obstruction,
)
from .surgery import blow_up, connected_sum, torus_surgery
from .verdict import Status, Verdict

__all__ = [
    "BFVerdict", "Bounded", "CertKind", "Certificate", "DEFAULT_PI2", "FourfoldError", "HomeoModel", "Known",
    "ManifoldDescriptor", "PiQuantity", "PiSquareInterval", "RadicalBound", "Status", "UNDECIDABLE", "Unknown",
    "Verdict", "W2", "Witness", "WitnessQuery", "abbkp_status", "blow_up", "certified_pi2_interval", "check_bf",
    "classify_homeo", "connected_sum", "curvature_bounds", "derive_betti", "find_witnesses", "geography_scan",
    "ht_report", "kappa_constant", "lemma_check", "make_block", "min_scalar_bound", "monopole_family",
    "obstructed_sum", "parse_block", "pq_sign", "pq_to_decimal", "property_check", "ricci_flow_obstruction",
    "theoremB_build", "torus_surgery", "use_pi2_interval", "validate_descriptor",
]
