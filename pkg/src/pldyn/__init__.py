"""Certified analysis toolkit for continuous piecewise-linear interval maps.

Exact rational arithmetic end to end: evaluation, composition, equation
solving, constructive turbulence/trap witnesses with re-checkable traces,
periodic-point towers, chain-recurrence graphs, and heuristic chaos
detectors, all behind a small CLI.
"""

from .certificates import (
    DoubleTurbulenceCertificate,
    TrapCertificate,
    TrapInterval,
    TurbulencePair,
)
from .certify import (
    Itinerary,
    VerificationResult,
    itinerary,
    verify_double,
    verify_trap,
    verify_trap_interval,
    verify_turbulence,
)
from .plmap import (
    DomainError,
    PLMap,
    RatInterval,
    Rational,
    SolutionSet,
    as_rational,
)
from .witness import (
    ConstructionError,
    DegenerateTwoCycleError,
    ReturnHypothesis,
    ReturnHypothesisFound,
    OrbitClassification,
    TowerPoint,
    WitnessTrace,
    build_witness,
    check_return_hypothesis,
    classify_orbit,
    periodic_tower,
    level_one_witness,
)

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "DegenerateTwoCycleError",
    "DomainError",
    "DoubleTurbulenceCertificate",
    "ReturnHypothesis",
    "ReturnHypothesisFound",
    "Itinerary",
    "OrbitClassification",
    "PLMap",
    "RatInterval",
    "Rational",
    "SolutionSet",
    "TowerPoint",
    "TrapCertificate",
    "TrapInterval",
    "TurbulencePair",
    "VerificationResult",
    "WitnessTrace",
    "as_rational",
    "build_witness",
    "check_return_hypothesis",
    "classify_orbit",
    "itinerary",
    "periodic_tower",
    "level_one_witness",
    "verify_double",
    "verify_trap",
    "verify_trap_interval",
    "verify_turbulence",
]
