"""Conceptual spaces in complex-phasor hypervectors.

Concept prototypes live as points in named property domains; fractional
power encoding embeds each point into a single high-dimensional phasor
hypervector whose similarity structure is a radial-basis kernel. Analogies
are solved with hypervector algebra (the vector-offset parallelogram for
category analogies, a salient-domain search for property analogies) and
decoded back to coordinates by a resonator network running against
per-dimension codebooks, with an exhaustive decoder as the oracle.
"""

from .analogy import (
    AnalogyAnswer,
    parallelogram_find,
    salient_domain,
    solve,
    solve_category,
    solve_property,
)
from .errors import (
    CategoryMismatchError,
    ConvergenceError,
    DimensionMismatchError,
    DuplicateLabelError,
    HyperspaceError,
    MissingProjectionError,
    NotFoundError,
    OrthogonalityError,
    StoreError,
    StoreExistsError,
    StoreFormatError,
    StoreVersionError,
    ValidationError,
)
from .fixtures import build_fixture_store
from .hdc import (
    DEFAULT_DIMENSION,
    Hypervector,
    PhaseDistributionSpec,
    UnitaryHypervector,
    bind,
    bind_all,
    fpe,
    identity,
    inverse,
    normalize_phases,
    sample_gaussian,
    similarity,
    superpose,
    unbind,
    wrap_phases,
)
from .resonator import (
    BruteForceDecoder,
    Codebook,
    DecodeResult,
    ResonatorConfig,
    brute_force_decode,
    grid_snap,
    make_codebooks,
    resonator_decode,
)
from .spaces import (
    ColorHSB,
    DomainSpec,
    Prototype,
    clamp_to_range,
    encode,
    hsb_to_point,
    kernel_similarity,
    make_domain,
    point_to_hsb,
)
from .store import ConceptRecord, ConceptStore, load_store, save_store

__version__ = "0.1.0"

__all__ = [
    "AnalogyAnswer",
    "BruteForceDecoder",
    "CategoryMismatchError",
    "Codebook",
    "ColorHSB",
    "ConceptRecord",
    "ConceptStore",
    "ConvergenceError",
    "DEFAULT_DIMENSION",
    "DecodeResult",
    "DimensionMismatchError",
    "DomainSpec",
    "DuplicateLabelError",
    "Hypervector",
    "HyperspaceError",
    "MissingProjectionError",
    "NotFoundError",
    "OrthogonalityError",
    "PhaseDistributionSpec",
    "Prototype",
    "ResonatorConfig",
    "StoreError",
    "StoreExistsError",
    "StoreFormatError",
    "StoreVersionError",
    "UnitaryHypervector",
    "ValidationError",
    "bind",
    "bind_all",
    "brute_force_decode",
    "build_fixture_store",
    "clamp_to_range",
    "encode",
    "fpe",
    "grid_snap",
    "hsb_to_point",
    "identity",
    "inverse",
    "kernel_similarity",
    "load_store",
    "make_codebooks",
    "make_domain",
    "normalize_phases",
    "parallelogram_find",
    "point_to_hsb",
    "resonator_decode",
    "salient_domain",
    "sample_gaussian",
    "save_store",
    "similarity",
    "solve",
    "solve_category",
    "solve_property",
    "superpose",
    "unbind",
    "wrap_phases",
]
