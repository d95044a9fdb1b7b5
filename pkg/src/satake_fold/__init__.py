"""Exact combinatorics of folded root data and twisted characters.

The package computes three interlocking things, all in exact integer or
rational arithmetic: folded root data of pinned diagram automorphisms,
weight multiplicities through polytope-datum counting, and twisted-character
traces, verified against the folded-group multiplicities.
"""

from .errors import (
    EnumerationCapError,
    InputError,
    InvalidDatumError,
    NonSimplyLacedError,
    SatakeFoldError,
    UnsupportedOrbitError,
)
from .root_datum import (
    BUILTIN_DATA,
    Coweight,
    RationalCoweight,
    RootDatum,
    Weight,
    builtin_datum,
    datum_from_json_dict,
    load_datum,
    pairing,
    validate,
)
from .weyl import (
    WeylElement,
    WeylGroup,
    braid_neighbors,
    group_elements,
    longest_element,
    reduced_words,
    weyl_group,
)
from .folding import (
    BUILTIN_SIGMAS,
    FoldedDatum,
    FoldedWeyl,
    OrbitData,
    OrbitType,
    PinnedAut,
    SigmaWord,
    builtin_sigma,
    expansion_words,
    fold,
    folded_weyl,
    invariant_dominant_coweights,
    load_sigma,
    orbit_analysis,
    rho_check,
    sigma_compatible_word,
    sigma_from_json_dict,
    validate_pinned_aut,
)
from .mv_calculus import (
    GGMSDatum,
    LusztigDatum,
    MVCalculus,
    PathVertices,
    braid_transition,
    coweight,
    enumerate_data,
    fold_lusztig_datum,
    ggms_datum,
    is_mv,
    is_sigma_invariant,
    kostant,
    mv_calculus,
    path_vertices,
    transport,
)
from .characters import (
    CharPoly,
    character,
    freudenthal_multiplicity,
    mv_character,
    weyl_dimension,
)
from .twining_verifier import (
    OrbitPair,
    TwiningReport,
    TwiningRow,
    double_fold,
    double_fold_roots,
    dual_datum,
    dual_sigma,
    folded_multiplicity,
    twining_character,
    twining_trace,
    verify_jantzen,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_DATA",
    "BUILTIN_SIGMAS",
    "CharPoly",
    "Coweight",
    "EnumerationCapError",
    "FoldedDatum",
    "FoldedWeyl",
    "GGMSDatum",
    "InputError",
    "InvalidDatumError",
    "LusztigDatum",
    "MVCalculus",
    "NonSimplyLacedError",
    "OrbitData",
    "OrbitPair",
    "OrbitType",
    "PathVertices",
    "PinnedAut",
    "RationalCoweight",
    "RootDatum",
    "SatakeFoldError",
    "SigmaWord",
    "TwiningReport",
    "TwiningRow",
    "UnsupportedOrbitError",
    "Weight",
    "WeylElement",
    "WeylGroup",
    "braid_neighbors",
    "braid_transition",
    "builtin_datum",
    "builtin_sigma",
    "character",
    "coweight",
    "datum_from_json_dict",
    "double_fold",
    "double_fold_roots",
    "dual_datum",
    "dual_sigma",
    "enumerate_data",
    "expansion_words",
    "fold",
    "fold_lusztig_datum",
    "folded_multiplicity",
    "folded_weyl",
    "freudenthal_multiplicity",
    "ggms_datum",
    "group_elements",
    "invariant_dominant_coweights",
    "is_mv",
    "is_sigma_invariant",
    "kostant",
    "load_datum",
    "load_sigma",
    "longest_element",
    "mv_calculus",
    "mv_character",
    "orbit_analysis",
    "pairing",
    "path_vertices",
    "reduced_words",
    "rho_check",
    "sigma_compatible_word",
    "sigma_from_json_dict",
    "transport",
    "twining_character",
    "twining_trace",
    "validate",
    "validate_pinned_aut",
    "verify_jantzen",
    "weyl_dimension",
    "weyl_group",
]
