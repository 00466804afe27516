"""Witness-carrying checkers for continuity, local isomorphisms and
(pseudo)covering maps between finite digital images in Z^n."""

from digicov.lattice import (
    AdjacencyKind,
    DigitalImage,
    DomainError,
    Neighborhood,
    adjacent,
    components,
    is_connected,
    k_value,
    neighborhood,
)
from digicov.morphism import (
    DigitalMap,
    Verdict,
    compose,
    is_continuous,
    is_isomorphism,
    is_local_isomorphism,
    is_wl_isomorphism,
    restrict,
)
from digicov.covering import (
    FiberDecomposition,
    PredicateReport,
    check_digital_covering,
    check_inclusion_39,
    check_original_pseudocovering,
    check_revised_pseudocovering,
    check_wl_surjection,
    classify,
    fiber_decomposition,
)
from digicov.catalog import (
    SimpleClosedCurve,
    cyclic_cover,
    interval_image,
    scc_catalog,
    validate_scc,
    wrap_map,
)

__all__ = [
    "AdjacencyKind",
    "DigitalImage",
    "DigitalMap",
    "DomainError",
    "FiberDecomposition",
    "Neighborhood",
    "PredicateReport",
    "SimpleClosedCurve",
    "Verdict",
    "adjacent",
    "check_digital_covering",
    "check_inclusion_39",
    "check_original_pseudocovering",
    "check_revised_pseudocovering",
    "check_wl_surjection",
    "classify",
    "components",
    "compose",
    "cyclic_cover",
    "fiber_decomposition",
    "interval_image",
    "is_connected",
    "is_continuous",
    "is_isomorphism",
    "is_local_isomorphism",
    "is_wl_isomorphism",
    "k_value",
    "neighborhood",
    "restrict",
    "scc_catalog",
    "validate_scc",
    "wrap_map",
]
