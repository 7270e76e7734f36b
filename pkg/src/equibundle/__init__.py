"""equibundle: exact classification of group-equivariant vector bundles on P^1."""

from .cyclotomic import CycNum, cyc_add, cyc_conj, cyc_embed, cyc_inv, cyc_mul
from .ratfun import (
    Poly,
    RatFun,
    RatMat,
    laurent_is_unit,
    poly_gcd,
    ratmat_compose,
    ratmat_det,
    ratmat_inv,
    ratmat_mul,
)
from .matgroup import (
    CharacterVector,
    FiniteMatrixGroup,
    Representation,
    SL2Elem,
    catalog,
    character,
    conjugacy_classes,
    generate_group,
    module_isomorphic,
    reynolds,
)
from .moebius import AutomorphyFactor, MoebiusMap, act_point, natural_structure
from .bundle import (
    BirkhoffFactorization,
    HNFiltration,
    TransitionCocycle,
    birkhoff_factor,
    h0_dimension,
    hn_filtration,
    section_basis,
    splitting_type,
)
from .equivariant import (
    CanonicalEntry,
    CanonicalForm,
    EquivariantBundle,
    build_from_canonical,
    check_hn_invariance,
    classify,
    classify_with_certificates,
    equiv_isomorphic,
    equivariant_splitting,
    extract_module,
    validate_equivariance,
)
from .extensions import (
    PGLGroup,
    SplittingHom,
    extension_splits,
    odd_twist_valid,
    pgl_group,
    preimage_group,
)
from .sections import sections_module, transported_sections_module

__version__ = "0.1.0"

__all__ = [
    "CycNum", "cyc_add", "cyc_conj", "cyc_embed", "cyc_inv", "cyc_mul",
    "Poly", "RatFun", "RatMat", "laurent_is_unit", "poly_gcd",
    "ratmat_compose", "ratmat_det", "ratmat_inv", "ratmat_mul",
    "CharacterVector", "FiniteMatrixGroup", "Representation", "SL2Elem",
    "catalog", "character", "conjugacy_classes", "generate_group",
    "module_isomorphic", "reynolds",
    "AutomorphyFactor", "MoebiusMap", "act_point", "natural_structure",
    "BirkhoffFactorization", "HNFiltration", "TransitionCocycle",
    "birkhoff_factor", "h0_dimension", "hn_filtration", "section_basis",
    "splitting_type",
    "CanonicalEntry", "CanonicalForm", "EquivariantBundle",
    "build_from_canonical", "check_hn_invariance", "classify",
    "classify_with_certificates", "equiv_isomorphic", "equivariant_splitting",
    "extract_module", "validate_equivariance",
    "PGLGroup", "SplittingHom", "extension_splits", "odd_twist_valid",
    "pgl_group", "preimage_group",
    "sections_module", "transported_sections_module",
]
