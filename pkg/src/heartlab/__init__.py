"""Exact combinatorics of affine ADE root systems and stability normal forms."""

from .cartan import (
    CartanData,
    ConfigurationError,
    DynkinType,
    alpha_J,
    build_cartan,
    connected_components,
    finite_roots,
    highest_root,
    positive_finite_roots,
    sub_highest_coeffs,
)
from .lattices import (
    Coweight,
    FiniteCoweight,
    Root,
    RootClass,
    canonical_pairing,
    cartan_pairing,
    classify_root,
    class_of_dim_vector,
    coweight,
    delta,
    embed_finite_coweight,
    finite_coroot,
    finite_coweight,
    finite_fundamental_coweight,
    fundamental_coweight,
    is_piJ_ample,
    rho_check,
    simple_class,
    skyscraper_class,
)
from .weyl import (
    ExtendedWeylElement,
    NotInWeylGroup,
    WeylElement,
    dominant_decomposition,
    dual_action,
    extended_w0,
    from_word,
    identity,
    inversion_count,
    length,
    longest_element,
    reduced_word,
    reflection_in_root,
    shear,
    shear_dual,
    simple_reflection,
    weyl_group_order,
    wJ_generators,
)
from .chambers import (
    HeartDescriptor,
    check_roundtrip,
    in_chamber,
    locate_heart_cone,
    normalize_to_DJ,
    normalize_to_dominant,
)
from .stability import (
    ArcIndex,
    CentralCharge,
    NormalizationResult,
    arc_direction,
    dim_of_class,
    in_half_plane,
    in_hreg,
    is_stability_function,
    normalize_stability,
    slope,
    stability_generator_test,
    t_index,
    theta_zero,
    verify_slicing,
)
from .preproj import (
    HNFiltration,
    Interval,
    Rep,
    RepError,
    arrows_of,
    hn_filtration,
    is_semistable,
    simple_rep,
    stratum_membership,
    submodule_dim_vectors,
    submodules,
    validate,
)
from .elliptic import (
    LoopElement,
    SignAssignment,
    UnsupportedType,
    bracket,
    check_classical_relations,
    grading,
    is_homogeneous,
    psi_generator,
)
from .borel import (
    AffineRealRoot,
    CharacterTable,
    character_n_ell_J,
    check_chain_and_union,
    in_Delta_J,
    in_Delta_J_k,
    pbw_character,
    positivity_axioms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
