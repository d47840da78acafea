"""Quiver representations over GF(p) and the homological toolkit on them."""
from .algebra import (
    Arrow,
    PathAlgebra,
    ProjectiveData,
    Quiver,
    Representation,
    Violation,
    change_basis,
    direct_sum,
    power,
    projective,
    projective_data,
    random_invertible,
    simple,
    validate_representation,
    zero_rep,
)
from .decomposition import (
    LocalityCertificate,
    certificate,
    decompose,
    find_splitting,
    from_block,
    group_isomorphic,
    indecomposable_summands,
    is_indecomposable,
    is_isomorphic,
    locality_certificate,
    minimal_polynomial,
    to_block,
)
from .homology import (
    HomSpace,
    Presentation,
    ProjectiveCover,
    combine,
    compose,
    euler_form,
    ext1_basis,
    ext1_dim,
    hom_basis,
    hom_dim,
    hom_from_projective,
    identity_hom,
    is_hom,
    is_iso_hom,
    presentation,
    projective_cover,
    split_retraction,
    syzygy,
    zero_hom,
)
from .submodules import (
    Submodule,
    image_submodule,
    kernel_submodule,
    lift_from,
    preimage,
    push,
    quotient_rep,
    radical,
    restrict_to,
    sub_generated,
    sum_of_images,
    top,
    trace,
    whole,
    zero_submodule,
)
