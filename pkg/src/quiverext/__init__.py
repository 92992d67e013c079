"""Hom and Ext for representations of quivers with relations over exact fields."""

from .adhm import ADHMInstance, check_adhm, euler_char, ext_adhm, serre_check
from .algebra import (
    AlgebraModel,
    GradedSlice,
    Quiver,
    RelationSet,
    Twist,
    associated_graded,
    build_algebra,
    enumerate_paths,
    expand_twist,
    ideal_graded_piece,
)
from .ext import (
    CoresolutionSegment,
    ExtResult,
    connecting_matrix,
    coresolution,
    ext_dims,
    ext_hereditary,
    spectral_page,
    verify_coresolution,
)
from .linalg import QQ, FieldSpec, Mat, Subspace, cohomology, kernel_basis, quotient, rank, solve
from .oracle import ext_dims_oracle, projective_cover
from .representation import (
    ModuleForm,
    Representation,
    check_relations,
    gamma_matrix,
    hom_basis,
    random_module,
    to_module_form,
    to_representation,
)

__version__ = "0.1.0"

__all__ = [
    "ADHMInstance",
    "check_adhm",
    "euler_char",
    "ext_adhm",
    "serre_check",
    "AlgebraModel",
    "GradedSlice",
    "Quiver",
    "RelationSet",
    "Twist",
    "associated_graded",
    "build_algebra",
    "enumerate_paths",
    "expand_twist",
    "ideal_graded_piece",
    "CoresolutionSegment",
    "ExtResult",
    "connecting_matrix",
    "coresolution",
    "ext_dims",
    "ext_hereditary",
    "spectral_page",
    "verify_coresolution",
    "QQ",
    "FieldSpec",
    "Mat",
    "Subspace",
    "cohomology",
    "kernel_basis",
    "quotient",
    "rank",
    "solve",
    "ext_dims_oracle",
    "projective_cover",
    "ModuleForm",
    "Representation",
    "check_relations",
    "gamma_matrix",
    "hom_basis",
    "random_module",
    "to_module_form",
    "to_representation",
]
