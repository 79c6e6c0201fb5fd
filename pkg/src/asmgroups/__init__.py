"""Groups of singular alternating sign matrices: exact constructions,
order detection and exhaustive classification for small sizes."""

from .asm import (
    diagonal_extension,
    first_violation,
    is_asm,
    is_reduced_form,
    negative_entry_count,
    reduced_form,
)
from .constructions import (
    FramedAsm,
    FrameMeta,
    TBlock,
    build_E_k,
    build_frame,
    build_symmetric_group_generators,
    build_symmetric_group_low_rank,
    expand_center,
    kronecker_group,
    shares_identity,
    t_block_decomposition,
    theta_embed,
)
from .enumeration import (
    classify,
    enumerate_asms,
    group_atlas,
    idempotent_census,
    square_root_census,
)
from .matrix import IntMatrix, Permutation, kronecker, multiply, permutation_matrix, power, rank
from .order import (
    SingularGroup,
    asm_cyclic_order,
    closure,
    detect_order,
    fingerprint,
    idempotent_orbit,
    is_idempotent,
    lift_to_linear_group,
    nullity,
    same_columnspace,
    same_rowspace,
)

__version__ = "0.1.0"

__all__ = [
    "FrameMeta",
    "FramedAsm",
    "IntMatrix",
    "Permutation",
    "SingularGroup",
    "TBlock",
    "asm_cyclic_order",
    "build_E_k",
    "build_frame",
    "build_symmetric_group_generators",
    "build_symmetric_group_low_rank",
    "classify",
    "closure",
    "detect_order",
    "diagonal_extension",
    "enumerate_asms",
    "expand_center",
    "fingerprint",
    "first_violation",
    "group_atlas",
    "idempotent_census",
    "idempotent_orbit",
    "is_asm",
    "is_idempotent",
    "is_reduced_form",
    "kronecker",
    "kronecker_group",
    "lift_to_linear_group",
    "multiply",
    "negative_entry_count",
    "nullity",
    "permutation_matrix",
    "power",
    "rank",
    "reduced_form",
    "same_columnspace",
    "same_rowspace",
    "shares_identity",
    "square_root_census",
    "t_block_decomposition",
    "theta_embed",
]
