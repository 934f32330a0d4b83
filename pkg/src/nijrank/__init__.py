"""Exact rank of the Nijenhuis tensor for almost complex structures on Lie algebras."""

from .acs import (
    CoFrame,
    MuBarMatrix,
    RealJ,
    SingularDeformation,
    acs_from_real_j,
    coordinate_acs,
    deform,
    deformation_det,
    mu_bar,
    nijenhuis_oracle,
    nijenhuis_rank,
    random_acs,
    rank,
    rank_hook,
    real_j,
    relative_deformation,
    standard_acs,
)
from .exterior import (
    FrameMatrix,
    JacobiError,
    KForm,
    LieAlgebra,
    bidegree_project,
    change_frame,
    check_jacobi,
    differential,
    from_complex_frame,
    wedge,
)
from .gaussian import GaussianRational, gq
from .salamon import SalamonSyntaxError, format_salamon, load_algebra, parse_salamon

__version__ = "0.1.0"

__all__ = [
    "CoFrame",
    "FrameMatrix",
    "GaussianRational",
    "JacobiError",
    "KForm",
    "LieAlgebra",
    "MuBarMatrix",
    "RealJ",
    "SalamonSyntaxError",
    "SingularDeformation",
    "acs_from_real_j",
    "bidegree_project",
    "change_frame",
    "check_jacobi",
    "coordinate_acs",
    "deform",
    "deformation_det",
    "differential",
    "format_salamon",
    "from_complex_frame",
    "gq",
    "load_algebra",
    "mu_bar",
    "nijenhuis_oracle",
    "nijenhuis_rank",
    "parse_salamon",
    "random_acs",
    "rank",
    "rank_hook",
    "real_j",
    "relative_deformation",
    "standard_acs",
    "wedge",
]
