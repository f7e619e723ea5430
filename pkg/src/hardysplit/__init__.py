"""Hardy-space splitting of boundary data on planar Jordan curves.

Boundary data ``u`` is split as ``u = h + H`` with ``h`` the boundary values
of a function holomorphic inside the curve and ``H`` of one holomorphic
outside and vanishing at infinity.  The split is computed with the boundary
Cauchy transform and checked against closed-form and brute-force oracles.
"""

from .cauchy import (
    BoundaryFunction,
    NystromOperator,
    cauchy_boundary,
    cauchy_derivative_density,
    cauchy_exterior,
    cauchy_interior,
    cauchy_interior_derivative,
    cauchy_matrix,
    plemelj_jump,
    sample,
    sample_t,
    tangential_derivative,
)
from .decomp import (
    HardyDecomposition,
    antiderivative_boundary,
    antiderivative_interior,
    decompose,
    hardy_norm_offset,
    holder_exponent_estimate,
    modulus_of_continuity_check,
    verify_exterior_vanishing,
)
from .dirichlet import (
    HarmonicField,
    dirichlet_disc,
    dirichlet_disc_real,
    harmonic_extension_general,
    mean_value,
    poisson_extension,
    poisson_kernel,
    poisson_field,
)
from .exceptions import *  # noqa: F401,F403
from .geometry import (
    CurveSpec,
    EvaluationGrid,
    JordanCurve,
    build_curve,
    classify_points,
    offset_curve,
)
from .oracle import FourierData, RationalData, brute_pv, fourier_split, rational_split
from .szego import (
    KerzmanSteinOperator,
    SzegoKernels,
    SzegoProjector,
    build_ks_operator,
    pseudolocal_experiment,
    szego_kernels,
    szego_project,
)

__version__ = "0.1.0"
