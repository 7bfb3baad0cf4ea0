"""Exact harmonic quaternion polynomial fields in three variables.

Fields ``{alpha, u}`` with ``grad alpha = rot u`` and ``div u = 0``, their
axial decompositions, a divergence-correction pipeline, and the
multiplicative functionals on the coordinate fields.
"""

from .axial import (
    DEFAULT_SEED,
    AxisFamily,
    Decomposition,
    DecompositionError,
    axis_stream,
    decompose_full,
    decompose_quat,
    decompose_scalar,
    kernel_relation,
    predicted_span_dimension,
    random_family,
    span_dimension,
    star_field,
    star_potential,
)
from .characters import (
    Dirac,
    Frame,
    FunctionalValues,
    InconsistentValuesError,
    OutsideBallError,
    coordinate_fields,
    dirac,
    expand_linear,
    growth_demonstration,
    non_closure_witness,
    reconstruct_point,
)
from .density import (
    approximate,
    complete_to_quaternion,
    dirichlet_harmonic_2d,
    divergence_correction,
    poisson_particular_2d,
)
from .harmonic import (
    axial_lift,
    basis_axial_scalar,
    basis_harmonic_scalar,
    basis_quat_axial,
    basis_quat_harmonic,
    basis_quat_zero_scalar,
    coaxial_mul,
)
from .poly import (
    Axis,
    Polynomial3,
    QField,
    VectorPoly,
    div,
    grad,
    is_axial,
    is_harmonic_field,
    laplacian,
    rot,
)
from .quaternion import Quaternion, embed, hamilton_mul

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SEED",
    "AxisFamily",
    "Decomposition",
    "DecompositionError",
    "axis_stream",
    "decompose_full",
    "decompose_quat",
    "decompose_scalar",
    "kernel_relation",
    "predicted_span_dimension",
    "random_family",
    "span_dimension",
    "star_field",
    "star_potential",
    "Dirac",
    "Frame",
    "FunctionalValues",
    "InconsistentValuesError",
    "OutsideBallError",
    "coordinate_fields",
    "dirac",
    "expand_linear",
    "growth_demonstration",
    "non_closure_witness",
    "reconstruct_point",
    "approximate",
    "complete_to_quaternion",
    "dirichlet_harmonic_2d",
    "divergence_correction",
    "poisson_particular_2d",
    "axial_lift",
    "basis_axial_scalar",
    "basis_harmonic_scalar",
    "basis_quat_axial",
    "basis_quat_harmonic",
    "basis_quat_zero_scalar",
    "coaxial_mul",
    "Axis",
    "Polynomial3",
    "QField",
    "VectorPoly",
    "div",
    "grad",
    "is_axial",
    "is_harmonic_field",
    "laplacian",
    "rot",
    "Quaternion",
    "embed",
    "hamilton_mul",
]
