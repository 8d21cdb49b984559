"""Two-parameter quaternion algebra and the rotations it induces on the
matching 3-space, with a built-in conformance harness.

The algebra is generated by i, j, k with i*i = -alpha, j*j = -beta,
k*k = -alpha*beta; the 3-space carries the inner product
diag(alpha, beta, alpha*beta).  Conjugation by an invertible quaternion is
an orientation-preserving isometry of that space; this package provides
the algebra operations, the rotation matrices and polar decompositions,
the quasi-orthogonality predicates, and a deterministic verification suite
that pins the closed forms to a brute-force conjugation oracle.
"""

from .algebra import (
    GQuat,
    add,
    angle_between,
    conjugate,
    from_scalar_vector,
    inverse,
    left_matrix,
    multiply,
    norm,
    normalize,
    pure,
    scalar_product,
    scale,
    sub,
)
from .conformance import (
    FIXTURE_NAMES,
    PROPERTY_NAMES,
    FixtureResult,
    PropertyResult,
    SplitMix64,
    SuiteConfig,
    SuiteReport,
    erratum_report,
    run_suite,
    vector_angle,
    wittenburg_matrix,
)
from .errors import (
    AlgebraError,
    DegenerateSignature,
    InvalidAxis,
    NoPolarForm,
    NonInvertible,
    NonPositiveNorm,
    NotUnit,
    NullVectorPart,
    UnsupportedSignature,
)
from .metric import (
    EUCLIDEAN,
    SPLIT,
    Mat3,
    Mat4,
    OrthogonalityReport,
    Signature,
    Vec3,
    cross,
    det3,
    epsilon_matrix,
    inner,
    is_generalized_skew,
    is_quasi_orthogonal,
    mat_mul,
    mat_vec,
    mat_vec4,
    transpose,
)
from .rotation import (
    ELLIPTIC,
    HYPERBOLIC,
    IDENTITY,
    PolarForm,
    axis_skew_matrix,
    compose,
    conjugation_map,
    from_axis_angle,
    polar_form,
    rodrigues_matrix,
    rotation_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # metric
    "Signature", "Vec3", "Mat3", "Mat4", "OrthogonalityReport",
    "EUCLIDEAN", "SPLIT",
    "inner", "epsilon_matrix", "cross",
    "is_quasi_orthogonal", "is_generalized_skew",
    "mat_mul", "mat_vec", "mat_vec4", "transpose", "det3",
    # algebra
    "GQuat", "multiply", "conjugate", "norm", "inverse", "normalize",
    "left_matrix", "scalar_product", "angle_between",
    "add", "sub", "scale", "from_scalar_vector", "pure",
    # rotation
    "PolarForm", "IDENTITY", "ELLIPTIC", "HYPERBOLIC",
    "conjugation_map", "rotation_matrix", "polar_form", "from_axis_angle",
    "axis_skew_matrix", "rodrigues_matrix", "compose",
    # conformance
    "SplitMix64", "SuiteConfig", "SuiteReport", "PropertyResult",
    "FixtureResult", "run_suite", "erratum_report", "wittenburg_matrix",
    "vector_angle", "PROPERTY_NAMES", "FIXTURE_NAMES",
    # errors
    "AlgebraError", "DegenerateSignature", "NonInvertible",
    "NonPositiveNorm", "NotUnit", "NullVectorPart", "NoPolarForm",
    "InvalidAxis", "UnsupportedSignature",
]
