"""The two-parameter quaternion algebra.

Elements a0 + a1*i + a2*j + a3*k over the basis rules

    i*i = -alpha   j*j = -beta    k*k = -alpha*beta
    i*j =  k = -j*i    j*k = beta*i = -k*j    k*i = alpha*j = -i*k

alpha = beta = 1 gives Hamilton's quaternions, alpha = 1, beta = -1 the
split quaternions, beta = 0 the semi-quaternions.  The product is
associative and distributive but not commutative.  The norm
a0^2 + alpha*a1^2 + beta*a2^2 + alpha*beta*a3^2 is multiplicative; it can
be zero or negative off the Euclidean case, in which case the element has
no inverse (zero divisor) or no positive-norm normalization.

`multiply` and `left_matrix` are two independent routes to the product:
the component expressions of `multiply` are written in exactly the
floating-point order of `metric.mat_vec4(left_matrix(q), p)`, so the two
agree bit for bit.  The conformance suite leans on that as a cross-check,
so do not "simplify" the expression grouping in either place.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import NonInvertible, NonPositiveNorm
from .metric import Mat4, Signature, Vec3, _finite, inner

__all__ = [
    "GQuat",
    "multiply",
    "conjugate",
    "norm",
    "inverse",
    "normalize",
    "left_matrix",
    "scalar_product",
    "angle_between",
    "add",
    "sub",
    "scale",
    "from_scalar_vector",
    "pure",
]


@dataclass(frozen=True)
class GQuat:
    """A quaternion of the algebra, components in the basis {1, i, j, k}."""

    a0: float
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        object.__setattr__(self, "a0", _finite("a0", self.a0))
        object.__setattr__(self, "a1", _finite("a1", self.a1))
        object.__setattr__(self, "a2", _finite("a2", self.a2))
        object.__setattr__(self, "a3", _finite("a3", self.a3))

    def scalar_part(self) -> float:
        return self.a0

    def vector_part(self) -> Vec3:
        return Vec3(self.a1, self.a2, self.a3)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a3)


def multiply(sig: Signature, q: GQuat, p: GQuat) -> GQuat:
    """Product q*p under the basis rules above.

    Term order matches the row dot products of left_matrix(q) applied to p.
    """
    al, be = sig.alpha, sig.beta
    a0, a1, a2, a3 = q.a0, q.a1, q.a2, q.a3
    b0, b1, b2, b3 = p.a0, p.a1, p.a2, p.a3
    return GQuat(
        a0 * b0 - al * a1 * b1 - be * a2 * b2 - al * be * a3 * b3,
        a1 * b0 + a0 * b1 - be * a3 * b2 + be * a2 * b3,
        a2 * b0 + al * a3 * b1 + a0 * b2 - al * a1 * b3,
        a3 * b0 - a2 * b1 + a1 * b2 + a0 * b3,
    )


def conjugate(q: GQuat) -> GQuat:
    """Scalar part kept, vector part negated."""
    return GQuat(q.a0, -q.a1, -q.a2, -q.a3)


def norm(sig: Signature, q: GQuat) -> float:
    """a0^2 + alpha*a1^2 + beta*a2^2 + alpha*beta*a3^2 (may be <= 0)."""
    al, be = sig.alpha, sig.beta
    return (
        q.a0 * q.a0
        + al * (q.a1 * q.a1)
        + be * (q.a2 * q.a2)
        + al * be * (q.a3 * q.a3)
    )


def inverse(sig: Signature, q: GQuat) -> GQuat:
    """conj(q)/norm(q); raises NonInvertible when the norm vanishes."""
    n = norm(sig, q)
    if n == 0.0 or abs(n) < 1e-300:
        raise NonInvertible(f"norm is {n}; zero divisor or zero quaternion")
    return GQuat(q.a0 / n, -q.a1 / n, -q.a2 / n, -q.a3 / n)


def normalize(sig: Signature, q: GQuat) -> GQuat:
    """q / sqrt(norm(q)); defined only for positive norm."""
    n = norm(sig, q)
    if n <= 0.0:
        raise NonPositiveNorm(f"norm is {n}; only positive-norm elements normalize")
    s = math.sqrt(n)
    return GQuat(q.a0 / s, q.a1 / s, q.a2 / s, q.a3 / s)


def left_matrix(sig: Signature, q: GQuat) -> Mat4:
    """The 4x4 matrix L with L @ (b0,b1,b2,b3) = multiply(sig, q, p)."""
    al, be = sig.alpha, sig.beta
    a0, a1, a2, a3 = q.a0, q.a1, q.a2, q.a3
    return Mat4(
        (a0, -al * a1, -be * a2, -al * be * a3,
         a1, a0, -be * a3, be * a2,
         a2, al * a3, a0, -al * a1,
         a3, -a2, a1, a0)
    )


def scalar_product(sig: Signature, q: GQuat, p: GQuat) -> float:
    """a0*b0 + <V_q, V_p>; equals the scalar part of q * conj(p)."""
    return q.a0 * p.a0 + inner(sig, q.vector_part(), p.vector_part())


def angle_between(sig: Signature, q: GQuat, p: GQuat) -> float:
    """Angle with cos = scalar_product / (sqrt(N_q) * sqrt(N_p)), in radians.

    Both norms must be positive.  The cosine is clamped to [-1, 1] before
    acos; a clamp larger than 1e-9 (possible in mixed signature, where the
    Cauchy-Schwarz bound fails) emits a RuntimeWarning instead of raising.
    """
    nq = norm(sig, q)
    np_ = norm(sig, p)
    if nq <= 0.0 or np_ <= 0.0:
        raise NonPositiveNorm(f"norms are {nq} and {np_}; both must be positive")
    c = scalar_product(sig, q, p) / (math.sqrt(nq) * math.sqrt(np_))
    clamped = min(1.0, max(-1.0, c))
    if abs(c - clamped) > 1e-9:
        warnings.warn(
            f"cosine {c} clamped to {clamped}; angle is outside the"
            " Cauchy-Schwarz range for this signature",
            RuntimeWarning,
            stacklevel=2,
        )
    return math.acos(clamped)


def add(q: GQuat, p: GQuat) -> GQuat:
    return GQuat(q.a0 + p.a0, q.a1 + p.a1, q.a2 + p.a2, q.a3 + p.a3)


def sub(q: GQuat, p: GQuat) -> GQuat:
    return GQuat(q.a0 - p.a0, q.a1 - p.a1, q.a2 - p.a2, q.a3 - p.a3)


def scale(c: float, q: GQuat) -> GQuat:
    return GQuat(c * q.a0, c * q.a1, c * q.a2, c * q.a3)


def from_scalar_vector(s: float, v: Vec3) -> GQuat:
    return GQuat(s, v.x1, v.x2, v.x3)


def pure(v: Vec3) -> GQuat:
    """Embed a vector as a quaternion with zero scalar part."""
    return GQuat(0.0, v.x1, v.x2, v.x3)
