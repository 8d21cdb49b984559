"""Rotations of the parametrized 3-space induced by quaternion conjugation.

An invertible quaternion q acts on a vector w (embedded as a pure
quaternion) through

    w  ->  q * w * conj(q) / norm(q),

which is linear, preserves the inner product, and fixes orientation.
`conjugation_map` evaluates that action literally with two quaternion
products; it is the ground truth in this package.  `rotation_matrix` is
the closed quadratic form of the same map (columns are the images of the
basis vectors) and is held to the conjugation result by the conformance
suite; two of its entries are easy to get wrong, see the errata ledger.

Unit quaternions with non-null vector part decompose into a polar form:

    elliptic     q = cos(phi/2)   + sin(phi/2)   * axis,  <axis, axis> = +1
    hyperbolic   q = cosh(gam/2)  + sinh(gam/2)  * axis,  <axis, axis> = -1

with the half-angle sine (resp. hyperbolic sine) kept nonnegative and the
axis carrying orientation, so the round trip through `from_axis_angle` is
free of sign ambiguity.  The matching matrix forms

    elliptic     I + sin(phi)*S  + (1 - cos(phi))*S^2    (alpha, beta > 0)
    hyperbolic   I + sinh(gam)*S + (cosh(gam) - 1)*S^2   (alpha > 0 > beta)

use the skew generator S of the axis and are produced by
`rodrigues_matrix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import GQuat, conjugate, multiply, norm, pure
from .errors import (
    InvalidAxis,
    NoPolarForm,
    NonInvertible,
    NotUnit,
    NullVectorPart,
    UnsupportedSignature,
)
from .metric import Mat3, Signature, Vec3, inner, mat_mul

__all__ = [
    "PolarForm",
    "IDENTITY",
    "ELLIPTIC",
    "HYPERBOLIC",
    "conjugation_map",
    "rotation_matrix",
    "polar_form",
    "from_axis_angle",
    "axis_skew_matrix",
    "rodrigues_matrix",
    "compose",
]

IDENTITY = "identity"
ELLIPTIC = "elliptic"
HYPERBOLIC = "hyperbolic"

_KINDS = (IDENTITY, ELLIPTIC, HYPERBOLIC)
_UNIT_TOL = 1e-9


@dataclass(frozen=True)
class PolarForm:
    """Axis-angle data of a unit quaternion; axis is None only for identity."""

    kind: str
    angle: float
    axis: Vec3 | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if not math.isfinite(float(self.angle)):
            raise ValueError(f"angle must be finite, got {self.angle!r}")
        object.__setattr__(self, "angle", float(self.angle))
        if (self.axis is None) != (self.kind == IDENTITY):
            raise ValueError("axis must be absent exactly for the identity kind")


def _nonzero_norm(sig: Signature, q: GQuat) -> float:
    n = norm(sig, q)
    if n == 0.0 or abs(n) < 1e-300:
        raise NonInvertible(f"norm is {n}; the conjugation action is undefined")
    return n


def conjugation_map(sig: Signature, q: GQuat, w: Vec3) -> Vec3:
    """Image of w under q * w * conj(q) / norm(q), via two quaternion products.

    The scalar part of the product vanishes algebraically; it is asserted
    to be at roundoff level before being dropped.
    """
    n = _nonzero_norm(sig, q)
    r = multiply(sig, multiply(sig, q, pure(w)), conjugate(q))
    qm = max(abs(q.a0), abs(q.a1), abs(q.a2), abs(q.a3))
    wm = max(abs(w.x1), abs(w.x2), abs(w.x3))
    scale = max(
        1.0,
        (1.0 + abs(sig.alpha)) * (1.0 + abs(sig.beta)) * qm * qm * max(1.0, wm),
    )
    assert abs(r.a0) <= 1e-12 * scale, (
        f"conjugation scalar part {r.a0} exceeds roundoff bound {1e-12 * scale}"
    )
    return Vec3(r.a1 / n, r.a2 / n, r.a3 / n)


def rotation_matrix(sig: Signature, q: GQuat) -> Mat3:
    """Closed form of the conjugation action; columns are the basis images.

    Entries are quadratic in the components and divided by the norm, so any
    q with nonzero norm is accepted and q and -q give the identical matrix.
    """
    n = _nonzero_norm(sig, q)
    al, be = sig.alpha, sig.beta
    a0, a1, a2, a3 = q.a0, q.a1, q.a2, q.a3
    return Mat3(
        (
            (a0 * a0 + al * (a1 * a1) - be * (a2 * a2) - al * be * (a3 * a3)) / n,
            2.0 * be * (a1 * a2 - a0 * a3) / n,
            2.0 * be * (al * (a1 * a3) + a0 * a2) / n,
            2.0 * al * (a1 * a2 + a0 * a3) / n,
            (a0 * a0 - al * (a1 * a1) + be * (a2 * a2) - al * be * (a3 * a3)) / n,
            2.0 * al * (be * (a2 * a3) - a0 * a1) / n,
            2.0 * (al * (a1 * a3) - a0 * a2) / n,
            2.0 * (a0 * a1 + be * (a2 * a3)) / n,
            (a0 * a0 - al * (a1 * a1) - be * (a2 * a2) + al * be * (a3 * a3)) / n,
        )
    )


def polar_form(sig: Signature, q: GQuat) -> PolarForm:
    """Decompose a unit quaternion into kind, angle and unit axis.

    Branch on n_v = <V_q, V_q>:

    * V_q = 0: identity (q = +-1).
    * n_v > 0: elliptic, angle 2*atan2(sqrt(n_v), a0) in (0, 2*pi), axis
      V_q/sqrt(n_v) with self inner product +1.
    * n_v < 0: hyperbolic, angle 2*asinh(sqrt(-n_v)) > 0, axis
      V_q/sqrt(-n_v) with self inner product -1; requires a0 > 0 (the
      decomposition has cosh >= 1, so for a0 < 0 only -q decomposes and
      NoPolarForm is raised).
    * n_v = 0 with V_q != 0: null direction, NullVectorPart (no branch of
      the decomposition covers it).
    """
    n = norm(sig, q)
    if abs(n - 1.0) > _UNIT_TOL:
        raise NotUnit(f"norm is {n}; polar form needs a unit quaternion")
    if q.a1 == 0.0 and q.a2 == 0.0 and q.a3 == 0.0:
        return PolarForm(IDENTITY, 0.0)
    v = q.vector_part()
    nv = inner(sig, v, v)
    if nv > 0.0:
        s = math.sqrt(nv)
        return PolarForm(
            ELLIPTIC, 2.0 * math.atan2(s, q.a0), Vec3(q.a1 / s, q.a2 / s, q.a3 / s)
        )
    if nv < 0.0:
        if q.a0 < 0.0:
            raise NoPolarForm(
                f"scalar part {q.a0} is negative on the hyperbolic branch;"
                " negate the quaternion (same rotation) to decompose"
            )
        s = math.sqrt(-nv)
        return PolarForm(
            HYPERBOLIC, 2.0 * math.asinh(s), Vec3(q.a1 / s, q.a2 / s, q.a3 / s)
        )
    raise NullVectorPart(
        f"vector part {v.as_tuple()} is nonzero but null for this signature"
    )


def from_axis_angle(sig: Signature, pf: PolarForm) -> GQuat:
    """Rebuild the unit quaternion of a polar form."""
    if pf.kind == IDENTITY:
        return GQuat(1.0, 0.0, 0.0, 0.0)
    ax = pf.axis
    nn = inner(sig, ax, ax)
    if pf.kind == ELLIPTIC:
        if abs(nn - 1.0) > _UNIT_TOL:
            raise InvalidAxis(f"elliptic axis needs self inner product 1, got {nn}")
        c = math.cos(pf.angle / 2.0)
        s = math.sin(pf.angle / 2.0)
    else:
        if abs(nn + 1.0) > _UNIT_TOL:
            raise InvalidAxis(f"hyperbolic axis needs self inner product -1, got {nn}")
        c = math.cosh(pf.angle / 2.0)
        s = math.sinh(pf.angle / 2.0)
    return GQuat(c, s * ax.x1, s * ax.x2, s * ax.x3)


def axis_skew_matrix(sig: Signature, s: Vec3) -> Mat3:
    """Skew generator of an axis: mat_vec(S, v) == cross(sig, s, v)."""
    al, be = sig.alpha, sig.beta
    return Mat3(
        (0.0, -be * s.x3, be * s.x2,
         al * s.x3, 0.0, -al * s.x1,
         -s.x2, s.x1, 0.0)
    )


def rodrigues_matrix(sig: Signature, pf: PolarForm) -> Mat3:
    """Rotation matrix directly from a polar form.

    Elliptic needs alpha > 0 and beta > 0, hyperbolic alpha > 0 > beta;
    other pairings raise UnsupportedSignature.  Agrees with
    rotation_matrix(from_axis_angle(pf)) to roundoff.
    """
    if pf.kind == IDENTITY:
        return Mat3.identity()
    if pf.kind == ELLIPTIC:
        if not (sig.alpha > 0.0 and sig.beta > 0.0):
            raise UnsupportedSignature(
                f"elliptic form needs alpha, beta > 0, got ({sig.alpha}, {sig.beta})"
            )
        nn = inner(sig, pf.axis, pf.axis)
        if abs(nn - 1.0) > _UNIT_TOL:
            raise InvalidAxis(f"elliptic axis needs self inner product 1, got {nn}")
        a = math.sin(pf.angle)
        b = 1.0 - math.cos(pf.angle)
    else:
        if not (sig.alpha > 0.0 and sig.beta < 0.0):
            raise UnsupportedSignature(
                f"hyperbolic form needs alpha > 0 > beta, got ({sig.alpha}, {sig.beta})"
            )
        nn = inner(sig, pf.axis, pf.axis)
        if abs(nn + 1.0) > _UNIT_TOL:
            raise InvalidAxis(f"hyperbolic axis needs self inner product -1, got {nn}")
        a = math.sinh(pf.angle)
        b = math.cosh(pf.angle) - 1.0
    skew = axis_skew_matrix(sig, pf.axis)
    skew2 = mat_mul(skew, skew)
    ident = Mat3.identity()
    return Mat3(
        tuple(
            ident.entries[i] + a * skew.entries[i] + b * skew2.entries[i]
            for i in range(9)
        )
    )


def compose(sig: Signature, q1: GQuat, q2: GQuat) -> GQuat:
    """Product of two unit quaternions; the matrices compose the same way."""
    n1 = norm(sig, q1)
    n2 = norm(sig, q2)
    if abs(n1 - 1.0) > _UNIT_TOL or abs(n2 - 1.0) > _UNIT_TOL:
        raise NotUnit(f"norms are {n1} and {n2}; compose needs unit quaternions")
    return multiply(sig, q1, q2)
