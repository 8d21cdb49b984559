"""Metric structure of the two-parameter 3-space.

The space is R^3 carrying the bilinear form

    <u, v> = alpha*(u1*v1) + beta*(u2*v2) + alpha*beta*(u3*v3)

for a parameter pair (alpha, beta), together with the cross product that
matches the quaternion algebra built on top of it (basis identities
i x j = k, j x k = beta*i, k x i = alpha*j).  alpha = beta = 1 recovers
Euclidean 3-space; alpha = 1, beta = -1 is the Minkowski-like split case.

A transformation preserving the form satisfies M^T E M = E with
E = diag(alpha, beta, alpha*beta) and det M = 1.  `is_quasi_orthogonal`
tests exactly that, with the metric residual scaled by max(1, |E|_max) so
large parameters do not produce spurious failures.

All matrix arithmetic fixes its floating-point evaluation order (row-dot-
column products accumulated left to right, cofactor determinant along the
first row) so results are reproducible bit for bit.  The inner product is
written so that inner(sig, u, v) == inner(sig, v, u) holds exactly, not
just approximately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateSignature

__all__ = [
    "Signature",
    "Vec3",
    "Mat3",
    "Mat4",
    "OrthogonalityReport",
    "EUCLIDEAN",
    "SPLIT",
    "inner",
    "epsilon_matrix",
    "cross",
    "is_quasi_orthogonal",
    "is_generalized_skew",
    "mat_mul",
    "mat_vec",
    "mat_vec4",
    "transpose",
    "det3",
]


def _finite(name: str, value) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be a finite real, got {value!r}")
    return x


@dataclass(frozen=True)
class Signature:
    """Parameter pair (alpha, beta) fixing both the algebra and the metric."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _finite("alpha", self.alpha))
        object.__setattr__(self, "beta", _finite("beta", self.beta))


EUCLIDEAN = Signature(1.0, 1.0)
SPLIT = Signature(1.0, -1.0)


@dataclass(frozen=True)
class Vec3:
    """A vector of the parametrized 3-space, coordinates in the basis {i, j, k}."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        object.__setattr__(self, "x1", _finite("x1", self.x1))
        object.__setattr__(self, "x2", _finite("x2", self.x2))
        object.__setattr__(self, "x3", _finite("x3", self.x3))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)


@dataclass(frozen=True)
class Mat3:
    """Dense 3x3 real matrix, row-major entries."""

    entries: tuple

    def __post_init__(self):
        e = tuple(_finite(f"entry {i}", v) for i, v in enumerate(self.entries))
        if len(e) != 9:
            raise ValueError(f"Mat3 needs 9 entries, got {len(e)}")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_rows(cls, r1, r2, r3) -> "Mat3":
        return cls(tuple(r1) + tuple(r2) + tuple(r3))

    @classmethod
    def identity(cls) -> "Mat3":
        return cls((1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0))

    def row(self, i: int) -> tuple:
        return self.entries[3 * i : 3 * i + 3]

    def entry(self, i: int, j: int) -> float:
        return self.entries[3 * i + j]


@dataclass(frozen=True)
class Mat4:
    """Dense 4x4 real matrix, row-major entries."""

    entries: tuple

    def __post_init__(self):
        e = tuple(_finite(f"entry {i}", v) for i, v in enumerate(self.entries))
        if len(e) != 16:
            raise ValueError(f"Mat4 needs 16 entries, got {len(e)}")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_rows(cls, r1, r2, r3, r4) -> "Mat4":
        return cls(tuple(r1) + tuple(r2) + tuple(r3) + tuple(r4))

    @classmethod
    def identity(cls) -> "Mat4":
        return cls(
            (1.0, 0.0, 0.0, 0.0,
             0.0, 1.0, 0.0, 0.0,
             0.0, 0.0, 1.0, 0.0,
             0.0, 0.0, 0.0, 1.0)
        )

    def row(self, i: int) -> tuple:
        return self.entries[4 * i : 4 * i + 4]

    def entry(self, i: int, j: int) -> float:
        return self.entries[4 * i + j]


def inner(sig: Signature, u: Vec3, v: Vec3) -> float:
    """Inner product alpha*u1*v1 + beta*u2*v2 + alpha*beta*u3*v3.

    Each term multiplies the coordinate product first, so swapping u and v
    gives the identical float and symmetry holds exactly.
    """
    return (
        sig.alpha * (u.x1 * v.x1)
        + sig.beta * (u.x2 * v.x2)
        + sig.alpha * sig.beta * (u.x3 * v.x3)
    )


def epsilon_matrix(sig: Signature) -> Mat3:
    """The metric matrix diag(alpha, beta, alpha*beta)."""
    return Mat3(
        (sig.alpha, 0.0, 0.0, 0.0, sig.beta, 0.0, 0.0, 0.0, sig.alpha * sig.beta)
    )


def cross(sig: Signature, u: Vec3, v: Vec3) -> Vec3:
    """Cross product of the parametrized space.

    Componentwise (beta*(u2*v3 - u3*v2), alpha*(u3*v1 - u1*v3), u1*v2 - u2*v1),
    the unique bilinear antisymmetric product with i x j = k, j x k = beta*i,
    k x i = alpha*j.  The k component carries coefficient 1; see the errata
    ledger in `conformance` for the variant with an extra alpha*beta factor.
    """
    return Vec3(
        sig.beta * (u.x2 * v.x3 - u.x3 * v.x2),
        sig.alpha * (u.x3 * v.x1 - u.x1 * v.x3),
        u.x1 * v.x2 - u.x2 * v.x1,
    )


@dataclass(frozen=True)
class OrthogonalityReport:
    """Outcome of a quasi-orthogonality test; truthy when the matrix passed.

    `residual` is the raw max-abs entry of M^T E M - E (unscaled), `det` the
    cofactor determinant of M.
    """

    passed: bool
    residual: float
    det: float

    def __bool__(self) -> bool:
        return self.passed


def _metric_scale(sig: Signature) -> float:
    return max(1.0, abs(sig.alpha), abs(sig.beta), abs(sig.alpha * sig.beta))


def is_quasi_orthogonal(sig: Signature, m: Mat3, tol: float) -> OrthogonalityReport:
    """Test M^T E M = E and det M = 1 within tol.

    The metric residual is compared against tol * max(1, |E|_max); the
    determinant against tol directly.  Raises DegenerateSignature when
    alpha*beta == 0 (E singular, the test would be vacuous).
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if sig.alpha * sig.beta == 0.0:
        raise DegenerateSignature(
            f"metric is singular for alpha={sig.alpha}, beta={sig.beta}"
        )
    eps = epsilon_matrix(sig)
    prod = mat_mul(transpose(m), mat_mul(eps, m))
    residual = max(abs(a - b) for a, b in zip(prod.entries, eps.entries))
    det = det3(m)
    passed = residual <= tol * _metric_scale(sig) and abs(det - 1.0) <= tol
    return OrthogonalityReport(passed, residual, det)


def is_generalized_skew(sig: Signature, s: Mat3, tol: float) -> bool:
    """True when S^T E + E S vanishes within tol * max(1, |E|_max)."""
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    eps = epsilon_matrix(sig)
    left = mat_mul(transpose(s), eps)
    right = mat_mul(eps, s)
    residual = max(abs(a + b) for a, b in zip(left.entries, right.entries))
    return residual <= tol * _metric_scale(sig)


def mat_mul(a, b):
    """Product of two Mat3 or two Mat4, rows dotted with columns left to right."""
    if isinstance(a, Mat3) and isinstance(b, Mat3):
        n = 3
    elif isinstance(a, Mat4) and isinstance(b, Mat4):
        n = 4
    else:
        raise TypeError("mat_mul needs two Mat3 or two Mat4")
    ea, eb = a.entries, b.entries
    out = []
    for i in range(n):
        for j in range(n):
            acc = ea[i * n] * eb[j]
            for k in range(1, n):
                acc = acc + ea[i * n + k] * eb[k * n + j]
            out.append(acc)
    return type(a)(tuple(out))


def mat_vec(m: Mat3, v: Vec3) -> Vec3:
    e = m.entries
    return Vec3(
        e[0] * v.x1 + e[1] * v.x2 + e[2] * v.x3,
        e[3] * v.x1 + e[4] * v.x2 + e[5] * v.x3,
        e[6] * v.x1 + e[7] * v.x2 + e[8] * v.x3,
    )


def mat_vec4(m: Mat4, v: tuple) -> tuple:
    """Apply a Mat4 to a plain 4-tuple; the row dot products accumulate left
    to right, which `algebra.multiply` mirrors term for term."""
    e = m.entries
    return (
        e[0] * v[0] + e[1] * v[1] + e[2] * v[2] + e[3] * v[3],
        e[4] * v[0] + e[5] * v[1] + e[6] * v[2] + e[7] * v[3],
        e[8] * v[0] + e[9] * v[1] + e[10] * v[2] + e[11] * v[3],
        e[12] * v[0] + e[13] * v[1] + e[14] * v[2] + e[15] * v[3],
    )


def transpose(m):
    if isinstance(m, Mat3):
        n = 3
    elif isinstance(m, Mat4):
        n = 4
    else:
        raise TypeError("transpose needs a Mat3 or Mat4")
    return type(m)(tuple(m.entries[j * n + i] for i in range(n) for j in range(n)))


def det3(m: Mat3) -> float:
    """Determinant by cofactor expansion along the first row (fixed order)."""
    e = m.entries
    return (
        e[0] * (e[4] * e[8] - e[5] * e[7])
        - e[1] * (e[3] * e[8] - e[5] * e[6])
        + e[2] * (e[3] * e[7] - e[4] * e[6])
    )
