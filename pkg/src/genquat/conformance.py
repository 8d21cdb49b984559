"""Verification harness: randomized property suite, fixed reference
fixtures, and the machine-checked ledger of formula variants that fail
cross-validation.

Randomness comes from SplitMix64 (Vigna's 64-bit mixer), chosen because it
is tiny, well known and trivially portable; the first outputs for seed 0
are frozen in the tests and listed in the README, so suite reports can be
reproduced by any implementation of the same generator.  A suite run is
fully determined by its config: a master stream first draws the default
signatures, then one child seed per property/signature cell, in a fixed
order, so equal configs produce byte-identical reports.

Every property mirrors one documented invariant of the metric, algebra and
rotation modules and reports its worst residual against a fixed tolerance.
Tolerance 0.0 marks identities that hold bit for bit by construction
(cross antisymmetry, the multiply/left-matrix agreement, sign invariance
of the rotation matrix, the basis product tables).  Failures are data, not
exceptions: the report records worst and first failing inputs, replayable
from the recorded cell seed.

Sampling policy: quaternion and vector components are drawn from [-2, 2]
and signature parameters from (0, 4] (negated for the split-like family).
Unit quaternions are produced by rejection (norm at least 0.5, components
at most 2.5 after normalization) so that matrix entries stay small enough
for the stated tolerances to be meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import (
    GQuat,
    conjugate,
    from_scalar_vector,
    inverse,
    left_matrix,
    multiply,
    norm,
    normalize,
    pure,
    scale,
)
from .errors import AlgebraError, NonInvertible, NotUnit
from .metric import (
    EUCLIDEAN,
    SPLIT,
    Mat3,
    Signature,
    Vec3,
    _metric_scale,
    cross,
    det3,
    epsilon_matrix,
    inner,
    is_quasi_orthogonal,
    mat_mul,
    mat_vec,
    mat_vec4,
)
from .rotation import (
    ELLIPTIC,
    HYPERBOLIC,
    PolarForm,
    conjugation_map,
    from_axis_angle,
    polar_form,
    rodrigues_matrix,
    rotation_matrix,
)

__all__ = [
    "SplitMix64",
    "SuiteConfig",
    "SuiteReport",
    "PropertyResult",
    "FixtureResult",
    "run_suite",
    "erratum_report",
    "wittenburg_matrix",
    "vector_angle",
    "PROPERTY_NAMES",
    "FIXTURE_NAMES",
]

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 pseudo-random generator (64-bit state, 64-bit output).

    next_u64 advances state by 0x9E3779B97F4A7C15 and mixes with the
    standard two multiply-xorshift rounds.  unit_float takes the top 53
    bits, giving a uniform double in [0, 1).
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self._state = seed

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def unit_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform draw from [lo, hi)."""
        return lo + (hi - lo) * self.unit_float()

    def open_closed(self, lo: float, hi: float) -> float:
        """Uniform draw from (lo, hi]."""
        return hi - (hi - lo) * self.unit_float()


_E1 = Vec3(1.0, 0.0, 0.0)
_E2 = Vec3(0.0, 1.0, 0.0)
_E3 = Vec3(0.0, 0.0, 1.0)
_BASIS = (_E1, _E2, _E3)

_SQ2 = math.sqrt(0.5)


def wittenburg_matrix(q: GQuat) -> Mat3:
    """Euclidean quaternion-to-matrix conversion in the Wittenburg form.

    Valid for unit quaternions of the ordinary (alpha = beta = 1) algebra;
    used as an independent reference for `rotation_matrix` there.
    """
    n = norm(EUCLIDEAN, q)
    if abs(n - 1.0) > 1e-9:
        raise NotUnit(f"norm is {n}; the conversion needs a unit quaternion")
    a0, a1, a2, a3 = q.a0, q.a1, q.a2, q.a3
    return Mat3(
        (
            2.0 * (a0 * a0 + a1 * a1) - 1.0,
            2.0 * (a1 * a2 - a0 * a3),
            2.0 * (a1 * a3 + a0 * a2),
            2.0 * (a1 * a2 + a0 * a3),
            2.0 * (a0 * a0 + a2 * a2) - 1.0,
            2.0 * (a2 * a3 - a0 * a1),
            2.0 * (a1 * a3 - a0 * a2),
            2.0 * (a2 * a3 + a0 * a1),
            2.0 * (a0 * a0 + a3 * a3) - 1.0,
        )
    )


def vector_angle(sig: Signature, u: Vec3, v: Vec3) -> float:
    """Angle between two vectors of the same causal type.

    cos = <u, v> / sqrt(<u, u> * <v, v>); defined whenever the product of
    the self inner products is positive (both spacelike or both timelike).
    """
    nu = inner(sig, u, u)
    nv = inner(sig, v, v)
    prod = nu * nv
    if prod <= 0.0:
        raise ValueError(
            f"angle undefined: self inner products {nu} and {nv} have mixed sign"
        )
    c = inner(sig, u, v) / math.sqrt(prod)
    return math.acos(min(1.0, max(-1.0, c)))


# ---------------------------------------------------------------------------
# samplers


def _sample_vec(rng: SplitMix64) -> Vec3:
    return Vec3(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))


def _sample_quat(rng: SplitMix64) -> GQuat:
    return GQuat(
        rng.uniform(-2.0, 2.0),
        rng.uniform(-2.0, 2.0),
        rng.uniform(-2.0, 2.0),
        rng.uniform(-2.0, 2.0),
    )


def _sample_unit_quat(rng: SplitMix64, sig: Signature) -> GQuat:
    """Rejection-sample a unit quaternion (norm 1 after scaling).

    Raw norms below 0.5 and normalized components above 2.5 are rejected to
    keep downstream matrix entries small; see the module docstring.
    """
    for _ in range(100_000):
        q = _sample_quat(rng)
        n = norm(sig, q)
        if n < 0.5:
            continue
        u = normalize(sig, q)
        if max(abs(u.a0), abs(u.a1), abs(u.a2), abs(u.a3)) <= 2.5:
            return u
    raise RuntimeError(f"unit sampling failed for signature {sig}")


def _sample_unit_axis(rng: SplitMix64, sig: Signature, timelike: bool) -> Vec3:
    """Axis with self inner product +1 (timelike=True, needs alpha, beta > 0)
    or -1 (needs alpha > 0 > beta).

    Built by scaling the coordinates with 1/sqrt of the metric weights, which
    turns the inner product into the plain (anti-)Euclidean form of the raw
    draw; that way no signature can starve the rejection loop.
    """
    al = sig.alpha
    ab = abs(sig.beta)
    while True:
        w = _sample_vec(rng)
        if timelike:
            nn = w.x1 * w.x1 + w.x2 * w.x2 + w.x3 * w.x3
        else:
            nn = w.x2 * w.x2 + w.x3 * w.x3 - w.x1 * w.x1
        if nn < 0.25:
            continue
        s = math.sqrt(nn)
        return Vec3(
            w.x1 / (s * math.sqrt(al)),
            w.x2 / (s * math.sqrt(ab)),
            w.x3 / (s * math.sqrt(al * ab)),
        )


def _sample_polar(rng: SplitMix64, sig: Signature) -> PolarForm:
    if sig.beta > 0.0:
        return PolarForm(
            ELLIPTIC, rng.uniform(0.0, 2.0 * math.pi), _sample_unit_axis(rng, sig, True)
        )
    angle = rng.uniform(0.1, 3.0)
    if rng.unit_float() < 0.5:
        angle = -angle
    return PolarForm(HYPERBOLIC, angle, _sample_unit_axis(rng, sig, False))


# ---------------------------------------------------------------------------
# residual helpers


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _rel_quat(a: GQuat, b: GQuat) -> float:
    return max(_rel(x, y) for x, y in zip(a.as_tuple(), b.as_tuple()))


def _rel_mat(a: Mat3, b: Mat3) -> float:
    return max(_rel(x, y) for x, y in zip(a.entries, b.entries))


def _abs_mat(a: Mat3, b: Mat3) -> float:
    return max(abs(x - y) for x, y in zip(a.entries, b.entries))


def _inner_scale(sig: Signature, u: Vec3, v: Vec3) -> float:
    return max(
        1.0,
        abs(sig.alpha * (u.x1 * v.x1))
        + abs(sig.beta * (u.x2 * v.x2))
        + abs(sig.alpha * sig.beta * (u.x3 * v.x3)),
    )


# ---------------------------------------------------------------------------
# property measures (one randomized case each; return (inputs, residual))


def _m_inner_consistency(rng, sig):
    u, v = _sample_vec(rng), _sample_vec(rng)
    a = inner(sig, u, v)
    b = inner(sig, v, u)
    w = mat_vec(epsilon_matrix(sig), v)
    c = u.x1 * w.x1 + u.x2 * w.x2 + u.x3 * w.x3
    scale_ = _inner_scale(sig, u, v)
    res = max(abs(a - b), abs(a - c) / scale_)
    return {"u": list(u.as_tuple()), "v": list(v.as_tuple())}, res


def _m_cross_orthogonality(rng, sig):
    u, v = _sample_vec(rng), _sample_vec(rng)
    c = cross(sig, u, v)
    res = max(
        abs(inner(sig, c, u)) / _inner_scale(sig, c, u),
        abs(inner(sig, c, v)) / _inner_scale(sig, c, v),
    )
    return {"u": list(u.as_tuple()), "v": list(v.as_tuple())}, res


def _m_cross_antisymmetry(rng, sig):
    u, v = _sample_vec(rng), _sample_vec(rng)
    a = cross(sig, u, v)
    b = cross(sig, v, u)
    res = max(abs(x + y) for x, y in zip(a.as_tuple(), b.as_tuple()))
    return {"u": list(u.as_tuple()), "v": list(v.as_tuple())}, res


def _run_basis_identities(rng, sig, cases, tol):
    expected = (
        (_E1, _E2, Vec3(0.0, 0.0, 1.0)),
        (_E2, _E3, Vec3(sig.beta, 0.0, 0.0)),
        (_E3, _E1, Vec3(0.0, sig.alpha, 0.0)),
    )
    worst = 0.0
    for u, v, want in expected:
        got = cross(sig, u, v)
        worst = max(
            worst, max(abs(a - b) for a, b in zip(got.as_tuple(), want.as_tuple()))
        )
    failures = 0 if worst <= tol else 1
    inputs = {"pairs": "i x j, j x k, k x i"}
    return {
        "cases": 3,
        "failures": failures,
        "worst_residual": worst,
        "worst_input": inputs,
        "first_failure": inputs if failures else None,
    }


def _m_quasi_orthogonal_closure(rng, sig):
    a = rotation_matrix(sig, _sample_unit_quat(rng, sig))
    b = rotation_matrix(sig, _sample_unit_quat(rng, sig))
    rep = is_quasi_orthogonal(sig, mat_mul(a, b), 1e-8)
    res = max(rep.residual / _metric_scale(sig), abs(rep.det - 1.0))
    return {"a": list(a.entries), "b": list(b.entries)}, res


def _m_associativity(rng, sig):
    q, p, r = _sample_quat(rng), _sample_quat(rng), _sample_quat(rng)
    lhs = multiply(sig, multiply(sig, q, p), r)
    rhs = multiply(sig, q, multiply(sig, p, r))
    inputs = {"q": list(q.as_tuple()), "p": list(p.as_tuple()), "r": list(r.as_tuple())}
    return inputs, _rel_quat(lhs, rhs)


def _m_left_matrix_faithfulness(rng, sig):
    q, p = _sample_quat(rng), _sample_quat(rng)
    direct = multiply(sig, q, p)
    via = mat_vec4(left_matrix(sig, q), p.as_tuple())
    res = max(abs(a - b) for a, b in zip(direct.as_tuple(), via))
    return {"q": list(q.as_tuple()), "p": list(p.as_tuple())}, res


def _m_norm_multiplicativity(rng, sig):
    q, p = _sample_quat(rng), _sample_quat(rng)
    res = _rel(norm(sig, multiply(sig, q, p)), norm(sig, q) * norm(sig, p))
    return {"q": list(q.as_tuple()), "p": list(p.as_tuple())}, res


def _m_conjugation_anti_homomorphism(rng, sig):
    q, p = _sample_quat(rng), _sample_quat(rng)
    lhs = conjugate(multiply(sig, q, p))
    rhs = multiply(sig, conjugate(p), conjugate(q))
    return {"q": list(q.as_tuple()), "p": list(p.as_tuple())}, _rel_quat(lhs, rhs)


def _m_self_conjugate_product(rng, sig):
    q = _sample_quat(rng)
    r = multiply(sig, q, conjugate(q))
    n = norm(sig, q)
    scale_ = max(
        1.0,
        q.a0 * q.a0
        + abs(sig.alpha) * (q.a1 * q.a1)
        + abs(sig.beta) * (q.a2 * q.a2)
        + abs(sig.alpha * sig.beta) * (q.a3 * q.a3),
    )
    res = max(abs(r.a1), abs(r.a2), abs(r.a3), abs(r.a0 - n)) / scale_
    return {"q": list(q.as_tuple())}, res


def _m_pure_product_identity(rng, sig):
    u, v = _sample_vec(rng), _sample_vec(rng)
    lhs = multiply(sig, pure(u), pure(v))
    rhs = from_scalar_vector(-inner(sig, u, v), cross(sig, u, v))
    return {"u": list(u.as_tuple()), "v": list(v.as_tuple())}, _rel_quat(lhs, rhs)


_REAL_TABLE = {
    (1, 1): (-1.0, 0.0, 0.0, 0.0),
    (1, 2): (0.0, 0.0, 0.0, 1.0),
    (1, 3): (0.0, 0.0, -1.0, 0.0),
    (2, 1): (0.0, 0.0, 0.0, -1.0),
    (2, 2): (-1.0, 0.0, 0.0, 0.0),
    (2, 3): (0.0, 1.0, 0.0, 0.0),
    (3, 1): (0.0, 0.0, 1.0, 0.0),
    (3, 2): (0.0, -1.0, 0.0, 0.0),
    (3, 3): (-1.0, 0.0, 0.0, 0.0),
}

_SPLIT_TABLE = {
    (1, 1): (-1.0, 0.0, 0.0, 0.0),
    (1, 2): (0.0, 0.0, 0.0, 1.0),
    (1, 3): (0.0, 0.0, -1.0, 0.0),
    (2, 1): (0.0, 0.0, 0.0, -1.0),
    (2, 2): (1.0, 0.0, 0.0, 0.0),
    (2, 3): (0.0, -1.0, 0.0, 0.0),
    (3, 1): (0.0, 0.0, 1.0, 0.0),
    (3, 2): (0.0, 1.0, 0.0, 0.0),
    (3, 3): (1.0, 0.0, 0.0, 0.0),
}


def _basis_quat(i: int) -> GQuat:
    comps = [0.0, 0.0, 0.0, 0.0]
    comps[i] = 1.0
    return GQuat(*comps)


def _run_special_case_tables(rng, sig, cases, tol):
    table = _REAL_TABLE if sig == EUCLIDEAN else _SPLIT_TABLE
    worst = 0.0
    worst_pair = None
    checked = 0
    for i in range(4):
        for j in range(4):
            got = multiply(sig, _basis_quat(i), _basis_quat(j))
            if i == 0 or j == 0:
                want = _basis_quat(max(i, j)).as_tuple()
            else:
                want = table[(i, j)]
            res = max(abs(a - b) for a, b in zip(got.as_tuple(), want))
            checked += 1
            if res > worst:
                worst = res
                worst_pair = {"basis_pair": [i, j]}
    failures = 0 if worst <= tol else 1
    return {
        "cases": checked,
        "failures": failures,
        "worst_residual": worst,
        "worst_input": worst_pair,
        "first_failure": worst_pair if failures else None,
    }


def _m_isometry(rng, sig):
    q = _sample_unit_quat(rng, sig)
    u, v = _sample_vec(rng), _sample_vec(rng)
    fu = conjugation_map(sig, q, u)
    fv = conjugation_map(sig, q, v)
    res = abs(inner(sig, fu, fv) - inner(sig, u, v)) / _inner_scale(sig, u, v)
    inputs = {"q": list(q.as_tuple()), "u": list(u.as_tuple()), "v": list(v.as_tuple())}
    return inputs, res


def _m_rotation_quasi_orthogonality(rng, sig):
    q = _sample_unit_quat(rng, sig)
    rep = is_quasi_orthogonal(sig, rotation_matrix(sig, q), 1e-9)
    return {"q": list(q.as_tuple())}, rep.residual / _metric_scale(sig)


def _m_rotation_determinant(rng, sig):
    q = _sample_unit_quat(rng, sig)
    return {"q": list(q.as_tuple())}, abs(det3(rotation_matrix(sig, q)) - 1.0)


def _m_oracle_agreement(rng, sig):
    q = _sample_unit_quat(rng, sig)
    m = rotation_matrix(sig, q)
    res = 0.0
    for j, e in enumerate(_BASIS):
        image = conjugation_map(sig, q, e)
        for i, got in enumerate(image.as_tuple()):
            res = max(res, _rel(m.entry(i, j), got))
    return {"q": list(q.as_tuple())}, res


def _m_linearity(rng, sig):
    q = _sample_unit_quat(rng, sig)
    u, v = _sample_vec(rng), _sample_vec(rng)
    a, b = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
    mixed = Vec3(
        a * u.x1 + b * v.x1, a * u.x2 + b * v.x2, a * u.x3 + b * v.x3
    )
    lhs = conjugation_map(sig, q, mixed)
    fu = conjugation_map(sig, q, u)
    fv = conjugation_map(sig, q, v)
    rhs = Vec3(
        a * fu.x1 + b * fv.x1, a * fu.x2 + b * fv.x2, a * fu.x3 + b * fv.x3
    )
    res = max(_rel(x, y) for x, y in zip(lhs.as_tuple(), rhs.as_tuple()))
    inputs = {
        "q": list(q.as_tuple()),
        "u": list(u.as_tuple()),
        "v": list(v.as_tuple()),
        "coeffs": [a, b],
    }
    return inputs, res


def _m_matrix_homomorphism(rng, sig):
    q = _sample_unit_quat(rng, sig)
    p = _sample_unit_quat(rng, sig)
    lhs = rotation_matrix(sig, multiply(sig, q, p))
    rhs = mat_mul(rotation_matrix(sig, q), rotation_matrix(sig, p))
    return {"q": list(q.as_tuple()), "p": list(p.as_tuple())}, _rel_mat(lhs, rhs)


def _m_polar_round_trip(rng, sig):
    for _ in range(1000):
        q = _sample_unit_quat(rng, sig)
        if q.a1 == 0.0 and q.a2 == 0.0 and q.a3 == 0.0:
            continue
        nv = inner(sig, q.vector_part(), q.vector_part())
        if nv == 0.0:
            continue
        if nv < 0.0 and q.a0 < 0.0:
            q = scale(-1.0, q)  # same rotation, and the decomposable representative
        back = from_axis_angle(sig, polar_form(sig, q))
        res = max(abs(a - b) for a, b in zip(back.as_tuple(), q.as_tuple()))
        return {"q": list(q.as_tuple())}, res
    raise RuntimeError("could not sample a decomposable unit quaternion")


def _m_rodrigues_equivalence(rng, sig):
    pf = _sample_polar(rng, sig)
    lhs = rodrigues_matrix(sig, pf)
    rhs = rotation_matrix(sig, from_axis_angle(sig, pf))
    inputs = {"kind": pf.kind, "angle": pf.angle, "axis": list(pf.axis.as_tuple())}
    return inputs, _rel_mat(lhs, rhs)


def _m_euclidean_reduction(rng, sig):
    q = _sample_unit_quat(rng, sig)
    res = _abs_mat(rotation_matrix(sig, q), wittenburg_matrix(q))
    return {"q": list(q.as_tuple())}, res


def _m_sign_invariance(rng, sig):
    q = _sample_unit_quat(rng, sig)
    res = _abs_mat(rotation_matrix(sig, q), rotation_matrix(sig, scale(-1.0, q)))
    return {"q": list(q.as_tuple())}, res


# ---------------------------------------------------------------------------
# property registry


def _drive(rng, sig, cases, tol, measure):
    worst = -1.0
    worst_input = None
    failures = 0
    first_failure = None
    for idx in range(cases):
        try:
            inputs, res = measure(rng, sig)
        except AlgebraError as exc:
            inputs, res = {"error": type(exc).__name__, "detail": str(exc)}, math.inf
        inputs = dict(inputs)
        inputs["case"] = idx
        if res > worst:
            worst = res
            worst_input = inputs
        if res > tol:
            failures += 1
            if first_failure is None:
                first_failure = inputs
    return {
        "cases": cases,
        "failures": failures,
        "worst_residual": max(worst, 0.0),
        "worst_input": worst_input,
        "first_failure": first_failure,
    }


def _randomized(measure):
    def run(rng, sig, cases, tol):
        return _drive(rng, sig, cases, tol, measure)

    return run


def _any_sig(sig: Signature) -> bool:
    return True


def _nondegenerate(sig: Signature) -> bool:
    return sig.alpha * sig.beta != 0.0


def _rodrigues_sigs(sig: Signature) -> bool:
    return sig.alpha > 0.0 and sig.beta != 0.0


def _euclidean_only(sig: Signature) -> bool:
    return sig == EUCLIDEAN


def _table_sigs(sig: Signature) -> bool:
    return sig in (EUCLIDEAN, SPLIT)


@dataclass(frozen=True)
class _Property:
    name: str
    tolerance: float
    applies: object
    run: object


_PROPERTIES = (
    _Property("inner-metric-consistency", 1e-15, _any_sig, _randomized(_m_inner_consistency)),
    _Property("cross-orthogonality", 1e-12, _any_sig, _randomized(_m_cross_orthogonality)),
    _Property("cross-antisymmetry", 0.0, _any_sig, _randomized(_m_cross_antisymmetry)),
    _Property("cross-basis-identities", 0.0, _any_sig, _run_basis_identities),
    _Property("quasi-orthogonal-closure", 1e-8, _nondegenerate, _randomized(_m_quasi_orthogonal_closure)),
    _Property("multiplication-associativity", 1e-9, _any_sig, _randomized(_m_associativity)),
    _Property("left-matrix-faithfulness", 0.0, _any_sig, _randomized(_m_left_matrix_faithfulness)),
    _Property("norm-multiplicativity", 1e-9, _any_sig, _randomized(_m_norm_multiplicativity)),
    _Property("conjugation-anti-homomorphism", 1e-12, _any_sig, _randomized(_m_conjugation_anti_homomorphism)),
    _Property("self-conjugate-product", 1e-12, _any_sig, _randomized(_m_self_conjugate_product)),
    _Property("pure-product-identity", 1e-12, _any_sig, _randomized(_m_pure_product_identity)),
    _Property("special-case-tables", 0.0, _table_sigs, _run_special_case_tables),
    _Property("conjugation-isometry", 1e-10, _nondegenerate, _randomized(_m_isometry)),
    _Property("rotation-quasi-orthogonality", 1e-9, _nondegenerate, _randomized(_m_rotation_quasi_orthogonality)),
    _Property("rotation-determinant", 1e-10, _nondegenerate, _randomized(_m_rotation_determinant)),
    _Property("oracle-agreement", 1e-12, _nondegenerate, _randomized(_m_oracle_agreement)),
    _Property("conjugation-linearity", 1e-12, _nondegenerate, _randomized(_m_linearity)),
    _Property("matrix-homomorphism", 1e-10, _nondegenerate, _randomized(_m_matrix_homomorphism)),
    _Property("polar-round-trip", 1e-12, _nondegenerate, _randomized(_m_polar_round_trip)),
    _Property("rodrigues-equivalence", 1e-12, _rodrigues_sigs, _randomized(_m_rodrigues_equivalence)),
    _Property("euclidean-reduction", 1e-14, _euclidean_only, _randomized(_m_euclidean_reduction)),
    _Property("rotation-sign-invariance", 0.0, _nondegenerate, _randomized(_m_sign_invariance)),
)

PROPERTY_NAMES = tuple(p.name for p in _PROPERTIES)
DEFAULT_TOLERANCES = {p.name: p.tolerance for p in _PROPERTIES}


# ---------------------------------------------------------------------------
# fixtures


def _check(name, residual, tolerance, note=None):
    entry = {
        "name": name,
        "residual": residual,
        "tolerance": tolerance,
        "passed": residual <= tolerance,
    }
    if note:
        entry["note"] = note
    return entry


def _oracle_matrix(sig: Signature, q: GQuat) -> Mat3:
    cols = [conjugation_map(sig, q, e) for e in _BASIS]
    return Mat3.from_rows(
        (cols[0].x1, cols[1].x1, cols[2].x1),
        (cols[0].x2, cols[1].x2, cols[2].x2),
        (cols[0].x3, cols[1].x3, cols[2].x3),
    )


def _scaled_quat(sig: Signature) -> GQuat:
    return GQuat(
        _SQ2, 1.0 / (2.0 * math.sqrt(sig.alpha)), -1.0 / (2.0 * math.sqrt(sig.beta)), 0.0
    )


def _scaled_matrix_variant(sig: Signature) -> Mat3:
    """Closed-form matrix for the scaled fixture quaternion as it is usually
    transcribed; not an isometry unless alpha == beta == 1 (see errata)."""
    al, be = sig.alpha, sig.beta
    return Mat3(
        (
            0.5 + 0.25 * (al - be), -be / 2.0, -be / math.sqrt(2.0),
            -al / 2.0, 0.5 + 0.25 * (be - al), -al / math.sqrt(2.0),
            1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.5 - 0.25 * (al + be),
        )
    )


def _fx_euclidean_rotation():
    q = GQuat(_SQ2, 0.5, -0.5, 0.0)
    m = rotation_matrix(EUCLIDEAN, q)
    expected = (0.5, -0.5, -_SQ2, -0.5, 0.5, -_SQ2, _SQ2, _SQ2, 0.0)
    checks = [
        _check(
            "matrix-entries",
            max(abs(a - b) for a, b in zip(m.entries, expected)),
            1e-15,
        )
    ]
    pf = polar_form(EUCLIDEAN, q)
    checks.append(_check("angle-quarter-turn", abs(pf.angle - math.pi / 2.0), 1e-12))
    axis_expected = (_SQ2, -_SQ2, 0.0)
    checks.append(
        _check(
            "axis-direction",
            max(abs(a - b) for a, b in zip(pf.axis.as_tuple(), axis_expected)),
            1e-12,
        )
    )
    return checks


def _fx_split_rotation():
    q = GQuat(math.sqrt(3.0) / 2.0, 0.5, 0.0, 0.0)
    m = rotation_matrix(SPLIT, q)
    s32 = math.sqrt(3.0) / 2.0
    expected = (1.0, 0.0, 0.0, 0.0, 0.5, -s32, 0.0, s32, 0.5)
    checks = [
        _check(
            "matrix-entries",
            max(abs(a - b) for a, b in zip(m.entries, expected)),
            1e-15,
        )
    ]
    # metric angle between a vector of the rotated plane and its image;
    # the plane is negative definite here, which flips the cosine's sign
    # relative to the naive Euclidean reading
    angle = vector_angle(SPLIT, _E2, mat_vec(m, _E2))
    checks.append(_check("plane-angle", abs(angle - 2.0 * math.pi / 3.0), 1e-12))
    return checks


def _fx_scaled_rotation():
    checks = []
    for al, be in ((2.0, 3.0), (2.0, 1.0), (5.0, 0.5)):
        sig = Signature(al, be)
        q = _scaled_quat(sig)
        oracle = _oracle_matrix(sig, q)
        rep = is_quasi_orthogonal(sig, oracle, 1e-12)
        tag = f"a{al:g}-b{be:g}"
        checks.append(_check(f"{tag}-metric-residual", rep.residual, 1e-12))
        checks.append(_check(f"{tag}-determinant", abs(rep.det - 1.0), 1e-12))
        pf = polar_form(sig, q)
        checks.append(_check(f"{tag}-angle", abs(pf.angle - math.pi / 2.0), 1e-12))
        checks.append(
            _check(
                f"{tag}-closed-form-vs-oracle",
                _abs_mat(rotation_matrix(sig, q), oracle),
                1e-14,
            )
        )
        variant_rep = is_quasi_orthogonal(sig, _scaled_matrix_variant(sig), 1e-9)
        checks.append(
            {
                "name": f"{tag}-variant-rejected",
                "residual": variant_rep.residual,
                "tolerance": None,
                "passed": not variant_rep.passed,
                "note": "the transcribed closed form must fail the metric test",
            }
        )
    return checks


def _fx_zero_divisor():
    q = GQuat(1.0, 0.0, 1.0, 0.0)
    n = norm(SPLIT, q)
    checks = [_check("norm-vanishes", abs(n), 0.0)]
    try:
        inverse(SPLIT, q)
        raised = False
    except NonInvertible:
        raised = True
    checks.append(
        {
            "name": "inverse-refused",
            "residual": 0.0 if raised else math.inf,
            "tolerance": 0.0,
            "passed": raised,
        }
    )
    return checks


def _fx_basis_products():
    sig = Signature(2.0, 3.0)
    al, be = sig.alpha, sig.beta
    expected = {
        (1, 1): (-al, 0.0, 0.0, 0.0),
        (1, 2): (0.0, 0.0, 0.0, 1.0),
        (1, 3): (0.0, 0.0, -al, 0.0),
        (2, 1): (0.0, 0.0, 0.0, -1.0),
        (2, 2): (-be, 0.0, 0.0, 0.0),
        (2, 3): (0.0, be, 0.0, 0.0),
        (3, 1): (0.0, 0.0, al, 0.0),
        (3, 2): (0.0, -be, 0.0, 0.0),
        (3, 3): (-(al * be), 0.0, 0.0, 0.0),
    }
    worst = 0.0
    for i in range(4):
        for j in range(4):
            got = multiply(sig, _basis_quat(i), _basis_quat(j))
            if i == 0 or j == 0:
                want = _basis_quat(max(i, j)).as_tuple()
            else:
                want = expected[(i, j)]
            worst = max(
                worst, max(abs(a - b) for a, b in zip(got.as_tuple(), want))
            )
    return [_check("sixteen-products", worst, 0.0)]


_FIXTURES = (
    ("euclidean-rotation", _fx_euclidean_rotation),
    ("split-rotation", _fx_split_rotation),
    ("scaled-rotation", _fx_scaled_rotation),
    ("zero-divisor", _fx_zero_divisor),
    ("basis-products", _fx_basis_products),
)

FIXTURE_NAMES = tuple(name for name, _ in _FIXTURES)


# ---------------------------------------------------------------------------
# suite


@dataclass(frozen=True)
class SuiteConfig:
    """Everything a suite run depends on; equal configs replay identically."""

    seed: int = 42
    cases: int = 200
    signatures: tuple = None
    tolerances: dict = None

    def __post_init__(self):
        if not 0 <= int(self.seed) <= _MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if int(self.cases) < 1:
            raise ValueError(f"cases must be at least 1, got {self.cases}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "cases", int(self.cases))
        if self.signatures is not None:
            sigs = tuple(self.signatures)
            for sig in sigs:
                if sig.alpha * sig.beta == 0.0:
                    raise ValueError(
                        f"degenerate signature ({sig.alpha}, {sig.beta}) not allowed"
                    )
            object.__setattr__(self, "signatures", sigs)
        if self.tolerances is not None:
            unknown = set(self.tolerances) - set(PROPERTY_NAMES)
            if unknown:
                raise ValueError(f"unknown property names: {sorted(unknown)}")
            object.__setattr__(self, "tolerances", dict(self.tolerances))


@dataclass(frozen=True)
class PropertyResult:
    name: str
    tolerance: float
    cases: int
    failures: int
    worst_residual: float
    worst_input: dict
    first_failure: dict
    passed: bool


@dataclass(frozen=True)
class FixtureResult:
    name: str
    passed: bool
    checks: tuple


@dataclass(frozen=True)
class SuiteReport:
    """Aggregated outcome; `passed` means every property and fixture stayed
    within tolerance."""

    seed: int
    cases: int
    signatures: tuple
    tolerances: dict
    properties: tuple
    fixtures: tuple
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "cases": self.cases,
            "signatures": [[s.alpha, s.beta] for s in self.signatures],
            "tolerances": dict(self.tolerances),
            "properties": [
                {
                    "name": p.name,
                    "tolerance": p.tolerance,
                    "cases": p.cases,
                    "failures": p.failures,
                    "worst_residual": p.worst_residual,
                    "worst_input": p.worst_input,
                    "first_failure": p.first_failure,
                    "passed": p.passed,
                }
                for p in self.properties
            ],
            "fixtures": [
                {"name": f.name, "passed": f.passed, "checks": list(f.checks)}
                for f in self.fixtures
            ],
            "passed": self.passed,
        }


def _default_signatures(master: SplitMix64) -> tuple:
    sigs = [EUCLIDEAN, SPLIT]
    for _ in range(2):
        sigs.append(Signature(master.open_closed(0.0, 4.0), master.open_closed(0.0, 4.0)))
    for _ in range(2):
        sigs.append(Signature(master.open_closed(0.0, 4.0), -master.open_closed(0.0, 4.0)))
    return tuple(sigs)


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run every property over every applicable signature, then the fixtures.

    The master generator first draws the default signatures (when none were
    given), then one child seed per property/signature cell in registry
    order, so the whole report is a pure function of the config.
    """
    master = SplitMix64(cfg.seed)
    sigs = cfg.signatures if cfg.signatures is not None else _default_signatures(master)
    tolerances = dict(DEFAULT_TOLERANCES)
    if cfg.tolerances:
        tolerances.update(cfg.tolerances)

    prop_results = []
    for prop in _PROPERTIES:
        tol = tolerances[prop.name]
        total_cases = 0
        failures = 0
        worst = 0.0
        worst_input = None
        first_failure = None
        for sig in sigs:
            if not prop.applies(sig):
                continue
            cell_seed = master.next_u64()
            cell = prop.run(SplitMix64(cell_seed), sig, cfg.cases, tol)
            total_cases += cell["cases"]
            failures += cell["failures"]

            def _tag(inputs):
                if inputs is None:
                    return None
                tagged = {"signature": [sig.alpha, sig.beta], "cell_seed": cell_seed}
                tagged.update(inputs)
                return tagged

            if cell["worst_input"] is not None and cell["worst_residual"] >= worst:
                worst = cell["worst_residual"]
                worst_input = _tag(cell["worst_input"])
            if first_failure is None and cell["first_failure"] is not None:
                first_failure = _tag(cell["first_failure"])
        prop_results.append(
            PropertyResult(
                name=prop.name,
                tolerance=tol,
                cases=total_cases,
                failures=failures,
                worst_residual=worst,
                worst_input=worst_input,
                first_failure=first_failure,
                passed=failures == 0,
            )
        )

    fixture_results = []
    for name, build in _FIXTURES:
        checks = tuple(build())
        fixture_results.append(
            FixtureResult(name=name, passed=all(c["passed"] for c in checks), checks=checks)
        )

    passed = all(p.passed for p in prop_results) and all(
        f.passed for f in fixture_results
    )
    return SuiteReport(
        seed=cfg.seed,
        cases=cfg.cases,
        signatures=tuple(sigs),
        tolerances=tolerances,
        properties=tuple(prop_results),
        fixtures=tuple(fixture_results),
        passed=passed,
    )


# ---------------------------------------------------------------------------
# errata ledger


def erratum_report() -> tuple:
    """Machine-checked ledger of four formula variants this package corrects.

    Each variant looks plausible but contradicts the algebra's defining
    identities; every entry carries the live oracle computation that
    rejects it and the corrected form that is implemented.
    """
    entries = []

    # 1. cross product k component scaled by alpha*beta
    sig = Signature(2.0, 3.0)
    variant_k = sig.alpha * sig.beta * (1.0 * 1.0 - 0.0 * 0.0)  # i x j, k component
    adopted = cross(sig, _E1, _E2)
    entries.append(
        {
            "id": "cross-k-coefficient",
            "variant": "k component of the cross product carries a factor alpha*beta",
            "check": "i x j must equal k, as the pure-quaternion product demands;"
            f" the variant gives alpha*beta*k at (2, 3)",
            "residual": abs(variant_k - adopted.x3),
            "corrected": "k component is u1*v2 - u2*v1 with coefficient 1",
        }
    )

    # 2. normalizing by the norm instead of its square root
    q = GQuat(1.0, 1.0, 0.0, 0.0)
    n = norm(sig, q)
    variant_unit = scale(1.0 / n, q)
    entries.append(
        {
            "id": "unit-normalization",
            "variant": "divide by the norm to obtain a unit quaternion",
            "check": f"norm of q/N for q=(1,1,0,0) at (2, 3) is {norm(sig, variant_unit)},"
            " not 1",
            "residual": abs(norm(sig, variant_unit) - 1.0),
            "corrected": "divide by sqrt(norm); the result then has norm 1",
        }
    )

    # 3. third matrix column without the inner alpha and beta factors
    q = normalize(sig, GQuat(1.0, 0.5, 0.25, 0.75))
    nq = norm(sig, q)
    m13_variant = 2.0 * sig.beta * (q.a1 * q.a3 + q.a0 * q.a2) / nq
    m23_variant = 2.0 * sig.alpha * (q.a2 * q.a3 - q.a0 * q.a1) / nq
    oracle_col3 = conjugation_map(sig, q, _E3)
    m = rotation_matrix(sig, q)
    variant_matrix = Mat3(
        m.entries[:2] + (m13_variant,) + m.entries[3:5] + (m23_variant,) + m.entries[6:]
    )
    variant_rep = is_quasi_orthogonal(sig, variant_matrix, 1e-9)
    entries.append(
        {
            "id": "rotation-matrix-column3",
            "variant": "entries (1,3) and (2,3) written as 2*beta*(a1*a3 + a0*a2)"
            " and 2*alpha*(a2*a3 - a0*a1)",
            "check": "third basis image computed by conjugation disagrees, and the"
            f" variant matrix fails the metric test (residual {variant_rep.residual})",
            "residual": max(
                abs(m13_variant - oracle_col3.x1), abs(m23_variant - oracle_col3.x2)
            ),
            "corrected": "2*beta*(alpha*a1*a3 + a0*a2) and 2*alpha*(beta*a2*a3 - a0*a1)",
        }
    )

    # 4. the transcribed closed-form matrix of the scaled fixture quaternion
    sig21 = Signature(2.0, 1.0)
    variant = _scaled_matrix_variant(sig21)
    rep = is_quasi_orthogonal(sig21, variant, 1e-9)
    good = rotation_matrix(sig21, _scaled_quat(sig21))
    good_rep = is_quasi_orthogonal(sig21, good, 1e-12)
    entries.append(
        {
            "id": "scaled-rotation-matrix",
            "variant": "closed-form matrix for q = 1/sqrt(2) + (1/(2*sqrt(alpha)),"
            " -1/(2*sqrt(beta)), 0)/1 with bare alpha/beta off-diagonal factors",
            "check": f"at (2, 1): M^T E M - E has residual {rep.residual} and"
            f" det {rep.det}; the conjugation-derived matrix passes at 1e-12"
            f" (residual {good_rep.residual})",
            "residual": rep.residual,
            "corrected": "derive the matrix from the conjugation action;"
            " it is quasi-orthogonal for every positive pair",
        }
    )

    return tuple(entries)
