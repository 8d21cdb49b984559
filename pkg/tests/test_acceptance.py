"""Acceptance gate: every release criterion at its stated tolerance.

Each test prints one PASS/FAIL line (visible with pytest -s) and asserts.
The randomized criteria draw from fixed SplitMix64 seeds, so the whole
module is deterministic and replayable.
"""

import json
import math
import subprocess
import sys

from genquat import (
    EUCLIDEAN,
    SPLIT,
    GQuat,
    Mat3,
    NonInvertible,
    PolarForm,
    Signature,
    SplitMix64,
    Vec3,
    conjugate,
    conjugation_map,
    cross,
    det3,
    from_axis_angle,
    from_scalar_vector,
    inner,
    inverse,
    is_quasi_orthogonal,
    left_matrix,
    mat_mul,
    mat_vec,
    mat_vec4,
    multiply,
    norm,
    normalize,
    polar_form,
    pure,
    rodrigues_matrix,
    rotation_matrix,
    vector_angle,
    wittenburg_matrix,
)

SQ2 = math.sqrt(0.5)


def report(number, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"acceptance criterion {number:02d} [{label}]: {status}{suffix}")
    assert ok, f"criterion {number} failed: {label} {detail}"


def rand_quat(rng):
    return GQuat(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))


def rand_vec(rng):
    return Vec3(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2))


def unit_quat(rng, sig):
    while True:
        q = rand_quat(rng)
        if norm(sig, q) >= 0.5:
            u = normalize(sig, q)
            if max(abs(c) for c in u.as_tuple()) <= 2.5:
                return u


def sample_signatures(seed):
    """(1,1), (1,-1), three positive pairs, three split-like pairs."""
    rng = SplitMix64(seed)
    sigs = [EUCLIDEAN, SPLIT]
    for _ in range(3):
        sigs.append(Signature(rng.open_closed(0, 4), rng.open_closed(0, 4)))
    for _ in range(3):
        sigs.append(Signature(rng.open_closed(0, 4), -rng.open_closed(0, 4)))
    return sigs


def rel_entries(a, b):
    return max(
        abs(x - y) / max(1.0, abs(x), abs(y)) for x, y in zip(a.entries, b.entries)
    )


def run_cli(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "genquat.cli", *args], input=stdin, capture_output=True
    )


def test_criterion_01_euclidean_example():
    q = GQuat(SQ2, 0.5, -0.5, 0.0)
    m = rotation_matrix(EUCLIDEAN, q)
    want = (0.5, -0.5, -SQ2, -0.5, 0.5, -SQ2, SQ2, SQ2, 0.0)
    matrix_err = max(abs(a - b) for a, b in zip(m.entries, want))
    pf = polar_form(EUCLIDEAN, q)
    angle_err = abs(pf.angle - math.pi / 2)
    axis_err = max(
        abs(a - b) for a, b in zip(pf.axis.as_tuple(), (SQ2, -SQ2, 0.0))
    )
    ok = matrix_err <= 1e-15 and angle_err <= 1e-12 and axis_err <= 1e-12
    report(1, "euclidean rotation example", ok,
           f"matrix {matrix_err:.2e}, angle {angle_err:.2e}, axis {axis_err:.2e}")


def test_criterion_02_split_example():
    q = GQuat(math.sqrt(3) / 2, 0.5, 0.0, 0.0)
    m = rotation_matrix(SPLIT, q)
    s32 = math.sqrt(3) / 2
    want = (1.0, 0.0, 0.0, 0.0, 0.5, -s32, 0.0, s32, 0.5)
    matrix_err = max(abs(a - b) for a, b in zip(m.entries, want))
    # elliptic angle extracted from the action on the rotated plane, which
    # is negative definite here: the metric flips the cosine's sign
    probe = Vec3(0, 1, 0)
    angle = vector_angle(SPLIT, probe, mat_vec(m, probe))
    angle_err = abs(angle - 2 * math.pi / 3)
    ok = matrix_err <= 1e-15 and angle_err <= 1e-12
    report(2, "split rotation example", ok,
           f"matrix {matrix_err:.2e}, plane angle {angle_err:.2e}")


def test_criterion_03_scaled_example_and_erratum():
    basis = (Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))
    worst_res = worst_det = worst_angle = 0.0
    variants_all_fail = True
    for al, be in ((2.0, 3.0), (2.0, 1.0), (5.0, 0.5)):
        sig = Signature(al, be)
        q = GQuat(SQ2, 1 / (2 * math.sqrt(al)), -1 / (2 * math.sqrt(be)), 0)
        cols = [conjugation_map(sig, q, e) for e in basis]
        oracle = Mat3.from_rows(
            (cols[0].x1, cols[1].x1, cols[2].x1),
            (cols[0].x2, cols[1].x2, cols[2].x2),
            (cols[0].x3, cols[1].x3, cols[2].x3),
        )
        rep = is_quasi_orthogonal(sig, oracle, 1e-12)
        worst_res = max(worst_res, rep.residual)
        worst_det = max(worst_det, abs(rep.det - 1.0))
        worst_angle = max(worst_angle, abs(polar_form(sig, q).angle - math.pi / 2))
        variant = Mat3(
            (
                0.5 + 0.25 * (al - be), -be / 2, -be / math.sqrt(2),
                -al / 2, 0.5 + 0.25 * (be - al), -al / math.sqrt(2),
                1 / math.sqrt(2), 1 / math.sqrt(2), 0.5 - 0.25 * (al + be),
            )
        )
        if is_quasi_orthogonal(sig, variant, 1e-9).passed:
            variants_all_fail = False
    ok = (
        worst_res <= 1e-12
        and worst_det <= 1e-12
        and worst_angle <= 1e-12
        and variants_all_fail
    )
    report(3, "scaled example with erratum regression", ok,
           f"residual {worst_res:.2e}, det {worst_det:.2e}, angle {worst_angle:.2e},"
           f" variants rejected {variants_all_fail}")


def _criterion_4_5_loop():
    basis = (Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1))
    worst_res = worst_det = worst_oracle = 0.0
    ok_qo = True
    rng = SplitMix64(101)
    for sig in sample_signatures(20240808):
        for _ in range(1000):
            q = unit_quat(rng, sig)
            m = rotation_matrix(sig, q)
            rep = is_quasi_orthogonal(sig, m, 1e-9)
            ok_qo = ok_qo and rep.passed
            worst_res = max(worst_res, rep.residual)
            worst_det = max(worst_det, abs(rep.det - 1.0))
            for j, e in enumerate(basis):
                img = conjugation_map(sig, q, e)
                for i, val in enumerate(img.as_tuple()):
                    worst_oracle = max(worst_oracle, abs(m.entry(i, j) - val))
    return ok_qo, worst_res, worst_det, worst_oracle


LOOP_45 = {}


def test_criterion_04_quasi_orthogonality_property():
    LOOP_45.update(zip(("ok_qo", "res", "det", "oracle"), _criterion_4_5_loop()))
    ok = LOOP_45["ok_qo"] and LOOP_45["det"] <= 1e-10
    report(4, "8000 random rotations stay quasi-orthogonal", ok,
           f"worst residual {LOOP_45['res']:.2e}, worst |det-1| {LOOP_45['det']:.2e}")


def test_criterion_05_oracle_agreement():
    if not LOOP_45:
        LOOP_45.update(zip(("ok_qo", "res", "det", "oracle"), _criterion_4_5_loop()))
    ok = LOOP_45["oracle"] <= 1e-12
    report(5, "closed form equals the conjugation oracle", ok,
           f"worst column deviation {LOOP_45['oracle']:.2e}")


def test_criterion_06_rodrigues_equivalence():
    rng = SplitMix64(102)
    worst = 0.0

    def unit_axis(sig, timelike):
        # metric-weighted construction, robust for every signature
        while True:
            w = rand_vec(rng)
            if timelike:
                nn = w.x1 * w.x1 + w.x2 * w.x2 + w.x3 * w.x3
            else:
                nn = w.x2 * w.x2 + w.x3 * w.x3 - w.x1 * w.x1
            if nn < 0.25:
                continue
            s = math.sqrt(nn)
            ab = abs(sig.beta)
            return Vec3(
                w.x1 / (s * math.sqrt(sig.alpha)),
                w.x2 / (s * math.sqrt(ab)),
                w.x3 / (s * math.sqrt(sig.alpha * ab)),
            )

    for _ in range(1000):
        sig = Signature(rng.open_closed(0, 4), rng.open_closed(0, 4))
        pf = PolarForm("elliptic", rng.uniform(0, 2 * math.pi), unit_axis(sig, True))
        worst = max(
            worst,
            rel_entries(rodrigues_matrix(sig, pf), rotation_matrix(sig, from_axis_angle(sig, pf))),
        )
    for _ in range(500):
        sig = Signature(rng.open_closed(0, 4), -rng.open_closed(0, 4))
        angle = rng.uniform(0.1, 3.0)
        if rng.unit_float() < 0.5:
            angle = -angle
        pf = PolarForm("hyperbolic", angle, unit_axis(sig, False))
        worst = max(
            worst,
            rel_entries(rodrigues_matrix(sig, pf), rotation_matrix(sig, from_axis_angle(sig, pf))),
        )
    ok = worst <= 1e-12
    report(6, "rodrigues form equals rotation of the rebuilt quaternion", ok,
           f"worst residual {worst:.2e}")


def test_criterion_07_algebra_suite():
    rng = SplitMix64(103)
    worst = {"assoc": 0.0, "normmul": 0.0, "faithful": 0.0, "antihom": 0.0, "pure": 0.0}
    for _ in range(1000):
        sig = Signature(rng.uniform(-4, 4), rng.uniform(-4, 4))
        q, p, r = rand_quat(rng), rand_quat(rng), rand_quat(rng)

        lhs = multiply(sig, multiply(sig, q, p), r)
        rhs = multiply(sig, q, multiply(sig, p, r))
        worst["assoc"] = max(
            worst["assoc"],
            max(abs(a - b) / max(1.0, abs(a), abs(b))
                for a, b in zip(lhs.as_tuple(), rhs.as_tuple())),
        )

        a = norm(sig, multiply(sig, q, p))
        b = norm(sig, q) * norm(sig, p)
        worst["normmul"] = max(worst["normmul"], abs(a - b) / max(1.0, abs(a), abs(b)))

        via = mat_vec4(left_matrix(sig, q), p.as_tuple())
        worst["faithful"] = max(
            worst["faithful"],
            max(abs(x - y) for x, y in zip(multiply(sig, q, p).as_tuple(), via)),
        )

        ch = conjugate(multiply(sig, q, p))
        cr = multiply(sig, conjugate(p), conjugate(q))
        worst["antihom"] = max(
            worst["antihom"],
            max(abs(x - y) / max(1.0, abs(x), abs(y))
                for x, y in zip(ch.as_tuple(), cr.as_tuple())),
        )

        u, v = rand_vec(rng), rand_vec(rng)
        pl = multiply(sig, pure(u), pure(v))
        pr = from_scalar_vector(-inner(sig, u, v), cross(sig, u, v))
        worst["pure"] = max(
            worst["pure"],
            max(abs(x - y) / max(1.0, abs(x), abs(y))
                for x, y in zip(pl.as_tuple(), pr.as_tuple())),
        )

    zero_divisor_raises = False
    try:
        inverse(SPLIT, GQuat(1, 0, 1, 0))
    except NonInvertible:
        zero_divisor_raises = True

    ok = (
        worst["assoc"] <= 1e-9
        and worst["normmul"] <= 1e-9
        and worst["faithful"] == 0.0
        and worst["antihom"] <= 1e-12
        and worst["pure"] <= 1e-12
        and zero_divisor_raises
    )
    report(7, "algebra property suite", ok,
           f"assoc {worst['assoc']:.2e}, norm-mult {worst['normmul']:.2e},"
           f" faithful {worst['faithful']:.1e}, anti-hom {worst['antihom']:.2e},"
           f" pure {worst['pure']:.2e}, zero divisor raises {zero_divisor_raises}")


def test_criterion_08_euclidean_reduction():
    rng = SplitMix64(104)
    worst = 0.0
    for _ in range(1000):
        q = unit_quat(rng, EUCLIDEAN)
        a = rotation_matrix(EUCLIDEAN, q)
        b = wittenburg_matrix(q)
        worst = max(worst, max(abs(x - y) for x, y in zip(a.entries, b.entries)))
    ok = worst <= 1e-14
    report(8, "euclidean closed form equals the reference conversion", ok,
           f"worst entry deviation {worst:.2e}")


def test_criterion_09_matrix_homomorphism():
    rng = SplitMix64(105)
    worst = 0.0
    for sig in sample_signatures(20240808):
        for _ in range(1000):
            q, p = unit_quat(rng, sig), unit_quat(rng, sig)
            lhs = rotation_matrix(sig, multiply(sig, q, p))
            rhs = mat_mul(rotation_matrix(sig, q), rotation_matrix(sig, p))
            worst = max(worst, rel_entries(lhs, rhs))
    ok = worst <= 1e-10
    report(9, "matrix homomorphism over 8000 unit pairs", ok,
           f"worst residual {worst:.2e}")


def test_criterion_10_cli_contract():
    mul = run_cli(["mul", "--alpha", "2", "--beta", "3", "--q", "1,1,1,0", "--p", "2,0,1,1"])
    mul_ok = mul.returncode == 0 and mul.stdout == b'{"q":[-1,5,1,2]}\n'

    matrix = run_cli(["matrix", "--alpha", "1", "--beta", "1",
                      "--q", "0.7071067811865476,0.5,-0.5,0"])
    expected_entries = (0.5, -0.5, -SQ2, -0.5, 0.5, -SQ2, SQ2, SQ2, 0.0)
    got = json.loads(matrix.stdout)["m"]
    matrix_ok = (
        matrix.returncode == 0
        and max(abs(a - b) for a, b in zip(got, expected_entries)) <= 1e-15
        and matrix.stdout == run_cli(
            ["matrix", "--alpha", "1", "--beta", "1",
             "--q", "0.7071067811865476,0.5,-0.5,0"]
        ).stdout
    )

    bad = ("0.75,-0.5,-0.7071067811865476,"
           "-1,0.25,-1.4142135623730951,"
           "0.7071067811865476,0.7071067811865476,-0.25")
    verify = run_cli(["verify", "--alpha", "2", "--beta", "1", "--matrix", bad])
    verify_ok = (
        verify.returncode == 1
        and json.loads(verify.stdout)["quasi_orthogonal"] is False
    )

    suite_a = run_cli(["suite", "--seed", "42", "--cases", "200"])
    suite_b = run_cli(["suite", "--seed", "42", "--cases", "200"])
    suite_ok = (
        suite_a.returncode == 0
        and suite_a.stdout == suite_b.stdout
        and json.loads(suite_a.stdout)["passed"] is True
    )

    ok = mul_ok and matrix_ok and verify_ok and suite_ok
    report(10, "CLI worked examples and suite stability", ok,
           f"mul {mul_ok}, matrix {matrix_ok}, verify {verify_ok}, suite {suite_ok}")
