import json
import math
import subprocess
import sys

import pytest

from genquat.cli import CliRequest, execute, parse_args, to_json

MATRIX_ARGS = [
    "matrix", "--alpha", "1", "--beta", "1",
    "--q", "0.7071067811865476,0.5,-0.5,0",
]
# the transcribed closed-form matrix for the scaled quaternion at (2, 1),
# which is not an isometry of that metric
BAD_MATRIX = (
    "0.75,-0.5,-0.7071067811865476,"
    "-1,0.25,-1.4142135623730951,"
    "0.7071067811865476,0.7071067811865476,-0.25"
)


def run_cli(args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "genquat.cli", *args],
        input=stdin,
        capture_output=True,
    )


class TestToJson:
    def test_integral_floats_drop_the_point(self):
        assert to_json([-1.0, 5.0, 1.0, 2.0]) == "[-1,5,1,2]"

    def test_shortest_round_trip(self):
        assert to_json(0.1) == "0.1"
        assert to_json(1 / 3) == "0.3333333333333333"
        assert to_json(math.sqrt(0.5)) == "0.7071067811865476"

    def test_precision_cap(self):
        assert to_json(math.pi, precision=5) == "3.1416"
        assert to_json(123456.0, precision=3) == "1.23e+05"

    def test_compact_structures(self):
        assert to_json({"a": True, "b": None, "c": [1, "x"]}) == '{"a":true,"b":null,"c":[1,"x"]}'


class TestParsing:
    def test_missing_beta_exits_2(self):
        r = run_cli(["mul", "--alpha", "2", "--q", "1,1,1,0", "--p", "2,0,1,1"])
        assert r.returncode == 2
        assert b"--beta" in r.stderr

    def test_bad_component_names_flag_and_position(self):
        r = run_cli(["mul", "--alpha", "2", "--beta", "3", "--q", "1,2,x,0", "--p", "1,0,0,0"])
        assert r.returncode == 2
        assert b"--q: component 3 not a number" in r.stderr

    def test_wrong_arity(self):
        r = run_cli(["rotate", "--alpha", "1", "--beta", "1", "--q", "1,0,0,0", "--v", "1,2"])
        assert r.returncode == 2
        assert b"--v" in r.stderr

    def test_non_finite_component(self):
        r = run_cli(["matrix", "--alpha", "1", "--beta", "1", "--q", "1,nan,0,0"])
        assert r.returncode == 2
        assert b"component 2 not finite" in r.stderr

    def test_suite_needs_both_signature_flags(self):
        r = run_cli(["suite", "--alpha", "2", "--seed", "1", "--cases", "1"])
        assert r.returncode == 2

    def test_missing_payload_without_batch(self):
        r = run_cli(["mul", "--alpha", "2", "--beta", "3", "--q", "1,0,0,0"])
        assert r.returncode == 2
        assert b"--p" in r.stderr

    def test_parse_args_builds_request(self):
        req = parse_args(["mul", "--alpha", "2", "--beta", "3", "--q", "1,1,1,0", "--p", "2,0,1,1"])
        assert isinstance(req, CliRequest)
        assert req.command == "mul"
        assert req.signature.alpha == 2.0
        assert req.q == (1.0, 1.0, 1.0, 0.0)
        assert req.precision == 17 and not req.batch


class TestWorkedExamples:
    def test_mul_bytes(self):
        r = run_cli(["mul", "--alpha", "2", "--beta", "3", "--q", "1,1,1,0", "--p", "2,0,1,1"])
        assert r.returncode == 0
        assert r.stdout == b'{"q":[-1,5,1,2]}\n'

    def test_matrix_bytes(self):
        r = run_cli(MATRIX_ARGS)
        assert r.returncode == 0
        assert r.stdout == (
            b'{"m":[0.5000000000000001,-0.5,-0.7071067811865476,'
            b'-0.5,0.5000000000000001,-0.7071067811865476,'
            b'0.7071067811865476,0.7071067811865476,1.1102230246251565e-16]}\n'
        )

    def test_verify_rejects_bad_matrix(self):
        r = run_cli(["verify", "--alpha", "2", "--beta", "1", "--matrix", BAD_MATRIX])
        assert r.returncode == 1
        out = json.loads(r.stdout)
        assert out["quasi_orthogonal"] is False
        assert out["residual"] > 1.0

    def test_polar_output(self):
        r = run_cli(["polar", "--alpha", "1", "--beta", "1", "--q", "0.7071067811865476,0.5,-0.5,0"])
        assert r.returncode == 0
        out = json.loads(r.stdout)
        assert out["kind"] == "elliptic"
        assert out["angle"] == pytest.approx(math.pi / 2, abs=1e-12)
        assert out["axis"][0] == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_polar_identity_has_no_axis(self):
        r = run_cli(["polar", "--alpha", "2", "--beta", "3", "--q", "1,0,0,0"])
        out = json.loads(r.stdout)
        assert out == {"kind": "identity", "angle": 0}

    def test_from_axis_angle(self):
        r = run_cli([
            "from-axis-angle", "--alpha", "1", "--beta", "-1",
            "--axis", "0,1,0", "--angle", "0.6", "--kind", "hyperbolic",
        ])
        assert r.returncode == 0
        out = json.loads(r.stdout)
        assert out["q"][0] == pytest.approx(math.cosh(0.3), abs=1e-15)
        assert out["q"][2] == pytest.approx(math.sinh(0.3), abs=1e-15)

    def test_matrix_then_verify_round_trip(self):
        r = run_cli(MATRIX_ARGS)
        entries = json.loads(r.stdout)["m"]
        arg = ",".join(repr(x) for x in entries)
        r2 = run_cli(["verify", "--alpha", "1", "--beta", "1", "--matrix", arg])
        assert r2.returncode == 0
        assert json.loads(r2.stdout)["quasi_orthogonal"] is True


class TestDomainErrors:
    def test_null_vector_part_exit_3(self):
        r = run_cli(["polar", "--alpha", "1", "--beta", "-1", "--q", "1,1,1,0"])
        assert r.returncode == 3
        assert r.stdout == b""
        err = json.loads(r.stderr)
        assert err["error"] == "NullVectorPart"

    def test_zero_divisor_rotate_exit_3(self):
        r = run_cli(["rotate", "--alpha", "1", "--beta", "-1", "--q", "1,0,1,0", "--v", "1,0,0"])
        assert r.returncode == 3
        assert json.loads(r.stderr)["error"] == "NonInvertible"

    def test_degenerate_signature_verify_exit_3(self):
        r = run_cli(["verify", "--alpha", "1", "--beta", "0", "--matrix", ",".join(["1"] * 9)])
        assert r.returncode == 3
        assert json.loads(r.stderr)["error"] == "DegenerateSignature"

    def test_not_unit_polar_exit_3(self):
        r = run_cli(["polar", "--alpha", "2", "--beta", "3", "--q", "1,1,1,0"])
        assert r.returncode == 3
        assert json.loads(r.stderr)["error"] == "NotUnit"


class TestBatch:
    def test_line_counts_match_and_errors_stay_inline(self):
        stdin = (
            b'{"q":[1,1,1,0],"p":[2,0,1,1]}\n'
            b'not json\n'
            b'{"q":[1,0,0,0]}\n'
            b'{"q":[1,0,0,0],"p":[0,1,0,0]}\n'
        )
        r = run_cli(["mul", "--alpha", "2", "--beta", "3", "--batch"], stdin=stdin)
        lines = r.stdout.decode().splitlines()
        assert len(lines) == 4
        assert json.loads(lines[0]) == {"q": [-1, 5, 1, 2]}
        assert json.loads(lines[1])["error"] == "ParseError"
        assert json.loads(lines[2])["error"] == "ParseError"
        assert json.loads(lines[3]) == {"q": [0, 1, 0, 0]}
        assert r.returncode == 3

    def test_clean_batch_exits_0(self):
        stdin = b'{"q":[1,0,0,0],"p":[1,0,0,0]}\n{"q":[0,1,0,0],"p":[0,1,0,0]}\n'
        r = run_cli(["mul", "--alpha", "2", "--beta", "3", "--batch"], stdin=stdin)
        assert r.returncode == 0
        assert len(r.stdout.splitlines()) == 2

    def test_domain_error_line_reports_name(self):
        stdin = b'{"q":[1,0,1,0],"v":[1,0,0]}\n'
        r = run_cli(["rotate", "--alpha", "1", "--beta", "-1", "--batch"], stdin=stdin)
        assert json.loads(r.stdout)["error"] == "NonInvertible"
        assert r.returncode == 3

    def test_verify_batch_failures_exit_1(self):
        stdin = (
            '{"m":[1,0,0,0,1,0,0,0,1]}\n'
            '{"m":[2,0,0,0,1,0,0,0,1]}\n'
        ).encode()
        r = run_cli(["verify", "--alpha", "2", "--beta", "3", "--batch"], stdin=stdin)
        lines = [json.loads(x) for x in r.stdout.splitlines()]
        assert lines[0]["quasi_orthogonal"] is True
        assert lines[1]["quasi_orthogonal"] is False
        assert r.returncode == 1

    def test_batch_flags_provide_defaults(self):
        # the fixed --q applies to every line that does not override it
        stdin = b'{"p":[2,0,1,1]}\n'
        r = run_cli(
            ["mul", "--alpha", "2", "--beta", "3", "--q", "1,1,1,0", "--batch"],
            stdin=stdin,
        )
        assert json.loads(r.stdout) == {"q": [-1, 5, 1, 2]}


class TestPrecision:
    def test_precision_caps_digits(self):
        r = run_cli([*MATRIX_ARGS, "--precision", "6"])
        out = json.loads(r.stdout)
        assert out["m"][2] == pytest.approx(-0.707107, abs=1e-6)
        assert b"0.707107" in r.stdout
        assert b"0.7071067811865476" not in r.stdout

    def test_output_is_stable_across_runs(self):
        a = run_cli(MATRIX_ARGS)
        b = run_cli(MATRIX_ARGS)
        assert a.stdout == b.stdout


class TestSuiteAndErrata:
    def test_suite_small_run_passes_and_is_byte_stable(self):
        args = ["suite", "--seed", "7", "--cases", "20"]
        a = run_cli(args)
        b = run_cli(args)
        assert a.returncode == 0
        assert a.stdout == b.stdout
        report = json.loads(a.stdout)
        assert report["passed"] is True
        assert report["seed"] == 7 and report["cases"] == 20

    def test_suite_single_signature(self):
        r = run_cli(["suite", "--alpha", "2", "--beta", "3", "--seed", "3", "--cases", "10"])
        assert r.returncode == 0
        report = json.loads(r.stdout)
        assert report["signatures"] == [[2, 3]]

    def test_errata_ledger(self):
        r = run_cli(["errata"])
        assert r.returncode == 0
        out = json.loads(r.stdout)
        assert len(out["entries"]) == 4

    def test_execute_in_process(self, capsys):
        code = execute(parse_args(["errata"]))
        assert code == 0
        out = capsys.readouterr().out
        assert json.loads(out)["entries"][0]["id"] == "cross-k-coefficient"
