"""Batch-capable command-line front end.

One JSON object per computation on stdout.  Exit codes: 0 success, 1 a
verification or suite failure, 2 usage, 3 domain error (the error object
goes to stderr as {"error": <name>, "detail": <message>}).

With --batch, payloads are read as JSON Lines from stdin (one object per
line with keys such as "q", "p", "v", "m", "axis", "angle", "kind"; the
signature stays fixed by the flags) and exactly one JSON object is written
per input line; a malformed line produces an error object in place without
aborting the batch.

Numbers are printed in the shortest decimal form that round-trips, capped
at --precision significant digits (default 17, the full round-trip
precision); integral values drop the trailing ".0".  Output is locale
independent and byte-stable for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .algebra import GQuat, multiply
from .conformance import SuiteConfig, erratum_report, run_suite
from .errors import AlgebraError
from .metric import Mat3, Signature, Vec3, is_quasi_orthogonal
from .rotation import (
    PolarForm,
    conjugation_map,
    from_axis_angle,
    polar_form,
    rotation_matrix,
)

__all__ = ["CliRequest", "parse_args", "execute", "main", "to_json"]

_COMMANDS = (
    "mul",
    "rotate",
    "matrix",
    "polar",
    "from-axis-angle",
    "verify",
    "suite",
    "errata",
)


# ---------------------------------------------------------------------------
# JSON output


def _format_float(x: float, precision: int) -> str:
    if precision >= 17:
        s = repr(x)
    else:
        s = format(x, f".{precision}g")
    if s.endswith(".0"):
        s = s[:-2]
    return s


def to_json(value, precision: int = 17) -> str:
    """Serialize to compact JSON with the number policy described above."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value, precision)
    if isinstance(value, str):
        return json.dumps(value)
    if value is None:
        return "null"
    if isinstance(value, dict):
        parts = (f"{json.dumps(str(k))}:{to_json(v, precision)}" for k, v in value.items())
        return "{" + ",".join(parts) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(to_json(v, precision) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


# ---------------------------------------------------------------------------
# argument parsing


@dataclass(frozen=True)
class CliRequest:
    command: str
    signature: Signature = None
    q: tuple = None
    p: tuple = None
    v: tuple = None
    axis: tuple = None
    angle: float = None
    kind: str = None
    matrix: tuple = None
    tol: float = 1e-9
    seed: int = 42
    cases: int = 200
    precision: int = 17
    batch: bool = False


def _components(count: int):
    def parse(text: str) -> tuple:
        parts = text.split(",")
        if len(parts) != count:
            raise argparse.ArgumentTypeError(
                f"expected {count} comma-separated numbers, got {len(parts)}"
            )
        out = []
        for i, part in enumerate(parts, 1):
            try:
                x = float(part)
            except ValueError:
                raise argparse.ArgumentTypeError(f"component {i} not a number") from None
            if not math.isfinite(x):
                raise argparse.ArgumentTypeError(f"component {i} not finite")
            out.append(x)
        return tuple(out)

    return parse


def _finite_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not a number") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError("not finite")
    return x


def _positive_float(text: str) -> float:
    x = _finite_float(text)
    if x <= 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _uint64(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer") from None
    if not 0 <= n < 1 << 64:
        raise argparse.ArgumentTypeError("must fit in 64 unsigned bits")
    return n


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genquat",
        description="Two-parameter quaternion algebra: products, rotations,"
        " verification and the conformance suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(p, *, signature=True, batch=True):
        if signature:
            p.add_argument("--alpha", type=_finite_float, required=True)
            p.add_argument("--beta", type=_finite_float, required=True)
        p.add_argument("--precision", type=_positive_int, default=17)
        if batch:
            p.add_argument("--batch", action="store_true")

    p_mul = sub.add_parser("mul", help="quaternion product")
    common(p_mul)
    p_mul.add_argument("--q", type=_components(4))
    p_mul.add_argument("--p", type=_components(4))

    p_rot = sub.add_parser("rotate", help="apply the conjugation action to a vector")
    common(p_rot)
    p_rot.add_argument("--q", type=_components(4))
    p_rot.add_argument("--v", type=_components(3))

    p_mat = sub.add_parser("matrix", help="rotation matrix of a quaternion")
    common(p_mat)
    p_mat.add_argument("--q", type=_components(4))

    p_pol = sub.add_parser("polar", help="polar decomposition of a unit quaternion")
    common(p_pol)
    p_pol.add_argument("--q", type=_components(4))

    p_faa = sub.add_parser("from-axis-angle", help="unit quaternion from a polar form")
    common(p_faa)
    p_faa.add_argument("--axis", type=_components(3))
    p_faa.add_argument("--angle", type=_finite_float)
    p_faa.add_argument("--kind", choices=("elliptic", "hyperbolic"))

    p_ver = sub.add_parser("verify", help="quasi-orthogonality test of a matrix")
    common(p_ver)
    p_ver.add_argument("--matrix", type=_components(9))
    p_ver.add_argument("--tol", type=_positive_float, default=1e-9)

    p_suite = sub.add_parser("suite", help="run the conformance suite")
    p_suite.add_argument("--alpha", type=_finite_float)
    p_suite.add_argument("--beta", type=_finite_float)
    p_suite.add_argument("--seed", type=_uint64, default=42)
    p_suite.add_argument("--cases", type=_positive_int, default=200)
    p_suite.add_argument("--precision", type=_positive_int, default=17)

    p_err = sub.add_parser("errata", help="emit the machine-checked errata ledger")
    p_err.add_argument("--precision", type=_positive_int, default=17)

    return parser


_REQUIRED_PAYLOAD = {
    "mul": ("q", "p"),
    "rotate": ("q", "v"),
    "matrix": ("q",),
    "polar": ("q",),
    "from-axis-angle": ("axis", "angle", "kind"),
    "verify": ("matrix",),
}


def parse_args(argv) -> CliRequest:
    """Parse argv into a CliRequest; usage problems exit 2 via argparse."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    command = ns.command

    signature = None
    if command == "suite":
        given = (ns.alpha is not None, ns.beta is not None)
        if any(given) and not all(given):
            parser.error("suite needs --alpha and --beta together or neither")
        if all(given):
            if ns.alpha * ns.beta == 0.0:
                parser.error("suite needs a nondegenerate signature (alpha*beta != 0)")
            signature = Signature(ns.alpha, ns.beta)
    elif command != "errata":
        signature = Signature(ns.alpha, ns.beta)

    batch = getattr(ns, "batch", False)
    if command in _REQUIRED_PAYLOAD and not batch:
        for field in _REQUIRED_PAYLOAD[command]:
            if getattr(ns, field.replace("-", "_")) is None:
                parser.error(f"argument --{field} is required (or use --batch)")

    return CliRequest(
        command=command,
        signature=signature,
        q=getattr(ns, "q", None),
        p=getattr(ns, "p", None),
        v=getattr(ns, "v", None),
        axis=getattr(ns, "axis", None),
        angle=getattr(ns, "angle", None),
        kind=getattr(ns, "kind", None),
        matrix=getattr(ns, "matrix", None),
        tol=getattr(ns, "tol", 1e-9),
        seed=getattr(ns, "seed", 42),
        cases=getattr(ns, "cases", 200),
        precision=ns.precision,
        batch=batch,
    )


# ---------------------------------------------------------------------------
# execution


def _quat(values) -> GQuat:
    return GQuat(*values)


def _vec(values) -> Vec3:
    return Vec3(*values)


def _compute(req: CliRequest, payload: dict):
    """Run one computation; returns (result object, exit code)."""
    sig = req.signature
    command = req.command
    if command == "mul":
        r = multiply(sig, _quat(payload["q"]), _quat(payload["p"]))
        return {"q": list(r.as_tuple())}, 0
    if command == "rotate":
        r = conjugation_map(sig, _quat(payload["q"]), _vec(payload["v"]))
        return {"v": list(r.as_tuple())}, 0
    if command == "matrix":
        m = rotation_matrix(sig, _quat(payload["q"]))
        return {"m": list(m.entries)}, 0
    if command == "polar":
        pf = polar_form(sig, _quat(payload["q"]))
        out = {"kind": pf.kind, "angle": pf.angle}
        if pf.axis is not None:
            out["axis"] = list(pf.axis.as_tuple())
        return out, 0
    if command == "from-axis-angle":
        pf = PolarForm(payload["kind"], payload["angle"], _vec(payload["axis"]))
        r = from_axis_angle(sig, pf)
        return {"q": list(r.as_tuple())}, 0
    if command == "verify":
        rep = is_quasi_orthogonal(sig, Mat3(tuple(payload["m"])), payload["tol"])
        result = {
            "quasi_orthogonal": rep.passed,
            "residual": rep.residual,
            "det": rep.det,
        }
        return result, 0 if rep.passed else 1
    raise ValueError(f"unknown command {command!r}")


def _flag_payload(req: CliRequest) -> dict:
    return {
        "q": req.q,
        "p": req.p,
        "v": req.v,
        "axis": req.axis,
        "angle": req.angle,
        "kind": req.kind,
        "m": req.matrix,
        "tol": req.tol,
    }


def _line_payload(req: CliRequest, obj: dict) -> dict:
    if not isinstance(obj, dict):
        raise ValueError("each batch line must be a JSON object")
    arity = {"q": 4, "p": 4, "v": 3, "axis": 3, "m": 9}
    payload = {"tol": req.tol, "kind": req.kind, "angle": req.angle}
    for key in ("q", "p", "v", "axis"):
        payload[key] = getattr(req, key)
    payload["m"] = req.matrix
    for key, value in obj.items():
        name = "m" if key == "matrix" else key
        if name in arity:
            if not isinstance(value, (list, tuple)) or len(value) != arity[name]:
                raise ValueError(f'"{key}" must be a list of {arity[name]} numbers')
            floats = []
            for i, x in enumerate(value, 1):
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise ValueError(f'"{key}" component {i} not a number')
                if not math.isfinite(float(x)):
                    raise ValueError(f'"{key}" component {i} not finite')
                floats.append(float(x))
            payload[name] = tuple(floats)
        elif name == "angle":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError('"angle" must be a number')
            payload["angle"] = float(value)
        elif name == "kind":
            if value not in ("elliptic", "hyperbolic", "identity"):
                raise ValueError('"kind" must be elliptic, hyperbolic or identity')
            payload["kind"] = value
        else:
            raise ValueError(f'unknown key "{key}"')
    for field in _REQUIRED_PAYLOAD[req.command]:
        name = "m" if field == "matrix" else field
        if payload.get(name) is None:
            raise ValueError(f'missing "{name}" for {req.command}')
    return payload


def _run_batch(req: CliRequest, stdin, stdout) -> int:
    worst = 0
    for line in stdin:
        line = line.strip()
        try:
            obj = json.loads(line) if line else None
            if obj is None:
                raise ValueError("empty line")
            result, code = _compute(req, _line_payload(req, obj))
        except json.JSONDecodeError as exc:
            result, code = {"error": "ParseError", "detail": str(exc)}, 3
        except ValueError as exc:
            result, code = {"error": "ParseError", "detail": str(exc)}, 3
        except AlgebraError as exc:
            result, code = {"error": type(exc).__name__, "detail": str(exc)}, 3
        stdout.write(to_json(result, req.precision) + "\n")
        worst = max(worst, code)
    stdout.flush()
    return worst


def execute(req: CliRequest) -> int:
    """Run a parsed request, write its JSON to stdout, return the exit code."""
    out = sys.stdout
    try:
        if req.command == "suite":
            sigs = (req.signature,) if req.signature is not None else None
            report = run_suite(SuiteConfig(seed=req.seed, cases=req.cases, signatures=sigs))
            out.write(to_json(report.to_json_dict(), req.precision) + "\n")
            return 0 if report.passed else 1
        if req.command == "errata":
            out.write(to_json({"entries": list(erratum_report())}, req.precision) + "\n")
            return 0
        if req.batch:
            return _run_batch(req, sys.stdin, out)
        result, code = _compute(req, _flag_payload(req))
        out.write(to_json(result, req.precision) + "\n")
        return code
    except AlgebraError as exc:
        sys.stderr.write(
            to_json({"error": type(exc).__name__, "detail": str(exc)}, req.precision)
            + "\n"
        )
        return 3


def main(argv=None) -> int:
    req = parse_args(sys.argv[1:] if argv is None else argv)
    return execute(req)


if __name__ == "__main__":
    sys.exit(main())
