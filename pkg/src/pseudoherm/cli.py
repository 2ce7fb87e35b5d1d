"""Command-line front end.

Subcommands::

    pseudoherm analyze SOURCE [KEY=VALUE ...]   # SOURCE: matrix file, model-spec file, or model kind
    pseudoherm check-metric H_FILE ETA_FILE
    pseudoherm generate KIND [KEY=VALUE ...]

Exit codes for ``analyze``: 0 AllReal, 2 ConjugatePairedNotAllReal,
3 StarViolated, 4 defective (no complete biorthonormal system),
1 operational error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np
import scipy

from . import __version__
from .antilinear import commutes, make_parity_time
from .biorthonormal import condition_estimate, decompose
from .errors import DefectiveMatrix, PseudoHermError
from .linalg import as_square, frobenius_norm, general_eigendecomposition
from .matrixio import format_matrix, load_json, matrix_from_dict, parse_matrix_file, write_matrix_file
from .metric import (
    CONVENTIONS,
    DEFAULT_TOL,
    Classification,
    MetricOperator,
    canonical_metric,
    diagnose_system,
    pseudo_hermiticity_residual,
    theorem_check_system,
)
from .models import MODEL_KINDS, ModelSpec

__all__ = ["main", "run_analyze", "run_check_metric", "run_generate"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CODES = {
    Classification.ALL_REAL.value: 0,
    Classification.CONJUGATE_PAIRED.value: 2,
    Classification.STAR_VIOLATED.value: 3,
    "defective": 4,
}

VERSIONS = f"pseudoherm {__version__}; numpy {np.__version__}; scipy {scipy.__version__}"

_NUM = {"type": "number", "minimum": 0}
_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

#: JSON Schema of the ``analyze`` report.
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "input_descriptor", "dim", "eigenvalues", "classification", "residuals",
        "metric_present", "conventions", "tolerances", "versions",
    ],
    "properties": {
        "input_descriptor": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "eigenvalues": {"type": "array", "items": _PAIR},
        "classification": {"enum": [c.value for c in Classification] + ["defective"]},
        "residuals": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["biorthogonality", "completeness", "e4", "pseudo_hermiticity", "commutation"],
                    "properties": {
                        k: _NUM
                        for k in ("biorthogonality", "completeness", "e4", "pseudo_hermiticity", "commutation")
                    },
                    "additionalProperties": False,
                },
            ]
        },
        "metric_present": {"type": "boolean"},
        "conventions": {"type": "string"},
        "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
        "versions": {"type": "string"},
        "pairing": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "max_imag": _NUM,
        "condition_estimate": _NUM,
        "theorem": {
            "type": "object",
            "required": ["spectrum_real", "e4_residual", "agree"],
            "properties": {
                "spectrum_real": {"type": "boolean"},
                "e4_residual": _NUM,
                "agree": {"type": "boolean"},
            },
        },
        "metric": {
            "type": "object",
            "required": ["hermiticity_residual", "definiteness", "min_abs_eigenvalue"],
        },
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {"type": {"type": "string"}, "message": {"type": "string"}},
        },
    },
}


@dataclass
class Outcome:
    payload: dict
    exit_code: int


def _error(exc: BaseException) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc)}}


def _pairs(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values)]


def parse_params(tokens) -> dict:
    """``["n=4", "gamma=0.5"]`` -> ``{"n": "4", "gamma": "0.5"}``."""
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key:
            raise ValueError(f"expected KEY=VALUE, got {tok!r}")
        out[key] = value
    return out


def spec_from_tokens(kind: str, tokens) -> ModelSpec:
    params = parse_params(tokens)
    size = params.pop("size", params.pop("n", 2))
    seed = params.pop("seed", 0)
    return ModelSpec(kind=kind, size=int(size), params=params, seed=int(seed))


def resolve_source(source: str, tokens=()) -> tuple[np.ndarray, str]:
    """Turn an ``analyze`` SOURCE into a matrix and a descriptor string."""
    if source in MODEL_KINDS:
        spec = spec_from_tokens(source, tokens)
        return spec.generate(), spec.describe()
    if tokens:
        raise ValueError("KEY=VALUE parameters only apply to model kinds")
    data = load_json(source)
    if isinstance(data, dict) and "kind" in data:
        spec = ModelSpec.from_dict(data)
        return spec.generate(), spec.describe()
    return matrix_from_dict(data), f"file {source}"


def run_analyze(h, descriptor: str, tol: float = DEFAULT_TOL) -> Outcome:
    """Decompose, diagnose and theorem-check ``h``; build the report."""
    h = as_square(h)
    n = h.shape[0]
    report = {
        "input_descriptor": descriptor,
        "dim": n,
        "eigenvalues": [],
        "classification": None,
        "residuals": None,
        "metric_present": False,
        "conventions": CONVENTIONS,
        "tolerances": {"tol": tol, "degeneracy": 1e-8, "singular_pivot": 1e-12},
        "versions": VERSIONS,
    }
    try:
        system = decompose(h, tol)
    except DefectiveMatrix as exc:
        try:
            report["eigenvalues"] = _pairs(general_eigendecomposition(h, 1.0).eigenvalues)
        except PseudoHermError:
            pass
        report["classification"] = "defective"
        report.update(_error(exc))
        return Outcome(report, EXIT_CODES["defective"])

    diagnosis = diagnose_system(h, system, tol)
    theorem = theorem_check_system(h, system, tol)
    eta = diagnosis.metric or canonical_metric(system)
    report["eigenvalues"] = _pairs(system.eigenvalues)
    report["classification"] = diagnosis.classification.value
    report["residuals"] = {
        "biorthogonality": system.biorthogonality_residual,
        "completeness": system.completeness_residual,
        "e4": theorem.e4_residual,
        "pseudo_hermiticity": pseudo_hermiticity_residual(h, eta),
        "commutation": commutes(h, make_parity_time(n)),
    }
    report["metric_present"] = diagnosis.metric is not None
    report["pairing"] = [list(g) for g in diagnosis.pairing]
    report["max_imag"] = diagnosis.max_imag
    report["theorem"] = {
        "spectrum_real": theorem.spectrum_real,
        "e4_residual": theorem.e4_residual,
        "agree": theorem.agree,
    }
    report["condition_estimate"] = condition_estimate(system)
    if diagnosis.metric is not None:
        report["metric"] = {
            "hermiticity_residual": eta.hermiticity_residual,
            "definiteness": eta.definiteness.value,
            "min_abs_eigenvalue": eta.min_abs_eigenvalue,
        }
    return Outcome(report, EXIT_CODES[diagnosis.classification.value])


def run_check_metric(h, eta, tol: float = DEFAULT_TOL) -> Outcome:
    """Test ``H^dagger = eta H eta^{-1}`` for a user-supplied ``eta``."""
    h = as_square(h)
    metric = MetricOperator.from_matrix(eta)
    residual = pseudo_hermiticity_residual(h, metric)
    hermitian = metric.hermiticity_residual <= tol * frobenius_norm(metric.matrix)
    passed = residual <= tol and hermitian and metric.is_invertible
    payload = {
        "pseudo_hermiticity_residual": residual,
        "hermiticity_residual": metric.hermiticity_residual,
        "definiteness": metric.definiteness.value,
        "min_abs_eigenvalue": metric.min_abs_eigenvalue,
        "tol": tol,
        "passed": passed,
        "conventions": "H^dagger eta = eta H",
    }
    return Outcome(payload, EXIT_OK if passed else EXIT_ERROR)


def run_generate(spec: ModelSpec, out=None) -> str:
    """Write the model's matrix file to ``out`` (if given) and return its text."""
    h = spec.generate()
    if out is not None:
        write_matrix_file(h, out)
    return format_matrix(h)


def _format_value(v):
    if isinstance(v, float):
        return format(v, ".12g")
    if isinstance(v, dict):
        return ", ".join(f"{k}={_format_value(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    return str(v)


def render(payload: dict, emit: str) -> str:
    if emit == "json":
        return json.dumps(payload, indent=2) + "\n"
    return "".join(f"{k}: {_format_value(v)}\n" for k, v in payload.items())


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance (default 1e-8)")
    common.add_argument("--emit", choices=("json", "text"), default="json", help="output format")
    common.add_argument("--out", help="write the output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Decide spectral reality of non-Hermitian matrices via their biorthonormal metric.",
    )
    parser.add_argument("--version", action="version", version=VERSIONS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="classify the spectrum of a matrix or model")
    p.add_argument("source", help="matrix file, model-spec file, or one of: " + ", ".join(MODEL_KINDS))
    p.add_argument("params", nargs="*", metavar="KEY=VALUE", help="model parameters (n, seed, gamma, J, ...)")
    p.add_argument("--metric-out", help="also write the canonical metric as a matrix file")

    p = sub.add_parser("check-metric", parents=[common], help="test H^dagger = eta H eta^-1")
    p.add_argument("h_path")
    p.add_argument("eta_path")

    p = sub.add_parser("generate", parents=[common], help="write a model's matrix file")
    p.add_argument("kind", choices=MODEL_KINDS)
    p.add_argument("params", nargs="*", metavar="KEY=VALUE")
    return parser


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            h, descriptor = resolve_source(args.source, args.params)
            outcome = run_analyze(h, descriptor, args.tol)
            if args.metric_out and outcome.payload.get("metric_present"):
                write_matrix_file(canonical_metric(decompose(h, args.tol)).matrix, args.metric_out)
            _emit(render(outcome.payload, args.emit), args.out)
            return outcome.exit_code
        if args.command == "check-metric":
            outcome = run_check_metric(parse_matrix_file(args.h_path), parse_matrix_file(args.eta_path), args.tol)
            _emit(render(outcome.payload, args.emit), args.out)
            return outcome.exit_code
        text = run_generate(spec_from_tokens(args.kind, args.params), args.out)
        if not args.out:
            sys.stdout.write(text)
        return EXIT_OK
    except (PseudoHermError, ValueError, OSError) as exc:
        sys.stdout.write(json.dumps(_error(exc)) + "\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
