"""JSON wire formats for states, channels, specs, reports, and claims.

Complex numbers travel as two-element arrays ``[re, im]``; matrices are
row-major nested lists of those pairs.  A state object carries ``dims``
and ``matrix``; a channel carries ``dim_in``, ``dim_out``, and ``kraus``.
Infinite values are encoded as the string ``"inf"`` (plain JSON has no
infinity literal).  Decoding reports malformed input through
:class:`~cohpow.errors.FormatError`, which names the offending field.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .channels import KrausChannel
from .errors import FormatError
from .optimize import OptimizerConfig
from .powers import PowerReport
from .states import DensityMatrix
from .verify import ClaimResult
from .zoo import ChannelSpec


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def matrix_to_json(m: np.ndarray) -> list:
    return [[_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def _complex_from_json(obj, field: str) -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
    ):
        raise FormatError(field, f"expected a [re, im] number pair, got {obj!r}")
    return complex(obj[0], obj[1])


def matrix_from_json(obj, field: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise FormatError(field, "expected a non-empty list of rows")
    rows = []
    width = None
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise FormatError(f"{field}[{i}]", "expected a non-empty list of entries")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"{field}[{i}]", f"row length {len(row)} != {width}")
        rows.append([_complex_from_json(z, f"{field}[{i}][{j}]") for j, z in enumerate(row)])
    return np.array(rows, dtype=complex)


def _int_list(obj, field: str) -> list[int]:
    if not isinstance(obj, list) or not obj:
        raise FormatError(field, "expected a non-empty list of integers")
    out = []
    for i, v in enumerate(obj):
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise FormatError(f"{field}[{i}]", f"expected a positive integer, got {v!r}")
        out.append(v)
    return out


def state_to_json(rho: DensityMatrix) -> dict:
    return {"dims": list(rho.dims), "matrix": matrix_to_json(rho.matrix)}


def state_from_json(obj, field: str = "state") -> DensityMatrix:
    """Decode and fully validate a density matrix.

    Raises :class:`FormatError` on structural problems and
    :class:`~cohpow.errors.InvariantError` (with the measured residual)
    when the matrix is not a valid state.
    """
    if not isinstance(obj, dict):
        raise FormatError(field, "expected an object with 'dims' and 'matrix'")
    if "matrix" not in obj:
        raise FormatError(f"{field}.matrix", "missing")
    matrix = matrix_from_json(obj["matrix"], f"{field}.matrix")
    dims = _int_list(obj["dims"], f"{field}.dims") if "dims" in obj else None
    return DensityMatrix(matrix, dims)


def channel_to_json(phi: KrausChannel) -> dict:
    return {
        "dim_in": phi.dim_in,
        "dim_out": phi.dim_out,
        "kraus": [matrix_to_json(k) for k in phi.kraus],
    }


def channel_from_json(obj, field: str = "channel") -> KrausChannel:
    if not isinstance(obj, dict):
        raise FormatError(field, "expected an object with 'dim_in', 'dim_out', 'kraus'")
    if "kraus" not in obj:
        raise FormatError(f"{field}.kraus", "missing")
    if not isinstance(obj["kraus"], list) or not obj["kraus"]:
        raise FormatError(f"{field}.kraus", "expected a non-empty list of matrices")
    ops = [
        matrix_from_json(k, f"{field}.kraus[{i}]") for i, k in enumerate(obj["kraus"])
    ]
    for name in ("dim_in", "dim_out"):
        if name in obj:
            want = obj[name]
            got = ops[0].shape[1] if name == "dim_in" else ops[0].shape[0]
            if want != got:
                raise FormatError(
                    f"{field}.{name}", f"declared {want} but operators have {got}"
                )
    return KrausChannel(tuple(ops))


def spec_to_json(spec: ChannelSpec) -> dict:
    out = {"name": spec.name}
    for name in ("dim", "target", "p", "env_dim", "seed"):
        value = getattr(spec, name)
        if value is not None and not (name == "target" and value == 0):
            out[name] = value
    if spec.matrix is not None:
        out["matrix"] = matrix_to_json(spec.matrix)
    return out


def spec_from_json(obj, field: str = "spec") -> ChannelSpec:
    if not isinstance(obj, dict):
        raise FormatError(field, "expected an object with a 'name'")
    if "name" not in obj or not isinstance(obj["name"], str):
        raise FormatError(f"{field}.name", "missing or not a string")
    kwargs = {"name": obj["name"]}
    for name, kind in (("dim", int), ("target", int), ("env_dim", int), ("seed", int)):
        if name in obj:
            v = obj[name]
            if not isinstance(v, kind) or isinstance(v, bool):
                raise FormatError(f"{field}.{name}", f"expected an integer, got {v!r}")
            kwargs[name] = v
    if "p" in obj:
        v = obj["p"]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise FormatError(f"{field}.p", f"expected a number, got {v!r}")
        kwargs["p"] = float(v)
    if "matrix" in obj:
        kwargs["matrix"] = matrix_from_json(obj["matrix"], f"{field}.matrix")
    return ChannelSpec(**kwargs)


def real_to_json(x: float):
    """Floats pass through; infinities become the string "inf" / "-inf"."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def real_from_json(obj, field: str) -> float:
    if obj == "inf":
        return math.inf
    if obj == "-inf":
        return -math.inf
    if not isinstance(obj, (int, float)) or isinstance(obj, bool):
        raise FormatError(field, f"expected a number or 'inf', got {obj!r}")
    return float(obj)


def config_to_json(config: OptimizerConfig) -> dict:
    return dataclasses.asdict(config)


def report_to_json(report: PowerReport) -> dict:
    out = {
        "kind": report.kind.value,
        "measure": report.measure.value,
        "k": report.k,
        "value": report.value,
        "upper_bound": real_to_json(report.upper_bound),
        "optimal_input": state_to_json(report.optimal_input),
        "family": report.family,
        "feasible": report.feasible,
        "config": config_to_json(report.config),
    }
    if report.product_lower_bound is not None:
        out["product_lower_bound"] = report.product_lower_bound
    if report.notes:
        out["notes"] = report.notes
    return out


def claim_to_json(result: ClaimResult) -> dict:
    return {
        "claim_id": result.claim_id,
        "description": result.description,
        "measured": {k: real_to_json(v) for k, v in result.measured.items()},
        "tolerance": result.tolerance,
        "passed": result.passed,
        "seed": result.seed,
    }
