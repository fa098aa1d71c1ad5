"""FastAPI service exposing measures, powers, sweeps, and verification.

The endpoint bodies live in plain ``run_*`` functions that take and return
pydantic models; the CLI calls these directly when no server is configured,
so both front ends share one code path.  Malformed or unphysical inputs map
to HTTP 422 with the offending field or the measured invariant residual in
the detail.
"""

from __future__ import annotations

from contextlib import contextmanager

from fastapi import FastAPI, HTTPException

from . import __version__, jsonio
from .coherence import Measure, c_l1, c_rel_entropy
from .errors import DimensionError, FormatError, InvariantError
from .optimize import OptimizerConfig
from .powers import (
    PowerKind,
    cohering_power,
    complete_cohering_power,
    complete_decohering_power,
    decohering_power,
    default_k_max,
    generalized_cohering_power,
    generalized_decohering_power,
    separable_complete_decohering_power,
    sweep_complete_power,
)
from .schemas import (
    MeasureRequest,
    MeasureResponse,
    PowerReportModel,
    PowerRequest,
    PowerResponse,
    SweepRequest,
    SweepResponse,
    SweepRow,
    VerifyRequest,
    VerifyResponse,
)
from .verify import all_passed, run_all
from .zoo import build


def _resolve_channel(channel, spec):
    if (channel is None) == (spec is None):
        raise FormatError("channel", "provide exactly one of 'channel' or 'spec'")
    if channel is not None:
        return jsonio.channel_from_json(channel.model_dump(exclude_none=True), "channel")
    return build(jsonio.spec_from_json(spec.model_dump(exclude_none=True), "spec"))


def _config(seed: int, restarts) -> OptimizerConfig:
    if restarts is None:
        return OptimizerConfig(rng_seed=seed)
    return OptimizerConfig(restarts=restarts, rng_seed=seed)


def run_measure(req: MeasureRequest) -> MeasureResponse:
    rho = jsonio.state_from_json(req.state.model_dump(exclude_none=True), "state")
    fn = c_rel_entropy if req.kind == Measure.REL_ENTROPY.value else c_l1
    return MeasureResponse(kind=req.kind, value=fn(rho))


def _report_model(report) -> PowerReportModel:
    return PowerReportModel.model_validate(jsonio.report_to_json(report))


def run_power(req: PowerRequest) -> PowerResponse:
    phi = _resolve_channel(req.channel, req.spec)
    config = _config(req.seed, req.restarts)
    measure = Measure(req.measure)
    k_max = req.k_max if req.k_max is not None else default_k_max(phi.dim_in)
    cgen = None
    if req.power == "cohering":
        reports = [cohering_power(phi, measure, config)]
    elif req.power == "generalized-cohering":
        reports = [generalized_cohering_power(phi, measure, config)]
    elif req.power == "complete-cohering":
        reports = complete_cohering_power(phi, measure, k_max, config)
    elif req.power == "decohering":
        reports = [decohering_power(phi, measure, config)]
    elif req.power == "generalized-decohering":
        reports = [generalized_decohering_power(phi, measure, config)]
    elif req.power == "complete-decohering":
        reports = complete_decohering_power(phi, measure, k_max, config)
    elif req.power == "separable-complete-decohering":
        if measure != Measure.REL_ENTROPY:
            raise FormatError(
                "measure", "separable-complete-decohering supports rel-entropy only"
            )
        reports = separable_complete_decohering_power(phi, k_max, config)
    elif req.power == "cgen-upper-bound":
        if measure != Measure.REL_ENTROPY:
            raise FormatError("measure", "cgen-upper-bound is a rel-entropy quantity")
        gen = generalized_cohering_power(phi, Measure.REL_ENTROPY, config)
        reports = [gen]
        cgen = gen.value
    else:  # unreachable given the schema Literal
        raise FormatError("power", f"unknown power kind {req.power!r}")
    return PowerResponse(
        power=req.power,
        measure=req.measure,
        reports=[_report_model(r) for r in reports],
        cgen_upper_bound=cgen,
    )


def run_sweep(req: SweepRequest) -> SweepResponse:
    phi = _resolve_channel(req.channel, req.spec)
    config = _config(req.seed, req.restarts)
    measure = Measure(req.measure)
    if req.power == "separable-complete-decohering" and measure != Measure.REL_ENTROPY:
        raise FormatError(
            "measure", "separable-complete-decohering supports rel-entropy only"
        )
    pairs = sweep_complete_power(phi, PowerKind(req.power), measure, req.k_max, config)
    rows = [
        SweepRow(
            k=report.k,
            value=report.value,
            upper_bound=jsonio.real_to_json(report.upper_bound),
            family=report.family,
            seed=req.seed,
            wall_ms=wall_ms,
        )
        for report, wall_ms in pairs
    ]
    return SweepResponse(power=req.power, measure=req.measure, rows=rows)


def run_verify(req: VerifyRequest) -> VerifyResponse:
    try:
        results = run_all(seed=req.seed, claim_ids=req.claims)
    except KeyError as exc:
        raise FormatError("claims", str(exc)) from exc
    return VerifyResponse(
        all_passed=all_passed(results),
        claims=[jsonio.claim_to_json(r) for r in results],
    )


@contextmanager
def _http_errors():
    try:
        yield
    except (FormatError, InvariantError, DimensionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


app = FastAPI(
    title="cohpow",
    version=__version__,
    description=(
        "Coherence measures of quantum states and cohering/decohering powers "
        "of quantum channels"
    ),
)


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/measure", response_model=MeasureResponse)
def measure_endpoint(req: MeasureRequest):
    with _http_errors():
        return run_measure(req)


@app.post("/power", response_model=PowerResponse)
def power_endpoint(req: PowerRequest):
    with _http_errors():
        return run_power(req)


@app.post("/sweep", response_model=SweepResponse)
def sweep_endpoint(req: SweepRequest):
    with _http_errors():
        return run_sweep(req)


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(req: VerifyRequest):
    with _http_errors():
        return run_verify(req)
