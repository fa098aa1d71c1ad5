"""Pydantic request/response models for the HTTP service and thin CLI.

These mirror the JSON wire formats from :mod:`cohpow.jsonio`; deep matrix
validation (shape, complex pairs, physical invariants) happens in the core
decoders so the CLI and the service report identical errors.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

MeasureName = Literal["rel-entropy", "l1"]
PowerName = Literal[
    "cohering",
    "generalized-cohering",
    "complete-cohering",
    "decohering",
    "generalized-decohering",
    "complete-decohering",
    "separable-complete-decohering",
    "cgen-upper-bound",
]
SweepPowerName = Literal[
    "complete-cohering",
    "complete-decohering",
    "separable-complete-decohering",
]


class StateModel(BaseModel):
    dims: Optional[list[int]] = None
    matrix: list


class ChannelModel(BaseModel):
    dim_in: Optional[int] = None
    dim_out: Optional[int] = None
    kraus: list


class ChannelSpecModel(BaseModel):
    name: str
    dim: Optional[int] = None
    target: int = 0
    matrix: Optional[list] = None
    p: Optional[float] = None
    env_dim: Optional[int] = None
    seed: Optional[int] = None


class MeasureRequest(BaseModel):
    state: StateModel
    kind: MeasureName


class MeasureResponse(BaseModel):
    kind: MeasureName
    value: float


class OptimizerModel(BaseModel):
    restarts: int
    max_iters: int
    f_tol: float
    x_tol: float
    rng_seed: int


class PowerRequest(BaseModel):
    channel: Optional[ChannelModel] = None
    spec: Optional[ChannelSpecModel] = None
    power: PowerName
    measure: MeasureName = "rel-entropy"
    k_max: Optional[int] = Field(default=None, ge=1)
    restarts: Optional[int] = Field(default=None, ge=1)
    seed: int = 0


class PowerReportModel(BaseModel):
    kind: str
    measure: MeasureName
    k: int
    value: float
    upper_bound: Union[float, str]
    optimal_input: StateModel
    family: str
    feasible: bool = True
    config: OptimizerModel
    product_lower_bound: Optional[float] = None
    notes: Optional[str] = None


class PowerResponse(BaseModel):
    power: PowerName
    measure: MeasureName
    reports: list[PowerReportModel]
    # Set when power == "cgen-upper-bound": the same number caps the
    # coherence generating capacity and equals the capacity under maximal
    # incoherent operations.
    cgen_upper_bound: Optional[float] = None


class SweepRequest(BaseModel):
    channel: Optional[ChannelModel] = None
    spec: Optional[ChannelSpecModel] = None
    power: SweepPowerName
    measure: MeasureName = "rel-entropy"
    k_max: int = Field(default=4, ge=1)
    restarts: Optional[int] = Field(default=None, ge=1)
    seed: int = 0


class SweepRow(BaseModel):
    k: int
    value: float
    upper_bound: Union[float, str]
    family: str
    seed: int
    wall_ms: float


class SweepResponse(BaseModel):
    power: SweepPowerName
    measure: MeasureName
    rows: list[SweepRow]


class VerifyRequest(BaseModel):
    seed: int = 0
    claims: Optional[list[str]] = None


class ClaimModel(BaseModel):
    claim_id: str
    description: str
    measured: dict[str, Union[float, str]]
    tolerance: float
    passed: bool
    seed: int


class VerifyResponse(BaseModel):
    all_passed: bool
    claims: list[ClaimModel]
