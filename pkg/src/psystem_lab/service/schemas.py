"""Pydantic request/response models of the service endpoints."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class StateIn(BaseModel):
    xi: float = Field(gt=0, description="density power tau**(-alpha)")
    u: float


class StateOut(BaseModel):
    xi: float
    u: float
    r: float
    s: float
    tau: float


class WaveOut(BaseModel):
    family: Literal["backward", "forward"]
    ratio: float
    kind: Literal["shock", "rarefaction", "null"]


class Meta(BaseModel):
    version: str
    config: dict
    wall_time_s: float


class HealthResponse(BaseModel):
    status: str
    version: str


class PhiRequest(BaseModel):
    gamma: float = Field(gt=1)
    family: Literal["backward", "forward"] = "backward"
    from_x: float = Field(gt=0)
    to_x: float = Field(gt=0)
    points: int = Field(ge=2, le=1_000_000)


class PhiRow(BaseModel):
    x: float
    phi: float
    phi_deriv: float


class PhiResponse(BaseModel):
    meta: Meta
    rows: list[PhiRow]


class RiemannRequest(BaseModel):
    gamma: float = Field(gt=1)
    left: StateIn
    right: StateIn


class RiemannResponse(BaseModel):
    meta: Meta
    vacuum: bool
    b: Optional[float] = None
    f: Optional[float] = None
    middle: Optional[StateOut] = None
    backward: Optional[WaveOut] = None
    forward: Optional[WaveOut] = None


class InteractRequest(BaseModel):
    gamma: float = Field(gt=1)
    kind: str
    q1: float = Field(gt=0)
    q2: float = Field(gt=0)
    far_left: Optional[StateIn] = None


class RealizationOut(BaseModel):
    kind: str
    far_left: StateOut
    middle_in: StateOut
    middle_out: StateOut
    far_right: StateOut
    incoming: list[WaveOut]
    outgoing: list[WaveOut]


class InteractResponse(BaseModel):
    meta: Meta
    B: float
    F: float
    outgoing: str
    realization: Optional[RealizationOut] = None


class TvdExpandRequest(BaseModel):
    gamma: float = Field(gt=1)
    field: str = "raw:r*s"
    dr: float = Field(gt=0, description="magnitude of the r increment")
    ds: float = Field(gt=0, description="magnitude of the s increment")
    sign_case: Literal["iii", "iv"] = "iii"
    halvings: int = Field(default=4, ge=0, le=40)
    base: StateIn = StateIn(xi=1.0, u=0.0)


class TvdExpandRow(BaseModel):
    dr: float
    ds: float
    measured: float
    predicted: float
    ratio: Optional[float] = None


class TvdExpandResponse(BaseModel):
    meta: Meta
    rows: list[TvdExpandRow]


class CounterexampleRequest(BaseModel):
    gamma: float = Field(gt=1)
    case: Literal[1, 2, 3]
    theta: Optional[str] = None
    psi: Optional[str] = None
    interval: tuple[float, float] = (-1.0, 1.0)
    margin: Optional[float] = None
    slack: Optional[float] = None
    slope_min: Optional[float] = None
    slope_max: Optional[float] = None
    curvature_max: Optional[float] = None
    epsilon: Optional[float] = None

    @model_validator(mode="after")
    def _defaults(self) -> "CounterexampleRequest":
        if self.case in (1, 2):
            if self.theta is None:
                self.theta = "2*id" if self.case == 1 else "id"
            if self.psi is None:
                self.psi = "id" if self.case == 1 else "2*id"
            if self.margin is None:
                self.margin = 1.95
            if self.slack is None:
                self.slack = 0.9
        else:
            if self.theta is None:
                self.theta = "id"
            if self.slope_min is None:
                self.slope_min = 1.0
            if self.slope_max is None:
                self.slope_max = 1.0
            if self.curvature_max is None:
                self.curvature_max = 0.0
            if self.epsilon is None:
                self.epsilon = 0.5
        return self


class CounterexampleResponse(BaseModel):
    meta: Meta
    case: int
    strengths: tuple[float, float]
    base_xi: float
    delta_var: float
    lower_bound: float
    outgoing: str
    realization: RealizationOut


class IcRow(BaseModel):
    X: float
    tau: float = Field(gt=0)
    u: float


class GlimmRequest(BaseModel):
    gamma: float = Field(gt=1)
    ic: list[IcRow]
    cells: int = Field(ge=2, le=100_000)
    domain: tuple[float, float] = (0.0, 1.0)
    t_max: float = Field(gt=0)
    field: str = "split:theta=id;psi=id"
    seq: Literal["vdc", "prng", "van-der-corput", "seeded-prng"] = "vdc"
    seed: int = 0
    cfl: float = Field(default=0.9, gt=0, le=1)


class TraceRecord(BaseModel):
    time: float
    total_var_phi: float
    nishida: float
    liu: float


class GlimmResponse(BaseModel):
    meta: Meta
    records: list[TraceRecord]
