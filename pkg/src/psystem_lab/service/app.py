"""FastAPI application and the plain handler functions behind each route.

The handlers are ordinary functions taking and returning pydantic models,
so the CLI can call them in-process; the routes only add HTTP error
translation on top.
"""

from __future__ import annotations

import math
import time

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, counterexamples, gas, glimm, interactions, variation
from ..errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    SearchError,
    VacuumError,
)
from ..gas import State
from ..riemann import RiemannFan, Vacuum, solve_riemann
from ..scalar_fields import parse_field_spec, parse_smooth_fn
from ..wave_curves import Wave, WaveFamily, phi, phi_deriv
from . import schemas as sc


def _meta(config_model, started: float) -> sc.Meta:
    return sc.Meta(
        version=__version__,
        config=config_model.model_dump(),
        wall_time_s=time.perf_counter() - started,
    )


def _state_out(model: gas.GasModel, st: State) -> sc.StateOut:
    r, s = gas.invariants(model, st)
    return sc.StateOut(xi=st.xi, u=st.u, r=r, s=s, tau=gas.tau_of(model, st))


def _wave_out(w: Wave) -> sc.WaveOut:
    return sc.WaveOut(family=w.family.value, ratio=w.ratio, kind=w.kind.value)


def _realization_out(rz: interactions.InteractionRealization) -> sc.RealizationOut:
    m = rz.model
    return sc.RealizationOut(
        kind=rz.kind.value,
        far_left=_state_out(m, rz.far_left),
        middle_in=_state_out(m, rz.middle_in),
        middle_out=_state_out(m, rz.middle_out),
        far_right=_state_out(m, rz.far_right),
        incoming=[_wave_out(w) for w in rz.incoming],
        outgoing=[_wave_out(w) for w in rz.outgoing],
    )


def _geometric_grid(lo: float, hi: float, points: int) -> list[float]:
    if points == 1:
        return [lo]
    step = (math.log(hi) - math.log(lo)) / (points - 1)
    return [math.exp(math.log(lo) + k * step) for k in range(points)]


def phi_sweep(req: sc.PhiRequest) -> sc.PhiResponse:
    t0 = time.perf_counter()
    model = gas.new_model(req.gamma)
    family = WaveFamily(req.family)
    rows = [
        sc.PhiRow(x=x, phi=phi(model, family, x), phi_deriv=phi_deriv(model, family, x))
        for x in _geometric_grid(req.from_x, req.to_x, req.points)
    ]
    return sc.PhiResponse(meta=_meta(req, t0), rows=rows)


def riemann_solve(req: sc.RiemannRequest) -> sc.RiemannResponse:
    t0 = time.perf_counter()
    model = gas.new_model(req.gamma)
    left = State(xi=req.left.xi, u=req.left.u)
    right = State(xi=req.right.xi, u=req.right.u)
    out = solve_riemann(model, left, right)
    if isinstance(out, Vacuum):
        return sc.RiemannResponse(meta=_meta(req, t0), vacuum=True)
    assert isinstance(out, RiemannFan)
    return sc.RiemannResponse(
        meta=_meta(req, t0),
        vacuum=False,
        b=out.backward.ratio,
        f=out.forward.ratio,
        middle=_state_out(model, out.middle),
        backward=_wave_out(out.backward),
        forward=_wave_out(out.forward),
    )


def interact(req: sc.InteractRequest) -> sc.InteractResponse:
    t0 = time.perf_counter()
    model = gas.new_model(req.gamma)
    try:
        kind = interactions.InteractionKind(req.kind)
    except ValueError:
        raise DomainError(f"unknown interaction kind {req.kind!r}") from None
    label = interactions.classify_outcome(model, kind, req.q1, req.q2)
    out_b, out_f = interactions.resolve(model, kind, req.q1, req.q2)
    rz_out = None
    if req.far_left is not None:
        far_left = State(xi=req.far_left.xi, u=req.far_left.u)
        rz_out = _realization_out(interactions.realize(model, kind, req.q1, req.q2, far_left))
    return sc.InteractResponse(
        meta=_meta(req, t0), B=out_b, F=out_f, outgoing=label, realization=rz_out
    )


def tvd_expand(req: sc.TvdExpandRequest) -> sc.TvdExpandResponse:
    t0 = time.perf_counter()
    model = gas.new_model(req.gamma)
    field = parse_field_spec(req.field)
    base = State(xi=req.base.xi, u=req.base.u)
    coeffs = variation.expansion_coefficients(field, base, model)
    if coeffs.phi_s == 0.0 or coeffs.phi_r == 0.0:
        raise DegenerateError("phi_r and phi_s must not vanish at the base state")
    sign_r = 1.0 if coeffs.phi_r > 0 else -1.0
    sign_s = -1.0 if coeffs.phi_s > 0 else 1.0
    if req.sign_case == "iv":
        sign_r, sign_s = -sign_r, -sign_s
    rows = []
    for k in range(req.halvings + 1):
        dr = sign_r * req.dr / 2**k
        ds = sign_s * req.ds / 2**k
        measured, predicted, _ = variation.weak_expansion_check(field, base, dr, ds, model)
        ratio = measured / predicted if predicted != 0.0 else None
        rows.append(sc.TvdExpandRow(dr=dr, ds=ds, measured=measured, predicted=predicted, ratio=ratio))
    return sc.TvdExpandResponse(meta=_meta(req, t0), rows=rows)


def counterexample(req: sc.CounterexampleRequest) -> sc.CounterexampleResponse:
    t0 = time.perf_counter()
    model = gas.new_model(req.gamma)
    cfg = counterexamples.CounterexampleConfig(
        interval=req.interval,
        margin=req.margin,
        slack=req.slack,
        slope_min=req.slope_min,
        slope_max=req.slope_max,
        curvature_max=req.curvature_max,
        epsilon=req.epsilon,
    )
    theta = parse_smooth_fn(req.theta)
    if req.case == 1:
        witness = counterexamples.find_case1(model, cfg, theta, parse_smooth_fn(req.psi))
    elif req.case == 2:
        witness = counterexamples.find_case2(model, cfg, theta, parse_smooth_fn(req.psi))
    else:
        witness = counterexamples.find_case3(model, cfg, theta)
    rz = witness.realization
    label = interactions.outgoing_label(rz)
    return sc.CounterexampleResponse(
        meta=_meta(req, t0),
        case=witness.case,
        strengths=witness.strengths,
        base_xi=witness.base_xi,
        delta_var=witness.delta_var,
        lower_bound=witness.lower_bound,
        outgoing=label,
        realization=_realization_out(rz),
    )


def glimm_run(req: sc.GlimmRequest) -> sc.GlimmResponse:
    t0 = time.perf_counter()
    model = gas.new_model(req.gamma)
    field = parse_field_spec(req.field)
    ic = [(row.X, row.tau, row.u) for row in req.ic]
    sol = glimm.init_simulation(model, ic, req.cells, req.domain, cfl=req.cfl)
    seq = {"vdc": "van-der-corput", "prng": "seeded-prng"}.get(req.seq, req.seq)
    _, trace = glimm.run(sol, req.t_max, sequence=seq, field=field, seed=req.seed)
    records = [sc.TraceRecord(**rec) for rec in trace.records()]
    return sc.GlimmResponse(meta=_meta(req, t0), records=records)


def create_app() -> FastAPI:
    app = FastAPI(
        title="psystem-lab",
        version=__version__,
        description="Exact Riemann solver, wave-interaction algebra and "
        "variation functionals for gamma-law isentropic gas dynamics.",
    )

    @app.exception_handler(DomainError)
    @app.exception_handler(DegenerateError)
    async def _domain_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(VacuumError)
    async def _vacuum_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(ConvergenceError)
    @app.exception_handler(SearchError)
    async def _search_error(request: Request, exc: Exception) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": type(exc).__name__, "detail": str(exc)})

    @app.get("/health", response_model=sc.HealthResponse)
    def health() -> sc.HealthResponse:
        return sc.HealthResponse(status="ok", version=__version__)

    app.post("/phi", response_model=sc.PhiResponse)(phi_sweep)
    app.post("/riemann", response_model=sc.RiemannResponse)(riemann_solve)
    app.post("/interact", response_model=sc.InteractResponse)(interact)
    app.post("/tvd-expand", response_model=sc.TvdExpandResponse)(tvd_expand)
    app.post("/counterexample", response_model=sc.CounterexampleResponse)(counterexample)
    app.post("/glimm", response_model=sc.GlimmResponse)(glimm_run)
    return app


app = create_app()
