"""Searches for interactions that increase the variation of a split field.

Three constructions, one per shape of the field phi = theta(s) - psi(r)
(both parts strictly increasing):

* case 1: theta' dominates psi' somewhere -> a pair of equal backward
  shocks, strong enough that phi_bwd(x) > kappa*(2*margin/slack - 1)*(x-1),
  loses variation on the incoming side and gains 2*(theta jump across the
  outgoing forward rarefaction).
* case 2: psi' dominates theta' -> the mirror construction with a pair of
  forward shocks.
* case 3: theta = psi up to a constant -> a backward rarefaction hit from
  behind by a strong backward shock; strength picked through the slope gap
  y - dB/dx(1, y), which exceeds any bound for large y.

The far-left velocity sits at the middle of the configured interval and
the base xi is halved geometrically until every invariant value of the
realization lies inside the interval (1% margin) and the sign pattern of
the per-wave field changes matches the construction. All scans follow a
fixed order so repeated runs return the identical witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SearchError
from .gas import GasModel, State, invariants
from .interactions import (
    InteractionKind,
    InteractionRealization,
    realize,
    resolve,
    weak_rarefaction_sensitivity,
)
from .scalar_fields import ScalarField, SmoothFn, smooth_bounds_on
from .variation import delta_var, wave_field_changes
from .wave_curves import WaveFamily, phi, wave_right_state

_RATIO_SCAN_CAP = 1e9
_MAX_HALVINGS = 200
_BWD = WaveFamily.BACKWARD
_FWD = WaveFamily.FORWARD


@dataclass(frozen=True)
class CounterexampleConfig:
    """Interval and derivative-bound constants steering the searches.

    ``margin``/``slack`` separate the two slopes in cases 1 and 2
    (dominant slope > margin > dominated slope + slack). Case 3 instead
    needs slope bounds 0 < slope_min <= theta' <= slope_max, a bound
    ``curvature_max`` on |theta''|, and a feasibility slack ``epsilon``.
    """

    interval: tuple[float, float] = (-1.0, 1.0)
    margin: float | None = None
    slack: float | None = None
    slope_min: float | None = None
    slope_max: float | None = None
    curvature_max: float | None = None
    epsilon: float | None = None

    def __post_init__(self) -> None:
        lo, hi = self.interval
        if not lo < hi:
            raise DomainError(f"interval must satisfy lo < hi, got {self.interval}")


@dataclass(frozen=True)
class CounterexampleWitness:
    """A realized interaction whose field variation strictly increases."""

    case: int
    realization: InteractionRealization
    field: ScalarField
    delta_var: float
    lower_bound: float
    strengths: tuple[float, float]
    base_xi: float


def _ratio_scan_up():
    """Deterministic scan grid 2, 3, ..., 100, then geometric with factor 1.05."""
    x = 2.0
    while x <= 100.0:
        yield x
        x += 1.0
    while x < _RATIO_SCAN_CAP:
        x *= 1.05
        yield x


def _invariant_values(rz: InteractionRealization) -> list[float]:
    model = rz.model
    vals: list[float] = []
    for st in rz.states():
        vals.extend(invariants(model, st))
    # far right along the outgoing path: agrees up to rounding, include it
    # so the interval check covers both traversals
    check = wave_right_state(model, rz.middle_out, rz.outgoing[1])
    vals.extend(invariants(model, check))
    return vals


def _all_inside(rz: InteractionRealization, interval: tuple[float, float]) -> bool:
    lo, hi = interval
    pad = 0.01 * (hi - lo)
    return all(lo + pad <= v <= hi - pad for v in _invariant_values(rz))


def _shrink_base_xi(
    model: GasModel,
    kind: InteractionKind,
    strengths: tuple[float, float],
    interval: tuple[float, float],
    x_max: float,
    accept,
) -> tuple[InteractionRealization, float]:
    lo, hi = interval
    u_mid = 0.5 * (lo + hi)
    xi = (hi - lo) / (8.0 * model.kappa * x_max)
    for _ in range(_MAX_HALVINGS):
        rz = realize(model, kind, strengths[0], strengths[1], State(xi=xi, u=u_mid))
        if _all_inside(rz, interval) and accept(rz):
            return rz, xi
        xi *= 0.5
    raise SearchError(f"no admissible base xi after {_MAX_HALVINGS} halvings")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def find_case1(
    model: GasModel, cfg: CounterexampleConfig, theta: SmoothFn, psi: SmoothFn
) -> CounterexampleWitness:
    """Witness for a field whose s-part is steeper than its r-part.

    Needs theta' > margin > psi' + slack > slack on the interval, both
    parts increasing. Returns a pair of equal backward shocks whose
    variation change is at least twice the theta jump across the outgoing
    forward rarefaction (a strictly positive number).
    """
    m, d = cfg.margin, cfg.slack
    _require(m is not None and d is not None, "case 1 needs margin and slack")
    _require(m > d > 0.0, f"need margin > slack > 0, got {m}, {d}")
    lo, hi = cfg.interval
    t_min, _, _ = smooth_bounds_on(theta, lo, hi)
    p_min, p_max, _ = smooth_bounds_on(psi, lo, hi)
    _require(t_min > m, f"theta' must exceed {m} on the interval (min {t_min})")
    _require(p_max < m - d, f"psi' must stay below margin - slack = {m - d} (max {p_max})")
    _require(p_min > 0.0, "psi must be strictly increasing")

    threshold = model.kappa * (2.0 * m / d - 1.0)
    strength = None
    for x in _ratio_scan_up():
        try:
            if phi(model, _BWD, x) > threshold * (x - 1.0):
                strength = x
                break
        except OverflowError:
            raise SearchError(f"overflow at ratio {x} before the strength condition held") from None
    if strength is None:
        raise SearchError("strength scan exhausted")

    field = ScalarField.from_split(theta, psi)

    def accept(rz: InteractionRealization) -> bool:
        ch = wave_field_changes(field, rz)
        return ch.in_first < 0.0 and ch.in_second < 0.0

    rz, xi = _shrink_base_xi(
        model, InteractionKind.IIA, (strength, strength), cfg.interval, strength * strength, accept
    )
    dv = delta_var(field, rz)
    s_mid_out = invariants(model, rz.middle_out)[1]
    s_right = invariants(model, rz.far_right)[1]
    lower = 2.0 * (theta(s_right) - theta(s_mid_out))
    if not (dv > 0.0 and dv >= lower - 1e-10 and lower > 0.0):
        raise SearchError(f"witness check failed: delta_var={dv}, lower bound={lower}")
    return CounterexampleWitness(
        case=1, realization=rz, field=field, delta_var=dv, lower_bound=lower,
        strengths=(strength, strength), base_xi=xi,
    )


def find_case2(
    model: GasModel, cfg: CounterexampleConfig, theta: SmoothFn, psi: SmoothFn
) -> CounterexampleWitness:
    """Mirror of case 1 for fields whose r-part is the steeper one.

    Needs psi' > margin > theta' + slack on the interval. Returns a pair of
    equal forward shocks (ratios below 1); the variation gain is at least
    twice the psi jump across the outgoing backward rarefaction.
    """
    m, d = cfg.margin, cfg.slack
    _require(m is not None and d is not None, "case 2 needs margin and slack")
    _require(m > d > 0.0, f"need margin > slack > 0, got {m}, {d}")
    lo, hi = cfg.interval
    t_min, t_max, _ = smooth_bounds_on(theta, lo, hi)
    p_min, _, _ = smooth_bounds_on(psi, lo, hi)
    _require(p_min > m, f"psi' must exceed {m} on the interval (min {p_min})")
    _require(t_max < m - d, f"theta' must stay below margin - slack = {m - d} (max {t_max})")
    _require(t_min > 0.0, "theta must be strictly increasing")

    # mirror condition: phi_fwd(x) < kappa*(1 - 2*margin/slack)*(1 - x), x < 1
    threshold = model.kappa * (1.0 - 2.0 * m / d)
    strength = None
    for x_up in _ratio_scan_up():
        x = 1.0 / x_up
        try:
            if phi(model, _FWD, x) < threshold * (1.0 - x):
                strength = x
                break
        except OverflowError:
            raise SearchError(f"overflow at ratio {x} before the strength condition held") from None
    if strength is None:
        raise SearchError("strength scan exhausted")

    field = ScalarField.from_split(theta, psi)

    def accept(rz: InteractionRealization) -> bool:
        ch = wave_field_changes(field, rz)
        return ch.in_first > 0.0 and ch.in_second > 0.0

    rz, xi = _shrink_base_xi(
        model, InteractionKind.IIA_P, (strength, strength), cfg.interval, 1.0, accept
    )
    dv = delta_var(field, rz)
    r_left = invariants(model, rz.far_left)[0]
    r_mid_out = invariants(model, rz.middle_out)[0]
    lower = 2.0 * (psi(r_mid_out) - psi(r_left))
    if not (dv > 0.0 and dv >= lower - 1e-10 and lower > 0.0):
        raise SearchError(f"witness check failed: delta_var={dv}, lower bound={lower}")
    return CounterexampleWitness(
        case=2, realization=rz, field=field, delta_var=dv, lower_bound=lower,
        strengths=(strength, strength), base_xi=xi,
    )


def find_case3(
    model: GasModel, cfg: CounterexampleConfig, theta: SmoothFn
) -> CounterexampleWitness:
    """Witness for phi = theta(s) - theta(r) (equal parts up to a constant).

    A backward rarefaction of ratio x < 1 is overtaken by a backward shock
    of ratio y > 1 chosen so that the slope gap y - dB/dx(1, y) exceeds
    (slope_max + 2*epsilon)/slope_min; x is then pushed toward 1 until the
    outgoing pair is shock+shock and slope_min*B*(1-F) >
    (slope_max+epsilon)*(1-x). For small base xi the variation change is
    exactly -2*(field jump across outgoing forward) + 2*(jump across
    incoming rarefaction) > 0.
    """
    n_lo, n_hi = cfg.slope_min, cfg.slope_max
    m_u, eps = cfg.curvature_max, cfg.epsilon
    _require(
        None not in (n_lo, n_hi, m_u, eps),
        "case 3 needs slope_min, slope_max, curvature_max and epsilon",
    )
    _require(0.0 < n_lo <= n_hi, f"need 0 < slope_min <= slope_max, got {n_lo}, {n_hi}")
    _require(m_u >= 0.0 and eps > 0.0, "need curvature_max >= 0 and epsilon > 0")
    lo, hi = cfg.interval
    t_min, t_max, t_curv = smooth_bounds_on(theta, lo, hi)
    _require(t_min >= n_lo and t_max <= n_hi, f"theta' range [{t_min}, {t_max}] outside bounds")
    _require(t_curv <= m_u, f"|theta''| reaches {t_curv}, above curvature_max={m_u}")

    gap_needed = (n_hi + 2.0 * eps) / n_lo
    shock = None
    for y in _ratio_scan_up():
        try:
            if y - weak_rarefaction_sensitivity(model, y) > gap_needed:
                shock = y
                break
        except OverflowError:
            raise SearchError(f"overflow at ratio {y} before the slope-gap condition held") from None
    if shock is None:
        raise SearchError("shock-strength scan exhausted")

    rare = None
    x = 0.5
    for _ in range(60):
        out_b, out_f = resolve(model, InteractionKind.IIC, x, shock)
        if out_b > 1.0 and n_lo * out_b * (1.0 - out_f) > (n_hi + eps) * (1.0 - x):
            rare = x
            break
        x = 0.5 * (x + 1.0)
    if rare is None:
        raise SearchError("no admissible rarefaction strength below 1")

    field = ScalarField.from_split(theta, theta)

    def accept(rz: InteractionRealization) -> bool:
        ch = wave_field_changes(field, rz)
        signs_ok = (
            ch.in_first < 0.0
            and ch.in_second > 0.0
            and ch.out_backward > 0.0
            and ch.out_forward < ch.in_first
        )
        return signs_ok and delta_var(field, rz) > 0.0

    rz, xi = _shrink_base_xi(
        model, InteractionKind.IIC, (rare, shock), cfg.interval,
        max(1.0, shock), accept,
    )
    dv = delta_var(field, rz)
    ch = wave_field_changes(field, rz)
    lower = -2.0 * ch.out_forward + 2.0 * ch.in_first
    if not (dv > 0.0 and math.isclose(dv, lower, rel_tol=0.0, abs_tol=1e-10)):
        raise SearchError(f"variation identity violated: delta_var={dv}, expected {lower}")
    return CounterexampleWitness(
        case=3, realization=rz, field=field, delta_var=dv, lower_bound=lower,
        strengths=(rare, shock), base_xi=xi,
    )
