"""Elementary wave curves in the (xi, u) plane.

Waves are parametrized by the xi-ratio q = xi_right / xi_left. For the
backward (slow) family q < 1 is a rarefaction and q > 1 a shock; for the
forward (fast) family it is the other way around. The velocity jump across
a wave is xi_left times an auxiliary function of the ratio alone:

    backward:  u = u_left - phi_bwd(q) * xi_left
    forward:   u = u_left + phi_fwd(q) * xi_left

Both auxiliary functions are strictly increasing, vanish at q = 1, and are
linear with slope kappa on their rarefaction branch. On the shock branch

    |phi(q)| = sqrt((1 - q**(-1/alpha)) * (q**(gamma/alpha) - 1)),

evaluated here via expm1/log so the two factors keep full precision near
q = 1 (the naive powers cancel catastrophically there).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .gas import GasModel, State

# exp overflows just above 709; keep a little headroom for the square root
# and products sitting on top of the power evaluation.
_EXP_LIMIT = 708.0

# Exact shock-branch derivative is used away from 1; inside this window a
# Taylor expansion keeps phi' continuous through the 0/0 point at q = 1.
_SERIES_WINDOW = 1e-6


class WaveFamily(enum.Enum):
    BACKWARD = "backward"
    FORWARD = "forward"


class WaveKind(enum.Enum):
    SHOCK = "shock"
    RAREFACTION = "rarefaction"
    NULL = "null"


@dataclass(frozen=True)
class Wave:
    """One elementary wave: family plus xi-ratio strength."""

    family: WaveFamily
    ratio: float

    def __post_init__(self) -> None:
        if not (self.ratio > 0.0 and math.isfinite(self.ratio)):
            raise DomainError(f"wave ratio must be positive, got {self.ratio}")

    @property
    def kind(self) -> WaveKind:
        if self.ratio == 1.0:
            return WaveKind.NULL
        if self.family is WaveFamily.BACKWARD:
            return WaveKind.SHOCK if self.ratio > 1.0 else WaveKind.RAREFACTION
        return WaveKind.SHOCK if self.ratio < 1.0 else WaveKind.RAREFACTION


def _check_ratio(x: float) -> None:
    if not (x > 0.0 and math.isfinite(x)):
        raise DomainError(f"wave ratio must be positive, got {x}")


def _shock_factors(model: GasModel, x: float) -> tuple[float, float, float]:
    """(g, h, log x) with g = 1 - x**(-1/alpha), h = x**(gamma/alpha) - 1.

    Raises OverflowError once either power leaves double range; the
    threshold is x > exp(708*alpha/gamma) upward, x < exp(-708*alpha)
    downward.
    """
    a = 1.0 / model.alpha
    c = model.gamma / model.alpha
    lx = math.log(x)
    if c * lx > _EXP_LIMIT or -a * lx > _EXP_LIMIT:
        raise OverflowError(
            f"xi-ratio power x**(gamma/alpha) out of double range at x={x} "
            f"(limit exp(708*alpha/gamma) ~ {math.exp(_EXP_LIMIT / c):.3g})"
        )
    g = -math.expm1(-a * lx)
    h = math.expm1(c * lx)
    return g, h, lx


def phi(model: GasModel, family: WaveFamily, x: float) -> float:
    """Velocity-jump factor of a wave with xi-ratio x (see module docstring)."""
    _check_ratio(x)
    if x == 1.0:
        return 0.0
    if family is WaveFamily.BACKWARD:
        if x < 1.0:
            return model.kappa * (x - 1.0)
        g, h, _ = _shock_factors(model, x)
        return math.sqrt(g * h)
    if x > 1.0:
        return model.kappa * (x - 1.0)
    g, h, _ = _shock_factors(model, x)
    # g, h are both negative below 1; the product is positive
    return -math.sqrt(g * h)


def _series_curvature(model: GasModel) -> float:
    # shock branch near 1: phi = kappa*(t + (d/2)*t**3 + O(t**4)), t = x-1,
    # with d = (1/alpha + 1)**2 / 12; the quadratic term vanishes identically
    # (shock and rarefaction branches meet with second-order contact).
    a = 1.0 / model.alpha
    return (a + 1.0) ** 2 / 12.0


def phi_deriv(model: GasModel, family: WaveFamily, x: float) -> float:
    """Exact derivative of phi with respect to the xi-ratio.

    Equal to kappa on the rarefaction branch, greater than kappa on the
    shock branch, continuous (value kappa) through x = 1.
    """
    _check_ratio(x)
    rarefaction = (x < 1.0) if family is WaveFamily.BACKWARD else (x > 1.0)
    if rarefaction:
        return model.kappa
    t = x - 1.0
    if abs(t) <= _SERIES_WINDOW:
        return model.kappa * (1.0 + 1.5 * _series_curvature(model) * t * t)
    a = 1.0 / model.alpha
    c = model.gamma / model.alpha
    g, h, lx = _shock_factors(model, x)
    gp = a * math.exp(-(a + 1.0) * lx)
    hp = c * math.exp((c - 1.0) * lx)
    val = (gp * h + g * hp) / (2.0 * math.sqrt(g * h))
    # backward shocks sit at x > 1 where g, h > 0; forward shocks at x < 1
    # where both are negative, and phi_fwd = -sqrt(g*h) flips the sign back.
    return val if family is WaveFamily.BACKWARD else -val


def wave_right_state(model: GasModel, left: State, wave: Wave) -> State:
    """State on the right of ``wave`` when ``left`` is the state on its left."""
    xi_r = wave.ratio * left.xi
    if wave.family is WaveFamily.BACKWARD:
        u_r = left.u - phi(model, WaveFamily.BACKWARD, wave.ratio) * left.xi
    else:
        u_r = left.u + phi(model, WaveFamily.FORWARD, wave.ratio) * left.xi
    return State(xi=xi_r, u=u_r)
