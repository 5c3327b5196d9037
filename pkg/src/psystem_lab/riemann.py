"""Exact Riemann solver and self-similar fan sampling.

The two-wave solution of a Riemann problem is pinned down by the backward
ratio b, the root of

    xi_l * phi_bwd(b) + xi_r * phi_bwd(b * xi_l / xi_r) = u_l - u_r,

whose left side is strictly increasing in b with infimum
-kappa*(xi_l + xi_r). A solution therefore exists exactly when
u_r - u_l < kappa*(xi_r + xi_l); at or beyond that threshold the problem
opens a vacuum and `Vacuum` is returned instead of a fan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from . import gas
from .gas import GasModel, State
from .rootfind import solve_increasing
from .wave_curves import Wave, WaveFamily, WaveKind, phi, phi_deriv, wave_right_state


@dataclass(frozen=True)
class RiemannFan:
    """Two-wave solution: left | backward wave | middle | forward wave | right."""

    left: State
    middle: State
    right: State
    backward: Wave
    forward: Wave


@dataclass(frozen=True)
class Vacuum:
    """Outcome tag: the states are too far apart, a vacuum region opens."""


RiemannOutcome = Union[RiemannFan, Vacuum]


def solve_riemann(model: GasModel, left: State, right: State) -> RiemannOutcome:
    """Resolve (left, right) into a fan, or Vacuum when no-vacuum fails.

    Equality u_r - u_l = kappa*(xi_r + xi_l) is classified as Vacuum: the
    no-vacuum condition is a strict inequality.
    """
    if right.u - left.u >= model.kappa * (right.xi + left.xi):
        return Vacuum()
    if right.u == left.u and right.xi == left.xi:
        unit_b = Wave(WaveFamily.BACKWARD, 1.0)
        unit_f = Wave(WaveFamily.FORWARD, 1.0)
        return RiemannFan(left, left, right, unit_b, unit_f)

    target = left.u - right.u
    ratio_lr = left.xi / right.xi

    def lhs(b: float) -> float:
        return left.xi * phi(model, WaveFamily.BACKWARD, b) + right.xi * phi(
            model, WaveFamily.BACKWARD, b * ratio_lr
        )

    def dlhs(b: float) -> float:
        return left.xi * (
            phi_deriv(model, WaveFamily.BACKWARD, b)
            + phi_deriv(model, WaveFamily.BACKWARD, b * ratio_lr)
        )

    # well below the 1e-11*max(1,|target|) contract, but kept above the
    # double-precision floor of the two phi terms
    res_tol = max(1e-13 * max(1.0, abs(target)), 2e-14 * model.kappa * (left.xi + right.xi))
    b = solve_increasing(lhs, target, dfn=dlhs, x0=1.0, res_tol=res_tol)
    f = right.xi / (b * left.xi)
    middle = wave_right_state(model, left, Wave(WaveFamily.BACKWARD, b))
    return RiemannFan(
        left, middle, right, Wave(WaveFamily.BACKWARD, b), Wave(WaveFamily.FORWARD, f)
    )


def shock_speed(model: GasModel, left: State, ratio: float, family: WaveFamily) -> float:
    """Propagation speed of a shock with the given xi-ratio and left state.

    From conservation of volume and momentum, speed**2 = -dp/dtau across
    the jump. Written in the ratio: dp = p_l*expm1((gamma/alpha)*ln q) and
    dtau = tau_l*expm1(-(1/alpha)*ln q), which stays fully accurate for
    weak shocks (both factors would cancel catastrophically as plain
    differences) and tends to the characteristic speed as q -> 1.
    """
    a = 1.0 / model.alpha
    c = model.gamma / model.alpha
    lq = math.log(ratio)
    # p_l / tau_l = xi_l**(c + a); the quotient of expm1 terms -> gamma as q -> 1
    mag = math.sqrt(left.xi ** (c + a) * math.expm1(c * lq) / -math.expm1(-a * lq))
    return -mag if family is WaveFamily.BACKWARD else mag


def _rarefaction_xi(model: GasModel, speed_mag: float) -> float:
    # invert |lambda| = sqrt(gamma) * xi**((alpha+1)/alpha) inside a fan
    return (speed_mag / math.sqrt(model.gamma)) ** (1.0 / model.xi_exponent)


def sample_fan(model: GasModel, fan: RiemannFan, sigma: float) -> State:
    """State of the self-similar solution at X/t = sigma."""
    bw, fw = fan.backward, fan.forward

    if bw.kind is WaveKind.SHOCK:
        spd = shock_speed(model, fan.left, bw.ratio, WaveFamily.BACKWARD)
        if __debug__:
            lam_l = gas.char_speeds(model, fan.left)[0]
            lam_m = gas.char_speeds(model, fan.middle)[0]
            slack = 1e-9 * (abs(lam_l) + abs(lam_m))
            assert lam_m - slack <= spd <= lam_l + slack
        if sigma < spd:
            return fan.left
    elif bw.kind is WaveKind.RAREFACTION:
        head = gas.char_speeds(model, fan.left)[0]
        tail = gas.char_speeds(model, fan.middle)[0]
        if sigma <= head:
            return fan.left
        if sigma < tail:
            xi = _rarefaction_xi(model, -sigma)
            s_inv = gas.invariants(model, fan.left)[1]  # s constant through the fan
            return State(xi=xi, u=s_inv - model.kappa * xi)

    if fw.kind is WaveKind.SHOCK:
        spd = shock_speed(model, fan.middle, fw.ratio, WaveFamily.FORWARD)
        if __debug__:
            lam_m = gas.char_speeds(model, fan.middle)[1]
            lam_r = gas.char_speeds(model, fan.right)[1]
            slack = 1e-9 * (abs(lam_m) + abs(lam_r))
            assert lam_r - slack <= spd <= lam_m + slack
        return fan.middle if sigma < spd else fan.right
    if fw.kind is WaveKind.RAREFACTION:
        head = gas.char_speeds(model, fan.middle)[1]
        tail = gas.char_speeds(model, fan.right)[1]
        if sigma <= head:
            return fan.middle
        if sigma >= tail:
            return fan.right
        xi = _rarefaction_xi(model, sigma)
        r_inv = gas.invariants(model, fan.middle)[0]  # r constant through the fan
        return State(xi=xi, u=r_inv + model.kappa * xi)
    return fan.middle
