"""Variation accounting for scalar fields across wave interactions."""

from __future__ import annotations

from dataclasses import dataclass

import scipy.integrate

from .errors import DegenerateError, DomainError, QuadratureError
from .gas import GasModel, State
from .interactions import InteractionRealization, head_on_kind, realize
from .rootfind import solve_increasing
from .scalar_fields import ScalarField, SmoothFn, expansion_coefficients
from .wave_curves import Wave, WaveFamily, phi, phi_deriv, wave_right_state

_BWD = WaveFamily.BACKWARD
_FWD = WaveFamily.FORWARD


def delta_var(field: ScalarField, rz: InteractionRealization) -> float:
    """Change of spatial variation of the field across an interaction.

    Variation after (over far-left | outgoing middle | far-right) minus
    variation before (over far-left | incoming middle | far-right).
    """
    model = rz.model
    v_left = field.at_state(model, rz.far_left)
    v_right = field.at_state(model, rz.far_right)
    v_in = field.at_state(model, rz.middle_in)
    v_out = field.at_state(model, rz.middle_out)
    before = abs(v_right - v_in) + abs(v_in - v_left)
    after = abs(v_right - v_out) + abs(v_out - v_left)
    return after - before


@dataclass(frozen=True)
class WaveFieldChanges:
    """Field differences across the four waves of a realization.

    ``in_first``/``in_second`` follow the spatial order of the incoming
    waves; ``out_backward``/``out_forward`` are the outgoing pair.
    """

    in_first: float
    in_second: float
    out_backward: float
    out_forward: float


def wave_field_changes(field: ScalarField, rz: InteractionRealization) -> WaveFieldChanges:
    model = rz.model
    v_left = field.at_state(model, rz.far_left)
    v_right = field.at_state(model, rz.far_right)
    v_in = field.at_state(model, rz.middle_in)
    v_out = field.at_state(model, rz.middle_out)
    return WaveFieldChanges(
        in_first=v_in - v_left,
        in_second=v_right - v_in,
        out_backward=v_out - v_left,
        out_forward=v_right - v_out,
    )


def shock_delta_quadrature(
    model: GasModel, fn: SmoothFn, channel: str, left: State, ratio: float
) -> float:
    """Change of h(r) or k(s) across a backward shock, by quadrature.

    Integrates the exact parametric derivative along the shock curve from
    1 to ``ratio`` and must agree with the plain endpoint difference; the
    quadrature side exists so integrand-level bounds can be exercised.
    ``channel`` selects 'r' or 's'.
    """
    if channel not in ("r", "s"):
        raise DomainError(f"channel must be 'r' or 's', got {channel!r}")
    if ratio == 1.0:
        return 0.0
    if ratio < 1.0:
        raise DomainError(f"backward shock needs ratio > 1, got {ratio}")
    xi_l, u_l = left.xi, left.u
    kap = model.kappa

    if channel == "r":
        def integrand(sig: float) -> float:
            arg = u_l - phi(model, _BWD, sig) * xi_l - kap * sig * xi_l
            return fn.d1(arg) * (phi_deriv(model, _BWD, sig) + kap)
    else:
        def integrand(sig: float) -> float:
            arg = u_l - phi(model, _BWD, sig) * xi_l + kap * sig * xi_l
            return fn.d1(arg) * (phi_deriv(model, _BWD, sig) - kap)

    out = scipy.integrate.quad(
        integrand, 1.0, ratio, epsabs=1e-10, epsrel=1e-11, limit=10_000, full_output=1
    )
    if len(out) > 3:
        raise QuadratureError(f"integration warning: {out[3]}")
    value, abserr = out[0], out[1]
    # success means epsabs or epsrel was met; only distrust gross estimates
    if abserr > 1e-6 * max(1.0, abs(value)):
        raise QuadratureError(f"error estimate {abserr:.3e} above budget")
    return -xi_l * value


def _forward_strength_for_s_change(model: GasModel, base: State, ds: float) -> float:
    """Forward-wave ratio whose s-jump from ``base`` equals ds."""
    kap, xi = model.kappa, base.xi
    if ds == 0.0:
        return 1.0
    if ds > 0.0:
        return 1.0 + ds / (2.0 * kap * xi)  # rarefaction: s-jump is exactly 2*kappa*xi*(f-1)

    def s_jump(f: float) -> float:
        return xi * (phi(model, _FWD, f) + kap * (f - 1.0))

    return solve_increasing(s_jump, ds, x0=1.0, res_tol=1e-14 * max(1.0, abs(ds)), overflow_sign=-1.0)


def _backward_strength_for_r_change(model: GasModel, base: State, dr: float) -> float:
    """Backward-wave ratio whose r-jump from ``base`` equals dr."""
    kap, xi = model.kappa, base.xi
    if dr == 0.0:
        return 1.0
    if dr > 0.0:
        ratio = 1.0 - dr / (2.0 * kap * xi)  # rarefaction: r-jump is exactly 2*kappa*xi*(1-b)
        if ratio <= 0.0:
            raise DomainError(f"r-increment {dr} exceeds the vacuum limit at xi={xi}")
        return ratio

    def neg_r_jump(b: float) -> float:
        return xi * (phi(model, _BWD, b) + kap * (b - 1.0))

    return solve_increasing(neg_r_jump, -dr, x0=1.0, res_tol=1e-14 * max(1.0, abs(dr)))


def weak_expansion_check(
    field: ScalarField, base: State, dr: float, ds: float, model: GasModel
) -> tuple[float, float, InteractionRealization]:
    """Measured vs predicted leading-order variation change.

    Builds the head-on interaction whose incoming backward wave changes r
    by ~dr and whose incoming forward wave changes s by ~ds, measures the
    exact variation change, and returns the second-order prediction:
    0 when dr*phi_r and ds*phi_s have equal signs, -+2*dr*ds*phi_rs when
    ds*phi_s < 0 < dr*phi_r (resp. the flipped case).
    """
    if dr == 0.0 or ds == 0.0:
        raise DomainError("dr and ds must both be nonzero")
    coeffs = expansion_coefficients(field, base, model)
    if coeffs.phi_s == 0.0 or coeffs.phi_r == 0.0:
        raise DegenerateError("phi_r and phi_s must not vanish at the base state")

    fwd = _forward_strength_for_s_change(model, base, ds)
    middle = wave_right_state(model, base, Wave(_FWD, fwd))
    bwd = _backward_strength_for_r_change(model, middle, dr)

    rz = realize(model, head_on_kind(bwd, fwd), bwd, fwd, base)
    measured = delta_var(field, rz)

    along_s = ds * coeffs.phi_s
    along_r = dr * coeffs.phi_r
    if along_s < 0.0 < along_r:
        predicted = -2.0 * dr * ds * coeffs.phi_rs
    elif along_r < 0.0 < along_s:
        predicted = 2.0 * dr * ds * coeffs.phi_rs
    else:
        predicted = 0.0
    return measured, predicted, rz
