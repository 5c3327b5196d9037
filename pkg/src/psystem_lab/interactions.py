"""Pairwise wave interactions resolved in strength space.

Because waves are parametrized by xi-ratios, the outgoing pair (B, F) of an
interaction depends only on the incoming ratios, never on the far-left
state. Head-on interactions (a forward wave meeting a backward wave)
satisfy B*F = b*f with B the root of

    phi_bwd(B) + b*f*phi_bwd(B/(b*f)) + phi_fwd(f) - f*phi_bwd(b) = 0,

and overtaking interactions of two backward waves satisfy B*F = x*y with

    phi_bwd(B) + x*y*phi_bwd(B/(x*y)) - phi_bwd(x) - x*phi_bwd(y) = 0.

Both left sides are strictly increasing in B. Overtaking pairs of forward
waves are handled through the exact reflection (xi, u) -> (xi, -u), which
swaps families, reverses spatial order, and inverts ratios.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, VacuumError
from .gas import GasModel, State
from .rootfind import solve_increasing
from .wave_curves import Wave, WaveFamily, WaveKind, phi, phi_deriv, wave_right_state

_BWD = WaveFamily.BACKWARD
_FWD = WaveFamily.FORWARD


class InteractionKind(str, enum.Enum):
    """Taxonomy of pairwise interactions, labelled by the incoming pair.

    Head-on labels read [forward wave | backward wave] left to right in
    space; overtaking labels read [leftmost | rightmost] of the same-family
    pair. The primed overtaking kinds are the forward-family variants of
    IIa-IIc; the primed head-on kind swaps which incoming wave is the shock.
    """

    IA = "Ia"      # head-on: forward rarefaction + backward rarefaction
    IB = "Ib"      # head-on: forward rarefaction + backward shock
    IB_P = "Ib'"   # head-on: forward shock + backward rarefaction
    IC = "Ic"      # head-on: forward shock + backward shock
    IIA = "IIa"    # overtaking: backward shock + backward shock
    IIB = "IIb"    # overtaking: backward shock + backward rarefaction
    IIC = "IIc"    # overtaking: backward rarefaction + backward shock
    IIA_P = "IIa'"  # overtaking: forward shock + forward shock
    IIB_P = "IIb'"  # overtaking: forward rarefaction + forward shock
    IIC_P = "IIc'"  # overtaking: forward shock + forward rarefaction


_HEAD_ON = {InteractionKind.IA, InteractionKind.IB, InteractionKind.IB_P, InteractionKind.IC}
_OVERTAKE_BWD = {InteractionKind.IIA, InteractionKind.IIB, InteractionKind.IIC}
_OVERTAKE_FWD = {InteractionKind.IIA_P, InteractionKind.IIB_P, InteractionKind.IIC_P}

# allowed (q1, q2) sides per kind: 'S' needs ratio on the shock side of 1,
# 'R' on the rarefaction side; ratio exactly 1 (null wave) always passes.
_STRENGTH_SIDES = {
    InteractionKind.IA: ("R", "R"),
    InteractionKind.IB: ("S", "R"),
    InteractionKind.IB_P: ("R", "S"),
    InteractionKind.IC: ("S", "S"),
    InteractionKind.IIA: ("S", "S"),
    InteractionKind.IIB: ("S", "R"),
    InteractionKind.IIC: ("R", "S"),
    InteractionKind.IIA_P: ("S", "S"),
    InteractionKind.IIB_P: ("R", "S"),
    InteractionKind.IIC_P: ("S", "R"),
}


def is_head_on(kind: InteractionKind) -> bool:
    return kind in _HEAD_ON


@dataclass(frozen=True)
class InteractionRealization:
    """Full state diagram of one interaction for a given far-left state.

    ``incoming`` is in spatial order (head-on: forward wave then backward
    wave; overtaking: leftmost then rightmost). ``outgoing`` is always
    (backward wave, forward wave). ``far_right`` is reached along the
    incoming path; the outgoing path agrees with it up to rounding.
    """

    model: GasModel
    kind: InteractionKind
    far_left: State
    incoming: tuple[Wave, Wave]
    middle_in: State
    outgoing: tuple[Wave, Wave]
    middle_out: State
    far_right: State

    def states(self) -> tuple[State, State, State, State]:
        return self.far_left, self.middle_in, self.middle_out, self.far_right


def resolve_head_on(model: GasModel, backward_ratio: float, forward_ratio: float) -> tuple[float, float]:
    """Outgoing (B, F) of a head-on interaction with incoming ratios (b, f).

    Raises VacuumError when the incoming waves pull hard enough apart that
    no positive root exists (for two rarefactions this is b + 1/f <= 1).
    """
    b, f = backward_ratio, forward_ratio
    _check_positive(b, f)
    try:
        # no-vacuum: the B -> 0+ limit of the residual must be negative
        no_vacuum = phi(model, _BWD, b) + model.kappa * b > (phi(model, _FWD, f) - model.kappa) / f
        if not no_vacuum:
            raise VacuumError(f"head-on interaction (b={b}, f={f}) opens a vacuum")
        if b == 1.0:
            return 1.0, f
        if f == 1.0:
            return b, 1.0
        prod = b * f
        shift = phi(model, _FWD, f) - f * phi(model, _BWD, b)
    except OverflowError as exc:
        raise ConvergenceError(f"incoming strengths out of double range: {exc}") from None

    def residual(cand: float) -> float:
        return phi(model, _BWD, cand) + prod * phi(model, _BWD, cand / prod) + shift

    def dresidual(cand: float) -> float:
        return phi_deriv(model, _BWD, cand) + phi_deriv(model, _BWD, cand / prod)

    out_b = solve_increasing(
        residual, 0.0, dfn=dresidual, x0=1.0, res_tol=1e-13 * max(1.0, abs(shift))
    )
    return out_b, prod / out_b


def resolve_overtaking(model: GasModel, left_ratio: float, right_ratio: float) -> tuple[float, float]:
    """Outgoing (B, F) for two incoming backward waves with ratios (x, y).

    Overtaking interactions never open a vacuum:
    kappa*(1 + x*y) + phi_bwd(x) + x*phi_bwd(y) >= 2*kappa*x*y > 0.
    """
    x, y = left_ratio, right_ratio
    _check_positive(x, y)
    try:
        assert model.kappa * (1.0 + x * y) + phi(model, _BWD, x) + x * phi(model, _BWD, y) > 0.0
        if y == 1.0:
            return x, 1.0
        if x == 1.0:
            return y, 1.0
        prod = x * y
        shift = -(phi(model, _BWD, x) + x * phi(model, _BWD, y))
    except OverflowError as exc:
        raise ConvergenceError(f"incoming strengths out of double range: {exc}") from None

    def residual(cand: float) -> float:
        return phi(model, _BWD, cand) + prod * phi(model, _BWD, cand / prod) + shift

    def dresidual(cand: float) -> float:
        return phi_deriv(model, _BWD, cand) + phi_deriv(model, _BWD, cand / prod)

    out_b = solve_increasing(
        residual, 0.0, dfn=dresidual, x0=1.0, res_tol=1e-13 * max(1.0, abs(shift))
    )
    return out_b, prod / out_b


def resolve_overtaking_forward(model: GasModel, left_ratio: float, right_ratio: float) -> tuple[float, float]:
    """Outgoing (B, F) for two incoming forward waves, via reflection.

    Reflecting u -> -u maps the forward pair (x, y) onto the backward pair
    (1/y, 1/x); the reflected outgoing pair maps back as B = 1/F', with F
    then fixed by the product identity B*F = x*y.
    """
    x, y = left_ratio, right_ratio
    _check_positive(x, y)
    _, refl_f = resolve_overtaking(model, 1.0 / y, 1.0 / x)
    out_b = 1.0 / refl_f
    return out_b, (x * y) / out_b


def weak_rarefaction_sensitivity(model: GasModel, shock_ratio: float) -> float:
    """d(B)/dx at x = 1 for overtaking (x rarefaction, y = shock_ratio).

    Equals (phi_bwd(y) + kappa*(y+1)) / (phi_bwd'(y) + kappa). The gap
    y - sensitivity grows without bound as y -> inf, which is what makes
    the strong-shock constructions in the variation searches feasible.
    """
    y = shock_ratio
    num = phi(model, _BWD, y) + model.kappa * (y + 1.0)
    den = phi_deriv(model, _BWD, y) + model.kappa
    return num / den


def _check_positive(*ratios: float) -> None:
    for q in ratios:
        if not (q > 0.0 and math.isfinite(q)):
            raise DomainError(f"wave ratio must be positive, got {q}")


def _check_sides(kind: InteractionKind, q1: float, q2: float) -> None:
    fam1, fam2 = _incoming_families(kind)
    for q, side, fam in ((q1, _STRENGTH_SIDES[kind][0], fam1), (q2, _STRENGTH_SIDES[kind][1], fam2)):
        if q == 1.0:
            continue
        actual = Wave(fam, q).kind
        wanted = WaveKind.SHOCK if side == "S" else WaveKind.RAREFACTION
        if actual is not wanted:
            raise DomainError(
                f"strength {q} is a {actual.value} of the {fam.value} family, "
                f"inconsistent with kind {kind.value}"
            )


def _incoming_families(kind: InteractionKind) -> tuple[WaveFamily, WaveFamily]:
    if kind in _HEAD_ON:
        # q1 is the backward ratio, q2 the forward ratio
        return _BWD, _FWD
    if kind in _OVERTAKE_BWD:
        return _BWD, _BWD
    return _FWD, _FWD


def resolve(model: GasModel, kind: InteractionKind, q1: float, q2: float) -> tuple[float, float]:
    """Dispatch to the resolver matching ``kind`` (q1, q2 as in `realize`)."""
    _check_sides(kind, q1, q2)
    if kind in _HEAD_ON:
        return resolve_head_on(model, q1, q2)
    if kind in _OVERTAKE_BWD:
        return resolve_overtaking(model, q1, q2)
    return resolve_overtaking_forward(model, q1, q2)


def _wave_label(ratio: float, family: WaveFamily) -> str:
    kind = Wave(family, ratio).kind
    if kind is WaveKind.NULL:
        return "0"
    arrow = "<-" if family is _BWD else "->"
    return ("S" if kind is WaveKind.SHOCK else "R") + arrow


def classify_outcome(model: GasModel, kind: InteractionKind, q1: float, q2: float) -> str:
    """Outgoing pattern label, read off the resolved ratios (e.g. 'S<-R->')."""
    out_b, out_f = resolve(model, kind, q1, q2)
    return _wave_label(out_b, _BWD) + _wave_label(out_f, _FWD)


def outgoing_label(rz: "InteractionRealization") -> str:
    """Pattern label of an already-realized interaction."""
    return _wave_label(rz.outgoing[0].ratio, _BWD) + _wave_label(rz.outgoing[1].ratio, _FWD)


def realize(
    model: GasModel, kind: InteractionKind, q1: float, q2: float, far_left: State
) -> InteractionRealization:
    """Instantiate the full state diagram of an interaction.

    Head-on kinds take q1 = backward ratio, q2 = forward ratio (the forward
    wave is the left one in space). Overtaking kinds take q1 = leftmost and
    q2 = rightmost ratio of the same-family pair.
    """
    out_b, out_f = resolve(model, kind, q1, q2)

    if kind in _HEAD_ON:
        in_waves = (Wave(_FWD, q2), Wave(_BWD, q1))
    elif kind in _OVERTAKE_BWD:
        in_waves = (Wave(_BWD, q1), Wave(_BWD, q2))
    else:
        in_waves = (Wave(_FWD, q1), Wave(_FWD, q2))

    middle_in = wave_right_state(model, far_left, in_waves[0])
    far_right = wave_right_state(model, middle_in, in_waves[1])

    out_waves = (Wave(_BWD, out_b), Wave(_FWD, out_f))
    middle_out = wave_right_state(model, far_left, out_waves[0])
    if __debug__:
        check = wave_right_state(model, middle_out, out_waves[1])
        scale = 1.0 + abs(far_right.u)
        assert abs(check.u - far_right.u) <= 1e-10 * scale
        assert abs(check.xi - far_right.xi) <= 1e-10 * far_right.xi

    return InteractionRealization(
        model=model,
        kind=kind,
        far_left=far_left,
        incoming=in_waves,
        middle_in=middle_in,
        outgoing=out_waves,
        middle_out=middle_out,
        far_right=far_right,
    )


def head_on_kind(backward_ratio: float, forward_ratio: float) -> InteractionKind:
    """Head-on kind label consistent with the given incoming ratios."""
    bwd_shock = backward_ratio > 1.0
    fwd_shock = forward_ratio < 1.0
    if bwd_shock and fwd_shock:
        return InteractionKind.IC
    if bwd_shock:
        return InteractionKind.IB
    if fwd_shock:
        return InteractionKind.IB_P
    return InteractionKind.IA
