"""Gamma-law gas constants and coordinate conversions.

The model works in Lagrangian variables. A state is stored canonically as
``(xi, u)`` where ``xi = tau**(-alpha) = rho**alpha`` is the density power
used to parametrize wave curves; specific volume ``tau``, density ``rho``
and the Riemann invariants ``(r, s)`` are computed views, never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# kappa ~ 2*sqrt(gamma)/(gamma-1) blows up as gamma -> 1+; reject the sliver
# above 1 where it overflows any practical scale.
_GAMMA_MIN_EXCESS = 1e-12


@dataclass(frozen=True)
class GasModel:
    """Constants of a polytropic gas law p(tau) = tau**(-gamma), gamma > 1."""

    gamma: float
    alpha: float
    kappa: float

    @property
    def xi_exponent(self) -> float:
        """Exponent e with lambda_plus = sqrt(gamma) * xi**e."""
        return (self.alpha + 1.0) / self.alpha


@dataclass(frozen=True)
class State:
    """No-vacuum gas state: xi = tau**(-alpha) > 0 and particle velocity u."""

    xi: float
    u: float

    def __post_init__(self) -> None:
        if not (self.xi > 0.0 and math.isfinite(self.xi)):
            raise DomainError(f"state requires xi > 0, got xi={self.xi}")
        if not math.isfinite(self.u):
            raise DomainError(f"state requires finite u, got u={self.u}")


def new_model(gamma: float) -> GasModel:
    """Build the gas model for adiabatic exponent ``gamma``.

    Raises DomainError for gamma <= 1 (isothermal and below are not
    supported; alpha = 0 makes the wave-curve formulas degenerate).
    """
    if not (gamma > 1.0 + _GAMMA_MIN_EXCESS and math.isfinite(gamma)):
        raise DomainError(f"gamma must exceed 1, got {gamma}")
    alpha = (gamma - 1.0) / 2.0
    kappa = math.sqrt(gamma) / alpha
    return GasModel(gamma=gamma, alpha=alpha, kappa=kappa)


def invariants(model: GasModel, st: State) -> tuple[float, float]:
    """Riemann invariants (r, s) = (u - kappa*xi, u + kappa*xi)."""
    kx = model.kappa * st.xi
    return st.u - kx, st.u + kx


def state_from_invariants(model: GasModel, r: float, s: float) -> State:
    """Invert (r, s) back to a state; requires s > r (no vacuum)."""
    if not s > r:
        raise DomainError(f"invariants require s > r, got r={r}, s={s}")
    xi = (s - r) / (2.0 * model.kappa)
    u = 0.5 * (s + r)
    return State(xi=xi, u=u)


def char_speeds(model: GasModel, st: State) -> tuple[float, float]:
    """Characteristic speeds (lambda_minus, lambda_plus) at a state.

    lambda_plus = sqrt(gamma) * tau**(-alpha-1) = sqrt(gamma) * xi**((alpha+1)/alpha)
    and lambda_minus = -lambda_plus.
    """
    lam = math.sqrt(model.gamma) * st.xi ** model.xi_exponent
    return -lam, lam


def tau_of(model: GasModel, st: State) -> float:
    """Specific volume view tau = xi**(-1/alpha)."""
    return st.xi ** (-1.0 / model.alpha)


def rho_of(model: GasModel, st: State) -> float:
    """Density view rho = xi**(1/alpha)."""
    return st.xi ** (1.0 / model.alpha)


def pressure_of(model: GasModel, st: State) -> float:
    """Pressure view p = tau**(-gamma) = xi**(gamma/alpha)."""
    return st.xi ** (model.gamma / model.alpha)


def state_from_tau(model: GasModel, tau: float, u: float) -> State:
    """State from specific volume; requires tau > 0."""
    if not (tau > 0.0 and math.isfinite(tau)):
        raise DomainError(f"tau must be positive, got {tau}")
    return State(xi=tau ** (-model.alpha), u=u)
