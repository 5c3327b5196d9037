"""Random-choice (Glimm) scheme on a 1D staggered grid.

Each step solves one Riemann problem per cell interface and commits, for
every staggered cell, the exact self-similar solution sampled at offset
(a - 1/2)*dx/dt inside the local fan, where a is the step's sample in
[0, 1). The time step keeps dt*max|lambda| <= dx/2 so neighbouring fans
never overlap a staggered cell. Grid centers shift by dx/2 each step and
shift back the next; ghost cells copy the edge values (outflow).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DomainError, VacuumEncountered
from .gas import GasModel, State
from .riemann import RiemannFan, Vacuum, sample_fan, solve_riemann
from .scalar_fields import LIU_FIELD, ScalarField
from .wave_curves import Wave, WaveFamily

_UNIT_BWD = Wave(WaveFamily.BACKWARD, 1.0)
_UNIT_FWD = Wave(WaveFamily.FORWARD, 1.0)


@dataclass(frozen=True)
class GridSolution:
    """Piecewise-constant solution: cell i is centered at origin + i*dx."""

    model: GasModel
    xi: np.ndarray
    u: np.ndarray
    dx: float
    time: float
    origin: float
    stagger: int = 0
    cfl: float = 0.9

    @property
    def cells(self) -> int:
        return len(self.xi)

    def state(self, i: int) -> State:
        return State(xi=float(self.xi[i]), u=float(self.u[i]))

    def centers(self) -> np.ndarray:
        return self.origin + self.dx * np.arange(self.cells)

    def max_signal_speed(self) -> float:
        xi_max = float(np.max(self.xi))
        return math.sqrt(self.model.gamma) * xi_max ** self.model.xi_exponent

    def totals(self) -> tuple[float, float]:
        """Discrete integrals of (tau, u) over the grid."""
        tau = self.xi ** (-1.0 / self.model.alpha)
        return float(np.sum(tau) * self.dx), float(np.sum(self.u) * self.dx)


@dataclass(frozen=True)
class FunctionalTrace:
    """Per-step functional record of a run (one entry after each step)."""

    times: list[float]
    total_var_phi: list[float]
    nishida: list[float]
    liu: list[float]

    def records(self) -> Iterator[dict]:
        for t, v, n, l in zip(self.times, self.total_var_phi, self.nishida, self.liu):
            yield {"time": t, "total_var_phi": v, "nishida": n, "liu": l}


def van_der_corput(n: int) -> float:
    """n-th element (n >= 1) of the base-2 van der Corput sequence."""
    out = 0.0
    scale = 0.5
    while n:
        if n & 1:
            out += scale
        n >>= 1
        scale *= 0.5
    return out


def sample_sequence(kind: str, seed: int = 0) -> Iterator[float]:
    """Infinite sample stream: 'van-der-corput' or 'seeded-prng'."""
    if kind in ("van-der-corput", "vdc"):
        def vdc() -> Iterator[float]:
            n = 1
            while True:
                yield van_der_corput(n)
                n += 1
        return vdc()
    if kind in ("seeded-prng", "prng"):
        def prng() -> Iterator[float]:
            rng = np.random.default_rng(seed)
            while True:
                yield float(rng.random())
        return prng()
    raise DomainError(f"unknown sampling sequence {kind!r}")


def read_ic_csv(path) -> list[tuple[float, float, float]]:
    """Read an initial-condition table with header X,tau,u, sorted by X."""
    rows: list[tuple[float, float, float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        need = {"X", "tau", "u"}
        if reader.fieldnames is None or not need <= set(reader.fieldnames):
            raise DomainError(f"IC csv must have header columns X,tau,u, got {reader.fieldnames}")
        for rec in reader:
            rows.append((float(rec["X"]), float(rec["tau"]), float(rec["u"])))
    if not rows:
        raise DomainError("IC csv has no data rows")
    if any(b[0] < a[0] for a, b in zip(rows, rows[1:])):
        raise DomainError("IC csv rows must be sorted by X")
    return rows


def init_simulation(
    model: GasModel,
    ic: Sequence[tuple[float, float, float]],
    cells: int,
    domain: tuple[float, float],
    cfl: float = 0.9,
) -> GridSolution:
    """Project a piecewise-constant (X, tau, u) table onto the grid.

    The table defines a step function: each row governs X values from its
    own X up to the next row's (cell centers left of the first row take the
    first row's values).
    """
    if cells < 2:
        raise DomainError(f"need at least 2 cells, got {cells}")
    x_lo, x_hi = domain
    if not x_lo < x_hi:
        raise DomainError(f"domain must satisfy lo < hi, got {domain}")
    if not 0.0 < cfl <= 1.0:
        raise DomainError(f"cfl must lie in (0, 1], got {cfl}")
    for _, tau, _ in ic:
        if not tau > 0.0:
            raise DomainError(f"initial tau must be positive, got {tau}")
    dx = (x_hi - x_lo) / cells
    centers = x_lo + dx * (np.arange(cells) + 0.5)
    breaks = np.array([row[0] for row in ic])
    idx = np.clip(np.searchsorted(breaks, centers, side="right") - 1, 0, len(ic) - 1)
    tau_cells = np.array([ic[i][1] for i in idx])
    u_cells = np.array([ic[i][2] for i in idx])
    return GridSolution(
        model=model,
        xi=tau_cells ** (-model.alpha),
        u=u_cells,
        dx=dx,
        time=0.0,
        origin=float(centers[0]),
        stagger=0,
        cfl=cfl,
    )


def _interface_fans(sol: GridSolution) -> list[RiemannFan]:
    """Riemann fans at the interfaces used by the next staggered step."""
    if sol.stagger == 0:
        xi = np.concatenate(([sol.xi[0]], sol.xi))
        u = np.concatenate(([sol.u[0]], sol.u))
    else:
        xi = np.concatenate((sol.xi, [sol.xi[-1]]))
        u = np.concatenate((sol.u, [sol.u[-1]]))
    fans: list[RiemannFan] = []
    for i in range(len(xi) - 1):
        left = State(xi=float(xi[i]), u=float(u[i]))
        if xi[i] == xi[i + 1] and u[i] == u[i + 1]:
            fans.append(RiemannFan(left, left, left, _UNIT_BWD, _UNIT_FWD))
            continue
        right = State(xi=float(xi[i + 1]), u=float(u[i + 1]))
        out = solve_riemann(sol.model, left, right)
        if isinstance(out, Vacuum):
            raise VacuumEncountered(
                f"vacuum at interface {i} (t={sol.time}): u jump {right.u - left.u} "
                f">= kappa*(xi_l+xi_r) = {sol.model.kappa * (left.xi + right.xi)}"
            )
        fans.append(out)
    return fans


def _step(sol: GridSolution, sample: float, dt_cap: float | None = None) -> tuple[GridSolution, list[RiemannFan]]:
    if not 0.0 <= sample < 1.0:
        raise DomainError(f"sample must lie in [0, 1), got {sample}")
    lam = sol.max_signal_speed()
    dt = sol.cfl * sol.dx / (2.0 * lam)
    if dt_cap is not None and dt_cap < dt:
        dt = dt_cap
    assert dt * lam <= 0.5 * sol.dx * (1.0 + 1e-12)
    fans = _interface_fans(sol)
    sigma = (sample - 0.5) * sol.dx / dt
    new_xi = np.empty(len(fans))
    new_u = np.empty(len(fans))
    for i, fan in enumerate(fans):
        st = sample_fan(sol.model, fan, sigma) if fan.left is not fan.right else fan.left
        new_xi[i] = st.xi
        new_u[i] = st.u
    shift = -0.5 * sol.dx if sol.stagger == 0 else 0.5 * sol.dx
    new_sol = replace(
        sol,
        xi=new_xi,
        u=new_u,
        time=sol.time + dt,
        origin=sol.origin + shift,
        stagger=1 - sol.stagger,
    )
    return new_sol, fans


def advance(sol: GridSolution, sample: float) -> GridSolution:
    """One random-choice step; the grid shifts by dx/2 (staggered)."""
    return _step(sol, sample)[0]


def _variation(vals: np.ndarray) -> float:
    return float(np.sum(np.abs(np.diff(vals))))


def _trace_entry(sol: GridSolution, fans: Iterable[RiemannFan], field: ScalarField) -> tuple[float, float, float]:
    kap = sol.model.kappa
    r = sol.u - kap * sol.xi
    s = sol.u + kap * sol.xi
    phi_vals = np.array([field.value(rv, sv) for rv, sv in zip(r, s)])
    var_phi = _variation(phi_vals)
    liu = _variation(s - r)
    nishida = 0.0
    for fan in fans:
        if fan.backward.ratio > 1.0:
            d_r = (fan.middle.u - kap * fan.middle.xi) - (fan.left.u - kap * fan.left.xi)
            nishida += abs(d_r)
        if fan.forward.ratio < 1.0:
            d_s = (fan.right.u + kap * fan.right.xi) - (fan.middle.u + kap * fan.middle.xi)
            nishida += abs(d_s)
    return var_phi, nishida, liu


def run(
    sol: GridSolution,
    t_end: float,
    sequence: str = "van-der-corput",
    field: ScalarField | None = None,
    seed: int = 0,
) -> tuple[GridSolution, FunctionalTrace]:
    """Step until t_end, recording functionals after every step.

    Records the field variation over the cells, the shock-attributed
    invariant variation (from the step's own interface fans: |r jump| over
    backward shocks plus |s jump| over forward shocks), and the variation
    of s - r. The final step is clipped to land on t_end exactly.
    """
    if field is None:
        field = LIU_FIELD
    if not t_end > sol.time:
        raise DomainError(f"t_end {t_end} must exceed current time {sol.time}")
    samples = sample_sequence(sequence, seed)
    trace = FunctionalTrace(times=[], total_var_phi=[], nishida=[], liu=[])
    eps = 1e-12 * max(1.0, abs(t_end))
    while sol.time < t_end - eps:
        sol, fans = _step(sol, next(samples), dt_cap=t_end - sol.time)
        var_phi, nishida, liu = _trace_entry(sol, fans, field)
        trace.times.append(sol.time)
        trace.total_var_phi.append(var_phi)
        trace.nishida.append(nishida)
        trace.liu.append(liu)
    return sol, trace
