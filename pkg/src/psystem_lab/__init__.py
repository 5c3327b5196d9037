"""Numerical laboratory for gamma-law isentropic gas dynamics.

Exact Riemann solver and wave-curve algebra in Lagrangian coordinates,
pairwise interaction resolution in strength space, variation accounting
for scalar fields of the Riemann invariants (including searches for
variation-increasing interactions), and a random-choice grid simulator
with functional tracking.
"""

__version__ = "0.1.0"

from .counterexamples import (
    CounterexampleConfig,
    CounterexampleWitness,
    find_case1,
    find_case2,
    find_case3,
)
from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    PSystemError,
    QuadratureError,
    SearchError,
    VacuumEncountered,
    VacuumError,
)
from .gas import GasModel, State, char_speeds, invariants, new_model, state_from_invariants
from .glimm import FunctionalTrace, GridSolution, advance, init_simulation, run, van_der_corput
from .interactions import (
    InteractionKind,
    InteractionRealization,
    classify_outcome,
    realize,
    resolve_head_on,
    resolve_overtaking,
)
from .riemann import RiemannFan, Vacuum, sample_fan, solve_riemann
from .scalar_fields import (
    IDENTITY,
    LIU_FIELD,
    ExpansionCoefficients,
    ScalarField,
    SmoothFn,
    expansion_coefficients,
    parse_field_spec,
)
from .variation import delta_var, shock_delta_quadrature, wave_field_changes, weak_expansion_check
from .wave_curves import Wave, WaveFamily, WaveKind, phi, phi_deriv, wave_right_state

__all__ = [
    "CounterexampleConfig",
    "CounterexampleWitness",
    "ConvergenceError",
    "DegenerateError",
    "DomainError",
    "ExpansionCoefficients",
    "FunctionalTrace",
    "GasModel",
    "GridSolution",
    "IDENTITY",
    "InteractionKind",
    "InteractionRealization",
    "LIU_FIELD",
    "PSystemError",
    "QuadratureError",
    "RiemannFan",
    "ScalarField",
    "SearchError",
    "SmoothFn",
    "State",
    "Vacuum",
    "VacuumEncountered",
    "VacuumError",
    "Wave",
    "WaveFamily",
    "WaveKind",
    "advance",
    "char_speeds",
    "classify_outcome",
    "delta_var",
    "expansion_coefficients",
    "find_case1",
    "find_case2",
    "find_case3",
    "init_simulation",
    "invariants",
    "new_model",
    "parse_field_spec",
    "phi",
    "phi_deriv",
    "realize",
    "resolve_head_on",
    "resolve_overtaking",
    "run",
    "sample_fan",
    "shock_delta_quadrature",
    "solve_riemann",
    "state_from_invariants",
    "van_der_corput",
    "wave_field_changes",
    "wave_right_state",
    "weak_expansion_check",
]
