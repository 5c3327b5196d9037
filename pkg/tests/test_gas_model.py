import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psystem_lab import (
    DomainError,
    State,
    char_speeds,
    invariants,
    new_model,
    state_from_invariants,
)
from psystem_lab.gas import pressure_of, rho_of, state_from_tau, tau_of


def test_model_constants_gamma3():
    m = new_model(3.0)
    assert m.alpha == 1.0
    assert m.kappa == pytest.approx(math.sqrt(3.0), rel=1e-15)


def test_model_constants_gamma2():
    m = new_model(2.0)
    assert m.alpha == 0.5
    assert m.kappa == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-15)


@pytest.mark.parametrize("gamma", [1.0, 0.5, -2.0, 1.0 + 1e-13])
def test_gamma_at_or_below_one_rejected(gamma):
    with pytest.raises(DomainError):
        new_model(gamma)


@pytest.mark.parametrize("gamma", [1.4, 2.0, 3.0, 5.0 / 3.0])
def test_kappa_alpha_product(gamma):
    m = new_model(gamma)
    assert m.kappa * m.alpha == pytest.approx(math.sqrt(gamma), rel=1e-15)


def test_state_rejects_vacuum():
    with pytest.raises(DomainError):
        State(xi=0.0, u=1.0)
    with pytest.raises(DomainError):
        State(xi=-1.0, u=1.0)


def test_invariants_basic(model3):
    r, s = invariants(model3, State(xi=1.0, u=0.0))
    assert r == pytest.approx(-math.sqrt(3.0), rel=1e-15)
    assert s == pytest.approx(math.sqrt(3.0), rel=1e-15)


def test_invariants_gamma2(model2):
    r, s = invariants(model2, State(xi=2.0, u=1.0))
    assert r == pytest.approx(1.0 - 4.0 * math.sqrt(2.0), rel=1e-14)
    assert s == pytest.approx(1.0 + 4.0 * math.sqrt(2.0), rel=1e-14)


def test_vacuum_limit_collapses_invariants(model3):
    r, s = invariants(model3, State(xi=1e-14, u=5.0))
    assert r == pytest.approx(5.0, abs=1e-13)
    assert s == pytest.approx(5.0, abs=1e-13)


def test_state_from_invariants_examples(model3):
    st = state_from_invariants(model3, -math.sqrt(3.0), math.sqrt(3.0))
    assert st.xi == pytest.approx(1.0, rel=1e-15)
    assert st.u == pytest.approx(0.0, abs=1e-15)
    st = state_from_invariants(model3, 0.0, 2.0 * math.sqrt(3.0))
    assert st.xi == pytest.approx(1.0, rel=1e-15)
    assert st.u == pytest.approx(math.sqrt(3.0), rel=1e-15)


def test_state_from_invariants_rejects_vacuum(model3):
    with pytest.raises(DomainError):
        state_from_invariants(model3, 1.0, 1.0)
    with pytest.raises(DomainError):
        state_from_invariants(model3, 2.0, 1.0)


@settings(max_examples=300, deadline=None)
@given(
    gamma=st.sampled_from([1.4, 2.0, 3.0]),
    xi=st.floats(min_value=1e-6, max_value=1e6),
    u=st.floats(min_value=-100.0, max_value=100.0),
)
def test_invariant_round_trip(gamma, xi, u):
    # recovering xi from (r, s) cancels |u|/(kappa*xi) leading digits, so the
    # reachable relative accuracy degrades once u dominates kappa*xi; the
    # bound below is tight double-precision arithmetic, 1e-14 in the regime
    # where the invariant gap carries the state
    m = new_model(gamma)
    st_in = State(xi=xi, u=u)
    r, s = invariants(m, st_in)
    assert s > r
    back = state_from_invariants(m, r, s)
    cancel = 5e-16 * (abs(u) + m.kappa * xi) / (m.kappa * xi)
    assert back.xi == pytest.approx(xi, rel=max(1e-14, cancel))
    assert back.u == pytest.approx(u, rel=1e-14, abs=1e-12 * max(1.0, xi * m.kappa))


def test_invariant_gap_is_kappa_xi(model3, rng):
    for _ in range(200):
        st_in = State(xi=float(rng.uniform(1e-3, 1e3)), u=float(rng.uniform(-10, 10)))
        r, s = invariants(model3, st_in)
        gap = 2.0 * (model3.kappa * st_in.xi)
        # subtraction of the stored invariants rounds at most twice
        assert abs((s - r) - gap) <= 4e-16 * (abs(s) + abs(r) + gap)
        r2, s2 = invariants(model3, State(xi=st_in.xi * 1.0001, u=st_in.u))
        assert s2 - r2 > s - r


def test_invariant_round_trip_large_ensemble(rng):
    # 10^4 random states across twelve decades of xi; accuracy is 1e-14
    # relative wherever kappa*xi is not drowned out by |u| (see the
    # cancellation note on the property test above)
    import numpy as np

    for gamma in (1.4, 3.0):
        m = new_model(gamma)
        xi = 10.0 ** rng.uniform(-6, 6, size=10_000)
        u = rng.uniform(-100.0, 100.0, size=10_000)
        r = u - m.kappa * xi
        s = u + m.kappa * xi
        xi_back = (s - r) / (2.0 * m.kappa)
        u_back = 0.5 * (s + r)
        bound = np.maximum(1e-14 * xi, 5e-16 * (np.abs(u) + m.kappa * xi) / m.kappa)
        assert np.all(np.abs(xi_back - xi) <= bound)
        assert np.all(np.abs(u_back - u) <= 1e-14 * (np.abs(u) + m.kappa * xi))


def test_char_speeds_examples(model3):
    lm, lp = char_speeds(model3, State(xi=1.0, u=0.0))
    assert lp == pytest.approx(math.sqrt(3.0), rel=1e-15)
    lm, lp = char_speeds(model3, State(xi=2.0, u=0.0))
    assert lp == pytest.approx(4.0 * math.sqrt(3.0), rel=1e-15)
    assert lm == -lp


@settings(max_examples=200, deadline=None)
@given(xi=st.floats(min_value=1e-5, max_value=1e5), u=st.floats(-10, 10))
def test_char_speed_symmetry_and_monotonicity(xi, u):
    m = new_model(1.4)
    lm, lp = char_speeds(m, State(xi=xi, u=u))
    assert lm == -lp and lp > 0
    lm2, lp2 = char_speeds(m, State(xi=xi * 1.01, u=u))
    assert lp2 > lp  # lambda_plus increases with xi (decreases with tau)


def test_derived_views(model3):
    st = State(xi=2.0, u=0.5)
    assert tau_of(model3, st) == pytest.approx(0.5, rel=1e-15)
    assert rho_of(model3, st) == pytest.approx(2.0, rel=1e-15)
    assert pressure_of(model3, st) == pytest.approx(8.0, rel=1e-15)
    back = state_from_tau(model3, tau_of(model3, st), st.u)
    assert back.xi == pytest.approx(st.xi, rel=1e-15)
