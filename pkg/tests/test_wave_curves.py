import math

import numpy as np
import pytest

from psystem_lab import (
    DomainError,
    State,
    Wave,
    WaveFamily,
    WaveKind,
    invariants,
    new_model,
    phi,
    phi_deriv,
    wave_right_state,
)

BWD = WaveFamily.BACKWARD
FWD = WaveFamily.FORWARD


def test_phi_examples(model3, model2):
    assert phi(model3, BWD, 2.0) == pytest.approx(math.sqrt(3.5), rel=1e-14)
    assert phi(model3, FWD, 0.5) == pytest.approx(-math.sqrt(0.875), rel=1e-14)
    assert phi(model2, BWD, 2.0) == pytest.approx(math.sqrt(11.25), rel=1e-14)
    assert phi(model3, BWD, 1.0) == 0.0
    assert phi(model3, FWD, 1.0) == 0.0
    assert phi(model2, FWD, 1.0) == 0.0


def test_phi_rarefaction_branches_linear(model3):
    kap = model3.kappa
    assert phi(model3, BWD, 0.25) == pytest.approx(kap * -0.75, rel=1e-15)
    assert phi(model3, FWD, 4.0) == pytest.approx(kap * 3.0, rel=1e-15)


def test_phi_rejects_nonpositive(model3):
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            phi(model3, BWD, bad)
        with pytest.raises(DomainError):
            phi_deriv(model3, FWD, bad)


def test_phi_overflow_guard():
    m = new_model(3.0)
    # gamma/alpha = 3: overflow for x beyond roughly exp(708/3) ~ 4e102
    with pytest.raises(OverflowError):
        phi(m, BWD, 1e110)
    # 1/alpha = 5 at gamma = 1.4: the forward shock branch overflows below
    # exp(-708/5) ~ 3e-62
    with pytest.raises(OverflowError):
        phi(new_model(1.4), FWD, 1e-70)


def test_phi_deriv_examples(model3):
    kap = model3.kappa
    assert phi_deriv(model3, BWD, 0.5) == kap
    assert phi_deriv(model3, FWD, 3.0) == kap
    assert phi_deriv(model3, BWD, 10.0) == pytest.approx(4.668835001397058, rel=1e-12)
    # one-sided limits at 1 both equal kappa
    assert phi_deriv(model3, BWD, 1.0) == pytest.approx(kap, rel=1e-12)
    assert phi_deriv(model3, BWD, 1.0 + 1e-9) == pytest.approx(kap, rel=1e-8)
    assert phi_deriv(model3, FWD, 1.0 - 1e-9) == pytest.approx(kap, rel=1e-8)


@pytest.mark.parametrize("gamma", [1.4, 2.0, 3.0])
def test_reflection_identity(gamma):
    # phi_fwd(x) = -x * phi_bwd(1/x) on a log grid
    m = new_model(gamma)
    for x in np.logspace(-3, 3, 1001):
        x = float(x)
        lhs = phi(m, FWD, x)
        rhs = -x * phi(m, BWD, 1.0 / x)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("gamma", [1.4, 2.0, 3.0])
@pytest.mark.parametrize("family", [BWD, FWD])
def test_phi_strictly_increasing(gamma, family):
    m = new_model(gamma)
    xs = np.logspace(-2.5, 2.5, 10_000)
    vals = [phi(m, family, float(x)) for x in xs]
    diffs = np.diff(vals)
    assert np.all(diffs > 0)


@pytest.mark.parametrize("gamma", [1.4, 2.0, 3.0])
def test_phi_convexity_signs(gamma):
    # backward convex up on the shock side, forward convex down on its own
    m = new_model(gamma)
    xs = np.linspace(1.01, 50.0, 400)
    h = 1e-3
    for x in xs[:: len(xs) // 80]:
        x = float(x)
        second = phi(m, BWD, x + h) - 2 * phi(m, BWD, x) + phi(m, BWD, x - h)
        assert second > -1e-12 * abs(phi(m, BWD, x))
    for x in np.linspace(0.02, 0.99, 80):
        x = float(x)
        hh = min(h, 0.4 * x)
        second = phi(m, FWD, x + hh) - 2 * phi(m, FWD, x) + phi(m, FWD, x - hh)
        assert second < 1e-12 * abs(phi(m, FWD, x)) + 1e-15


@pytest.mark.parametrize("gamma", [1.4, 2.0, 3.0])
@pytest.mark.parametrize("family", [BWD, FWD])
def test_phi_deriv_matches_finite_differences(gamma, family):
    m = new_model(gamma)
    for x in np.logspace(-2, 2, 41):
        x = float(x)
        if abs(x - 1.0) < 0.05:
            continue
        h = 1e-6 * x
        fd = (phi(m, family, x + h) - phi(m, family, x - h)) / (2 * h)
        assert phi_deriv(m, family, x) == pytest.approx(fd, rel=1e-6)


def test_phi_deriv_exceeds_kappa_on_shock_branch(model3):
    kap = model3.kappa
    for x in (1.0 + 1e-5, 1.5, 3.0, 20.0):
        assert phi_deriv(model3, BWD, x) > kap
    for x in (0.9, 0.5, 0.05):
        assert phi_deriv(model3, FWD, x) > kap
    # and grows without bound upward (~1.5*sqrt(x) at gamma=3)
    assert phi_deriv(model3, BWD, 1e4) > 80 * kap


def test_phi_matches_high_precision_reference():
    # 50-digit reference via the naive power formula; exercises the expm1
    # evaluation and the derivative series branch around the unit ratio
    import mpmath

    mpmath.mp.dps = 50
    for gamma in (1.4, 3.0):
        m = new_model(gamma)
        a = 1 / mpmath.mpf(m.alpha)
        c = mpmath.mpf(gamma) / mpmath.mpf(m.alpha)

        def ref_phi(x):
            x = mpmath.mpf(x)
            return mpmath.sqrt((1 - x**-a) * (x**c - 1))

        for x in (1 + 1e-12, 1 + 1e-7, 1.0001, 1.5, 7.0, 250.0):
            got = phi(m, BWD, x)
            want = float(ref_phi(x))
            assert abs(got - want) <= 5e-15 * want, (gamma, x)
            got_d = phi_deriv(m, BWD, x)
            want_d = float(mpmath.diff(ref_phi, mpmath.mpf(x)))
            assert abs(got_d - want_d) <= 1e-12 * want_d, (gamma, x)
        for x in (1 - 1e-12, 1 - 1e-7, 0.999, 0.6, 0.05):
            got = phi(m, FWD, x)
            want = float(-ref_phi(x))
            assert abs(got - want) <= 5e-15 * abs(want), (gamma, x)
            got_d = phi_deriv(m, FWD, x)
            want_d = float(mpmath.diff(lambda v: -ref_phi(v), mpmath.mpf(x)))
            assert abs(got_d - want_d) <= 1e-12 * want_d, (gamma, x)


def test_wave_kind_classification():
    assert Wave(BWD, 0.5).kind is WaveKind.RAREFACTION
    assert Wave(BWD, 2.0).kind is WaveKind.SHOCK
    assert Wave(FWD, 2.0).kind is WaveKind.RAREFACTION
    assert Wave(FWD, 0.5).kind is WaveKind.SHOCK
    assert Wave(BWD, 1.0).kind is WaveKind.NULL
    assert Wave(FWD, 1.0).kind is WaveKind.NULL


def test_wave_right_state_examples(model3):
    left = State(xi=1.0, u=0.0)
    st = wave_right_state(model3, left, Wave(BWD, 2.0))
    assert st.xi == 2.0
    assert st.u == pytest.approx(-1.8708286933869707, rel=1e-13)
    st = wave_right_state(model3, left, Wave(FWD, 2.0))
    assert st.xi == 2.0
    assert st.u == pytest.approx(math.sqrt(3.0), rel=1e-13)
    for fam in (BWD, FWD):
        st = wave_right_state(model3, left, Wave(fam, 1.0))
        assert (st.xi, st.u) == (left.xi, left.u)


@pytest.mark.parametrize("gamma", [1.4, 3.0])
def test_sign_lemma_invariant_changes(gamma, rng):
    # backward shock: both invariants drop; backward rarefaction: r rises, s fixed;
    # forward rarefaction: s rises, r fixed; forward shock: both drop
    m = new_model(gamma)
    for _ in range(200):
        left = State(xi=float(rng.uniform(0.3, 3.0)), u=float(rng.uniform(-2, 2)))
        r0, s0 = invariants(m, left)
        q_shock = float(rng.uniform(1.0 + 1e-6, 10.0))
        q_rare = float(rng.uniform(0.1, 1.0 - 1e-6))

        r, s = invariants(m, wave_right_state(m, left, Wave(BWD, q_shock)))
        assert r < r0 and s < s0

        r, s = invariants(m, wave_right_state(m, left, Wave(BWD, q_rare)))
        assert r > r0
        assert abs(s - s0) <= 1e-12 * abs(s0) + 1e-14

        r, s = invariants(m, wave_right_state(m, left, Wave(FWD, 1.0 / q_rare)))
        assert s > s0
        assert abs(r - r0) <= 1e-12 * abs(r0) + 1e-14

        r, s = invariants(m, wave_right_state(m, left, Wave(FWD, q_rare)))
        assert r < r0 and s < s0


@pytest.mark.parametrize("gamma", [1.4, 2.0, 3.0])
def test_shock_slope_gap_grows(gamma):
    # x - (phi(x) + kappa(x+1)) / (phi'(x) + kappa) exceeds any fixed bound
    m = new_model(gamma)
    kap = m.kappa

    def gap(x):
        return x - (phi(m, BWD, x) + kap * (x + 1.0)) / (phi_deriv(m, BWD, x) + kap)

    xs = np.logspace(0.01, 4, 200)
    assert max(gap(float(x)) for x in xs) > 2.0
    # eventually increasing: compare decade averages
    early = np.mean([gap(float(x)) for x in xs[:20]])
    late = np.mean([gap(float(x)) for x in xs[-20:]])
    assert late > early
