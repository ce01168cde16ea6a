import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from rainbow_greedy.asymptotics import (
    Bracket,
    RegimeError,
    epsilon_kappa,
    large_kappa_leading_estimate,
    large_kappa_threshold,
    near_half_alpha,
    near_half_alpha_series,
    predict_greedy_tau0,
    tau0_large_kappa,
    tau0_near_half,
    tau0_small_kappa_bounds,
)
from rainbow_greedy.ode_theory import TheoryParams, tau0_closed_half, tau0_general


def z_of_tau(tau, kappa):
    return (kappa - tau) / (kappa * (1.0 - 2.0 * tau))


class TestBracket:
    def test_rejects_inverted(self):
        with pytest.raises(ValueError):
            Bracket(lower=0.3, upper=0.2, estimate=0.25, regime="x")

    def test_rejects_outside_estimate(self):
        with pytest.raises(ValueError):
            Bracket(lower=0.2, upper=0.3, estimate=0.4, regime="x")

    def test_contains_and_width(self):
        b = Bracket(lower=0.2, upper=0.3, estimate=0.25, regime="x")
        assert b.contains(0.2) and b.contains(0.3) and not b.contains(0.31)
        assert b.width == pytest.approx(0.1, abs=1e-15)


class TestAlpha:
    def test_zero_at_half(self):
        assert near_half_alpha(TheoryParams(1.0, 0.5)) == 0.0

    def test_frozen_value(self):
        # direct evaluation of the defining expression at c=1, kappa=0.55
        assert near_half_alpha(TheoryParams(1.0, 0.55)) == pytest.approx(
            0.013780729286584206, abs=1e-12)

    def test_series_agreement(self):
        # relative error under 10 eps^2 for |eps| <= 0.1
        for c in (0.5, 1.0, 3.0):
            for eps in (-0.1, -0.05, -0.01, 0.01, 0.05, 0.1):
                p = TheoryParams(c, (1 + eps) / 2)
                exact = near_half_alpha(p)
                series = near_half_alpha_series(p)
                assert abs(exact - series) <= 10 * eps * eps * abs(exact)

    def test_positive_off_half(self):
        for kappa in (0.45, 0.48, 0.52, 0.55, 0.7):
            assert near_half_alpha(TheoryParams(1.0, kappa)) > 0


class TestNearHalf:
    def test_containment_above_half(self):
        for kappa in (0.52, 0.55, 0.6):
            p = TheoryParams(1.0, kappa)
            b = tau0_near_half(p)
            assert b.contains(tau0_general(p)), (kappa, b)

    def test_containment_below_half(self):
        for kappa in (0.45, 0.48):
            p = TheoryParams(1.0, kappa)
            b = tau0_near_half(p)
            assert b.contains(tau0_general(p)), (kappa, b)

    def test_estimate_side(self):
        above = tau0_near_half(TheoryParams(1.0, 0.55))
        assert above.estimate == above.lower
        below = tau0_near_half(TheoryParams(1.0, 0.45))
        assert below.estimate == below.upper

    def test_collapses_to_half_limit(self):
        b = tau0_near_half(TheoryParams(1.0, 0.5 + 1e-5))
        assert b.width < 1e-3
        assert b.estimate == pytest.approx(tau0_closed_half(1.0), abs=1e-3)

    def test_rejects_exact_half(self):
        with pytest.raises(RegimeError):
            tau0_near_half(TheoryParams(1.0, 0.5))

    def test_rejects_far_above(self):
        with pytest.raises(RegimeError):
            tau0_near_half(TheoryParams(1.0, 2.0))

    def test_rejects_far_below(self):
        with pytest.raises(RegimeError):
            tau0_near_half(TheoryParams(1.0, 0.05))

    def test_regime_label(self):
        assert tau0_near_half(TheoryParams(1.0, 0.55)).regime == "near-half"


class TestLargeKappa:
    def test_threshold_value(self):
        # (e-1) * (20/19)^2 at kappa = 10
        assert large_kappa_threshold(10.0) == pytest.approx(
            (math.e - 1.0) * (20.0 / 19.0) ** 2, abs=1e-12)

    def test_containment(self):
        for (c, kappa) in ((3.0, 5.0), (3.0, 10.0), (3.0, 50.0), (5.0, 2.0)):
            p = TheoryParams(c, kappa)
            b = tau0_large_kappa(p)
            assert b.contains(tau0_general(p)), (c, kappa, b)

    def test_borderline_degree_cell(self):
        # c=3, kappa=2 sits just below the nominal threshold (~3.055); the
        # gate slack admits it and containment still holds
        p = TheoryParams(3.0, 2.0)
        b = tau0_large_kappa(p)
        assert b.contains(0.3615565064717692)

    def test_bracket_tightness(self):
        b = tau0_large_kappa(TheoryParams(3.0, 10.0))
        assert b.width < 1e-3

    def test_infinite_color_limit(self):
        # estimate approaches (1 - 1/(c+1))/2 as kappa grows
        b = tau0_large_kappa(TheoryParams(3.0, 1e6))
        assert b.estimate == pytest.approx(0.375, abs=1e-5)

    def test_rejects_low_degree(self):
        with pytest.raises(RegimeError):
            tau0_large_kappa(TheoryParams(1.0, 2.0))

    def test_rejects_kappa_below_one(self):
        with pytest.raises(RegimeError):
            tau0_large_kappa(TheoryParams(3.0, 0.8))

    def test_z_residual_self_consistency(self):
        # mapping the bracket back to z-space, the estimate's fixed-point
        # residual cannot exceed the bracket's own z-width
        for (c, kappa) in ((3.0, 2.0), (3.0, 5.0), (3.0, 10.0), (3.0, 50.0)):
            b = tau0_large_kappa(TheoryParams(c, kappa))
            beta = c * ((2 * kappa - 1) / (2 * kappa)) ** 2 + 1.0
            z0 = z_of_tau(b.estimate, kappa)
            z_width = z_of_tau(b.upper, kappa) - z_of_tau(b.lower, kappa)
            resid = abs(z0 - beta - math.log(z0) / (2 * kappa))
            assert resid <= z_width + 1e-15


class TestSmallKappa:
    def test_containment(self):
        for (c, kappa) in ((6.0, 0.075), (6.0, 0.08), (8.0, 0.05625)):
            p = TheoryParams(c, kappa)
            b = tau0_small_kappa_bounds(p)
            assert b.contains(tau0_general(p)), (c, kappa, b)

    def test_frozen_endpoints(self):
        b = tau0_small_kappa_bounds(TheoryParams(6.0, 0.075))
        assert b.lower == pytest.approx(0.075 * (1 - math.exp(-(40.0 - 12.0))), abs=1e-18)
        assert b.upper == pytest.approx(0.075 * (1 - math.exp(-40.0)), abs=1e-18)
        assert b.estimate == b.upper

    def test_bounds_collapse_to_kappa(self):
        # both exponentials underflow well below float spacing
        b = tau0_small_kappa_bounds(TheoryParams(20.0, 0.02))
        assert b.lower == 0.02 and b.upper == 0.02

    def test_rejects_degree_five_exactly(self):
        with pytest.raises(RegimeError):
            tau0_small_kappa_bounds(TheoryParams(5.0, 0.05))

    def test_rejects_large_kappa(self):
        with pytest.raises(RegimeError):
            tau0_small_kappa_bounds(TheoryParams(6.0, 0.2))


class TestCaseDCorrection:
    def test_epsilon_kappa_value(self):
        want = math.log(4.0) / 19.0 - 0.15
        assert epsilon_kappa(TheoryParams(3.0, 10.0)) == pytest.approx(want, abs=1e-15)

    def test_epsilon_vanishes_at_infinity(self):
        assert abs(epsilon_kappa(TheoryParams(3.0, 1e9))) < 1e-8

    def test_leading_estimate(self):
        # frozen: 0.5 * (1 - 1/(4 + epsilon)) at c=3, kappa=10
        est = large_kappa_leading_estimate(TheoryParams(3.0, 10.0))
        assert est == pytest.approx(0.3725453, abs=1e-6)
        # close to the exact root but not necessarily inside the bracket
        assert abs(est - 0.3724457434888862) < 5e-4


class TestDispatcher:
    def test_exact_half(self):
        pred = predict_greedy_tau0(TheoryParams(1.0, 0.5))
        assert pred.case == "closed-half"
        assert pred.tau0 == pytest.approx(0.21132486540518708, abs=1e-12)
        assert pred.bracket is None

    def test_near_half(self):
        pred = predict_greedy_tau0(TheoryParams(1.0, 0.52))
        assert pred.case == "near-half"
        assert pred.bracket.contains(pred.tau0)
        assert pred.bracket.contains(tau0_general(TheoryParams(1.0, 0.52)))

    def test_small_kappa(self):
        pred = predict_greedy_tau0(TheoryParams(6.0, 0.075))
        assert pred.case == "small-kappa"
        assert pred.bracket.contains(tau0_general(TheoryParams(6.0, 0.075)))

    def test_large_kappa(self):
        pred = predict_greedy_tau0(TheoryParams(3.0, 10.0))
        assert pred.case == "large-kappa"
        assert pred.bracket.contains(pred.tau0)
        assert pred.bracket.contains(tau0_general(TheoryParams(3.0, 10.0)))
        assert pred.epsilon_correction is not None
        assert pred.leading_estimate is not None

    def test_borderline_degree_falls_back(self):
        # below the strict threshold the dispatcher uses the numeric root
        # even though tau0_large_kappa itself would accept (gate slack)
        pred = predict_greedy_tau0(TheoryParams(3.0, 2.0))
        assert pred.case == "numeric-root"
        assert pred.tau0 == pytest.approx(0.3615565064717692, abs=1e-12)

    def test_low_degree_high_kappa_falls_back(self):
        pred = predict_greedy_tau0(TheoryParams(0.5, 3.0))
        assert pred.case == "numeric-root"

    def test_prediction_tracks_exact_root(self):
        for (c, kappa) in ((1.0, 0.5), (1.0, 0.52), (1.0, 0.45), (3.0, 10.0),
                           (3.0, 2.0), (6.0, 0.075)):
            pred = predict_greedy_tau0(TheoryParams(c, kappa))
            exact = tau0_general(TheoryParams(c, kappa))
            if pred.bracket is not None:
                assert pred.bracket.contains(exact)
            else:
                assert pred.tau0 == pytest.approx(exact, abs=1e-9)
            assert pred.mu_over_n == pred.tau0


@settings(max_examples=40, deadline=None)
@given(c=st.floats(0.5, 4.0), kappa=st.floats(0.42, 0.58))
def test_near_half_containment_property(c, kappa):
    assume(abs(2 * kappa - 1) > 1e-3)
    p = TheoryParams(c, kappa)
    try:
        b = tau0_near_half(p)
    except RegimeError:
        assume(False)
        return
    assert b.lower <= b.estimate <= b.upper
    assert b.contains(tau0_general(p))
