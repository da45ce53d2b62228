"""Present values, forward prices, yields.

Reference values are closed forms: a unit annuity over n years at flat
rate i is worth (1 - (1+i)^-n)/i, and a unit-density payment stream over
[0, T) is worth (1 - (1+i)^-T)/ln(1+i).
"""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pvkit import (
    DomainError,
    FlatCurve,
    SpotGridCurve,
    default_tolerance,
    density,
    dirac,
    forward_discount,
    forward_price,
    irr,
    numeraire_price,
    price,
    total_variation,
    yield_bound_check,
)
from pvkit.measures import CashFlow
from pvkit.sampling import random_cashflow, random_curve

seeds = st.integers(min_value=0, max_value=2**32 - 1)

ANNUITY_10 = sum((dirac(float(k)) for k in range(2, 11)), dirac(1.0))


def test_discrete_annuity_closed_form():
    res = price(FlatCurve(0.05), ANNUITY_10)
    expected = (1.0 - 1.05 ** -10) / 0.05  # 7.721734929184818
    assert res.value == pytest.approx(expected, rel=1e-14)
    assert res.lower == res.upper == res.value  # atoms price exactly
    assert res.density_part == 0.0


def test_continuous_annuity_bracket():
    res = price(FlatCurve(0.05), density(0.0, 10.0, (1.0,)), tol=1e-10)
    expected = (1.0 - 1.05 ** -10) / math.log(1.05)  # 7.91320859504571
    assert res.lower <= expected <= res.upper
    assert res.upper - res.lower <= 1e-10
    assert res.atom_part == 0.0


def test_mixed_flow_parts_sum():
    flow = dirac(1.0, 2.0) + density(0.0, 3.0, (0.5,))
    res = price(FlatCurve(0.03), flow, tol=1e-11)
    assert res.value == pytest.approx(res.atom_part + res.density_part,
                                      abs=1e-11)
    assert res.atom_part == pytest.approx(2.0 / 1.03, rel=1e-14)


def test_default_tolerance_scales_with_variation():
    small = dirac(1.0, 1.0)
    big = dirac(1.0, 1e6)
    assert default_tolerance(big) > default_tolerance(small)
    assert default_tolerance(small) == pytest.approx(2e-10, rel=1e-6)


def test_support_beyond_horizon_rejected():
    with pytest.raises(DomainError):
        price(FlatCurve(0.05, horizon=5.0), dirac(6.0, 1.0))
    with pytest.raises(DomainError):
        price(FlatCurve(0.05), dirac(1.0), tol=0.0)


def test_null_flow_prices_to_zero():
    res = price(FlatCurve(0.05), CashFlow())
    assert res.value == res.lower == res.upper == 0.0


# --- property suites --------------------------------------------------------


@given(seeds)
def test_linearity(seed):
    rng = np.random.default_rng(seed)
    curve = random_curve(rng, horizon=120.0)
    a = random_cashflow(rng)
    b = random_cashflow(rng)
    k = float(rng.uniform(-3.0, 3.0))
    lhs = price(curve, a + k * b).value
    rhs = price(curve, a).value + k * price(curve, b).value
    scale = 1.0 + total_variation(a) + abs(k) * total_variation(b)
    assert lhs == pytest.approx(rhs, abs=1e-9 * scale)


@given(seeds)
def test_strict_positivity(seed):
    rng = np.random.default_rng(seed)
    curve = random_curve(rng, horizon=120.0)
    flow = random_cashflow(rng, nonnegative=True)
    if flow.is_null:
        return
    res = price(curve, flow)
    assert res.lower > 0.0


@given(seeds)
def test_monotonicity_in_the_flow(seed):
    rng = np.random.default_rng(seed)
    curve = random_curve(rng, horizon=120.0)
    base = random_cashflow(rng)
    bump = random_cashflow(rng, nonnegative=True)
    lo = price(curve, base)
    hi = price(curve, base + bump)
    assert hi.value >= lo.value - 1e-9 * (1 + total_variation(base)
                                          + total_variation(bump))


@given(seeds)
def test_self_financing_round_trip(seed):
    # buying the flow for its price leaves a position worth zero
    rng = np.random.default_rng(seed)
    curve = random_curve(rng, horizon=120.0)
    flow = random_cashflow(rng)
    p = price(curve, flow).value
    hedged = flow - p * dirac(0.0, 1.0)
    res = price(curve, hedged)
    assert abs(res.value) <= 1e-9 * (1 + total_variation(flow) + abs(p))


@given(seeds)
def test_forward_price_consistency(seed):
    # value today of (forward price payable at t) equals value today of flow
    rng = np.random.default_rng(seed)
    curve = random_curve(rng, horizon=120.0)
    flow = random_cashflow(rng)
    at = float(rng.uniform(0.0, 10.0))
    tol = default_tolerance(flow)
    fwd = forward_price(curve, flow, at).value
    spot = price(curve, flow).value
    assert fwd * curve.discount(at) == pytest.approx(spot, abs=4 * tol)


def test_forward_price_at_zero_is_price():
    flow = dirac(2.0, 3.0) + density(0.0, 1.0, (1.0,))
    c = FlatCurve(0.04)
    assert forward_price(c, flow, 0.0).value == pytest.approx(
        price(c, flow).value, rel=1e-14)


def test_forward_price_uses_forward_discounts():
    c = SpotGridCurve(((0.0, 1.0), (1.0, 0.97), (2.0, 0.93)))
    res = forward_price(c, dirac(2.0, 1.0), 1.0)
    assert res.value == pytest.approx(forward_discount(c, 1.0, 2.0), rel=1e-14)


def test_numeraire_price_in_units_of_bond():
    c = FlatCurve(0.05)
    flow = dirac(1.0, 1.0)
    bond2 = dirac(2.0, 1.0)
    ratio = numeraire_price(c, flow, bond2)
    assert ratio == pytest.approx(c.discount(1.0) / c.discount(2.0), rel=1e-12)
    with pytest.raises(DomainError):
        numeraire_price(c, flow, dirac(1.0, -1.0))
    with pytest.raises(DomainError):
        numeraire_price(c, flow, CashFlow())


# --- internal rate of return -------------------------------------------------


def test_irr_recovers_flat_rate():
    target = price(FlatCurve(0.05), ANNUITY_10).value
    res = irr(ANNUITY_10, target)
    assert res.rate == pytest.approx(0.05, abs=1e-9)
    assert abs(res.residual) <= 1e-9


def test_irr_with_purchase_time_shift():
    # paying at t=2 for the annuity tail discounts from the purchase date
    tail = sum((dirac(float(k)) for k in range(4, 11)), dirac(3.0))
    target = forward_price(FlatCurve(0.07), tail, 2.0).value
    res = irr(tail, target, purchase_time=2.0)
    assert res.rate == pytest.approx(0.07, abs=1e-9)


def test_irr_rejects_bad_inputs():
    with pytest.raises(DomainError):
        irr(dirac(1.0, -1.0), 1.0)  # signed flow
    with pytest.raises(DomainError):
        irr(dirac(1.0, 1.0), -0.5)  # negative price
    with pytest.raises(DomainError):
        irr(CashFlow(), 1.0)
    with pytest.raises(DomainError):
        irr(dirac(1.0, 1.0), 0.5, purchase_time=2.0)  # support before purchase


def test_irr_deep_discount_root():
    # a payment of 1 at t=1 bought for 2 implies the rate -0.5 exactly
    res = irr(dirac(1.0, 1.0), 2.0)
    assert res.rate == pytest.approx(-0.5, abs=1e-9)


def test_irr_no_rate_reaches_target():
    # PV of 1-at-1 spans (1/11, 1000] over the searchable rates; targets
    # outside that range have no root
    with pytest.raises(DomainError):
        irr(dirac(1.0, 1.0), 2000.0)
    with pytest.raises(DomainError):
        irr(dirac(1.0, 1.0), 0.05)


def test_irr_degenerate_all_at_purchase_time():
    # flow entirely at the purchase date: PV is rate-free
    res = irr(dirac(0.0, 3.0), 3.0)
    assert res.rate == 0.0
    with pytest.raises(DomainError):
        irr(dirac(0.0, 3.0), 2.0)


@given(seeds)
def test_irr_round_trips_random_nonneg_flows(seed):
    rng = np.random.default_rng(seed)
    flow = random_cashflow(rng, nonnegative=True, horizon=20.0)
    if flow.is_null:
        return
    rate = float(rng.uniform(-0.2, 0.5))
    target = price(FlatCurve(rate, horizon=25.0), flow).value
    res = irr(flow, target)
    # flows paying only at t=0 price rate-free; any rate is as good as rate 0
    only_now = flow.support_bounds()[1] == 0.0
    if not only_now:
        assert res.rate == pytest.approx(rate, abs=1e-6)
    assert abs(res.residual) <= 2e-10 * (1.0 + target)


# --- yield bound ---------------------------------------------------------------


def test_yield_bound_flat_curve_is_tight():
    flow = ANNUITY_10
    report = yield_bound_check(FlatCurve(0.05), flow)
    assert report.holds
    assert report.rate == pytest.approx(0.05, abs=1e-8)
    assert report.forward_max == pytest.approx(0.05, abs=1e-10)


@given(seeds)
def test_yield_bound_property(seed):
    rng = np.random.default_rng(seed)
    curve = random_curve(rng, horizon=120.0)
    flow = random_cashflow(rng, nonnegative=True, horizon=20.0)
    if flow.is_null or flow.support_bounds()[1] == 0.0:
        return
    report = yield_bound_check(curve, flow)
    assert report.holds, (report.rate, report.forward_max)
