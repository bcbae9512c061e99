"""Closed-form gap bounds against the grid oracle and family members."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittengap.bounds import (
    BoundInput,
    ShrinkerBoundInput,
    SolitonInput,
    andrews_ni_bound,
    futaki_sano_bound,
    gap_expression,
    shrinker_diameter_bound,
    shrinker_diameter_bound_sup,
    soliton_diameter_bounds,
    soliton_optimal_s,
    sup_bound_branch,
    sup_bound_closed,
    sup_bound_grid,
)

FOUR_PI_SQ = 4.0 * math.pi**2

ks = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
ds = st.floats(min_value=0.1, max_value=20.0, allow_nan=False)
ss = st.floats(min_value=1e-6, max_value=1.0 - 1e-6, allow_nan=False)


def test_interior_vertex_example():
    # K = 1, d = pi sits on the interior branch: (pi/d + K d/(4 pi))^2 = 1.5625
    inp = BoundInput(K=1.0, d=math.pi)
    assert sup_bound_closed(inp) == pytest.approx(1.5625, abs=1e-12)
    branch, s_star = sup_bound_branch(inp)
    assert branch == "interior"
    assert s_star == pytest.approx(0.625, abs=1e-12)


def test_branch_limits():
    # deep negative curvature: the supremum is the s -> 0 limit, zero
    assert sup_bound_closed(BoundInput(K=-10.0, d=10.0)) == 0.0
    assert sup_bound_branch(BoundInput(K=-10.0, d=10.0)) == ("zero_limit", None)
    # strong positive curvature: the supremum is the s -> 1 limit, K
    assert sup_bound_closed(BoundInput(K=10.0, d=10.0)) == 10.0
    assert sup_bound_branch(BoundInput(K=10.0, d=10.0))[0] == "curvature_limit"


@pytest.mark.parametrize("d", [0.5, 1.0, 2.0, math.pi, 5.0, 10.0, 20.0])
def test_branch_continuity(d):
    # at K d^2 = -4 pi^2 the interior vertex value degenerates to 0,
    # at K d^2 = +4 pi^2 it degenerates to K; adjacent formulas agree
    k_neg = -FOUR_PI_SQ / d**2
    mid = (math.pi / d + k_neg * d / (4.0 * math.pi)) ** 2
    assert abs(mid - 0.0) <= 1e-12 * max(1.0, abs(k_neg))
    k_pos = FOUR_PI_SQ / d**2
    mid = (math.pi / d + k_pos * d / (4.0 * math.pi)) ** 2
    assert abs(mid - k_pos) <= 1e-12 * max(1.0, k_pos)


def test_grid_oracle_spot_checks():
    for K, d in [(-7.0, 3.0), (-1.0, 0.5), (0.0, 2.0), (0.5, 5.0), (4.0, 1.0), (10.0, 20.0)]:
        inp = BoundInput(K=K, d=d)
        closed = sup_bound_closed(inp)
        grid = sup_bound_grid(inp, 10**6)
        assert abs(closed - grid) <= 1e-6 * max(1.0, abs(closed))


@given(K=ks, d=ds, s=ss)
@settings(max_examples=200, deadline=None)
def test_closed_form_dominates_every_member(K, d, s):
    inp = BoundInput(K=K, d=d)
    closed = sup_bound_closed(inp)
    member = float(gap_expression(s, K, d))
    assert closed >= member - 1e-9 * max(1.0, abs(closed), abs(member))


@given(K=ks, d=ds)
@settings(max_examples=200, deadline=None)
def test_grid_never_exceeds_closed_form(K, d):
    inp = BoundInput(K=K, d=d)
    assert sup_bound_grid(inp, 10**4) <= sup_bound_closed(inp) + 1e-12


@given(K=ks, d=ds)
@settings(max_examples=200, deadline=None)
def test_scaling_identity(K, d):
    # gap(s; K, d) = d^{-2} gap(s; K d^2, 1), so the suprema scale the same way
    ref = sup_bound_closed(BoundInput(K=K * d * d, d=1.0)) / d**2
    val = sup_bound_closed(BoundInput(K=K, d=d))
    assert val == pytest.approx(ref, rel=1e-12, abs=1e-300)


@given(K=ks, d=ds)
@settings(max_examples=200, deadline=None)
def test_half_slope_member_and_positivity(K, d):
    inp = BoundInput(K=K, d=d)
    closed = sup_bound_closed(inp)
    assert closed >= 0.0
    # the s = 1/2 member is andrews_ni; the supremum dominates it
    half = andrews_ni_bound(inp)
    assert closed >= half - 1e-9 * max(1.0, abs(half))
    if K >= 0.0:
        assert closed >= math.pi**2 / d**2 - 1e-12


def test_fixed_slope_values():
    inp = BoundInput(K=2.0, d=3.0)
    assert futaki_sano_bound(inp) == pytest.approx(math.pi**2 / 9.0 + 0.62, abs=1e-12)
    assert andrews_ni_bound(inp) == pytest.approx(math.pi**2 / 9.0 + 1.0, abs=1e-12)


def test_optimal_s_closed_form_and_grid():
    opt = soliton_optimal_s()
    assert opt.s_star == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-15)
    assert opt.g_max == pytest.approx(12.0 - 8.0 * math.sqrt(2.0), abs=1e-15)
    # g(s*) equals the claimed maximum
    g_at_star = 4.0 * opt.s_star * (1.0 - opt.s_star) / (2.0 - opt.s_star)
    assert g_at_star == pytest.approx(opt.g_max, abs=1e-14)
    # a fine grid never exceeds it and comes within its resolution
    s = np.arange(1, 2_000_001, dtype=np.float64) / 2_000_001
    g = 4.0 * s * (1.0 - s) / (2.0 - s)
    assert g.max() <= opt.g_max + 1e-14
    assert abs(g.max() - opt.g_max) <= 1e-12


def test_soliton_constants_and_ordering():
    c_sup = 2.0 * (math.sqrt(2.0) - 1.0)
    c_half = math.sqrt(2.0 / 3.0)
    c_fixed = 10.0 / 13.0
    assert c_sup > c_half > c_fixed
    b = soliton_diameter_bounds(SolitonInput(lam=1.0))
    assert b.sup_bound == pytest.approx(c_sup * math.pi, abs=1e-12)
    assert b.andrews_ni == pytest.approx(c_half * math.pi, abs=1e-12)
    assert b.futaki_sano == pytest.approx(c_fixed * math.pi, abs=1e-12)
    # the sup-family constant, 10 digits
    assert b.sup_bound == pytest.approx(2.6025805690, abs=1e-9)


@given(lam=st.floats(min_value=0.01, max_value=100.0, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_soliton_bounds_scale(lam):
    b1 = soliton_diameter_bounds(SolitonInput(lam=1.0))
    b = soliton_diameter_bounds(SolitonInput(lam=lam))
    rt = math.sqrt(lam)
    assert b.sup_bound == pytest.approx(b1.sup_bound / rt, rel=1e-12)
    assert b.sup_bound > b.andrews_ni > b.futaki_sano


def test_shrinker_bound_values():
    # circle normalization: lam = 1, K0 = 1 gives pi / sqrt(2)
    inp = ShrinkerBoundInput(lam=1.0, K0=1.0)
    assert shrinker_diameter_bound(inp) == pytest.approx(math.pi / math.sqrt(2.0), abs=1e-12)
    # the sup over s dominates the s = 1/2 member
    sup = shrinker_diameter_bound_sup(inp)
    assert sup >= shrinker_diameter_bound(inp) - 1e-8


@given(
    lam=st.floats(min_value=0.1, max_value=10.0, allow_nan=False),
    K0=st.floats(min_value=0.0, max_value=50.0, allow_nan=False),
)
@settings(max_examples=100, deadline=None)
def test_shrinker_sup_dominates(lam, K0):
    inp = ShrinkerBoundInput(lam=lam, K0=K0)
    assert shrinker_diameter_bound_sup(inp, 10**4) >= shrinker_diameter_bound(inp) - 1e-6


def test_input_validation():
    with pytest.raises(ValueError):
        BoundInput(K=0.0, d=0.0)
    with pytest.raises(ValueError):
        BoundInput(K=math.nan, d=1.0)
    with pytest.raises(ValueError):
        SolitonInput(lam=0.0)
    with pytest.raises(ValueError):
        ShrinkerBoundInput(lam=-1.0, K0=1.0)
    with pytest.raises(ValueError):
        sup_bound_grid(BoundInput(K=0.0, d=1.0), 0)
