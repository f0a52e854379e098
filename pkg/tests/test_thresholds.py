import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degpart.thresholds import (EXTERNAL, INTERNAL, ParamSet,
                                build_threshold_table, default_d_constant,
                                goodness_threshold, verify_series_bound)


def test_default_d_constant_values():
    assert default_d_constant(0.0, 1.0, INTERNAL) == 1000.0
    assert default_d_constant(0.0, 0.5, INTERNAL) == 4000.0
    # 1000 / (sqrt(0.25) * 0.25) with exact arithmetic
    assert default_d_constant(0.75, 0.5, EXTERNAL) == pytest.approx(8000.0, rel=1e-15)
    with pytest.raises(ValueError):
        default_d_constant(0.0, 0.0, INTERNAL)


def test_paramset_validation():
    ParamSet(0.0, 0.25, INTERNAL)
    with pytest.raises(ValueError):
        ParamSet(0.0, 0.26, INTERNAL)
    ParamSet(0.0, 0.26, INTERNAL, relaxed=True)
    with pytest.raises(ValueError):
        ParamSet(0.0, 0.11, EXTERNAL)
    ParamSet(0.0, 0.09, EXTERNAL)
    with pytest.raises(ValueError):
        ParamSet(1.0, 0.1, INTERNAL)
    with pytest.raises(ValueError):
        ParamSet(0.0, 0.1, INTERNAL, d_const=-1.0)
    with pytest.raises(ValueError):
        ParamSet(0.0, 0.1, INTERNAL, d_const=0.0)
    # d=0 is an algebra-check degenerate, allowed only relaxed
    ParamSet(0.0, 0.1, INTERNAL, d_const=0.0, relaxed=True)


def test_paramset_default_d():
    p = ParamSet(0.0, 0.25, INTERNAL)
    assert p.d == 16000.0
    p2 = ParamSet(0.0, 0.25, INTERNAL, d_const=1.0)
    assert p2.d == 1.0


def test_series_bound_builtin_default_holds():
    res = verify_series_bound(1000 / 0.25 ** 2, 0.25)
    assert res.holds
    assert res.partial_sum + res.tail_bound <= res.target


def test_series_bound_small_d_fails():
    res = verify_series_bound(0.001, 0.5)
    assert not res.holds
    # the first term alone is about exp(-1e-6), far above eps^2/1e5
    assert res.partial_sum > res.target


def test_series_bound_large_d_limit():
    res = verify_series_bound(1e9, 0.5)
    assert res.holds and res.partial_sum == 0.0


def test_series_bound_budget_validation():
    with pytest.raises(ValueError):
        verify_series_bound(1.0, 0.5, budget=0)


def test_series_bound_custom_target():
    # external variant: target (1-c) * eps^2 / 1e5
    c, eps = 0.75, 0.25
    d = default_d_constant(c, eps, EXTERNAL)
    res = verify_series_bound(d, eps, target=(1 - c) * eps ** 2 / 1e5)
    assert res.holds


def test_table_worked_example_i16():
    # c=0, eps=0.25, d=1, i=16: phi = 4 - (11.3137... + 4), mu = 1.9142...
    p = ParamSet(0.0, 0.25, INTERNAL, d_const=1.0)
    t = build_threshold_table(p, [16])
    k = int(t.row_index(np.array([16]))[0])
    expected_phi = 0.25 * 16 - (2 * 16 ** 0.625 + 0.25 * 16)
    assert t.phi[k] == pytest.approx(expected_phi, abs=1e-12)
    assert t.mu[k] == pytest.approx(4 * 16 ** -0.375 + 0.5, abs=1e-12)
    assert ((1 - 0) / 4 - t.mu[k] / 2) * 16 == pytest.approx(t.phi[k], abs=1e-9)
    assert not t.active[k]


def test_table_zero_degree_row_inactive():
    p = ParamSet(0.0, 0.25, INTERNAL, d_const=1.0)
    t = build_threshold_table(p, [0, 1])
    k = int(t.row_index(np.array([0]))[0])
    assert t.phi[k] == 0.0 and t.psi[k] == 0.0 and not t.active[k]


def test_table_d_zero_cancels():
    p = ParamSet(0.0, 0.25, INTERNAL, d_const=0.0, relaxed=True)
    t = build_threshold_table(p, range(1, 50))
    assert np.allclose(t.phi, 0.0, atol=1e-9)


def test_goodness_threshold_internal_formula():
    p = ParamSet(0.0, 0.02, INTERNAL, d_const=0.05)
    t = build_threshold_table(p, [100])
    k = int(t.row_index(np.array([100]))[0])
    assert t.active[k]
    val = goodness_threshold(t, 100, INTERNAL)
    assert val == pytest.approx(2 * (1 + t.mu[k]) * t.phi[k], rel=1e-15)


def test_goodness_threshold_external_worked_example():
    # c=0, eps=0.25 (relaxed for external), d=1, i=16
    p = ParamSet(0.0, 0.25, EXTERNAL, d_const=1.0, relaxed=True)
    t = build_threshold_table(p, [16])
    k = 0
    assert t.psi_star[k] == pytest.approx(2.0, abs=1e-12)  # max(psi, i/8)
    lam = 4 * 16 ** -0.375
    assert t.lam[k] == pytest.approx(lam, abs=1e-12)
    assert t.eta[k] == pytest.approx(4 * 0.25 * lam, abs=1e-12)
    assert t.thr_ext[k] == pytest.approx(2 * (1 + t.eta[k]) * 2.0, abs=1e-12)
    assert t.thr_ext[k] == pytest.approx((0.25 + 0.25 * lam) * 16, abs=1e-9)


def test_goodness_threshold_inactive_returns_zero():
    p = ParamSet(0.0, 0.25, INTERNAL)  # default constant: nothing active
    t = build_threshold_table(p, [10])
    assert goodness_threshold(t, 10, INTERNAL) == 0.0


def test_psi_star_is_exact_maximum():
    p = ParamSet(0.3, 0.05, EXTERNAL, d_const=1.0)
    t = build_threshold_table(p, range(1, 2000))
    lifted = ((1 - 0.3) / 8.0) * t.degrees.astype(float)
    assert (t.psi_star == np.maximum(t.psi, lifted)).all()


def test_eta_branch_switch_is_exact():
    p = ParamSet(0.0, 0.09, EXTERNAL, d_const=1.0)
    t = build_threshold_table(p, range(1, 100000))
    i = t.degrees.astype(float)
    low = t.psi < i / 8.0
    assert (t.eta[low] == 4 * 0.09 * t.lam[low]).all()
    assert (t.eta[~low & (t.degrees > 0)] == t.mu[~low & (t.degrees > 0)]).all()


def test_eta_floor_on_active_degrees():
    p = ParamSet(0.0, 0.09, EXTERNAL, d_const=1.0)
    t = build_threshold_table(p, range(1, 200000))
    assert t.eta_floor_ok()[t.active].all()
    # activity begins only past small degrees at this override
    assert t.active.any() and not t.active.all()


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 0.9), st.floats(0.01, 0.2), st.floats(0.001, 10.0),
       st.integers(1, 3000))
def test_phi_forms_agree_property(c, eps, d, i):
    p = ParamSet(c, eps, INTERNAL, d_const=d, relaxed=True)
    t = build_threshold_table(p, [i])
    # construction cross-checks the two closed forms at 1e-12 of term scale;
    # reaching here means it held
    assert t.degrees.tolist() == [i]


def test_csv_dump_schema():
    p = ParamSet(0.0, 0.25, INTERNAL, d_const=1.0)
    t = build_threshold_table(p, [1, 2, 3])
    text = t.dump_csv()
    header = text.splitlines()[0]
    assert header == "i,phi,psi,psi_star,mu,lambda,eta,thr_int,thr_ext,active"
    assert len(text.splitlines()) == 4
