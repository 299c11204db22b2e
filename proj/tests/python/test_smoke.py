import json
import math

import pytest

import covcast as cc


def single_gu(x=0.0, y=0.0, willie=(600.0, 0.0)):
    return cc.Scenario([cc.Point2(x, y)], cc.Point2(*willie), 500.0, 500.0)


def test_numerics():
    assert cc.exp_integral_e1(1.0) == pytest.approx(0.21938393439552027, rel=1e-12)
    assert cc.q_function(1.96) == pytest.approx(0.024997895148220436, rel=1e-10)
    assert cc.rayleigh_interference_factor(1.0) == pytest.approx(0.5963473623231941, rel=1e-10)


def test_one_hop_example():
    plan = cc.solve_oh_at(single_gu(), cc.Point2(0, 0), cc.SystemParams())
    assert plan.rho1 == 0.5
    assert plan.power_w == pytest.approx(3.4506863313305935e-6, rel=1e-10)
    assert plan.time_slots == pytest.approx(256879.94140313072, rel=1e-9)


def test_pso_and_relay():
    s = cc.sample_ppp_scenario(4e-5 / math.pi, 500.0, cc.Point2(600, 0), 500.0, 3)
    pso = cc.PsoConfig()
    pso.iterations = 20
    oh = cc.solve_oh_pso(s, cc.SystemParams(), pso)
    base = cc.solve_oh_at(s, cc.min_enclosing_circle(s.gus).center, cc.SystemParams())
    assert oh.time_slots <= base.time_slots
    th = cc.select_relay(s, cc.SystemParams())
    assert th.time_slots == pytest.approx(2e5)
    assert th.relay != th.worst_gu


def test_exceptions():
    assert issubclass(cc.AllInfeasible, cc.Infeasible)
    assert issubclass(cc.Infeasible, cc.Error)
    assert issubclass(cc.ConfigError, cc.InvalidArgument)
    with pytest.raises(cc.InvalidArgument):
        cc.select_relay(single_gu(), cc.SystemParams())
    p = cc.SystemParams()
    p.epsilon = 0.01
    with pytest.raises(cc.Infeasible):
        cc.solve_oh_at(single_gu(-450.0), cc.Point2(450, 0), p)
    with pytest.raises(cc.ConfigError):
        cc.run_sweep_csv("{")


def test_sweep_csv():
    cfg = json.loads(cc.default_config_json())
    cfg["sweep"].update(variable="epsilon", values=[0.1, 0.15], trials=3, seed=9)
    cfg["pso"].update(particles=8, iterations=8)
    text = json.dumps(cfg)
    a = cc.run_sweep_csv(text, 1)
    assert a == cc.run_sweep_csv(text, 3)
    lines = a.strip().splitlines()
    assert lines[0].startswith("variable,value,strategy")
    assert len(lines) == 1 + 2 * 3
