import json
import math

import pytest

import aoisched

EX1 = dict(
    source_arrivals=[2, 6, 7, 11, 13],
    relay_arrivals=[1, 4, 9, 10, 15],
    d=1,
    d_bar=2,
    T=19,
)


def test_version():
    assert isinstance(aoisched.__version__, str) and aoisched.__version__


def test_solve_two_hop_golden():
    sol = aoisched.solve_two_hop(**EX1)
    assert sol["branch"] == "AmendedAtN0"
    assert sol["n0"] == 3
    assert sol["area"] == pytest.approx(75.75, abs=1e-9)
    assert sol["x_e"] == pytest.approx([6.5, 6.5, 17 / 3, 17 / 3, 17 / 3, 5], abs=1e-9)
    assert sol["x_star"] == pytest.approx([6.5, 6.5, 6, 6, 6, 4], abs=1e-9)
    assert sol["schedule"]["source_tx"] == pytest.approx([2.5, 6, 9, 12, 15], abs=1e-9)
    assert sol["schedule"]["deliveries"] == pytest.approx([5.5, 9, 12, 15, 18], abs=1e-9)


def test_solve_single_hop_golden():
    sol = aoisched.solve_single_hop(arrivals=[3, 10, 12], d=4, T=20)
    assert sol["branch"] == "AmendedAtN0"
    assert sol["x_e"] == pytest.approx([9, 9, 7, 7], abs=1e-9)
    assert sol["x_star"] == pytest.approx([9, 9, 8, 6], abs=1e-9)
    assert sol["schedule"]["tx"] == pytest.approx([5, 10, 14], abs=1e-9)
    assert sol["area"] == pytest.approx(107.0, abs=1e-9)


def test_validate_two_hop():
    ok = aoisched.validate_two_hop(**EX1)
    assert ok["pass"] is True
    assert ok["violations"] == []

    bad = aoisched.validate_two_hop(**dict(EX1, T=16))
    assert bad["pass"] is False
    assert bad["violations"][0]["condition"] == "source_deadline"


def test_greedy_two_hop():
    g = aoisched.greedy_two_hop(**EX1)
    assert g["within_deadline"] is True
    assert g["area"] == pytest.approx(76.5, abs=1e-9)
    assert g["schedule"]["source_tx"] == pytest.approx([2, 6, 9, 12, 15], abs=1e-9)


def test_oracle_matches_solver():
    sol = aoisched.solve_single_hop(arrivals=[3, 10, 12], d=4, T=20)
    orc = aoisched.oracle_solve(arrivals=[3, 10, 12], d=4, T=20)
    solver_obj = sum(x * x for x in sol["x_star"])
    assert orc["objective"] == pytest.approx(solver_obj, rel=1e-6)
    assert orc["max_violation"] <= 1e-8


def test_age_area():
    assert aoisched.age_area([], 4.0) == pytest.approx(8.0)
    assert aoisched.age_area([(1.0, 2.0)], 4.0) == pytest.approx(6.0)


def test_simulate_summary_is_deterministic():
    s = aoisched.simulate(d=0.5, d_bar=0.5, horizon=500.0, replications=5, seed=7)
    assert s["policy"] == "BestEffortUniform"
    assert s["replications"] == 5
    assert s["lower_bound"] == pytest.approx(1.5)
    assert s["rate_bound"] == pytest.approx(1.0)
    assert s["mean_aoi"] >= 1.0
    assert s["mean_rate"] <= s["rate_bound"] + 1 / 500.0 + 1e-9
    again = aoisched.simulate(d=0.5, d_bar=0.5, horizon=500.0, replications=5, seed=7)
    assert again["mean_aoi"] == s["mean_aoi"]


def test_bounds():
    assert aoisched.lower_bound(0.125, 0.125) == pytest.approx(0.75)
    assert aoisched.lower_bound(1.0, 1.0) == pytest.approx(3.0)
    assert aoisched.rate_bound(1.0, 1.0) == pytest.approx(0.5)


def test_failure_run_gof():
    rep = aoisched.failure_run_gof(d=0.25, d_bar=0.25, horizon=2000.0, replications=2, seed=11)
    p = 1.0 - math.exp(-1.0)
    assert rep["q"] == pytest.approx(p * p)
    assert rep["outcome"] in {"pass", "reject", "inconclusive"}
    if rep["outcome"] != "inconclusive":
        assert rep["n_runs"] >= 500
        assert 0.0 <= rep["p_value"] <= 1.0


def test_run_cli(tmp_path):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(EX1))
    code, out, err = aoisched.run_cli(["solve", str(inst), "--out", str(tmp_path / "out")])
    assert code == 0
    assert err == ""
    assert json.loads(out)["area"] == pytest.approx(75.75)
    assert (tmp_path / "out" / "manifest.json").exists()


def test_infeasible_raises_value_error():
    with pytest.raises(ValueError):
        aoisched.solve_two_hop(
            source_arrivals=[0, 4, 4, 9, 13],
            relay_arrivals=[1, 3, 6, 10, 12],
            d=1,
            d_bar=2,
            T=10,
        )
