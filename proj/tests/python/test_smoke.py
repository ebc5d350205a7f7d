import json
import math

import numpy as np
import pytest

import netpdae


def test_builtin_scenarios_round_trip():
    sc = netpdae.builtin_scenario("fig1-network")
    assert sc.num_edges == 6
    again = netpdae.parse_scenario(sc.to_json())
    assert json.loads(again.to_json()) == json.loads(sc.to_json())
    with pytest.raises(ValueError):
        netpdae.builtin_scenario("no-such-scenario")


def test_matrices_are_symmetric_where_expected():
    mats = netpdae.matrices(netpdae.builtin_scenario("single-pipe"), elements_per_edge=8)
    m2 = mats["M2"]
    assert m2.shape == (9, 9)
    assert np.allclose(m2, m2.T)
    assert mats["K"].shape == (8, 9)
    assert mats["index2_pass"]


def test_solve_keeps_the_constraints():
    sc = netpdae.with_reaction(netpdae.builtin_scenario("fig1-network"), 1.0)
    for scheme in ("euler", "radau2", "radau3"):
        for order in ("1", "2", "hyperbolic"):
            out = netpdae.solve(sc, scheme=scheme, order=order, tau=0.05, eps=1e-3)
            assert out["max_constraint_residual"] <= 1e-10
            assert len(out["times"]) == 21
            key = "p" if order == "hyperbolic" else "p0"
            assert out["fields"][key].shape[1] == 21


def test_solve_rejects_non_integer_step_count():
    with pytest.raises(ValueError):
        netpdae.solve(netpdae.builtin_scenario("fig1-network"), tau=0.3)


def test_tableau():
    t = netpdae.tableau("radau2")
    assert t["order"] == 3 and t["stage_order"] == 2
    assert np.allclose(t["A"], [[5 / 12, -1 / 12], [3 / 4, 1 / 4]])


def test_oracle_mode_satisfies_its_ode():
    eps = netpdae.eps_for_split_index(5)
    assert netpdae.split_index(eps) == pytest.approx(5.0)
    for k in (1, 4, 5, 6, 9):
        for t in (0.0, 0.01, 0.3):
            p, dp, ddp = netpdae.pressure_mode(k, t, 0.55, eps, 40)
            w = math.pi * k
            assert abs(eps * ddp + dp + w * w * p) <= 1e-9 * (abs(dp) + w * w * abs(p) + eps * abs(ddp))
    p, m = netpdae.series_solution(0.3, 0.0, 0.55, eps, 40)
    assert p == 0.0
    assert m == pytest.approx(netpdae.series_initial_flux(0.3, 0.55, 40))
    lo, hi = netpdae.norm_bounds(0.55, eps, 40)
    assert 0.0 < lo <= hi


def test_modal_pipe_norm_shrinks_with_eps():
    pipe = netpdae.ModalPipe(11)
    assert pipe.elements == 11
    assert len(pipe.frequencies) == 10
    norms = [pipe.c_norm(eps, 1.0) for eps in (1e-1, 1e-2, 1e-3)]
    assert norms[0] > norms[1] > norms[2] > 0.0
    assert pipe.pressure_norm(0.0, 1e-2) == 0.0


def test_power_law_fit_and_grids():
    x = [1.0, 0.5, 0.25, 0.125]
    fit = netpdae.fit_power_law(x, [3.0 * v**1.5 for v in x])
    assert fit["alpha"] == pytest.approx(1.5)
    assert fit["C"] == pytest.approx(3.0)
    assert netpdae.halving_sequence(0.2, 2) == pytest.approx([0.2, 0.1, 0.05])
    assert len(netpdae.eps_grid()) == 16


def test_small_tau_study():
    sc = netpdae.with_reaction(netpdae.builtin_scenario("fig1-network"), 1.0)
    out = netpdae.conv_tau(sc, taus=[0.2, 0.1, 0.05], ref_refine=8)
    errs = [r["err_p0_euler"] for r in out["rows"]]
    assert errs[0] > errs[1] > errs[2] > 0.0
    assert out["max_constraint_residual"] <= 1e-10
