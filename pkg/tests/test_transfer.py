import math

import numpy as np
import pytest

from qwalk import (
    blow_up,
    check_pst,
    complete_graph,
    cycle_graph,
    fiber_sum_state,
    named_gadget,
    pair_state,
    path_graph,
    pgst_witness,
    plus_state,
    search_pst,
    sedentary_estimate,
    vertex_state,
)
from qwalk.errors import NoTransfer, Unreached
from qwalk.spectral import exp_oracle


def test_check_pst_p2():
    rep = check_pst(path_graph(2), vertex_state(0), vertex_state(1), math.pi / 2)
    assert rep.kind == "PST"
    assert rep.fidelity >= 1 - 1e-12
    np.testing.assert_allclose(rep.gamma, 1j, atol=1e-9)


def test_check_pst_failure_carries_fidelity():
    with pytest.raises(NoTransfer) as exc:
        check_pst(path_graph(2), vertex_state(0), vertex_state(1), 1.0)
    assert 0 < exc.value.fidelity < 1


def test_check_pst_periodic_at_zero():
    rep = check_pst(cycle_graph(5), vertex_state(2), vertex_state(2), 0.0)
    assert rep.kind == "periodic"
    np.testing.assert_allclose(rep.gamma, 1.0, atol=1e-12)


def test_check_pst_tailed_gadget():
    gd = named_gadget("h2p", p=3, tail_len=3)
    rep = check_pst(gd.graph, gd.src, gd.dst, gd.tau)
    assert rep.fidelity >= 1 - 1e-9


def test_search_recovers_p2_time():
    reps = search_pst(path_graph(2), vertex_state(0), vertex_state(1), 4.0)
    assert len(reps) == 1
    assert abs(reps[0].tau - math.pi / 2) < 1e-8


def test_search_k3_is_empty():
    assert search_pst(complete_graph(3), vertex_state(0), vertex_state(1),
                      10.0) == []


def test_search_demo_graph_time():
    gd = named_gadget("c4_quotient")
    reps = search_pst(gd.graph, gd.src, gd.dst, 3.0)
    assert any(abs(r.tau - math.pi / (2 * math.sqrt(2))) < 1e-7 for r in reps)


def test_search_agrees_with_exp_oracle():
    gd = named_gadget("p2_twins")
    reps = search_pst(gd.graph, gd.src, gd.dst, 5.0)
    a = gd.graph.core_adjacency()
    for r in reps:
        u = gd.src.vector(a.shape[0])
        v = gd.dst.vector(a.shape[0])
        f = abs(np.conj(v) @ exp_oracle(a, r.tau) @ u)
        assert abs(f - r.fidelity) < 1e-8


def test_pgst_witness_found_and_unreached():
    g = blow_up(cycle_graph(8), 2)
    rep = pgst_witness(g, fiber_sum_state(8, 2, 0), fiber_sum_state(8, 2, 4),
                       0.999, 1e4)
    assert rep.kind == "PGST-witness"
    assert rep.fidelity >= 0.999
    # P_6 end-to-end cannot reach 0.9999 quickly
    with pytest.raises(Unreached) as exc:
        pgst_witness(path_graph(6), vertex_state(0), vertex_state(5),
                     0.9999, 50.0)
    assert 0 < exc.value.best_fidelity < 0.9999


def test_pgst_autocorrelation_skips_t0():
    rep = pgst_witness(cycle_graph(4), vertex_state(0), vertex_state(0),
                       0.999, 50.0)
    assert rep.tau > 0.5  # the t=0 plateau is excluded


def test_sedentary_kn_exact_period():
    est = sedentary_estimate(complete_graph(5), vertex_state(0), 10.0)
    assert est.period is not None
    np.testing.assert_allclose(est.period, 2 * math.pi / 5, rtol=1e-9)
    assert est.grid_min >= 3 / 5 - 1e-6


def test_sedentary_p2_not_sedentary():
    est = sedentary_estimate(path_graph(2), vertex_state(0), 10.0)
    assert est.grid_min < 1e-6


def test_sedentary_blowup_plus_state():
    g = blow_up(complete_graph(4), 2)
    est = sedentary_estimate(g, plus_state(0, 4), 10.0)
    assert est.grid_min >= 0.5 - 1e-6


def test_sedentary_excludes_pst_source():
    # a state with grid_min >= C > 1/sqrt2 cannot also show PST to elsewhere
    g = complete_graph(8)
    est = sedentary_estimate(g, vertex_state(0), 10.0)
    assert est.grid_min > 1 / math.sqrt(2)
    assert search_pst(g, vertex_state(0), vertex_state(1), 10.0) == []


def test_report_serialization():
    rep = check_pst(path_graph(2), vertex_state(0), vertex_state(1), math.pi / 2)
    doc = rep.to_document()
    assert doc["kind"] == "PST"
    assert abs(doc["tau"] - math.pi / 2) < 1e-9
    est = sedentary_estimate(complete_graph(3), vertex_state(0), 5.0)
    doc = est.to_document()
    assert doc["period"] is not None
