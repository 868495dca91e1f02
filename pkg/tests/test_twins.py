import numpy as np
import pytest

from qwalk import (
    TwinStructure,
    WeightedGraph,
    detect_twin_structures,
    named_gadget,
    path_graph,
    reduced_hamiltonian,
    verify_twin_structure,
)
from qwalk.errors import StructureViolation


def test_detect_on_p2_gadget():
    g = named_gadget("p2_twins").graph
    found = {(t.x1, t.x2) for t in detect_twin_structures(g)}
    assert ((0, 1), (4, 3)) in found
    assert len(found) == 1


def test_detect_trivial_twins_in_k2():
    found = detect_twin_structures(path_graph(2))
    assert [(t.x1, t.x2) for t in found] == [((0,), (1,))]


def test_detect_on_flyswatter_excludes_tail_vertex():
    g = named_gadget("flyswatter", tail_len=2).graph
    found = {(t.x1, t.x2) for t in detect_twin_structures(g)}
    assert ((0, 1, 2), (6, 5, 4)) in found
    for x1, x2 in found:
        assert 3 not in x1 + x2  # the handle vertex stays fixed


def test_verify_residuals_small():
    for name in ("p2_twins", "p2_twins_perturbed"):
        g = named_gadget(name).graph
        ts = TwinStructure.of(g, (0, 1), (4, 3))
        bc = verify_twin_structure(g, ts)
        assert bc.max_residual < 1e-9


def test_verify_with_host_graph():
    g = named_gadget("p2_twins", h=path_graph(4)).graph
    bc = verify_twin_structure(g, TwinStructure.of(g, (0, 1), (4, 3)))
    assert bc.max_residual < 1e-9


def test_verify_with_infinite_tail():
    g = named_gadget("flyswatter", tail_len=0).graph
    bc = verify_twin_structure(g, TwinStructure.of(g, (0, 1, 2), (6, 5, 4)))
    assert bc.max_residual < 1e-9


def test_broken_attachment_raises():
    g = named_gadget("p2_twins").graph
    broken = WeightedGraph(g.n, g.edges + ((0, 2, 1.0),))
    with pytest.raises(StructureViolation):
        TwinStructure.of(broken, (0, 1), (4, 3))


def test_asymmetric_cross_edge_raises():
    g = named_gadget("p2_twins").graph
    broken = WeightedGraph(g.n, g.edges + ((0, 3, 1.0),))
    with pytest.raises(StructureViolation):
        TwinStructure.of(broken, (0, 1), (4, 3))


def test_reduced_hamiltonian_plain_and_perturbed():
    g = named_gadget("p2_twins").graph
    ts = TwinStructure.of(g, (0, 1), (4, 3))
    np.testing.assert_allclose(reduced_hamiltonian(ts), [[0, 1], [1, 0]])
    gp = named_gadget("p2_twins_perturbed").graph
    tsp = TwinStructure.of(gp, (0, 1), (4, 3))
    np.testing.assert_allclose(reduced_hamiltonian(tsp), np.zeros((2, 2)))


def test_single_vertex_twins_reduced():
    # twin vertices with a cross edge: 1x1 block -A'(0,0)
    g = WeightedGraph(3, ((0, 2, 1.0), (1, 2, 1.0), (0, 1, 1.0)))
    ts = TwinStructure.of(g, (0,), (1,))
    np.testing.assert_allclose(reduced_hamiltonian(ts), [[-1.0]])
    bc = verify_twin_structure(g, ts)
    assert bc.max_residual < 1e-9
