import math

import numpy as np
import pytest

from qwalk import (
    TailSpec,
    WeightedGraph,
    adjacency,
    evolve,
    exp_oracle,
    fidelity,
    pair_state,
    path_graph,
    prepare,
    transfer_amplitude,
    vertex_state,
)
from qwalk.errors import NonConvergent, TailsRequireTruncation
from qwalk.spectral import (
    SpectralDecomposition,
    required_truncation,
    series_tail,
    truncation_bound,
)


def test_adjacency_materializes_tails():
    g = WeightedGraph(2, ((0, 1, 1.0),), (TailSpec(1, (2.0,)),))
    a = adjacency(g, 3)
    assert a.shape == (5, 5)
    assert a[1, 2] == 2.0     # prefix weight
    assert a[2, 3] == 1.0     # unit continuation
    assert a[3, 4] == 1.0
    with pytest.raises(TailsRequireTruncation):
        adjacency(g, 0)


def test_unitary_is_unitary():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(6, 6))
    a = (a + a.T) / 2
    u = SpectralDecomposition.of(a).unitary(1.7)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(6), atol=1e-12)


def test_p2_transfer_oracle():
    # U(pi/2) maps e_0 to i*e_1 on a single edge
    amp, _ = transfer_amplitude(path_graph(2), vertex_state(0),
                                vertex_state(1), math.pi / 2)
    np.testing.assert_allclose(amp, 1j, atol=1e-12)


def test_p3_end_to_end_oracle():
    f = fidelity(path_graph(3), vertex_state(0), vertex_state(2),
                 math.pi / math.sqrt(2))
    assert f >= 1 - 1e-12


def test_series_tail_and_bound():
    # full series at k0=0 is e^x
    np.testing.assert_allclose(series_tail(2.0, 0), math.exp(2.0), rtol=1e-12)
    assert truncation_bound(3.0, 1.0, 64) < 1e-50
    assert truncation_bound(3.0, 1.0, 2) > truncation_bound(3.0, 1.0, 8)


def test_required_truncation_doubles():
    L = required_truncation(4.0, 2.0, 1e-9)
    assert L in (16, 32, 64)
    assert truncation_bound(4.0, 2.0, L) < 1e-9
    with pytest.raises(NonConvergent):
        required_truncation(1e6, 1e6, 1e-9, cap=64)


def test_certificate_bound_dominates_observed_drift():
    g = WeightedGraph(2, ((0, 1, 1.0),), (TailSpec(1),))
    t = 2.0
    decomp, cert = prepare(g, t, tol=1e-9)
    out, _ = evolve(g, vertex_state(0), t)
    # doubling the truncation changes the answer by less than the bound
    from qwalk.spectral import adjacency as adj
    big = SpectralDecomposition.of(adj(g, 2 * cert.L))
    ref = big.apply(t, vertex_state(0).vector(2 + 2 * cert.L))
    drift = np.linalg.norm(ref[: out.shape[0]] - out)
    assert drift < cert.bound


def test_exp_oracle_matches_spectral():
    rng = np.random.default_rng(11)
    for _ in range(10):
        n = int(rng.integers(2, 9))
        a = rng.normal(size=(n, n))
        a = (a + a.T) / 2
        t = float(rng.uniform(-3, 3))
        u1 = SpectralDecomposition.of(a).unitary(t)
        u2 = exp_oracle(a, t)
        np.testing.assert_allclose(u1, u2, atol=1e-9)


def test_pair_state_fidelity_symmetry():
    g = path_graph(5)
    u, v = pair_state(0, 4), pair_state(1, 3)
    t = math.pi / 2
    assert abs(fidelity(g, u, v, t) - fidelity(g, v, u, t)) < 1e-12
