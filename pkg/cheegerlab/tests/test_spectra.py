import math

import numpy as np
import pytest

from cheegerlab.cayley import GeneratingSet, cayley_graph, cyclic_group
from cheegerlab.exceptions import (
    CheegerLabError,
    ConvergenceError,
    SpectrumError,
)
from cheegerlab.families import (
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    path,
    petersen,
)
from cheegerlab.graph import Graph
from cheegerlab.spectra import (
    cluster_eigenvalues,
    edge_energies,
    eigenspace_pair,
    inner,
    jacobi_eigh,
    norm,
    normalized_spectrum,
    trace_of_square,
    transition_matrix,
)


def reference_values(graph):
    scale = 1.0 / np.sqrt(graph.degrees)
    N = graph.adjacency_matrix() * scale[:, None] * scale[None, :]
    return np.linalg.eigvalsh(N)


def test_jacobi_eigh():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(6, 6))
    M = X + X.T
    values, V, sweeps = jacobi_eigh(M)
    np.testing.assert_allclose(
        np.sort(values), np.linalg.eigvalsh(M), atol=1e-10
    )
    np.testing.assert_allclose(V.T @ V, np.eye(6), atol=1e-12)
    np.testing.assert_allclose(M @ V, V * values, atol=1e-10)
    assert 0 < sweeps < 20


def test_jacobi_diagonal_input():
    values, V, sweeps = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
    assert values.tolist() == [3.0, 1.0, 2.0]
    assert sweeps == 0
    assert (V == np.eye(3)).all()


def test_jacobi_errors():
    with pytest.raises(CheegerLabError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    X = np.random.default_rng(1).normal(size=(5, 5))
    with pytest.raises(ConvergenceError):
        jacobi_eigh(X + X.T, max_sweeps=1)


def test_cluster_eigenvalues():
    values = np.array([-1.0, -0.5, -0.5 + 1e-10, 0.2, 1.0])
    assert cluster_eigenvalues(values) == [(0,), (1, 2), (3,), (4,)]
    assert cluster_eigenvalues(np.array([])) == []


@pytest.mark.parametrize(
    "graph",
    [cycle(n) for n in range(3, 13)]
    + [complete(n) for n in range(3, 9)]
    + [petersen(), hypercube(3), path(5), complete_bipartite(2, 3)],
    ids=lambda graph: graph.name,
)
def test_matches_reference(graph):
    spectrum = normalized_spectrum(graph)
    np.testing.assert_allclose(
        spectrum.values, reference_values(graph), atol=1e-10
    )
    assert spectrum.residual < 1e-9
    np.testing.assert_allclose(spectrum.gram(), np.eye(graph.n), atol=1e-9)
    assert spectrum.mu_1 == pytest.approx(1.0, abs=1e-10)


def test_cycle_values():
    spectrum = normalized_spectrum(cycle(5))
    expected = sorted(math.cos(2 * math.pi * k / 5) for k in range(5))
    np.testing.assert_allclose(spectrum.values, expected, atol=1e-12)
    assert spectrum.mu_2 == pytest.approx(math.cos(2 * math.pi / 5))
    assert spectrum.gap == pytest.approx(1 - math.cos(2 * math.pi / 5))
    assert spectrum.mu_n == pytest.approx(spectrum.mu_n_minus_1, abs=1e-12)
    assert [len(c) for c in spectrum.clusters] == [2, 2, 1]
    assert spectrum.simple_indices() == [4]


@pytest.mark.parametrize("n", range(3, 13))
def test_cycle_closed_form(n):
    spectrum = normalized_spectrum(cycle(n))
    expected = sorted(math.cos(2 * math.pi * k / n) for k in range(n))
    np.testing.assert_allclose(spectrum.values, expected, atol=1e-10)


@pytest.mark.parametrize("n", range(3, 13))
def test_cayley_cycle_spectrum(n):
    graph = cayley_graph(cyclic_group(n), GeneratingSet.of([1, n - 1]))
    np.testing.assert_allclose(
        normalized_spectrum(graph).values,
        normalized_spectrum(cycle(n)).values,
        atol=1e-10,
    )


def test_petersen_multiplicities():
    spectrum = normalized_spectrum(petersen())
    assert [len(c) for c in spectrum.clusters] == [4, 5, 1]
    assert spectrum.mu_n == pytest.approx(-2 / 3)
    assert spectrum.mu_2 == pytest.approx(1 / 3)
    assert spectrum.cluster_of(6) == (4, 5, 6, 7, 8)


def test_bipartite_bottom():
    spectrum = normalized_spectrum(complete_bipartite(2, 3))
    assert spectrum.mu_n == pytest.approx(-1.0, abs=1e-10)
    f = spectrum.functions[0]
    # the bottom eigenfunction is +-1/sqrt(vol) with opposite signs
    assert abs(f[0]) == pytest.approx(1 / math.sqrt(12))
    assert np.sign(f[0]) == -np.sign(f[2])


def test_eigenfunctions():
    graph = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    spectrum = normalized_spectrum(graph)
    P = transition_matrix(graph)
    for mu, f in zip(spectrum.values, spectrum.functions):
        np.testing.assert_allclose(P @ f, mu * f, atol=1e-10)
        assert norm(f, graph) == pytest.approx(1.0)
        assert f[np.argmax(np.abs(f))] > 0
    top = spectrum.functions[-1]
    np.testing.assert_allclose(top, np.full(5, top[0]), atol=1e-10)


def test_isolated_vertex():
    with pytest.raises(SpectrumError):
        normalized_spectrum(Graph.from_edges(3, [(0, 1)]))


def test_disconnected_top_multiplicity():
    graph = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5),
                                 (5, 3)])
    spectrum = normalized_spectrum(graph)
    assert spectrum.mu_2 == pytest.approx(1.0, abs=1e-10)
    assert spectrum.gap == pytest.approx(0.0, abs=1e-10)


def test_eigenspace_pair():
    spectrum = normalized_spectrum(cycle(6))
    f, g, mu, nu = eigenspace_pair(spectrum)
    graph = cycle(6)
    assert mu == pytest.approx(-1.0)
    assert nu == pytest.approx(-0.5)
    assert inner(f, g, graph) == pytest.approx(0.0, abs=1e-10)


def test_inner_shape():
    with pytest.raises(CheegerLabError):
        inner([1, 2], [1, 2, 3], cycle(3))


def test_trace_of_square():
    for graph in (cycle(5), petersen(), path(4)):
        P = transition_matrix(graph)
        assert trace_of_square(graph) == pytest.approx(np.trace(P @ P))


def test_edge_energies():
    graph = path(3)
    assert edge_energies(graph, [1.0, 0.0, 1.0]) == (2.0, 2.0)
    assert edge_energies(graph, [1.0, 1.0, 1.0]) == (0.0, 8.0)
