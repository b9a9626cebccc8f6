import itertools
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
import pytest

from cheegerlab.exceptions import (
    CheegerLabError,
    EnumerationLimitError,
    HypothesisError,
)
from cheegerlab.expansion import (
    cheeger_constant,
    cheeger_constant_naive,
    expansion_profile,
    gray_ranges,
    l1_cheeger_check,
    scan_gray_range,
    to_gray_code,
    vertex_expansion,
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
from cheegerlab.spectra import normalized_spectrum

nx = pytest.importorskip("networkx")


def random_graph(seed, n, p):
    rng = np.random.default_rng(seed)
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    # a spanning path keeps every vertex non-isolated
    edges = set(edges) | {(i, i + 1) for i in range(n - 1)}
    return Graph.from_edges(n, sorted(edges))


def networkx_expansion(graph):
    G = nx.Graph(list(graph.edges))
    G.add_nodes_from(range(graph.n))
    best_h, best_out = None, None
    for k in range(1, graph.n):
        for S in itertools.combinations(range(graph.n), k):
            h = Fraction(
                nx.cut_size(G, S),
                min(nx.volume(G, S), 2 * graph.m - nx.volume(G, S)),
            )
            best_h = h if best_h is None else min(best_h, h)
            if 2 * k <= graph.n:
                out = Fraction(len(nx.node_boundary(G, S)), k)
                best_out = out if best_out is None else min(best_out, out)
    return best_h, best_out


def test_to_gray_code():
    codes = [to_gray_code(i) for i in range(8)]
    assert codes == [0, 1, 3, 2, 6, 7, 5, 4]
    for a, b in zip(codes, codes[1:]):
        assert bin(a ^ b).count("1") == 1


@pytest.mark.parametrize(
    "graph,expected",
    [
        (cycle(3), Fraction(1)),
        (cycle(5), Fraction(1, 2)),
        (complete(4), Fraction(2, 3)),
        (petersen(), Fraction(1, 3)),
        (hypercube(3), Fraction(1, 3)),
        (cycle(6), Fraction(1, 3)),
    ],
)
def test_known_values(graph, expected):
    profile = cheeger_constant(graph)
    assert profile.h == expected
    assert profile.witness.expansion == expected
    assert 0 in profile.witness.members
    assert profile.exact


def test_witness():
    profile = cheeger_constant(petersen())
    cut = profile.witness
    assert cut.boundary_size == 5
    assert cut.vol_S == cut.vol_complement == 15


@pytest.mark.parametrize("seed", range(6))
def test_matches_networkx(seed):
    graph = random_graph(seed, 8, 0.35)
    h, h_out = networkx_expansion(graph)
    profile = expansion_profile(graph)
    assert profile.h == h
    assert profile.h_out == h_out
    assert cheeger_constant_naive(graph).h == h


@pytest.mark.parametrize("parts", [1, 2, 3, 7, 64])
def test_partition_independent(parts):
    graph = random_graph(11, 9, 0.4)
    single = cheeger_constant(graph)
    with ThreadPoolExecutor(max_workers=4) as pool:
        split = cheeger_constant(graph, workers=parts, executor=pool)
    assert split.h == single.h
    assert split.witness == single.witness


def test_gray_ranges():
    assert gray_ranges(8, 1) == [(0, 8)]
    assert gray_ranges(8, 3) == [(0, 2), (2, 5), (5, 8)]
    assert gray_ranges(2, 5) == [(0, 1), (1, 2)]
    ranges = gray_ranges(1 << 9, 7)
    assert ranges[0][0] == 0 and ranges[-1][1] == 1 << 9
    assert all(a[1] == b[0] for a, b in zip(ranges, ranges[1:]))


def test_scan_gray_range_start():
    graph = cycle(6)
    full = scan_gray_range(graph, 0, 32)
    parts = [scan_gray_range(graph, a, b) for a, b in gray_ranges(32, 4)]
    best = min(parts, key=lambda p: p.key())
    assert best == full


def test_limits():
    with pytest.raises(EnumerationLimitError):
        cheeger_constant(cycle(30))
    with pytest.raises(EnumerationLimitError):
        vertex_expansion(cycle(30))
    with pytest.raises(EnumerationLimitError):
        cheeger_constant(cycle(12), max_n=10)
    assert cheeger_constant(cycle(12), max_n=12).h == Fraction(1, 6)


def test_degenerate_graphs():
    with pytest.raises(CheegerLabError):
        cheeger_constant(Graph.from_edges(1, []))
    with pytest.raises(CheegerLabError):
        cheeger_constant(Graph.from_edges(3, [(0, 1)]))


def test_disconnected():
    graph = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5),
                                 (5, 3)])
    profile = cheeger_constant(graph)
    assert profile.h == 0
    assert profile.witness.members == (0, 1, 2)


def test_two_vertices():
    profile = cheeger_constant(path(2))
    assert profile.h == 1
    assert profile.witness.members == (0,)


def test_vertex_expansion():
    assert vertex_expansion(cycle(5)) == (Fraction(1), (0, 1))
    h_out, members = vertex_expansion(complete(4))
    assert h_out == 1
    assert len(members) <= 2
    h_out, members = vertex_expansion(complete_bipartite(2, 3))
    G = nx.complete_bipartite_graph(2, 3)
    assert h_out == Fraction(len(nx.node_boundary(G, members)), len(members))


def test_profile_without_vertex_expansion():
    profile = expansion_profile(cycle(5), with_vertex_expansion=False)
    assert profile.h_out is None
    assert profile.h_out_value is None
    assert profile.h_value == 0.5


def test_l1_cheeger_check():
    graph = petersen()
    h = cheeger_constant(graph).h
    spectrum = normalized_spectrum(graph)
    for f in spectrum.functions[:-1]:
        verdict = l1_cheeger_check(graph, f, h)
        assert verdict.holds
        assert verdict.rhs == pytest.approx(1 / 6)


def test_l1_cheeger_hypotheses():
    graph = cycle(4)
    with pytest.raises(HypothesisError):
        l1_cheeger_check(graph, np.zeros(4), 0.5)
    with pytest.raises(HypothesisError):
        l1_cheeger_check(graph, np.ones(4), 0.5)
