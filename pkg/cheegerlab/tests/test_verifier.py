import math
from fractions import Fraction

import numpy as np
import pytest

from cheegerlab.analysis import CHECKS
from cheegerlab.cayley import GeneratingSet, cayley_graph, cyclic_group
from cheegerlab.exceptions import CheegerLabError, HypothesisError
from cheegerlab.expansion import (
    ExpansionProfile,
    cheeger_constant,
    expansion_profile,
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
from cheegerlab.verdict import Status
from cheegerlab.verifier import (
    ANCHORS,
    EXPLICIT_H_FACTOR,
    BoundInputs,
    absolute_overlap_check,
    absolute_profile_checks,
    c_constant,
    cayley_bottom_checks,
    cheeger_inequality_checks,
    energy_identity_check,
    expansion_sandwich_checks,
    prior_bound_ratios,
    product_energy_check,
    product_energy_sharp_check,
    proof_chain_check,
    proof_function,
    second_smallest_check,
    second_smallest_explicit_checks,
    simple_lattice_checks,
    spectrum_checks,
    transitive_bottom_checks,
)

NON_BIPARTITE = [cycle(3), cycle(5), cycle(7), complete(4), complete(5),
                 petersen()]


def inputs(graph):
    return normalized_spectrum(graph), cheeger_constant(graph)


def test_c_constant_values():
    # triangle: h = 1, 1 - mu_2 = 3/2
    assert c_constant(1.0, 1.5) == pytest.approx(0.0952625, abs=1e-7)
    # 5-cycle: h = 1/2, 1 - mu_2 = 1 - cos(2 pi / 5)
    gap = 1 - math.cos(2 * math.pi / 5)
    assert c_constant(0.5, gap) == pytest.approx(0.02661993, abs=1e-8)


@pytest.mark.parametrize(
    "h,gap", [(1.0, 1.5), (0.5, 0.69), (1e-4, 1e-3), (0.3, 2.0), (2.0, 0.5)]
)
def test_c_constant_solves_defining_equation(h, gap):
    c = c_constant(h, gap)
    assert 0 < c < gap / 2
    assert proof_function(c, c, gap) == pytest.approx(
        math.sqrt(2) / 2 * h, rel=1e-10
    )


def test_c_constant_small_ratio():
    # the cancelling form would lose every digit here
    h, gap = 1e-9, 1.0
    assert c_constant(h, gap) == pytest.approx(h * h / 8, rel=1e-6)


def test_c_constant_below_half_gap():
    rng = np.random.default_rng(10)
    for h, gap in rng.uniform(1e-6, 2.0, size=(1000, 2)):
        assert c_constant(h, gap) <= gap / 2


def test_c_constant_monotone():
    hs = np.linspace(0.01, 2.0, 100)
    gaps = np.linspace(0.01, 2.0, 100)
    grid = np.array([[c_constant(h, gap) for gap in gaps] for h in hs])
    assert (np.diff(grid, axis=0) > 0).all()
    assert (np.diff(grid, axis=1) > 0).all()


@pytest.mark.parametrize("h", [1e-3, 0.5, 1.0, 2.0])
def test_c_constant_vanishing_gap(h):
    assert c_constant(h, 1e-8) < 1e-6


def test_c_constant_errors():
    with pytest.raises(CheegerLabError):
        c_constant(0.0, 1.0)
    with pytest.raises(CheegerLabError):
        c_constant(1.0, 0.0)


def test_proof_function():
    assert proof_function(0.0, 0.0, 1.0) == 0.0
    assert proof_function(0.1, 0.2, 1.0) < proof_function(0.1, 0.3, 1.0)
    assert proof_function(0.1, 0.2, 1.0) == pytest.approx(
        proof_function(0.2, 0.1, 1.0)
    )
    with pytest.raises(CheegerLabError):
        proof_function(0.5, 0.5, 1.0)


def test_bound_inputs():
    spectrum, expansion = inputs(cycle(5))
    b = BoundInputs.of(spectrum, expansion, d=2)
    assert b.h == 0.5
    assert b.gap == pytest.approx(1 - math.cos(2 * math.pi / 5))
    assert b.c == pytest.approx(0.02661993, abs=1e-8)
    assert b.mu_n == pytest.approx(b.mu_n_minus_1)

    graph = Graph.from_edges(4, [(0, 1), (2, 3)])
    b = BoundInputs.of(*inputs(graph))
    assert b.c is None


@pytest.mark.parametrize(
    "graph",
    NON_BIPARTITE + [cycle(6), hypercube(3), path(5),
                     complete_bipartite(2, 3)],
)
def test_spectrum_checks_hold(graph):
    spectrum = normalized_spectrum(graph)
    verdicts = spectrum_checks(
        graph, spectrum, graph.meta.connected, graph.meta.bipartite
    )
    assert len(verdicts) == 8
    assert all(v.holds for v in verdicts), [v for v in verdicts if not v.holds]


def test_spectrum_checks_detect_wrong_bipartite_flag():
    graph = cycle(5)
    verdicts = spectrum_checks(
        graph, normalized_spectrum(graph), connected=True, bipartite=True
    )
    failed = [v.name for v in verdicts if v.failed]
    assert failed == ["spectrum.bipartite_agreement"]


def test_spectrum_checks_disconnected():
    graph = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5),
                                 (5, 3)])
    verdicts = {
        v.name: v
        for v in spectrum_checks(
            graph, normalized_spectrum(graph), False, False
        )
    }
    assert verdicts["spectrum.bipartite_agreement"].status is Status.SKIPPED
    assert verdicts["spectrum.disconnected_agreement"].holds


def test_energy_identity():
    rng = np.random.default_rng(3)
    verdicts = energy_identity_check(petersen(), rng, count=20)
    assert [v.name for v in verdicts] == [
        "energy_identity.difference",
        "energy_identity.sum",
    ]
    assert all(v.holds for v in verdicts)
    assert verdicts[0].dependencies == {"functions": "20"}


@pytest.mark.parametrize(
    "graph", NON_BIPARTITE + [cycle(6), hypercube(3), path(6)]
)
def test_cheeger_inequality(graph):
    verdicts = cheeger_inequality_checks(*inputs(graph))
    assert all(v.holds for v in verdicts)


def test_cheeger_inequality_detects_bad_h():
    graph = cycle(5)
    spectrum = normalized_spectrum(graph)
    fake = ExpansionProfile(h=Fraction(5), witness=graph.cut([0]))
    upper, lower = cheeger_inequality_checks(spectrum, fake)
    assert upper.holds
    assert lower.failed
    assert lower.slack < 0


@pytest.mark.parametrize("graph", [cycle(5), petersen(), hypercube(3)])
def test_expansion_sandwich(graph):
    verdicts = expansion_sandwich_checks(graph, expansion_profile(graph))
    assert all(v.holds for v in verdicts)
    assert verdicts[0].dependencies == {"d": str(graph.regular_degree)}


def test_expansion_sandwich_hypotheses():
    with pytest.raises(HypothesisError):
        expansion_sandwich_checks(path(4), expansion_profile(path(4)))
    with pytest.raises(HypothesisError):
        expansion_sandwich_checks(cycle(5), cheeger_constant(cycle(5)))


@pytest.mark.parametrize("graph", NON_BIPARTITE + [cycle(6), hypercube(3)])
def test_second_smallest(graph):
    spectrum, expansion = inputs(graph)
    verdict = second_smallest_check(graph, spectrum, expansion)
    assert verdict.holds
    assert verdict.rhs == pytest.approx(
        c_constant(expansion.h_value, spectrum.gap)
    )
    assert all(
        v.holds for v in second_smallest_explicit_checks(spectrum, expansion)
    )


def test_second_smallest_disconnected():
    graph = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(HypothesisError):
        second_smallest_check(graph, *inputs(graph))


def test_explicit_factor():
    assert EXPLICIT_H_FACTOR == pytest.approx(0.0669872981)


@pytest.mark.parametrize("graph", [cycle(3), cycle(5), cycle(7)])
def test_proof_chain_evaluated(graph):
    verdict = proof_chain_check(*inputs(graph))
    assert verdict.holds
    assert verdict.rhs == pytest.approx(
        math.sqrt(2) / 2 * cheeger_constant(graph).h_value
    )


def test_proof_chain_skipped():
    verdict = proof_chain_check(*inputs(cycle(6)))
    assert verdict.status is Status.SKIPPED


@pytest.mark.parametrize("graph", NON_BIPARTITE)
def test_transitive_bottom(graph):
    verdicts = transitive_bottom_checks(graph, *inputs(graph))
    assert [v.name for v in verdicts] == [
        "transitive_bottom.h",
        "transitive_bottom.gap",
    ]
    assert all(v.holds for v in verdicts)
    assert verdicts[0].dependencies["vertex_transitive"] == "by-construction"


@pytest.mark.parametrize(
    "graph", [cycle(6), path(4), Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])]
)
def test_transitive_bottom_hypotheses(graph):
    with pytest.raises(HypothesisError):
        transitive_bottom_checks(graph, *inputs(graph))


def test_simple_lattice():
    graph = cycle(6)
    verdicts = simple_lattice_checks(graph, normalized_spectrum(graph))
    assert [v.name for v in verdicts] == [
        "simple_lattice[0]",
        "simple_lattice[5]",
    ]
    assert all(v.holds for v in verdicts)
    assert [v.dependencies["k"] for v in verdicts] == ["0", "2"]


def test_simple_lattice_petersen():
    verdicts = simple_lattice_checks(petersen(), normalized_spectrum(petersen()))
    assert len(verdicts) == 1
    assert verdicts[0].holds


@pytest.mark.parametrize(
    "order,gens", [(5, [1, 4]), (7, [1, 2, 5, 6]), (9, [1, 2, 7, 8])]
)
def test_cayley_bottom(order, gens):
    group = cyclic_group(order)
    graph = cayley_graph(group, GeneratingSet.of(gens))
    verdicts = cayley_bottom_checks(graph, *inputs(graph), group)
    assert [v.name for v in verdicts] == [
        "cayley_bottom.h",
        "cayley_bottom.gap",
        "cayley_bottom.multiplicity",
    ]
    assert all(v.holds for v in verdicts)
    assert verdicts[0].dependencies["odd_order"] == "True"


def test_cayley_bottom_hypotheses():
    group = cyclic_group(6)
    graph = cayley_graph(group, GeneratingSet.of([1, 2, 4, 5]))
    with pytest.raises(HypothesisError):
        cayley_bottom_checks(graph, *inputs(graph), group)

    simple = group.declare_simple()
    verdicts = cayley_bottom_checks(graph, *inputs(graph), simple)
    assert verdicts[0].dependencies["asserted_simple"] == "True"

    # declared simple but bipartite
    hexagon = cayley_graph(simple, GeneratingSet.of([1, 5]))
    with pytest.raises(HypothesisError):
        cayley_bottom_checks(hexagon, *inputs(hexagon), simple)


@pytest.mark.parametrize("graph", NON_BIPARTITE + [cycle(6), hypercube(3)])
def test_product_energy(graph):
    spectrum = normalized_spectrum(graph)
    f, g = spectrum.functions[0], spectrum.functions[1]
    mu, nu = spectrum.values[0], spectrum.values[1]
    assert product_energy_check(graph, f, g, mu, nu).holds
    assert product_energy_sharp_check(graph, f, g, mu, nu).holds
    assert product_energy_check(graph, f, f, mu, mu).holds


def test_product_energy_needs_unit_norm():
    graph = cycle(5)
    f = normalized_spectrum(graph).functions[0]
    with pytest.raises(CheegerLabError):
        product_energy_check(graph, 2 * f, f, -0.8, -0.8)


@pytest.mark.parametrize("graph", NON_BIPARTITE + [cycle(6), hypercube(3)])
def test_absolute_profile(graph):
    spectrum = normalized_spectrum(graph)
    for index in range(graph.n):
        verdicts = absolute_profile_checks(
            graph,
            spectrum.functions[index],
            spectrum.values[index],
            spectrum,
            name=f"absolute_profile[{index}]",
        )
        assert [v.name for v in verdicts] == [
            f"absolute_profile[{index}].orthogonal",
            f"absolute_profile[{index}].constant",
            f"absolute_profile[{index}].pythagoras",
        ]
        assert all(v.holds for v in verdicts)


def test_absolute_overlap():
    graph = cycle(5)
    spectrum = normalized_spectrum(graph)
    F, mu = spectrum.functions, spectrum.values
    verdict = absolute_overlap_check(graph, F[0], F[1], mu[0], mu[1], spectrum)
    assert verdict.holds
    skipped = absolute_overlap_check(
        graph, F[0], F[2], mu[0], mu[2], spectrum
    )
    assert skipped.status is Status.SKIPPED
    assert "exceeds 1" in skipped.reason

    # just above the threshold the reason must not round to 1
    nu = spectrum.gap * (1 + 1e-9) - 1
    borderline = absolute_overlap_check(
        graph, F[0], F[1], mu[0], nu, spectrum
    )
    assert borderline.status is Status.SKIPPED
    assert "= 1 " not in borderline.reason
    assert float(borderline.reason.split()[2]) > 1


def test_prior_bound_ratios():
    graph = cycle(5)
    ratios = prior_bound_ratios(
        normalized_spectrum(graph), expansion_profile(graph), 2
    )
    assert ratios["edge_ratio"] == pytest.approx(3.0557, abs=1e-4)
    assert ratios["vertex_ratio"] == pytest.approx(0.381966, abs=1e-6)


def test_prior_bound_ratios_errors():
    graph = cycle(6)
    with pytest.raises(HypothesisError):
        prior_bound_ratios(
            normalized_spectrum(graph), expansion_profile(graph), 2
        )
    with pytest.raises(CheegerLabError):
        prior_bound_ratios(
            normalized_spectrum(cycle(5)), cheeger_constant(cycle(5)), 2
        )


def test_anchors_cover_checks():
    assert set(ANCHORS) == set(CHECKS)
    for anchor in ANCHORS.values():
        reference, formula = anchor.split(": ", 1)
        assert reference and formula
    assert len(set(ANCHORS.values())) == len(ANCHORS)
