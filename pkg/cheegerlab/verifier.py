"""
Checks for the spectral bounds relating the bottom of the normalized
adjacency spectrum to the edge-expansion.

Every check consumes an already computed `Spectrum` and `ExpansionProfile`
and never recomputes them, so tests can inject oracle values. A check whose
hypothesis does not hold raises `HypothesisError`; pipelines turn that into
a not_applicable verdict.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from cheegerlab.cayley import GroupTable, multiplicity_argument_applies
from cheegerlab.exceptions import (
    CheegerLabError,
    ConsistencyError,
    HypothesisError,
)
from cheegerlab.expansion import ExpansionProfile
from cheegerlab.graph import Graph, is_bipartite, is_connected
from cheegerlab.spectra import (
    Spectrum,
    edge_energies,
    inner,
    norm,
    trace_of_square,
    transition_matrix,
)
from cheegerlab.verdict import DEFAULT_TOL, Verdict

# (sqrt(3) - 1)^2 / 8
EXPLICIT_H_FACTOR = (math.sqrt(3.0) - 1.0) ** 2 / 8.0

ANCHORS = {
    "spectrum": (
        "normalized spectrum sanity: residual, trace, orthonormality of "
        "D^-1 A"
    ),
    "energy_identity": (
        "edge-energy identities: sum_E (f(u)-+f(v))^2 = <f, (I-+D^-1 A) f>"
    ),
    "cheeger_inequality": "Cheeger inequality: 2h >= 1-mu_2 >= h^2/2",
    "expansion_sandwich": (
        "edge/vertex expansion sandwich: h_out/d <= h <= h_out, d-regular"
    ),
    "l1_cheeger": (
        "L1 Cheeger inequality: sum_E|f(u)-f(v)| / sum|f|d >= h/2, "
        "mean-zero f"
    ),
    "second_smallest": (
        "second-smallest eigenvalue bound: 1+mu_{n-1} >= c(h, 1-mu_2)"
    ),
    "second_smallest_explicit": (
        "explicit second-smallest bounds: "
        "1+mu_{n-1} >= 2(sqrt(1+(1-mu_2)/4)-1)^2 and "
        "1+mu_{n-1} >= (sqrt(3)-1)^2/8 h^2"
    ),
    "proof_chain": (
        "two-eigenfunction estimate: f(1+mu_n, 1+mu_{n-1}) >= sqrt(2)/2 h "
        "when 1+mu_{n-1} < (1-mu_2)/2"
    ),
    "transitive_bottom": (
        "vertex-transitive bottom bound: "
        "1+mu_n >= min{2/d, (sqrt(3)-1)^2/8 h^2}, non-bipartite"
    ),
    "simple_lattice": (
        "simple eigenvalue lattice: simple mu of a vertex-transitive graph "
        "is 2k/d-1, k in 0..d"
    ),
    "cayley_bottom": (
        "Cayley bottom bound: 1+mu_n >= (sqrt(3)-1)^2/8 h^2, simple or "
        "odd-order group"
    ),
    "product_energy": (
        "product energy bound: "
        "sum_E|fg(u)-fg(v)| <= sqrt(2)/2 (sqrt(1+mu)+sqrt(1+nu))"
    ),
    "absolute_profile": (
        "absolute-value profile: |f|_1^2 <= (1+mu)/(1-mu_2) off the "
        "constants"
    ),
    "absolute_overlap": (
        "absolute-value overlap: <|f|,|g|> >= sqrt(1-a)sqrt(1-b) - "
        "sqrt(a)sqrt(b), a = (1+mu)/(1-mu_2), b = (1+nu)/(1-mu_2)"
    ),
}

SHARP_PRODUCT_ANCHOR = (
    "sharp product energy bound: "
    "sum_E|fg(u)-fg(v)| <= (sqrt((1-mu)(1+nu)) + sqrt((1+mu)(1-nu)))/2"
)


def _root(x: float) -> float:
    # rounding can push a nonnegative quantity to -1e-16
    return math.sqrt(max(0.0, x))


@dataclass(frozen=True)
class BoundInputs:
    """The scalar quantities every bottom-spectrum bound is written in."""

    mu2: float
    mu_n: float
    mu_n_minus_1: float
    h: float
    d: Optional[int] = None
    c: Optional[float] = None

    @classmethod
    def of(
        cls, spectrum: Spectrum, expansion: ExpansionProfile, d=None
    ) -> "BoundInputs":
        h = expansion.h_value
        gap = spectrum.gap
        c = c_constant(h, gap) if h > 0 and gap > 0 else None
        return cls(
            mu2=spectrum.mu_2,
            mu_n=spectrum.mu_n,
            mu_n_minus_1=spectrum.mu_n_minus_1,
            h=h,
            d=d,
            c=c,
        )

    @property
    def gap(self) -> float:
        return 1.0 - self.mu2


def proof_function(x: float, y: float, gap: float) -> float:
    """
    (sqrt(x) + sqrt(y)) / (sqrt(1-x/gap) sqrt(1-y/gap) - sqrt(x/gap y/gap)),
    continuous and increasing in each argument on [0, gap/2)^2.
    """
    a, b = x / gap, y / gap
    denominator = _root(1.0 - a) * _root(1.0 - b) - _root(a) * _root(b)
    if denominator <= 0:
        raise CheegerLabError(
            f"proof_function is only defined on [0, gap/2)^2, got "
            f"x={x}, y={y}, gap={gap}"
        )
    return (_root(x) + _root(y)) / denominator


def c_constant(
    h: float, gap: float, check: bool = True, consistency_tol: float = 1e-8
) -> float:
    """
    The number c with proof_function(c, c, gap) = sqrt(2)/2 h, in closed
    form:

        sqrt(c) = gap / (sqrt(2) h) (sqrt(1 + h^2/gap) - 1)
                = h / (sqrt(2) (1 + sqrt(1 + h^2/gap)))

    The second form is used since it does not cancel for small h^2/gap.

    Raises:
        CheegerLabError for nonpositive h or gap.
        ConsistencyError if the closed form does not solve the defining
            equation within `consistency_tol`.
    """
    if not h > 0 or not gap > 0:
        raise CheegerLabError(
            f"c(h, gap) needs h > 0 and gap > 0, got h={h}, gap={gap}"
        )
    root_c = h / (math.sqrt(2.0) * (1.0 + math.sqrt(1.0 + h * h / gap)))
    c = root_c * root_c
    if check and c < gap / 2.0 - 1e-12:
        value = 2.0 * root_c / (1.0 - 2.0 * c / gap)
        target = math.sqrt(2.0) / 2.0 * h
        if abs(value - target) > consistency_tol:
            raise ConsistencyError(
                f"f(c, c) = {value!r} differs from sqrt(2)/2 h = "
                f"{target!r} (h={h}, gap={gap})"
            )
    return c


def _require_connected(graph: Graph, what: str):
    connected = graph.meta.connected
    if connected is None:
        connected = is_connected(graph)
    if not connected:
        raise HypothesisError(f"{what} needs a connected graph")


def _require_normalized(graph: Graph, *functions, tol: float = 1e-9):
    for f in functions:
        if abs(norm(f, graph) - 1.0) > tol:
            raise CheegerLabError(
                "eigenfunctions must have unit degree-weighted norm"
            )


def spectrum_checks(
    graph: Graph,
    spectrum: Spectrum,
    connected: bool,
    bipartite: bool,
    tol: float = DEFAULT_TOL,
) -> List[Verdict]:
    """Internal consistency of a computed spectrum against the graph."""
    anchor = ANCHORS["spectrum"]
    values = spectrum.values
    gram = spectrum.gram()
    verdicts = [
        Verdict.upper_bound(
            "spectrum.residual", anchor, spectrum.residual, 1e-9, tol=tol
        ),
        Verdict.upper_bound(
            "spectrum.trace",
            anchor,
            abs(float(np.sum(values))),
            1e-9,
            tol=tol,
        ),
        Verdict.upper_bound(
            "spectrum.trace_of_square",
            anchor,
            abs(float(np.sum(values ** 2)) - trace_of_square(graph)),
            1e-8,
            tol=tol,
        ),
        Verdict.upper_bound(
            "spectrum.orthonormality",
            anchor,
            float(np.max(np.abs(gram - np.eye(spectrum.n)))),
            1e-9,
            tol=tol,
        ),
        Verdict.upper_bound(
            "spectrum.top_eigenvalue",
            anchor,
            abs(spectrum.mu_1 - 1.0),
            1e-10,
            tol=tol,
        ),
        Verdict.upper_bound(
            "spectrum.range",
            anchor,
            max(0.0, float(np.max(np.abs(values))) - 1.0),
            1e-10,
            tol=tol,
        ),
    ]
    if connected:
        spectral = abs(spectrum.mu_n + 1.0) <= 1e-9
        verdicts.append(
            Verdict.upper_bound(
                "spectrum.bipartite_agreement",
                "mu_n = -1 iff bipartite (connected graphs)",
                float(spectral != bipartite),
                0.0,
                tol=tol,
            )
        )
    else:
        verdicts.append(
            Verdict.skipped(
                "spectrum.bipartite_agreement",
                "mu_n = -1 iff bipartite (connected graphs)",
                "graph is disconnected",
                tol=tol,
            )
        )
    if spectrum.n > 1:
        spectral = abs(spectrum.mu_2 - 1.0) <= 1e-9
        verdicts.append(
            Verdict.upper_bound(
                "spectrum.disconnected_agreement",
                "mu_2 = 1 iff disconnected",
                float(spectral != (not connected)),
                0.0,
                tol=tol,
            )
        )
    return verdicts


def energy_identity_check(
    graph: Graph,
    rng: np.random.Generator,
    count: int = 50,
    identity_tol: float = 1e-8,
    tol=DEFAULT_TOL,
) -> List[Verdict]:
    """
    Worst relative error of the two edge-energy identities over `count`
    random vertex functions.
    """
    anchor = ANCHORS["energy_identity"]
    P = transition_matrix(graph)
    worst_minus, worst_plus = 0.0, 0.0
    for _ in range(count):
        f = rng.standard_normal(graph.n)
        minus, plus = edge_energies(graph, f)
        Pf = P @ f
        quad_minus = inner(f, f - Pf, graph)
        quad_plus = inner(f, f + Pf, graph)
        worst_minus = max(
            worst_minus, abs(minus - quad_minus) / max(abs(quad_minus), 1e-300)
        )
        worst_plus = max(
            worst_plus, abs(plus - quad_plus) / max(abs(quad_plus), 1e-300)
        )
    return [
        Verdict.upper_bound(
            "energy_identity.difference",
            anchor,
            worst_minus,
            identity_tol,
            tol=tol,
            functions=count,
        ),
        Verdict.upper_bound(
            "energy_identity.sum",
            anchor,
            worst_plus,
            identity_tol,
            tol=tol,
            functions=count,
        ),
    ]


def cheeger_inequality_checks(
    spectrum: Spectrum, expansion: ExpansionProfile, tol=DEFAULT_TOL
) -> List[Verdict]:
    anchor = ANCHORS["cheeger_inequality"]
    h, gap = expansion.h_value, spectrum.gap
    return [
        Verdict.lower_bound(
            "cheeger_inequality.upper", anchor, 2.0 * h, gap, tol=tol
        ),
        Verdict.lower_bound(
            "cheeger_inequality.lower", anchor, gap, h * h / 2.0, tol=tol
        ),
    ]


def expansion_sandwich_checks(
    graph: Graph, expansion: ExpansionProfile, tol=DEFAULT_TOL
) -> List[Verdict]:
    anchor = ANCHORS["expansion_sandwich"]
    d = graph.regular_degree
    if d is None:
        raise HypothesisError("the sandwich needs a regular graph")
    if expansion.h_out is None:
        raise HypothesisError("vertex-expansion was not computed")
    h, h_out = expansion.h_value, expansion.h_out_value
    return [
        Verdict.upper_bound(
            "expansion_sandwich.lower", anchor, h_out / d, h, tol=tol, d=d
        ),
        Verdict.upper_bound(
            "expansion_sandwich.upper", anchor, h, h_out, tol=tol, d=d
        ),
    ]


def second_smallest_check(
    graph: Graph,
    spectrum: Spectrum,
    expansion: ExpansionProfile,
    tol=DEFAULT_TOL,
    consistency_tol: float = 1e-8,
) -> Verdict:
    """1 + mu_{n-1} >= (1-mu_2)^2/(2h^2) (sqrt(1 + h^2/(1-mu_2)) - 1)^2."""
    _require_connected(graph, "the second-smallest eigenvalue bound")
    if spectrum.n < 2:
        raise HypothesisError("the bound needs n >= 2")
    c = c_constant(
        expansion.h_value, spectrum.gap, consistency_tol=consistency_tol
    )
    return Verdict.lower_bound(
        "second_smallest",
        ANCHORS["second_smallest"],
        1.0 + spectrum.mu_n_minus_1,
        c,
        tol=tol,
    )


def second_smallest_explicit_checks(
    spectrum: Spectrum, expansion: ExpansionProfile, tol=DEFAULT_TOL
) -> List[Verdict]:
    """
    The bound with 1-mu_2 replaced by h (through the Cheeger inequality),
    and the other way round.
    """
    anchor = ANCHORS["second_smallest_explicit"]
    lhs = 1.0 + spectrum.mu_n_minus_1
    gap, h = spectrum.gap, expansion.h_value
    return [
        Verdict.lower_bound(
            "second_smallest_explicit.gap",
            anchor,
            lhs,
            2.0 * (math.sqrt(1.0 + gap / 4.0) - 1.0) ** 2,
            tol=tol,
        ),
        Verdict.lower_bound(
            "second_smallest_explicit.h",
            anchor,
            lhs,
            EXPLICIT_H_FACTOR * h * h,
            tol=tol,
        ),
    ]


def proof_chain_check(
    spectrum: Spectrum, expansion: ExpansionProfile, tol=DEFAULT_TOL
) -> Verdict:
    """
    The assembled inequality behind the second-smallest bound, evaluated at
    the actual bottom eigenvalues. Only meaningful in the first case of the
    argument, 1 + mu_{n-1} < (1 - mu_2)/2.
    """
    anchor = ANCHORS["proof_chain"]
    gap = spectrum.gap
    x, y = 1.0 + spectrum.mu_n, 1.0 + spectrum.mu_n_minus_1
    if not gap > 0:
        raise HypothesisError("the argument needs 1 - mu_2 > 0")
    # pole at y = gap/2; near-ties count as the second case
    if y >= gap / 2.0 - 1e-12:
        return Verdict.skipped(
            "proof_chain",
            anchor,
            "1+mu_{n-1} >= (1-mu_2)/2: the bound follows from the case "
            "split alone",
            tol=tol,
        )
    return Verdict.lower_bound(
        "proof_chain",
        anchor,
        proof_function(max(x, 0.0), max(y, 0.0), gap),
        math.sqrt(2.0) / 2.0 * expansion.h_value,
        tol=tol,
    )


def _transitive_degree(graph: Graph, spectrum: Spectrum) -> int:
    _require_connected(graph, "the vertex-transitive bound")
    if graph.meta.vertex_transitive is None:
        raise HypothesisError("vertex-transitivity is not established")
    d = graph.regular_degree
    if d is None:
        raise HypothesisError("a vertex-transitive graph must be regular")
    return d


def transitive_bottom_checks(
    graph: Graph,
    spectrum: Spectrum,
    expansion: ExpansionProfile,
    tol=DEFAULT_TOL,
) -> List[Verdict]:
    """
    Lower bounds on 1 + mu_n for connected, non-bipartite,
    vertex-transitive graphs: either 1 + mu_n >= 2/d, or mu_n is not simple
    and the second-smallest bound applies to it.
    """
    d = _transitive_degree(graph, spectrum)
    bipartite = graph.meta.bipartite
    if bipartite is None:
        bipartite = is_bipartite(graph)[0]
    if bipartite:
        raise HypothesisError("the bound needs a non-bipartite graph")
    anchor = ANCHORS["transitive_bottom"]
    lhs = 1.0 + spectrum.mu_n
    gap, h = spectrum.gap, expansion.h_value
    provenance = graph.meta.vertex_transitive.value
    return [
        Verdict.lower_bound(
            "transitive_bottom.h",
            anchor,
            lhs,
            min(2.0 / d, EXPLICIT_H_FACTOR * h * h),
            tol=tol,
            vertex_transitive=provenance,
            cluster_tol=spectrum.cluster_tol,
        ),
        Verdict.lower_bound(
            "transitive_bottom.gap",
            anchor,
            lhs,
            min(2.0 / d, 2.0 * (math.sqrt(1.0 + gap / 4.0) - 1.0) ** 2),
            tol=tol,
            vertex_transitive=provenance,
            cluster_tol=spectrum.cluster_tol,
        ),
    ]


def simple_lattice_checks(
    graph: Graph,
    spectrum: Spectrum,
    lattice_tol: float = 1e-7,
    tol=DEFAULT_TOL,
) -> List[Verdict]:
    """
    One verdict per simple eigenvalue mu: k = d(mu + 1)/2 must be an integer
    in 0..d. The verdict's lhs is the distance of k from {0, 1, ..., d}.
    """
    d = _transitive_degree(graph, spectrum)
    anchor = ANCHORS["simple_lattice"]
    provenance = graph.meta.vertex_transitive.value
    verdicts = []
    for index in spectrum.simple_indices():
        mu = float(spectrum.values[index])
        k = d * (mu + 1.0) / 2.0
        nearest = min(max(round(k), 0), d)
        verdicts.append(
            Verdict.upper_bound(
                f"simple_lattice[{index}]",
                anchor,
                abs(k - nearest),
                lattice_tol,
                tol=tol,
                mu=repr(mu),
                k=nearest,
                vertex_transitive=provenance,
                cluster_tol=spectrum.cluster_tol,
            )
        )
    return verdicts


def _is_trivial(spectrum: Spectrum, cluster) -> bool:
    return any(
        abs(abs(float(spectrum.values[i])) - 1.0) < spectrum.cluster_tol
        for i in cluster
    )


def cayley_bottom_checks(
    graph: Graph,
    spectrum: Spectrum,
    expansion: ExpansionProfile,
    group: GroupTable,
    tol=DEFAULT_TOL,
) -> List[Verdict]:
    """
    For a connected Cayley graph of a simple or odd-order group, every
    eigenvalue other than +-1 is repeated, so mu_n is never simple and the
    second-smallest bound applies to mu_n itself.
    """
    if not multiplicity_argument_applies(group):
        raise HypothesisError(
            f"{group.name} has even order and is not declared simple"
        )
    _require_connected(graph, "the Cayley bound")
    if spectrum.mu_n <= -1.0 + 1e-9:
        raise HypothesisError("mu_n = -1: the Cayley graph is bipartite")
    anchor = ANCHORS["cayley_bottom"]
    lhs = 1.0 + spectrum.mu_n
    gap, h = spectrum.gap, expansion.h_value
    deps = dict(
        group=group.name,
        odd_order=group.order_is_odd,
        asserted_simple=group.asserted_simple,
        cluster_tol=spectrum.cluster_tol,
    )
    sizes = [
        len(c) for c in spectrum.clusters if not _is_trivial(spectrum, c)
    ]
    return [
        Verdict.lower_bound(
            "cayley_bottom.h",
            anchor,
            lhs,
            EXPLICIT_H_FACTOR * h * h,
            tol=tol,
            **deps,
        ),
        Verdict.lower_bound(
            "cayley_bottom.gap",
            anchor,
            lhs,
            2.0 * (math.sqrt(1.0 + gap / 4.0) - 1.0) ** 2,
            tol=tol,
            **deps,
        ),
        Verdict.lower_bound(
            "cayley_bottom.multiplicity",
            "every eigenvalue other than 1 and -1 has multiplicity >= 2",
            min(sizes) if sizes else 2,
            2,
            tol=tol,
            **deps,
        ),
    ]


def _product_energy(graph: Graph, f, g) -> float:
    fg = np.asarray(f) * np.asarray(g)
    E = graph.edge_array()
    return float(np.sum(np.abs(fg[E[:, 0]] - fg[E[:, 1]])))


def product_energy_check(
    graph: Graph, f, g, mu: float, nu: float, tol=DEFAULT_TOL, name=None
) -> Verdict:
    _require_normalized(graph, f, g)
    return Verdict.upper_bound(
        name or "product_energy",
        ANCHORS["product_energy"],
        _product_energy(graph, f, g),
        math.sqrt(2.0) / 2.0 * (_root(1.0 + mu) + _root(1.0 + nu)),
        tol=tol,
    )


def product_energy_sharp_check(
    graph: Graph, f, g, mu: float, nu: float, tol=DEFAULT_TOL, name=None
) -> Verdict:
    """The intermediate Cauchy-Schwarz bound before sqrt(1-mu) <= sqrt(2)."""
    _require_normalized(graph, f, g)
    rhs = 0.5 * (
        _root((1.0 - mu) * (1.0 + nu)) + _root((1.0 + mu) * (1.0 - nu))
    )
    return Verdict.upper_bound(
        name or "product_energy.sharp",
        SHARP_PRODUCT_ANCHOR,
        _product_energy(graph, f, g),
        rhs,
        tol=tol,
    )


def _constant_split(graph: Graph, f):
    """(<|f|, c>, |f| - <|f|, c> c) for the unit constant c."""
    c = np.full(graph.n, 1.0 / math.sqrt(graph.volume))
    a = np.abs(np.asarray(f, dtype=float))
    weight = inner(a, c, graph)
    return weight, a - weight * c


def absolute_profile_checks(
    graph: Graph,
    f,
    mu: float,
    spectrum: Spectrum,
    tol=DEFAULT_TOL,
    identity_tol=1e-8,
    name=None,
) -> List[Verdict]:
    """
    |f| is close to constant when mu is close to -1: with f_1 the part of
    |f| orthogonal to constants, |f_1|^2 <= (1+mu)/(1-mu_2) and
    <|f|, c>^2 >= 1 - (1+mu)/(1-mu_2).
    """
    _require_connected(graph, "the absolute-value profile bound")
    _require_normalized(graph, f)
    name = name or "absolute_profile"
    anchor = ANCHORS["absolute_profile"]
    ratio = (1.0 + mu) / spectrum.gap
    weight, f1 = _constant_split(graph, f)
    f1_sq = inner(f1, f1, graph)
    return [
        Verdict.upper_bound(f"{name}.orthogonal", anchor, f1_sq, ratio, tol),
        Verdict.lower_bound(
            f"{name}.constant", anchor, weight ** 2, 1.0 - ratio, tol
        ),
        Verdict.upper_bound(
            f"{name}.pythagoras",
            "<|f|,c>^2 + |f_1|^2 = |f|^2 = 1",
            abs(weight ** 2 + f1_sq - 1.0),
            identity_tol,
            tol,
        ),
    ]


def absolute_overlap_check(
    graph: Graph,
    f,
    g,
    mu: float,
    nu: float,
    spectrum: Spectrum,
    tol=DEFAULT_TOL,
    name=None,
) -> Verdict:
    """
    <|f|, |g|> bounded below through the absolute-value profiles of f and
    g. Skipped when either ratio (1+mu)/(1-mu_2) exceeds 1.
    """
    _require_connected(graph, "the absolute-value overlap bound")
    _require_normalized(graph, f, g)
    name = name or "absolute_overlap"
    anchor = ANCHORS["absolute_overlap"]
    a = (1.0 + mu) / spectrum.gap
    b = (1.0 + nu) / spectrum.gap
    if a > 1.0 or b > 1.0:
        return Verdict.skipped(
            name,
            anchor,
            f"(1+mu)/(1-mu_2) = {max(a, b)!r} exceeds 1: outside the regime "
            f"where the bound is stated",
            tol=tol,
        )
    lhs = inner(np.abs(f), np.abs(g), graph)
    rhs = _root(1.0 - a) * _root(1.0 - b) - _root(a) * _root(b)
    return Verdict.lower_bound(name, anchor, lhs, rhs, tol=tol)


def prior_bound_ratios(
    spectrum: Spectrum, expansion: ExpansionProfile, d: int
) -> Dict[str, float]:
    """
    (1+mu_n)/(h^2/d^2) and (1+mu_n)/(h_out^2/d). The bounds these belong to
    carry unspecified constants, so the ratios are reported, never judged.
    """
    if expansion.h_out is None:
        raise CheegerLabError("vertex-expansion h_out is required")
    if not expansion.h > 0 or not expansion.h_out > 0:
        raise HypothesisError("ratios need a connected graph")
    if spectrum.mu_n <= -1.0 + 1e-9:
        raise HypothesisError("ratios need a non-bipartite graph")
    bottom = 1.0 + spectrum.mu_n
    h, h_out = expansion.h_value, expansion.h_out_value
    return {
        "edge_ratio": bottom / (h * h / (d * d)),
        "vertex_ratio": bottom / (h_out * h_out / d),
    }
