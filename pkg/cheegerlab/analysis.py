"""
The per-graph pipeline shared by every command: structure, spectrum and
exact expansion are computed once, then the selected checks run on them.
"""
import itertools
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from cheegerlab import utils, verifier
from cheegerlab.cayley import GroupTable
from cheegerlab.config import LabConfig
from cheegerlab.exceptions import CheegerLabError, HypothesisError
from cheegerlab.expansion import (
    ExpansionProfile,
    expansion_profile,
    l1_cheeger_check,
)
from cheegerlab.graph import Cut, Graph, Provenance, is_bipartite, is_connected
from cheegerlab.spectra import Spectrum, eigenspace_pair, normalized_spectrum
from cheegerlab.symmetry import Transitivity, verify_vertex_transitive
from cheegerlab.verdict import Status, Verdict


@dataclass(frozen=True)
class GraphRecord:
    graph_id: str
    source: str
    name: str
    n: int
    m: int
    regular_degree: Optional[int]
    connected: bool
    bipartite: bool
    vertex_transitive: Optional[str]
    spectrum: Tuple[float, ...]
    multiplicities: Tuple[int, ...]
    h: Fraction
    witness: Cut
    h_out: Optional[Fraction]
    h_out_witness: Optional[Tuple[int, ...]]
    c: Optional[float]
    ratios: Optional[Dict[str, float]]
    verdicts: Tuple[Verdict, ...]

    @property
    def h_value(self) -> float:
        return float(self.h)

    @property
    def failed(self) -> List[Verdict]:
        return [v for v in self.verdicts if v.status is Status.FAILED]


def resolve_transitivity(
    graph: Graph, assume_vt: bool = False, limit: int = 16
) -> Tuple[Optional[Provenance], str]:
    """
    Decide which vertex-transitivity claim, if any, the checks may rely on:
    the user's assertion first, then the construction, then the search.
    """
    if assume_vt:
        return Provenance.ASSERTED, "asserted by the user"
    if graph.meta.vertex_transitive is Provenance.BY_CONSTRUCTION:
        return Provenance.BY_CONSTRUCTION, "by construction"
    result = verify_vertex_transitive(graph, limit=limit)
    if result.outcome is Transitivity.VERIFIED:
        return Provenance.VERIFIED, "automorphism search"
    return None, f"{result.outcome.value}: {result.reason}"


class Context:
    """Everything a check may read about one graph."""

    def __init__(
        self,
        graph: Graph,
        graph_id: str,
        spectrum: Spectrum,
        profile: ExpansionProfile,
        config: LabConfig,
        group: Optional[GroupTable],
        vt_reason: str,
    ):
        self.graph = graph
        self.graph_id = graph_id
        self.spectrum = spectrum
        self.profile = profile
        self.config = config
        self.group = group
        self.vt_reason = vt_reason

    def rng(self, check: str) -> np.random.Generator:
        # one stream per (graph, check), independent of which checks run
        key = f"{self.graph_id}:{check}"
        return np.random.default_rng(utils.stable_seed(self.config.seed, key))

    def pairs(self) -> List[Tuple[int, int]]:
        """
        Eigenfunction index pairs i <= j: all of them up to `pair_limit`
        vertices, a seeded sample of `pair_samples` above.
        """
        n = self.spectrum.n
        pairs = list(itertools.combinations_with_replacement(range(n), 2))
        samples = self.config.pair_samples
        if n <= self.config.pair_limit or len(pairs) <= samples:
            return pairs
        chosen = self.rng("pairs").choice(
            len(pairs), size=samples, replace=False
        )
        return [pairs[i] for i in sorted(chosen)]

    def require_transitive(self):
        if self.graph.meta.vertex_transitive is None:
            raise HypothesisError(
                f"vertex-transitivity is not established ({self.vt_reason})"
            )


def _spectrum(ctx: Context) -> List[Verdict]:
    meta = ctx.graph.meta
    return verifier.spectrum_checks(
        ctx.graph,
        ctx.spectrum,
        meta.connected,
        meta.bipartite,
        ctx.config.tol,
    )


def _energy_identity(ctx: Context) -> List[Verdict]:
    return verifier.energy_identity_check(
        ctx.graph,
        ctx.rng("energy_identity"),
        count=ctx.config.random_functions,
        identity_tol=ctx.config.identity_tol,
        tol=ctx.config.tol,
    )


def _cheeger_inequality(ctx: Context) -> List[Verdict]:
    return verifier.cheeger_inequality_checks(
        ctx.spectrum, ctx.profile, ctx.config.tol
    )


def _expansion_sandwich(ctx: Context) -> List[Verdict]:
    return verifier.expansion_sandwich_checks(
        ctx.graph, ctx.profile, ctx.config.tol
    )


def _l1_cheeger(ctx: Context) -> List[Verdict]:
    # fg is mean-zero because <f, g> = 0
    f, g, _, _ = eigenspace_pair(ctx.spectrum)
    return [
        l1_cheeger_check(
            ctx.graph, f * g, ctx.profile.h_value, ctx.config.tol
        )
    ]


def _second_smallest(ctx: Context) -> List[Verdict]:
    return [
        verifier.second_smallest_check(
            ctx.graph,
            ctx.spectrum,
            ctx.profile,
            ctx.config.tol,
            consistency_tol=ctx.config.consistency_tol,
        )
    ]


def _second_smallest_explicit(ctx: Context) -> List[Verdict]:
    return verifier.second_smallest_explicit_checks(
        ctx.spectrum, ctx.profile, ctx.config.tol
    )


def _proof_chain(ctx: Context) -> List[Verdict]:
    if not ctx.graph.meta.connected:
        raise HypothesisError("the argument needs a connected graph")
    return [
        verifier.proof_chain_check(ctx.spectrum, ctx.profile, ctx.config.tol)
    ]


def _transitive_bottom(ctx: Context) -> List[Verdict]:
    ctx.require_transitive()
    return verifier.transitive_bottom_checks(
        ctx.graph, ctx.spectrum, ctx.profile, ctx.config.tol
    )


def _simple_lattice(ctx: Context) -> List[Verdict]:
    ctx.require_transitive()
    return verifier.simple_lattice_checks(
        ctx.graph,
        ctx.spectrum,
        lattice_tol=ctx.config.lattice_tol,
        tol=ctx.config.tol,
    )


def _cayley_bottom(ctx: Context) -> List[Verdict]:
    if ctx.group is None:
        raise HypothesisError("not constructed as a Cayley graph")
    return verifier.cayley_bottom_checks(
        ctx.graph, ctx.spectrum, ctx.profile, ctx.group, ctx.config.tol
    )


def _product_energy(ctx: Context) -> List[Verdict]:
    F, values = ctx.spectrum.functions, ctx.spectrum.values
    tol = ctx.config.tol
    verdicts = []
    for i, j in ctx.pairs():
        mu, nu = float(values[i]), float(values[j])
        verdicts.append(
            verifier.product_energy_check(
                ctx.graph,
                F[i],
                F[j],
                mu,
                nu,
                tol,
                name=f"product_energy[{i},{j}]",
            )
        )
        verdicts.append(
            verifier.product_energy_sharp_check(
                ctx.graph,
                F[i],
                F[j],
                mu,
                nu,
                tol,
                name=f"product_energy.sharp[{i},{j}]",
            )
        )
    return verdicts


def _absolute_profile(ctx: Context) -> List[Verdict]:
    F, values = ctx.spectrum.functions, ctx.spectrum.values
    verdicts = []
    for i in range(ctx.spectrum.n):
        verdicts.extend(
            verifier.absolute_profile_checks(
                ctx.graph,
                F[i],
                float(values[i]),
                ctx.spectrum,
                tol=ctx.config.tol,
                identity_tol=ctx.config.identity_tol,
                name=f"absolute_profile[{i}]",
            )
        )
    return verdicts


def _absolute_overlap(ctx: Context) -> List[Verdict]:
    F, values = ctx.spectrum.functions, ctx.spectrum.values
    return [
        verifier.absolute_overlap_check(
            ctx.graph,
            F[i],
            F[j],
            float(values[i]),
            float(values[j]),
            ctx.spectrum,
            tol=ctx.config.tol,
            name=f"absolute_overlap[{i},{j}]",
        )
        for i, j in ctx.pairs()
    ]


CHECKS = OrderedDict(
    [
        ("spectrum", _spectrum),
        ("energy_identity", _energy_identity),
        ("cheeger_inequality", _cheeger_inequality),
        ("expansion_sandwich", _expansion_sandwich),
        ("l1_cheeger", _l1_cheeger),
        ("second_smallest", _second_smallest),
        ("second_smallest_explicit", _second_smallest_explicit),
        ("proof_chain", _proof_chain),
        ("transitive_bottom", _transitive_bottom),
        ("simple_lattice", _simple_lattice),
        ("cayley_bottom", _cayley_bottom),
        ("product_energy", _product_energy),
        ("absolute_profile", _absolute_profile),
        ("absolute_overlap", _absolute_overlap),
    ]
)


def select_checks(checks: Optional[Iterable[str]]) -> List[str]:
    if checks is None:
        return list(CHECKS)
    checks = list(checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise CheegerLabError(
            f"unknown checks {unknown}; choose from {', '.join(CHECKS)}"
        )
    return [c for c in CHECKS if c in checks]


def run_checks(ctx: Context, checks: Iterable[str]) -> List[Verdict]:
    verdicts = []
    for name in checks:
        try:
            verdicts.extend(CHECKS[name](ctx))
        except HypothesisError as e:
            verdicts.append(
                Verdict.not_applicable(
                    name, verifier.ANCHORS[name], str(e), tol=ctx.config.tol
                )
            )
    return verdicts


def analyze(
    graph: Graph,
    config: Optional[LabConfig] = None,
    graph_id: Optional[str] = None,
    source: str = "",
    group: Optional[GroupTable] = None,
    assume_vt: bool = False,
    checks: Optional[Iterable[str]] = None,
    workers: int = 1,
) -> GraphRecord:
    """
    Run the selected checks (all by default) on one graph.

    Connectivity and bipartiteness are always computed. Vertex-transitivity
    comes from `assume_vt`, the construction, or the automorphism search,
    in that order. A check whose hypothesis fails is recorded as
    not_applicable, never as failed.

    Raises:
        SpectrumError, EnumerationLimitError and the other CheegerLabErrors
        raised while computing the spectrum or the expansion.
    """
    config = config or LabConfig()
    graph_id = graph_id or graph.name
    selected = select_checks(checks)
    graph = graph.with_meta(
        connected=is_connected(graph), bipartite=is_bipartite(graph)[0]
    )
    provenance, vt_reason = resolve_transitivity(
        graph, assume_vt, config.vt_limit
    )
    graph = graph.with_meta(vertex_transitive=provenance)

    spectrum = normalized_spectrum(
        graph, max_sweeps=config.jacobi_sweeps, cluster_tol=config.cluster_tol
    )
    d = graph.regular_degree
    profile = expansion_profile(
        graph,
        max_n=config.max_n,
        workers=workers,
        with_vertex_expansion=d is not None,
    )
    ctx = Context(graph, graph_id, spectrum, profile, config, group, vt_reason)
    verdicts = run_checks(ctx, selected)

    ratios = None
    if d is not None and graph.meta.connected and not graph.meta.bipartite:
        try:
            ratios = verifier.prior_bound_ratios(spectrum, profile, d)
        except HypothesisError:
            ratios = None
    bounds = verifier.BoundInputs.of(spectrum, profile, d)
    return GraphRecord(
        graph_id=graph_id,
        source=source,
        name=graph.name,
        n=graph.n,
        m=graph.m,
        regular_degree=d,
        connected=graph.meta.connected,
        bipartite=graph.meta.bipartite,
        vertex_transitive=provenance.value if provenance else None,
        spectrum=tuple(float(x) for x in spectrum.values),
        multiplicities=tuple(len(c) for c in spectrum.clusters),
        h=profile.h,
        witness=profile.witness,
        h_out=profile.h_out,
        h_out_witness=profile.h_out_witness,
        c=bounds.c,
        ratios=ratios,
        verdicts=tuple(verdicts),
    )
