import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from cheegerlab import families, utils
from cheegerlab.analysis import GraphRecord, analyze
from cheegerlab.cayley import (
    GeneratingSet,
    GroupTable,
    cayley_graph,
    cyclic_group,
)
from cheegerlab.config import LabConfig
from cheegerlab.exceptions import CorpusError
from cheegerlab.graph import Graph, is_connected
from cheegerlab.report import RunReport, build_report

logger = logging.getLogger(__name__)

FAMILY_SPECS = (
    [("cycle", [n]) for n in range(3, 13)]
    + [("complete", [n]) for n in range(3, 7)]
    + [
        ("petersen", []),
        ("hypercube", [3]),
        ("complete_bipartite", [2, 3]),
    ]
)

CAYLEY_SPECS = [
    (5, [1, 4]),
    (5, [1, 2, 3, 4]),
    (7, [1, 2, 5, 6]),
    (9, [1, 2, 7, 8]),
]


@dataclass(frozen=True)
class CorpusItem:
    graph_id: str
    source: str
    graph: Graph
    group: Optional[GroupTable] = None


def family_items() -> List[CorpusItem]:
    items = []
    for name, params in FAMILY_SPECS:
        label = "_".join([name] + [f"{p:02d}" for p in params])
        items.append(
            CorpusItem(
                f"family:{label}",
                " ".join([name] + [str(p) for p in params]),
                families.make_family(name, params),
            )
        )
    for order, gens in CAYLEY_SPECS:
        group = cyclic_group(order)
        label = ",".join(str(s) for s in gens)
        items.append(
            CorpusItem(
                f"cayley:Z{order}:{{{label}}}",
                f"cayley Z{order} {label}",
                cayley_graph(group, GeneratingSet.of(gens)),
                group,
            )
        )
    return items


def random_connected_graph(
    rng: np.random.Generator, n: int, p: float, retries: int, name: str
) -> Graph:
    """
    Erdos-Renyi G(n, p) conditioned on connectivity by rejection.

    Raises:
        CorpusError when no connected sample appears within `retries`.
    """
    rows, cols = np.triu_indices(n, k=1)
    for _ in range(retries):
        keep = rng.random(len(rows)) < p
        graph = Graph.from_edges(
            n, zip(rows[keep].tolist(), cols[keep].tolist()), name=name
        )
        if all(graph.deg) and is_connected(graph):
            return graph.with_meta(connected=True)
    raise CorpusError(
        f"no connected G({n}, {p:.4f}) sample in {retries} attempts"
    )


def random_items(config: LabConfig) -> List[CorpusItem]:
    """
    `corpus_count` random connected graphs. Each graph draws from its own
    generator seeded by the run seed and its index, so a graph does not
    depend on the ones before it.
    """
    if config.corpus_n_min > config.corpus_n_max:
        raise CorpusError("corpus_n_min must not exceed corpus_n_max")
    if config.corpus_p_min > config.corpus_p_max:
        raise CorpusError("corpus_p_min must not exceed corpus_p_max")
    items = []
    for i in range(config.corpus_count):
        graph_id = f"random:{i:04d}"
        rng = np.random.default_rng(utils.stable_seed(config.seed, graph_id))
        n = int(rng.integers(config.corpus_n_min, config.corpus_n_max + 1))
        p = float(rng.uniform(config.corpus_p_min, config.corpus_p_max))
        graph = random_connected_graph(
            rng, n, p, config.corpus_retries, name=f"gnp_{n}_{p:.4f}"
        )
        items.append(CorpusItem(graph_id, f"G({n}, {p:.4f})", graph))
    return items


def build_corpus(
    config: LabConfig, with_families=True, with_random=True
) -> List[CorpusItem]:
    items = []
    if with_families:
        items.extend(family_items())
    if with_random:
        items.extend(random_items(config))
    return items


def _analyze_item(args) -> GraphRecord:
    item, settings, checks = args
    # LabConfig holds generated schema classes that do not pickle, so each
    # worker rebuilds it from the plain settings
    config = LabConfig()
    config.adjust(settings, ignore_warnings=True)
    logger.info("analyzing %s (n=%d)", item.graph_id, item.graph.n)
    return analyze(
        item.graph,
        config,
        graph_id=item.graph_id,
        source=item.source,
        group=item.group,
        checks=checks,
    )


def run_corpus(
    config: LabConfig,
    items: Optional[List[CorpusItem]] = None,
    checks=None,
    workers: Optional[int] = None,
) -> RunReport:
    """
    Analyze every corpus graph, `workers` processes at a time, and assemble
    the report sorted by graph id.
    """
    items = build_corpus(config) if items is None else items
    workers = workers or config.workers
    settings = config.dump()
    jobs = [(item, settings, checks) for item in items]
    logger.info("corpus: %d graphs, %d workers", len(jobs), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_analyze_item, jobs))
    else:
        records = [_analyze_item(job) for job in jobs]
    return build_report(records, settings)
