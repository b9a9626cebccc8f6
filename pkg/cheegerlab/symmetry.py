import enum
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from cheegerlab.graph import Graph, Provenance


class Transitivity(enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class TransitivityResult:
    outcome: Transitivity
    witnesses: Tuple[Tuple[int, ...], ...] = ()
    reason: str = ""
    provenance: Optional[Provenance] = None


def _signatures(graph: Graph) -> List[Tuple[int, Tuple[int, ...]]]:
    deg = graph.deg
    return [
        (deg[u], tuple(sorted(deg[v] for v in graph.adjacency[u])))
        for u in range(graph.n)
    ]


def _search_order(graph: Graph) -> Tuple[List[int], Dict[int, int]]:
    """
    BFS order from vertex 0 over every component, with the BFS parent of
    each non-root vertex. Mapping vertices in this order means every new
    vertex already has a mapped neighbour, whose image restricts the
    candidates.
    """
    order, parent = [], {}
    seen = [False] * graph.n
    for root in range(graph.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in graph.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    queue.append(v)
    return order, parent


def find_automorphism(
    graph: Graph, source: int, target: int
) -> Optional[Tuple[int, ...]]:
    """
    Backtracking search for an automorphism mapping `source` to `target`,
    pruned by vertex signatures (degree plus neighbourhood degree multiset)
    and by adjacency consistency with every mapped vertex.
    """
    n = graph.n
    sig = _signatures(graph)
    if sig[source] != sig[target]:
        return None
    nbrs = graph.neighbour_sets()
    order, parent = _search_order(graph)
    # the source must be mapped first so the search is rooted at it
    order.remove(source)
    order.insert(0, source)
    mapping = [-1] * n
    used = [False] * n

    def consistent(u: int, image: int) -> bool:
        for w in range(n):
            if mapping[w] == -1 or w == u:
                continue
            if (w in nbrs[u]) != (mapping[w] in nbrs[image]):
                return False
        return True

    def candidates(u: int):
        anchor = next((w for w in nbrs[u] if mapping[w] != -1), None)
        if anchor is None:
            anchor = parent.get(u)
        if anchor is not None and mapping[anchor] != -1:
            pool = sorted(nbrs[mapping[anchor]])
        else:
            pool = range(n)
        return [x for x in pool if not used[x] and sig[x] == sig[u]]

    def backtrack(ix: int) -> bool:
        if ix == n:
            return True
        u = order[ix]
        pool = [target] if ix == 0 else candidates(u)
        for image in pool:
            if used[image] or not consistent(u, image):
                continue
            mapping[u] = image
            used[image] = True
            if backtrack(ix + 1):
                return True
            mapping[u] = -1
            used[image] = False
        return False

    if backtrack(0):
        return tuple(mapping)
    return None


def _orbit(start: int, perms: List[Tuple[int, ...]]) -> set:
    orbit = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for perm in perms:
            y = perm[x]
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return orbit


def verify_vertex_transitive(
    graph: Graph, limit: int = 16
) -> TransitivityResult:
    """
    Decide vertex-transitivity by searching, for every target vertex v,
    an automorphism mapping vertex 0 to v. Targets already reached by
    composing earlier witnesses are not searched again.

    Above `limit` vertices the search is not run and the outcome is
    skipped. A graph that is vertex-transitive by construction keeps that
    provenance on the result; anything else triggers a warning.
    """
    if len(set(graph.deg)) > 1:
        return TransitivityResult(
            Transitivity.REFUTED, reason="degree sequence is not constant"
        )
    if graph.n > limit:
        if graph.meta.vertex_transitive is Provenance.BY_CONSTRUCTION:
            return TransitivityResult(
                Transitivity.SKIPPED,
                reason=f"n={graph.n} > limit={limit}; by construction",
                provenance=Provenance.BY_CONSTRUCTION,
            )
        warnings.warn(
            f"vertex-transitivity search skipped for {graph.name}: "
            f"n={graph.n} exceeds limit {limit}"
        )
        return TransitivityResult(
            Transitivity.SKIPPED, reason=f"n={graph.n} > limit={limit}"
        )
    witnesses: List[Tuple[int, ...]] = []
    for target in range(1, graph.n):
        if target in _orbit(0, witnesses):
            continue
        perm = find_automorphism(graph, 0, target)
        if perm is None:
            return TransitivityResult(
                Transitivity.REFUTED,
                witnesses=tuple(witnesses),
                reason=f"no automorphism maps 0 to {target}",
            )
        witnesses.append(perm)
    return TransitivityResult(
        Transitivity.VERIFIED,
        tuple(witnesses),
        provenance=Provenance.VERIFIED,
    )


def is_automorphism(graph: Graph, perm: Tuple[int, ...]) -> bool:
    if sorted(perm) != list(range(graph.n)):
        return False
    edges = set(graph.edges)
    return all(
        (min(perm[u], perm[v]), max(perm[u], perm[v])) in edges
        for u, v in graph.edges
    )
