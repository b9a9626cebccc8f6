"""
Named graph families used as the test corpus. Every constructor sets the
metadata that is known by construction.
"""
import itertools
from typing import Callable, Dict, List, Sequence

from cheegerlab.exceptions import FamilyError
from cheegerlab.graph import Graph, Provenance, is_bipartite, is_connected


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(
        n,
        [(i, (i + 1) % n) for i in range(n)],
        name=f"cycle_{n}",
        connected=True,
        bipartite=n % 2 == 0,
        vertex_transitive=Provenance.BY_CONSTRUCTION,
    )


def complete(n: int) -> Graph:
    if n < 2:
        raise FamilyError(f"complete needs n >= 2, got {n}")
    return Graph.from_edges(
        n,
        itertools.combinations(range(n), 2),
        name=f"complete_{n}",
        connected=True,
        bipartite=n == 2,
        vertex_transitive=Provenance.BY_CONSTRUCTION,
    )


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise FamilyError(f"complete_bipartite needs a, b >= 1, got {a} {b}")
    return Graph.from_edges(
        a + b,
        [(i, a + j) for i in range(a) for j in range(b)],
        name=f"complete_bipartite_{a}_{b}",
        connected=True,
        bipartite=True,
        vertex_transitive=Provenance.BY_CONSTRUCTION if a == b else None,
    )


def hypercube(k: int) -> Graph:
    if k < 1:
        raise FamilyError(f"hypercube needs k >= 1, got {k}")
    n = 2 ** k
    edges = [(x, x ^ (1 << b)) for x in range(n) for b in range(k)]
    return Graph.from_edges(
        n,
        [(u, v) for u, v in edges if u < v],
        name=f"hypercube_{k}",
        connected=True,
        bipartite=True,
        vertex_transitive=Provenance.BY_CONSTRUCTION,
    )


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(
        10,
        outer + inner + spokes,
        name="petersen",
        connected=True,
        bipartite=False,
        vertex_transitive=Provenance.BY_CONSTRUCTION,
    )


def path(n: int) -> Graph:
    if n < 2:
        raise FamilyError(f"path needs n >= 2, got {n}")
    return Graph.from_edges(
        n,
        [(i, i + 1) for i in range(n - 1)],
        name=f"path_{n}",
        connected=True,
        bipartite=True,
    )


def circulant(n: int, *jumps: int) -> Graph:
    """
    Cayley graph of the cyclic group Z_n with generating set
    {±s : s in jumps}.
    """
    if n < 3:
        raise FamilyError(f"circulant needs n >= 3, got {n}")
    if not jumps:
        raise FamilyError("circulant needs at least one jump")
    if any(not 0 < s < n for s in jumps):
        raise FamilyError(f"circulant jumps must lie in 1..{n - 1}")
    edges = set()
    for x in range(n):
        for s in jumps:
            y = (x + s) % n
            edges.add((min(x, y), max(x, y)))
    label = "_".join(str(s) for s in sorted(set(jumps)))
    graph = Graph.from_edges(
        n,
        sorted(edges),
        name=f"circulant_{n}_{label}",
        vertex_transitive=Provenance.BY_CONSTRUCTION,
    )
    return graph.with_meta(
        connected=is_connected(graph), bipartite=is_bipartite(graph)[0]
    )


FAMILIES: Dict[str, Callable[..., Graph]] = {
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "hypercube": hypercube,
    "petersen": petersen,
    "path": path,
    "circulant": circulant,
}

ARITY = {
    "cycle": 1,
    "complete": 1,
    "complete_bipartite": 2,
    "hypercube": 1,
    "petersen": 0,
    "path": 1,
}


def make_family(name: str, params: Sequence[int] = ()) -> Graph:
    if name not in FAMILIES:
        raise FamilyError(
            f"unknown family '{name}'; choose from {sorted(FAMILIES)}"
        )
    params = [int(p) for p in params]
    expected = ARITY.get(name)
    if expected is not None and len(params) != expected:
        raise FamilyError(
            f"family '{name}' takes {expected} parameter(s), "
            f"got {len(params)}"
        )
    return FAMILIES[name](*params)


def parse_family(spec: str) -> Graph:
    """Build a family from a string such as "cycle 5" or "petersen"."""
    parts = spec.replace(",", " ").split()
    if not parts:
        raise FamilyError("empty family specification")
    try:
        params: List[int] = [int(p) for p in parts[1:]]
    except ValueError:
        raise FamilyError(f"family parameters must be integers: '{spec}'")
    return make_family(parts[0], params)
