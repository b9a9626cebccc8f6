import enum
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from cheegerlab import utils
from cheegerlab.exceptions import CheegerLabError, GraphFormatError
from cheegerlab.typing import Edge


class Provenance(enum.Enum):
    """
    Where a vertex-transitivity claim comes from. The automorphism search is
    exponential, so a claim may also come from the construction or from
    the user.
    """

    BY_CONSTRUCTION = "by-construction"
    VERIFIED = "verified"
    ASSERTED = "asserted"


@dataclass(frozen=True)
class GraphMeta:
    name: str = "graph"
    connected: Optional[bool] = None
    bipartite: Optional[bool] = None
    vertex_transitive: Optional[Provenance] = None


@dataclass(frozen=True)
class Graph:
    """
    Finite simple undirected graph on the dense vertex set 0..n-1.

    Edges are kept both as a sorted tuple of pairs (u < v) and as per-vertex
    sorted adjacency tuples. Instances are immutable; use `Graph.from_edges`
    to build one so the invariants are checked.
    """

    n: int
    edges: Tuple[Edge, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    meta: GraphMeta = field(default_factory=GraphMeta)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, **meta) -> "Graph":
        if n < 1:
            raise GraphFormatError(f"vertex count must be >= 1, got {n}")
        seen = set()
        neighbours: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {{{u}, {v}}} out of range")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise GraphFormatError(f"duplicate edge {{{u}, {v}}}")
            seen.add(pair)
            neighbours[u].append(v)
            neighbours[v].append(u)
        return cls(
            n=n,
            edges=tuple(sorted(seen)),
            adjacency=tuple(tuple(sorted(nb)) for nb in neighbours),
            meta=GraphMeta(**meta),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def name(self) -> str:
        return self.meta.name

    @cached_property
    def deg(self) -> Tuple[int, ...]:
        return tuple(len(nb) for nb in self.adjacency)

    @property
    def degrees(self) -> np.ndarray:
        return np.array(self.deg, dtype=float)

    @cached_property
    def regular_degree(self) -> Optional[int]:
        degs = set(self.deg)
        if len(degs) == 1:
            return degs.pop()
        return None

    @property
    def volume(self) -> int:
        return sum(self.deg)

    def edge_array(self) -> np.ndarray:
        """(m, 2) integer array of edge endpoints."""
        if not self.edges:
            return np.zeros((0, 2), dtype=int)
        return np.array(self.edges, dtype=int)

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1.0
        return A

    def neighbour_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(nb) for nb in self.adjacency)

    def with_meta(self, **changes) -> "Graph":
        return replace(self, meta=replace(self.meta, **changes))

    def cut(self, members: Iterable[int]) -> "Cut":
        return Cut.of(self, members)


@dataclass(frozen=True)
class Cut:
    """
    A nonempty proper vertex subset S with its boundary size and the two
    volumes that define h(S).
    """

    members: Tuple[int, ...]
    boundary_size: int
    vol_S: int
    vol_complement: int

    @classmethod
    def of(cls, graph: Graph, members: Iterable[int]) -> "Cut":
        members = tuple(sorted(set(members)))
        if not members or len(members) == graph.n:
            raise CheegerLabError("a cut must be a nonempty proper subset")
        inside = set(members)
        boundary = sum(
            1 for u, v in graph.edges if (u in inside) != (v in inside)
        )
        vol_S = sum(graph.deg[u] for u in members)
        return cls(members, boundary, vol_S, graph.volume - vol_S)

    @property
    def expansion(self) -> Fraction:
        denominator = min(self.vol_S, self.vol_complement)
        if denominator == 0:
            raise CheegerLabError("h(S) is undefined for a zero-volume side")
        return Fraction(self.boundary_size, denominator)


def parse_graph(text: str, name: str = "graph") -> Graph:
    """
    Parse an edge-list document: a header line "n m" followed by m lines
    "u v". Lines starting with '#' are ignored. All problems are collected
    and raised together as a GraphFormatError.
    """
    lines = list(utils.content_lines(text))
    if not lines:
        raise GraphFormatError("empty document: expected header 'n m'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(
        utils.is_integer(p, signed=True) for p in parts
    ):
        raise GraphFormatError(f"line {lineno}: malformed header '{header}'")
    n, m = int(parts[0]), int(parts[1])
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {lineno}: invalid header '{header}'")

    messages = []
    seen = set()
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or not all(
            utils.is_integer(p, signed=True) for p in parts
        ):
            messages.append(f"line {lineno}: malformed edge line '{line}'")
            continue
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            messages.append(
                f"line {lineno}: vertex out of range in '{line}' (n={n})"
            )
            continue
        if u == v:
            messages.append(f"line {lineno}: self-loop at vertex {u}")
            continue
        pair = (min(u, v), max(u, v))
        if pair in seen:
            messages.append(f"line {lineno}: duplicate edge {{{u}, {v}}}")
            continue
        seen.add(pair)
        edges.append(pair)
    if len(lines) - 1 != m:
        messages.append(
            f"edge count mismatch: header declares {m}, "
            f"found {len(lines) - 1} edge lines"
        )
    if messages:
        raise GraphFormatError(messages)
    return Graph.from_edges(n, edges, name=name)


def format_graph(graph: Graph) -> str:
    lines = [f"# {graph.name}", f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def components(graph: Graph) -> List[List[int]]:
    seen = [False] * graph.n
    result = []
    for root in range(graph.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        comp = []
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in graph.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        result.append(sorted(comp))
    return result


def is_connected(graph: Graph) -> bool:
    return len(components(graph)) == 1


def is_bipartite(graph: Graph) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """
    BFS 2-coloring of every component.

    Returns:
        (True, coloring) with coloring[v] in {0, 1} when every component
        admits a proper 2-coloring, otherwise (False, None).
    """
    color = [-1] * graph.n
    for root in range(graph.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in graph.adjacency[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False, None
    return True, tuple(color)
