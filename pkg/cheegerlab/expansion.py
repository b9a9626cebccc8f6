from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from cheegerlab.exceptions import (
    CheegerLabError,
    EnumerationLimitError,
    HypothesisError,
)
from cheegerlab.graph import Cut, Graph
from cheegerlab.verdict import DEFAULT_TOL, Verdict


@dataclass(frozen=True)
class ExpansionProfile:
    """
    Exact edge-expansion h with an optimal cut, and optionally the exact
    vertex-expansion h_out with its optimal set.
    """

    h: Fraction
    witness: Cut
    h_out: Optional[Fraction] = None
    h_out_witness: Optional[Tuple[int, ...]] = None
    exact: bool = True

    @property
    def h_value(self) -> float:
        return float(self.h)

    @property
    def h_out_value(self) -> Optional[float]:
        return None if self.h_out is None else float(self.h_out)


def to_gray_code(x: int) -> int:
    return (x >> 1) ^ x


@dataclass(frozen=True)
class RangeBest:
    """Best cut found in a contiguous range of Gray-code indices."""

    boundary: int
    volume: int
    index: int
    code: int

    def key(self):
        return (Fraction(self.boundary, self.volume), self.index)


def _check_enumerable(graph: Graph, max_n: int):
    if graph.n < 2:
        raise CheegerLabError("expansion needs at least two vertices")
    if graph.n > max_n:
        raise EnumerationLimitError(
            f"n={graph.n} exceeds the enumeration limit max_n={max_n}; "
            f"use a smaller graph or raise the limit explicitly"
        )
    isolated = [v for v, d in enumerate(graph.deg) if d == 0]
    if isolated:
        raise CheegerLabError(
            f"isolated vertices {isolated}: h(S) is undefined for "
            f"zero-volume sides"
        )


def scan_gray_range(graph: Graph, start: int, stop: int) -> RangeBest:
    """
    Scan cuts S = {0} + {b + 1 : bit b of gray(i)} for start <= i < stop.

    The starting cut is rebuilt from gray(start); each later step flips one
    vertex and updates |dS| and vol(S) in O(deg).
    """
    n, deg, adj = graph.n, graph.deg, graph.adjacency
    total = graph.volume
    full = (1 << (n - 1)) - 1
    inside = [False] * n
    inside[0] = True
    code = to_gray_code(start)
    for b in range(n - 1):
        if code >> b & 1:
            inside[b + 1] = True
    members = [v for v in range(n) if inside[v]]
    if len(members) < n:
        start_cut = graph.cut(members)
        boundary, vol = start_cut.boundary_size, start_cut.vol_S
    else:
        boundary, vol = 0, total
    best_b, best_m, best_i, best_code = -1, 1, -1, -1
    prev = code
    for i in range(start, stop):
        if i > start:
            code = to_gray_code(i)
            v = (code ^ prev).bit_length()
            prev = code
            k = sum(1 for w in adj[v] if inside[w])
            if inside[v]:
                inside[v] = False
                boundary += 2 * k - deg[v]
                vol -= deg[v]
            else:
                inside[v] = True
                boundary += deg[v] - 2 * k
                vol += deg[v]
        if code == full:
            continue
        m = min(vol, total - vol)
        if best_i < 0 or boundary * best_m < best_b * m:
            best_b, best_m, best_i, best_code = boundary, m, i, code
    return RangeBest(best_b, best_m, best_i, best_code)


def _scan(args):
    graph, start, stop = args
    return scan_gray_range(graph, start, stop)


def gray_ranges(count: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, count))
    bounds = np.linspace(0, count, parts + 1).astype(int)
    return [
        (int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a
    ]


def cheeger_constant(
    graph: Graph,
    max_n: int = 24,
    workers: int = 1,
    executor: Executor = None,
) -> ExpansionProfile:
    """
    Exact edge-expansion h = min |dS| / min(vol S, vol(V - S)) over all
    nonempty proper S. Only sets containing vertex 0 are enumerated since
    h(S) = h(V - S).

    The Gray-code index space may be split into `workers` contiguous ranges
    scanned concurrently; ties are broken by the smallest index, so the
    result does not depend on the partitioning.
    """
    _check_enumerable(graph, max_n)
    count = 1 << (graph.n - 1)
    ranges = gray_ranges(count, workers)
    jobs = [(graph, a, b) for a, b in ranges]
    if len(jobs) == 1:
        partial = [_scan(jobs[0])]
    elif executor is not None:
        partial = list(executor.map(_scan, jobs))
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            partial = list(pool.map(_scan, jobs))
    best = min((p for p in partial if p.index >= 0), key=RangeBest.key)
    members = [0] + [
        b + 1 for b in range(graph.n - 1) if best.code >> b & 1
    ]
    witness = graph.cut(members)
    return ExpansionProfile(h=witness.expansion, witness=witness)


def cheeger_constant_naive(graph: Graph, max_n: int = 24) -> ExpansionProfile:
    """
    Oracle for `cheeger_constant`: every subset containing vertex 0 in
    binary order, with |dS| recounted from the edge list each time.
    """
    _check_enumerable(graph, max_n)
    best = None
    for rest in range(1 << (graph.n - 1)):
        members = [0] + [
            b + 1 for b in range(graph.n - 1) if rest >> b & 1
        ]
        if len(members) == graph.n:
            continue
        cut = graph.cut(members)
        if best is None or cut.expansion < best.expansion:
            best = cut
    return ExpansionProfile(h=best.expansion, witness=best)


def vertex_expansion(
    graph: Graph, max_n: int = 24
) -> Tuple[Fraction, Tuple[int, ...]]:
    """
    Exact h_out = min |d_out S| / |S| over nonempty S with |S| <= n/2, where
    d_out S is the set of outside vertices adjacent to S. Enumerated in
    Gray-code order over all n vertices, keeping for every vertex the number
    of its neighbours in S.
    """
    if graph.n < 2:
        raise CheegerLabError("expansion needs at least two vertices")
    if graph.n > max_n:
        raise EnumerationLimitError(
            f"n={graph.n} exceeds the enumeration limit max_n={max_n}"
        )
    n, adj = graph.n, graph.adjacency
    inside = [False] * n
    count = [0] * n
    out, size = 0, 0
    best_out, best_size, best_code = -1, 1, 0
    prev = 0
    for i in range(1, 1 << n):
        code = to_gray_code(i)
        v = (code ^ prev).bit_length() - 1
        prev = code
        if not inside[v]:
            inside[v] = True
            size += 1
            if count[v] > 0:
                out -= 1
            for w in adj[v]:
                count[w] += 1
                if count[w] == 1 and not inside[w]:
                    out += 1
        else:
            inside[v] = False
            size -= 1
            if count[v] > 0:
                out += 1
            for w in adj[v]:
                count[w] -= 1
                if count[w] == 0 and not inside[w]:
                    out -= 1
        if size == 0 or 2 * size > n:
            continue
        if best_out < 0 or out * best_size < best_out * size:
            best_out, best_size, best_code = out, size, code
    members = tuple(v for v in range(n) if best_code >> v & 1)
    return Fraction(best_out, best_size), members


def expansion_profile(
    graph: Graph,
    max_n: int = 24,
    workers: int = 1,
    with_vertex_expansion: bool = True,
) -> ExpansionProfile:
    profile = cheeger_constant(graph, max_n=max_n, workers=workers)
    if not with_vertex_expansion:
        return profile
    h_out, members = vertex_expansion(graph, max_n=max_n)
    return replace(profile, h_out=h_out, h_out_witness=members)


def l1_cheeger_check(
    graph: Graph, f, h: float, tol: float = DEFAULT_TOL
) -> Verdict:
    """
    For a nonzero f with sum f(u) d_u = 0:
    sum_E |f(u) - f(v)| / sum_u |f(u)| d_u >= h / 2.
    """
    f = np.asarray(f, dtype=float)
    d = graph.degrees
    mass = float(np.sum(np.abs(f) * d))
    if mass == 0.0:
        raise HypothesisError("the function must be nonzero")
    if abs(float(np.sum(f * d))) > 1e-9 * mass:
        raise HypothesisError(
            "the function must be mean-zero in the degree-weighted sense"
        )
    E = graph.edge_array()
    variation = float(np.sum(np.abs(f[E[:, 0]] - f[E[:, 1]])))
    return Verdict.lower_bound(
        "l1_cheeger",
        "sum_E|f(u)-f(v)| / sum|f|d >= h/2 for mean-zero f",
        variation / mass,
        float(h) / 2.0,
        tol=tol,
    )

