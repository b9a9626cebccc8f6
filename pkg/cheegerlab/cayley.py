import warnings
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List

import numpy as np

from cheegerlab import utils
from cheegerlab.exceptions import GeneratingSetError, GroupTableError
from cheegerlab.graph import Graph, Provenance, is_bipartite


@dataclass(frozen=True, eq=False)
class GroupTable:
    """
    Finite group given by its multiplication table over element indices
    0..order-1, with the identity at index 0.

    `asserted_simple` is user-declared metadata; simplicity is never
    computed.
    """

    table: np.ndarray
    asserted_simple: bool = False
    name: str = "group"

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    @property
    def order_is_odd(self) -> bool:
        return self.order % 2 == 1

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse(self, i: int) -> int:
        return int(np.flatnonzero(self.table[i] == 0)[0])

    def declare_simple(self, asserted: bool = True) -> "GroupTable":
        return GroupTable(self.table, asserted, self.name)


@dataclass(frozen=True)
class GeneratingSet:
    elements: FrozenSet[int]

    @classmethod
    def of(cls, elements: Iterable[int]) -> "GeneratingSet":
        return cls(frozenset(int(e) for e in elements))

    def validate(self, group: GroupTable) -> "GeneratingSet":
        """
        Check the invariants needed for an undirected, connected Cayley
        graph: identity excluded, closed under inverses, generates the group.
        """
        messages = []
        bad = sorted(e for e in self.elements if not 0 <= e < group.order)
        if bad:
            raise GeneratingSetError(
                f"elements {bad} are not in 0..{group.order - 1}"
            )
        if not self.elements:
            messages.append("generating set is empty")
        if group.identity in self.elements:
            messages.append("identity 0 must not be a generator")
        missing = sorted(
            group.inverse(s)
            for s in self.elements
            if group.inverse(s) not in self.elements
        )
        if missing:
            messages.append(f"not closed under inverses: missing {missing}")
        reached = closure(group, self.elements)
        if len(reached) != group.order:
            messages.append(
                f"does not generate the group: reaches {len(reached)} of "
                f"{group.order} elements"
            )
        if messages:
            raise GeneratingSetError(messages)
        return self


def closure(group: GroupTable, generators: Iterable[int]) -> set:
    """BFS closure of the identity under right multiplication."""
    generators = list(generators)
    reached = {group.identity}
    queue = deque([group.identity])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = group.mul(x, s)
            if y not in reached:
                reached.add(y)
                queue.append(y)
    return reached


def check_group_table(
    table: np.ndarray,
    associativity_limit: int = 64,
    associativity_samples: int = 20000,
    seed: int = 0,
) -> List[str]:
    """
    Return every violated group axiom as a message; empty when valid.
    Associativity is exhaustive up to `associativity_limit` elements and
    sampled above it.
    """
    messages = []
    order = table.shape[0]
    if table.shape != (order, order):
        return [f"table must be square, got shape {table.shape}"]
    if ((table < 0) | (table >= order)).any():
        return [f"entries must lie in 0..{order - 1}"]
    full = np.arange(order)
    for i in range(order):
        if len(set(table[i].tolist())) != order:
            messages.append(f"row {i} is not a permutation (Latin square)")
        if len(set(table[:, i].tolist())) != order:
            messages.append(f"column {i} is not a permutation (Latin square)")
    if messages:
        return messages
    if not (table[0] == full).all() or not (table[:, 0] == full).all():
        messages.append("index 0 is not a two-sided identity")
        return messages
    for i in range(order):
        j = int(np.flatnonzero(table[i] == 0)[0])
        if table[j, i] != 0:
            messages.append(f"element {i} has no two-sided inverse")
    if messages:
        return messages
    if order <= associativity_limit:
        left = table[table]
        right = table[full[:, None, None], table[None, :, :]]
        bad = np.argwhere(left != right)
    else:
        warnings.warn(
            f"associativity sampled on {associativity_samples} triples "
            f"(order {order} > {associativity_limit}); not exhaustive"
        )
        rng = np.random.default_rng(seed)
        i, j, k = rng.integers(0, order, size=(3, associativity_samples))
        mask = table[table[i, j], k] != table[i, table[j, k]]
        bad = np.stack([i[mask], j[mask], k[mask]], axis=1)
    if len(bad):
        i, j, k = (int(x) for x in bad[0])
        messages.append(
            f"associativity fails, e.g. ({i}*{j})*{k} != {i}*({j}*{k})"
        )
    return messages


def parse_group(
    text: str,
    name: str = "group",
    asserted_simple: bool = False,
    associativity_limit: int = 64,
    associativity_samples: int = 20000,
) -> GroupTable:
    """
    Parse a table document: the order |G| on the first line, then |G| rows
    of |G| element indices. '#' lines are comments.
    """
    lines = list(utils.content_lines(text))
    if not lines:
        raise GroupTableError("empty document: expected the group order")
    lineno, header = lines[0]
    if not utils.is_integer(header) or int(header) < 1:
        raise GroupTableError(f"line {lineno}: malformed order '{header}'")
    order = int(header)
    rows = lines[1:]
    if len(rows) != order:
        raise GroupTableError(
            f"expected {order} table rows, found {len(rows)}"
        )
    messages = []
    data = []
    for lineno, line in rows:
        parts = line.replace(",", " ").split()
        if len(parts) != order or not all(
            utils.is_integer(p) for p in parts
        ):
            messages.append(
                f"line {lineno}: expected {order} non-negative indices"
            )
            continue
        data.append([int(p) for p in parts])
    if messages:
        raise GroupTableError(messages)
    table = np.array(data, dtype=int)
    messages = check_group_table(
        table, associativity_limit, associativity_samples
    )
    if messages:
        raise GroupTableError(messages)
    table.setflags(write=False)
    return GroupTable(table, asserted_simple, name)


def format_group(group: GroupTable) -> str:
    lines = [f"# {group.name}", str(group.order)]
    lines.extend(" ".join(str(x) for x in row) for row in group.table)
    return "\n".join(lines) + "\n"


def parse_generators(text: str) -> GeneratingSet:
    try:
        return GeneratingSet.of(
            int(p) for p in text.replace(" ", "").split(",") if p
        )
    except ValueError:
        raise GeneratingSetError(
            f"generators must be comma-separated indices: '{text}'"
        )


def cyclic_group(n: int) -> GroupTable:
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    table.setflags(write=False)
    return GroupTable(table, name=f"Z{n}")


def dihedral_group(n: int) -> GroupTable:
    """
    Dihedral group of order 2n: element r^a s^b is stored at index a + n*b.
    """

    def compose(x, y):
        a1, b1 = x % n, x // n
        a2, b2 = y % n, y // n
        a = (a1 + (a2 if b1 == 0 else -a2)) % n
        return a + n * ((b1 + b2) % 2)

    size = 2 * n
    table = np.array(
        [[compose(x, y) for y in range(size)] for x in range(size)]
    )
    table.setflags(write=False)
    return GroupTable(table, name=f"D{n}")


def cayley_graph(group: GroupTable, gens: GeneratingSet) -> Graph:
    """
    Cayley graph on the group elements with edges {x, x*s} for s in S.
    The result is |S|-regular, connected and vertex-transitive by
    construction.
    """
    gens.validate(group)
    edges = set()
    for x in range(group.order):
        for s in gens.elements:
            y = group.mul(x, s)
            edges.add((min(x, y), max(x, y)))
    label = ",".join(str(s) for s in sorted(gens.elements))
    graph = Graph.from_edges(
        group.order,
        sorted(edges),
        name=f"cayley_{group.name}_{{{label}}}",
        connected=True,
        vertex_transitive=Provenance.BY_CONSTRUCTION,
    )
    return graph.with_meta(bipartite=is_bipartite(graph)[0])


def multiplicity_argument_applies(group: GroupTable) -> bool:
    """
    True when the group has no subgroup of index two by hypothesis: its
    order is odd, or it was declared simple.
    """
    return group.order_is_odd or group.asserted_simple
