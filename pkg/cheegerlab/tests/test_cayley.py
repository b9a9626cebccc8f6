import numpy as np
import pytest

from cheegerlab import utils
from cheegerlab.cayley import (
    GeneratingSet,
    GroupTable,
    cayley_graph,
    check_group_table,
    closure,
    cyclic_group,
    dihedral_group,
    format_group,
    multiplicity_argument_applies,
    parse_generators,
    parse_group,
)
from cheegerlab.exceptions import GeneratingSetError, GroupTableError
from cheegerlab.families import circulant
from cheegerlab.graph import Provenance


def test_cyclic_group():
    group = cyclic_group(6)
    assert group.order == 6
    assert group.mul(4, 5) == 3
    assert group.inverse(2) == 4
    assert not group.order_is_odd
    assert check_group_table(np.array(group.table)) == []


def test_dihedral_group():
    group = dihedral_group(4)
    assert group.order == 8
    assert check_group_table(np.array(group.table)) == []
    # reflections are involutions; rotations and reflections do not commute
    assert group.mul(4, 4) == 0
    assert group.mul(1, 4) != group.mul(4, 1)


@pytest.mark.parametrize("name", ["z5", "z6", "z7", "z9"])
def test_parse_example_groups(name):
    group = parse_group(
        utils.read_text(utils.get_example_paths(name)), name=name
    )
    order = int(name[1:])
    assert group.order == order
    assert (group.table == cyclic_group(order).table).all()


def test_format_group_reparses():
    group = dihedral_group(3)
    again = parse_group(format_group(group), name="D3")
    assert (again.table == group.table).all()


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "empty"),
        ("x\n", "malformed order"),
        ("2\n0 1\n", "expected 2 table rows"),
        ("2\n0 1\n1 a\n", "non-negative"),
        ("2\n0 1\n1 ²\n", "non-negative"),
        ("²\n0\n", "malformed order"),
        ("2\n0 1\n1 1\n", "Latin square"),
        ("2\n1 0\n0 1\n", "identity"),
        ("2\n0 1\n1 2\n", "entries must lie"),
    ],
)
def test_parse_group_errors(text, fragment):
    with pytest.raises(GroupTableError) as excinfo:
        parse_group(text)
    assert any(fragment in m for m in excinfo.value.messages)


def test_non_associative_loop():
    # a Latin square with identity 0 and inverses that is not a group
    table = np.array(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    messages = check_group_table(table)
    assert len(messages) == 1
    assert "associativity" in messages[0]


def test_associativity_sampled():
    table = np.array(cyclic_group(5).table)
    with pytest.warns(UserWarning):
        assert check_group_table(table, associativity_limit=3) == []


def test_parse_generators():
    assert parse_generators("1,4").elements == frozenset({1, 4})
    assert parse_generators(" 1, 2 ,5,6").elements == frozenset({1, 2, 5, 6})
    with pytest.raises(GeneratingSetError):
        parse_generators("1;4")


@pytest.mark.parametrize(
    "gens,fragment",
    [
        ([], "empty"),
        ([0, 1, 4], "identity"),
        ([1], "inverses"),
        ([2, 4], "does not generate"),
    ],
)
def test_generating_set_errors(gens, fragment):
    group = cyclic_group(6)
    with pytest.raises(GeneratingSetError) as excinfo:
        GeneratingSet.of(gens).validate(group)
    assert any(fragment in m for m in excinfo.value.messages)


def test_generating_set_out_of_range():
    with pytest.raises(GeneratingSetError):
        GeneratingSet.of([1, 9]).validate(cyclic_group(5))


def test_closure():
    group = cyclic_group(6)
    assert closure(group, [2]) == {0, 2, 4}
    assert closure(group, [1]) == set(range(6))


def test_cayley_graph():
    graph = cayley_graph(cyclic_group(7), GeneratingSet.of([1, 2, 5, 6]))
    assert graph.regular_degree == 4
    assert graph.edges == circulant(7, 1, 2).edges
    assert graph.meta.connected is True
    assert graph.meta.bipartite is False
    assert graph.meta.vertex_transitive is Provenance.BY_CONSTRUCTION
    assert graph.name == "cayley_Z7_{1,2,5,6}"


def test_cayley_graph_involutions():
    group = dihedral_group(3)
    # two reflections generate D3; each is its own inverse
    graph = cayley_graph(group, GeneratingSet.of([3, 4]))
    assert graph.regular_degree == 2
    assert graph.meta.bipartite is True


def test_multiplicity_argument_applies():
    assert multiplicity_argument_applies(cyclic_group(5))
    assert not multiplicity_argument_applies(cyclic_group(6))
    assert multiplicity_argument_applies(cyclic_group(6).declare_simple())
    assert isinstance(cyclic_group(6).declare_simple(), GroupTable)
