import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from selfref.hyperset import (
    SetGraph, bisimulation_classes, collapse, empty_set, find_descending_cycle,
    is_well_founded, kuratowski, make_set, singleton, set_eq, von_neumann,
)
from strategies import set_graphs, well_founded_graphs

OMEGA = SetGraph({"w"}, {("w", "w")}, "w")
OMEGA2 = SetGraph({1, 2}, {(1, 2), (2, 1)}, 1)


def to_nx(g):
    d = nx.DiGraph()
    d.add_nodes_from(g.nodes)
    d.add_edges_from(g.edges)
    return d


class TestConstruction:
    def test_empty(self):
        e = empty_set()
        assert len(e.nodes) == 1 and not e.edges

    def test_one(self):
        one = von_neumann(1)
        assert one.members(one.point) == ["0"]
        assert is_well_founded(one) and is_well_founded(empty_set())

    def test_unreachable_rejected(self):
        with pytest.raises(ValueError):
            SetGraph({0, 1}, set(), 0)

    def test_bad_point(self):
        with pytest.raises(ValueError):
            SetGraph({0}, set(), 1)

    def test_json_roundtrip(self):
        k = kuratowski(OMEGA, von_neumann(1))
        assert SetGraph.loads(k.dumps()) == k

    def test_kuratowski_members(self):
        a, b = von_neumann(0), von_neumann(1)
        k = kuratowski(a, b)
        inner = [k.members(m) for m in k.members(k.point)]
        expect_a = singleton(a)
        expect_ab = make_set([a, b])
        got = [k.repoint(m) for m in k.members(k.point)]
        assert len(inner) == 2
        assert any(set_eq(g, expect_a) for g in got) and any(set_eq(g, expect_ab) for g in got)

    def test_pair_of_equal(self):
        a = von_neumann(1)
        assert set_eq(kuratowski(a, a), singleton(singleton(a)))
        assert set_eq(kuratowski(OMEGA, OMEGA), singleton(singleton(OMEGA)))


class TestEquality:
    def test_two_empty_sets(self):
        assert set_eq(empty_set(), SetGraph({"e"}, set(), "e"))

    def test_omegas(self):
        assert set_eq(OMEGA, OMEGA2)

    def test_empty_vs_one(self):
        assert not set_eq(empty_set(), von_neumann(1))

    def test_omega_is_its_singleton(self):
        assert set_eq(OMEGA, singleton(OMEGA))

    def test_classes(self):
        cls = bisimulation_classes({1, 2, 3}, {(1, 2), (2, 1)})
        assert cls[1] == cls[2] != cls[3]


class TestFoundation:
    def test_omega(self):
        assert not is_well_founded(OMEGA)
        assert find_descending_cycle(OMEGA) == ["w"]

    def test_two_cycle(self):
        assert find_descending_cycle(OMEGA2) == [1, 2]

    def test_one(self):
        assert find_descending_cycle(von_neumann(1)) is None

    def test_shortest_chosen(self):
        # a 1-cycle at 3 and a 2-cycle 1 <-> 2
        g = SetGraph({0, 1, 2, 3}, {(0, 1), (1, 2), (2, 1), (0, 3), (3, 3)}, 0)
        assert find_descending_cycle(g) == [3]

    def test_membership_order(self):
        # 0 -> 1 -> 2 -> 0 means 1 in 0, 2 in 1, 0 in 2; listed as 0 in 2 in 1 in 0
        g = SetGraph({0, 1, 2}, {(0, 1), (1, 2), (2, 0)}, 0)
        assert find_descending_cycle(g) == [0, 2, 1]


@settings(max_examples=200)
@given(set_graphs())
def test_foundation_matches_cycle(g):
    assert is_well_founded(g) == (find_descending_cycle(g) is None)
    assert is_well_founded(g) == nx.is_directed_acyclic_graph(to_nx(g))


@settings(max_examples=200)
@given(set_graphs())
def test_cycle_is_shortest(g):
    c = find_descending_cycle(g)
    if c is None:
        return
    for k in range(len(c)):
        # c[k] is a member of c[k + 1]
        assert (c[(k + 1) % len(c)], c[k]) in g.edges
    assert len(set(c)) == len(c)
    shortest = min(len(x) for x in nx.simple_cycles(to_nx(g)))
    assert len(c) == shortest


@given(well_founded_graphs())
def test_acyclic_graphs_are_well_founded(g):
    assert is_well_founded(g)


@settings(max_examples=100)
@given(set_graphs(4), set_graphs(4), set_graphs(4))
def test_equivalence(a, b, c):
    assert set_eq(a, a)
    assert set_eq(a, b) == set_eq(b, a)
    if set_eq(a, b) and set_eq(b, c):
        assert set_eq(a, c)


@settings(max_examples=200)
@given(set_graphs(3), set_graphs(3), set_graphs(3), set_graphs(3))
def test_pair_law(a, b, c, d):
    assert set_eq(kuratowski(a, b), kuratowski(c, d)) == (set_eq(a, c) and set_eq(b, d))


@given(set_graphs())
def test_collapse(g):
    once = collapse(g)
    twice = collapse(once)
    assert set_eq(g, once)
    assert len(twice.nodes) == len(once.nodes)
    assert nx.is_isomorphic(to_nx(once), to_nx(twice))
    assert is_well_founded(once) == is_well_founded(g)
