import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topospace.errors import MalformedGraph, UnknownVertex
from topospace.lgraph import (
    LGraph,
    Occurrence,
    Vertex,
    WalkClass,
    classify_occurrences,
    classify_walk,
    dominates,
    find_cycle,
    immediately_dominates,
    is_ordered,
    merge_vertices,
    single_mother_violations,
    to_dot,
)


def graph(edges, names=None, **kw):
    names = names or sorted({v for e in edges for v in e})
    return LGraph(tuple(Vertex(n, n, n, **kw) for n in names), frozenset(edges))


def test_immediate_dominance():
    g = graph([("a", "b"), ("b", "c")])
    assert immediately_dominates(g, "a", "b")
    assert not immediately_dominates(g, "b", "a")
    assert not immediately_dominates(g, "a", "c")
    with pytest.raises(UnknownVertex):
        immediately_dominates(g, "a", "z")


def test_transitive_dominance():
    g = graph([("a", "b"), ("b", "c")])
    assert dominates(g, "a", "c")
    assert not dominates(g, "c", "a")
    assert not dominates(g, "a", "a")
    multi = graph([("a", "b"), ("c", "b")])
    assert dominates(multi, "a", "b") and dominates(multi, "c", "b")


def test_order():
    assert is_ordered(graph([("a", "b")]), "a", "b")
    assert is_ordered(graph([("a", "b")]), "b", "a")
    assert not is_ordered(graph([], names=["a", "b"]), "a", "b")
    sibs = graph([("p", "a"), ("p", "b")])
    assert not is_ordered(sibs, "a", "b")


def test_walks():
    chain = graph([("a", "b"), ("b", "c")])
    assert classify_walk(chain, ["a", "b", "c"]) == WalkClass.PATH
    shared = graph([("p", "D"), ("D", "q"), ("q", "D")])
    assert classify_walk(shared, ["p", "D", "q", "D"]) == WalkClass.TRAIL
    loop = graph([("a", "b"), ("b", "a")])
    assert classify_walk(loop, ["a", "b", "a", "b"]) == WalkClass.WALK
    assert classify_walk(chain, ["a", "c"]) == WalkClass.INVALID
    assert classify_walk(chain, []) == WalkClass.INVALID
    assert classify_walk(chain, ["a", "zz"]) == WalkClass.INVALID


def test_single_mother():
    assert single_mother_violations(graph([("a", "b"), ("a", "c")])) == set()
    diamond = graph([("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert single_mother_violations(diamond) == {"d"}


def test_copies_and_repetitions():
    g = LGraph(
        (
            Vertex("shows", "@s", "shows", True),
            Vertex("get", "@g", "get", True),
            Vertex("man", "man", "the man"),
            Vertex("j1", "john1", "John"),
            Vertex("j2", "john2", "John"),
            Vertex("lone", "lone", "lone"),
        ),
        frozenset({("shows", "man"), ("get", "man")}),
    )
    occ = classify_occurrences(g)
    assert occ["man"] == Occurrence.COPY
    assert occ["j1"] == occ["j2"] == Occurrence.REPETITION
    assert occ["lone"] == Occurrence.SINGLE


def test_dot_output():
    empty = LGraph(())
    assert to_dot(empty) == "digraph L {\n}\n"
    one = graph([("a", "b")])
    assert to_dot(one).count("->") == 1
    multi = graph([("a", "m"), ("b", "m")])
    assert sum(1 for line in to_dot(multi).splitlines() if line.endswith('-> "m";')) == 2
    assert to_dot(multi) == to_dot(graph([("b", "m"), ("a", "m")]))


def test_construction_checks():
    with pytest.raises(MalformedGraph):
        graph([("a", "a")])
    with pytest.raises(MalformedGraph):
        LGraph((Vertex("a", "a"),), frozenset({("a", "b")}))
    with pytest.raises(MalformedGraph):
        LGraph((Vertex("a", "a"), Vertex("a", "b")))
    with pytest.raises(MalformedGraph):
        LGraph.from_json({"edges": []})


def test_json_round_trip_and_natural_order():
    g = graph([("v2", "v10")], names=["v10", "v2"])
    assert [v.vid for v in g.vertices] == ["v2", "v10"]
    assert LGraph.from_json(g.to_json()) == g


def test_cycles_and_merge():
    assert find_cycle(graph([("a", "b"), ("b", "c")])) is None
    cyc = find_cycle(graph([("a", "b"), ("b", "c"), ("c", "a")]))
    assert cyc[0] == cyc[-1] and len(cyc) == 4
    g = LGraph(
        (Vertex("v0", "J", "John"), Vertex("v1", "@1", "despises"), Vertex("v2", "J", "himself")),
        frozenset({("v0", "v1"), ("v1", "v2")}),
    )
    merged, kept = merge_vertices(g, ["v2", "v0"])
    assert kept == "v0"
    assert merged.vertex("v0").form == "John/himself"
    assert merged.edges == {("v0", "v1"), ("v1", "v0")}


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 6))
    names = [f"n{i}" for i in range(n)]
    pairs = [(a, b) for a in names for b in names if a != b]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return graph(edges, names=names)


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_walk_class_hierarchy(g, data):
    names = [v.vid for v in g.vertices]
    seq = data.draw(st.lists(st.sampled_from(names), min_size=1, max_size=6))
    wc = classify_walk(g, seq)
    if wc == WalkClass.INVALID:
        return
    steps = list(zip(seq, seq[1:]))
    assert all(e in g.edges for e in steps)
    if wc == WalkClass.PATH:
        assert len(set(steps)) == len(steps)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_dominance_properties(g):
    names = [v.vid for v in g.vertices]
    acyclic = find_cycle(g) is None
    for a, b in itertools.product(names, repeat=2):
        assert is_ordered(g, a, b) == is_ordered(g, b, a)
        if acyclic:
            assert not dominates(g, a, a)
            for c in names:
                if dominates(g, a, b) and dominates(g, b, c) and a != c:
                    assert dominates(g, a, c)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_single_mother_graphs_have_no_copies(g):
    if not single_mother_violations(g):
        assert Occurrence.COPY not in classify_occurrences(g).values()
