import random
from fractions import Fraction as F

import pytest

from oracles import lca_height, random_dendrogram, ultrametric_ok, rows
from topospace.corpus import roberts_matrix
from topospace.dendrogram import (
    Dendrogram,
    build_dendrogram,
    cluster,
    cophenetic_matrix,
    leaf,
    leaf_heights,
    roberts_dominates,
    xbar_matrix,
)
from topospace.errors import MalformedDendrogram, NotUltrametric, UnknownNode
from topospace.space import DistanceMatrix, SpaceKind, classify_space, make_ultrametric_field


def test_constant_field_gives_one_flat_node():
    t = build_dendrogram(make_ultrametric_field(3, 2))
    assert t.root.height == 2
    assert [c.label for c in t.root.children] == ["a", "b", "c"]


def test_xbar_tree_shape():
    t = build_dendrogram(xbar_matrix(0))
    assert t.root.height == 2
    assert {c.name for c in t.root.children} == {"Spec", "[X YP]"}
    assert t.node("[X YP]").height == 1
    assert leaf_heights(t) == {
        "[Spec X YP]": 2, "[X YP]": 1, "Spec": 0, "X": 0, "YP": 0,
    }


def test_non_ultrametric_refused_with_witness():
    m = DistanceMatrix.from_pairs("abc", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): F(3, 2)})
    with pytest.raises(NotUltrametric) as ei:
        build_dendrogram(m)
    assert set(ei.value.witness) == {"a", "b", "c"}


def test_xbar_values():
    assert [v for _, _, v in xbar_matrix(0).pairs()] == [2, 2, 1]
    assert [v for _, _, v in xbar_matrix(5).pairs()] == [7, 7, 6]
    for i in range(10):
        assert classify_space(xbar_matrix(i)).kind == SpaceKind.ULTRAMETRIC
    with pytest.raises(ValueError):
        xbar_matrix(-1)


def test_cophenetic_examples():
    single = Dendrogram(leaf("x"))
    assert cophenetic_matrix(single).points == ("x",)
    assert cophenetic_matrix(build_dendrogram(xbar_matrix(0))) == xbar_matrix(0)


def test_roberts_domination():
    t = build_dendrogram(xbar_matrix(0))
    for n in t.nodes():
        assert roberts_dominates(t, t.root.name, n.name)
        assert roberts_dominates(t, n.name, n.name)
    assert not roberts_dominates(t, "X", t.root.name)
    with pytest.raises(UnknownNode):
        roberts_dominates(t, "Q", "X")


def test_subject_and_object_dominate_each_other():
    t = build_dendrogram(roberts_matrix())
    subj, obj = "[man the]", "[a dog]"
    assert t.node(subj).height == t.node(obj).height == 1
    assert roberts_dominates(t, subj, obj)
    assert roberts_dominates(t, obj, subj)
    # a leaf cannot reach up past its own parent's subtree
    assert not roberts_dominates(t, "the", "dog")


def test_malformed_trees():
    with pytest.raises(MalformedDendrogram):
        Dendrogram(cluster(1, leaf("a")))
    with pytest.raises(MalformedDendrogram):
        Dendrogram(cluster(1, cluster(2, leaf("a"), leaf("b")), leaf("c")))
    with pytest.raises(MalformedDendrogram):
        Dendrogram(cluster(1, leaf("a"), leaf("a")))
    with pytest.raises(MalformedDendrogram):
        Dendrogram.from_json({"height": "x", "children": []})


def test_json_and_dot_are_stable():
    t = build_dendrogram(xbar_matrix(1))
    assert Dendrogram.from_json(t.to_json()).same_tree(t)
    assert t.to_dot() == build_dendrogram(xbar_matrix(1)).to_dot()


@pytest.mark.parametrize("seed", range(60))
def test_round_trips(seed):
    rng = random.Random(seed)
    t = random_dendrogram(rng, rng.randint(3, 12))
    m = cophenetic_matrix(t)
    for a in m.points:
        for b in m.points:
            if a != b:
                assert m.dist(a, b) == lca_height(t.root, a, b)
    assert ultrametric_ok(rows(m))
    back = build_dendrogram(m)
    assert back.same_tree(t)
    assert cophenetic_matrix(back) == m
