import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topospace.corpus import RELATIONS_30A, RELATIONS_30B, SWAP_30, TERM_13C, TERMS_13
from topospace.errors import MalformedTerm, PartialMapping, RootIdentityViolation, SlotResolutionError
from topospace.terms import RelationSet, Term, check_homomorphism, substitute, term_relations

K = Term.parse(TERMS_13["term_13a.txt"])
L = Term.parse(TERMS_13["term_13b.txt"])


def test_parse_and_print_round_trip():
    for text in (TERMS_13["term_13a.txt"], TERMS_13["term_13b.txt"], TERM_13C):
        assert str(Term.parse(text)) == text


def test_parse_errors():
    for bad in ("", "John", "[", "[]", "[K John", "[K] extra", "[[K]]"):
        with pytest.raises(MalformedTerm):
            Term.parse(bad)


def test_substitution_builds_the_embedded_clause():
    assert str(substitute(K, "L", L)) == TERM_13C


def test_substitution_root_mismatch():
    with pytest.raises(RootIdentityViolation):
        substitute(K, "L", Term.parse("[Lp that Mary left]"))


def test_substitution_slot_counting():
    with pytest.raises(SlotResolutionError):
        substitute(K, "Q", Term.parse("[Q x]"))
    two = Term.parse("[K [L] [L]]")
    with pytest.raises(SlotResolutionError):
        substitute(two, "L", L)


def test_substitution_at_root_slot():
    assert substitute(Term("L"), "L", L) == L


def test_result_has_one_slot_fewer():
    assert len(K.slots()) == 1
    assert len(substitute(K, "L", L).slots()) == 0


def test_passive_as_extension():
    a, b = RelationSet.from_json(RELATIONS_30A), RelationSet.from_json(RELATIONS_30B)
    assert check_homomorphism(a, b)
    assert not check_homomorphism(a, b, SWAP_30)
    assert check_homomorphism(RelationSet(frozenset()), b)


def test_partial_map_refused():
    a, b = RelationSet.from_json(RELATIONS_30A), RelationSet.from_json(RELATIONS_30B)
    with pytest.raises(PartialMapping):
        check_homomorphism(a, b, {"e": "e"})


def test_universe_is_checked():
    with pytest.raises(MalformedTerm):
        RelationSet.from_json({"universe": ["a"], "relations": [["r", "a", "b"]]})


def test_relations_of_a_term():
    rs = term_relations(Term.parse("[K John [M wished]]"))
    assert ("dominates", "r:K", "r.0:John") in rs.relations
    assert ("precedes", "r.0:John", "r.1:M") in rs.relations
    assert ("dominates", "r.1:M", "r.1.0:wished") in rs.relations


# substitution keeps every relation among the non-slot nodes of the host

words = st.sampled_from(["a", "b", "c", "d"])
labels = st.sampled_from(["K", "M", "N", "P"])


@st.composite
def hosts(draw, depth=0):
    kids = []
    for _ in range(draw(st.integers(1, 3))):
        choice = draw(st.integers(0, 2)) if depth < 3 else 0
        kids.append(draw(words) if choice == 0 else draw(hosts(depth + 1)) if choice == 1 else None)
    kids = [k for k in kids if k is not None] or [draw(words)]
    return Term(draw(labels), tuple(kids))


@settings(max_examples=100, deadline=None)
@given(hosts(), st.integers(0, 50), st.lists(words, min_size=1, max_size=3))
def test_substitution_preserves_relations(host, where, filler):
    # plant exactly one slot "L" somewhere in the host
    nodes = []

    def collect(t, path):
        nodes.append(path)
        for i, c in enumerate(t.children):
            if isinstance(c, Term):
                collect(c, path + (i,))

    collect(host, ())
    path = nodes[where % len(nodes)]

    def plant(t, p):
        if not p:
            return Term(t.label, t.children + (Term("L"),))
        kids = list(t.children)
        kids[p[0]] = plant(kids[p[0]], p[1:])
        return Term(t.label, tuple(kids))

    k = plant(host, path)
    l = Term("L", tuple(filler))
    before = term_relations(k, include_slots=False)
    after = term_relations(substitute(k, "L", l))
    assert check_homomorphism(before, after)
