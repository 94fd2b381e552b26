import pytest

from topospace.corpus import KNOTS
from topospace.errors import GaussParseError, IncompatibleWithKnotTheory, InvalidDiagram, MoveNotApplicable
from topospace.knots import (
    KnotDiagram,
    RMove,
    apply_rmove,
    arcs,
    attempt_collapse,
    enumerate_applicable_moves,
    inverse_move,
    is_tricolorable,
    lackenby_bound,
    reduce_to_unknot,
    writhe,
)

D = {name.split(".")[0]: KnotDiagram.parse(code) for name, code in KNOTS.items()}
DELTA = {"R1_remove": -1, "R1_add": 1, "R2_remove": -2, "R2_add": 2, "R3": 0}


def test_parser():
    assert str(D["trefoil"]) == "O1+ U2+ O3+ U1+ O2+ U3+"
    with pytest.raises(GaussParseError) as ei:
        KnotDiagram.parse("O1+ X2+")
    assert ei.value.position == 4
    with pytest.raises(GaussParseError):
        KnotDiagram.parse("O1+ O1+")
    with pytest.raises(GaussParseError):
        KnotDiagram.parse("O1+ U1-")
    with pytest.raises(InvalidDiagram):
        KnotDiagram([4 | 2])


def test_circular_equality():
    t = D["trefoil"]
    assert t == KnotDiagram.parse("U2+ O3+ U1+ O2+ U3+ O1+")
    assert t == KnotDiagram.parse("O7+ U5+ O2+ U7+ O5+ U2+")
    assert t != KnotDiagram.parse("O1- U2- O3- U1- O2- U3-")
    assert len({t, KnotDiagram.parse("U3+ O1+ U2+ O3+ U1+ O2+")}) == 1


def test_r1_round_trip():
    e = apply_rmove(D["unknot"], RMove("R1_add", (0,), 1, True))
    assert e.n_crossings == 1
    assert apply_rmove(e, RMove("R1_remove", (0,))) == D["unknot"]


def test_r2_round_trip():
    mv = RMove("R2_add", (1, 3), -1, False, True)
    e = apply_rmove(D["trefoil"], mv)
    assert e.n_crossings == 5
    assert apply_rmove(e, inverse_move(D["trefoil"], mv)) == D["trefoil"]


def test_r3_site():
    moves = [m for m in enumerate_applicable_moves(D["slide"]) if m.kind == "R3"]
    assert [m.site for m in moves] == [(0, 2, 4), (1, 5, 3)]
    out = apply_rmove(D["slide"], moves[0])
    assert str(out) == "O2- O1+ U1+ O3+ U3+ U2-"
    assert apply_rmove(out, inverse_move(D["slide"], moves[0])) == D["slide"]


def test_trefoil_is_reduced():
    kinds = {m.kind for m in enumerate_applicable_moves(D["trefoil"])}
    assert "R1_remove" not in kinds and "R2_remove" not in kinds
    for m in enumerate_applicable_moves(D["trefoil"]):
        if m.kind == "R3":
            assert apply_rmove(D["trefoil"], m).n_crossings == 3


def test_empty_diagram_moves():
    kinds = {m.kind for m in enumerate_applicable_moves(D["unknot"])}
    assert kinds == {"R1_add", "R2_add"}
    assert RMove("R1_remove", (0,)) in enumerate_applicable_moves(D["twist1"])


def test_inapplicable_moves():
    with pytest.raises(MoveNotApplicable):
        apply_rmove(D["trefoil"], RMove("R1_remove", (0,)))
    with pytest.raises(MoveNotApplicable):
        apply_rmove(D["trefoil"], RMove("R2_remove", (0, 3)))
    with pytest.raises(MoveNotApplicable):
        apply_rmove(D["trefoil"], RMove("R3", (0, 2, 4)))
    with pytest.raises(MoveNotApplicable):
        apply_rmove(D["trefoil"], RMove("R1_add", (9,)))


def test_tricolorability():
    assert is_tricolorable(D["trefoil"])
    for name in ("unknot", "twist1", "twist2", "poke", "figure8"):
        assert not is_tricolorable(D[name]), name
    assert arcs(D["trefoil"])[0] == 3


def test_writhe():
    assert writhe(D["unknot"]) == 0
    assert writhe(D["trefoil"]) == 3
    assert writhe(D["figure8"]) == 0
    e = apply_rmove(D["trefoil"], RMove("R1_add", (2,), -1, False))
    assert writhe(e) == 2


@pytest.mark.parametrize("name", sorted(D))
def test_moves_on_corpus(name):
    d = D[name]
    before = is_tricolorable(d)
    w = writhe(d)
    for m in enumerate_applicable_moves(d):
        e = apply_rmove(d, m)
        assert KnotDiagram(e.code).code == e.code
        assert is_tricolorable(e) == before, (name, str(m))
        assert e.n_crossings - d.n_crossings == DELTA[m.kind]
        if m.kind in ("R2_add", "R2_remove", "R3"):
            assert writhe(e) == w
        if m.kind != "R2_remove":
            assert apply_rmove(e, inverse_move(d, m)) == d


def test_reduction():
    assert reduce_to_unknot(D["unknot"], 3, 3) == []
    seq = reduce_to_unknot(D["twist2"], 12, 8)
    assert [m.kind for m in seq] == ["R1_remove", "R1_remove"]
    assert [m.kind for m in reduce_to_unknot(D["poke"], 4, 4)] == ["R2_remove"]
    assert reduce_to_unknot(D["trefoil"], 12, 8) is None


@pytest.mark.parametrize("name", ["twist1", "twist2", "poke", "trefoil", "slide"])
def test_pruning_agrees_with_exhaustive_search(name):
    pruned = reduce_to_unknot(D[name], 4, 5, prune_invariant=True)
    full = reduce_to_unknot(D[name], 4, 5, prune_invariant=False)
    assert (pruned is None) == (full is None)
    if full is not None:
        assert len(pruned) == len(full)


def test_found_sequences_replay():
    for name in ("twist2", "poke", "slide"):
        seq = reduce_to_unknot(D[name], 6, 6)
        cur = D[name]
        for m in seq:
            cur = apply_rmove(cur, m)
        assert cur.n_crossings == 0


def test_bound_is_astronomical():
    assert lackenby_bound(3) == 708 ** 11
    assert lackenby_bound(3) > 10 ** 30


@pytest.mark.parametrize("name", sorted(D))
def test_collapse_always_refused(name):
    for a, b in ((0, 1), (1, 2), (0, 0)):
        with pytest.raises(IncompatibleWithKnotTheory):
            attempt_collapse(D[name], a, b)
