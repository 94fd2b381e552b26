"""Acceptance criteria 1-10.

Each test records one ``PASS criterion N`` or ``FAIL criterion N`` line.
Under pytest the lines are repeated in the terminal summary; run this file
directly (``python3 tests/test_acceptance.py``) to get only the ten lines.
"""

import contextlib
import itertools
import json
import os
import random
import sys
from fractions import Fraction as F

sys.path.insert(0, os.path.dirname(__file__))

from oracles import oracle_census, random_dendrogram, random_matrix, rows, triangle_ok  # noqa: E402
from topospace.corpus import bundle_files  # noqa: E402
from topospace.dendrogram import build_dendrogram, cophenetic_matrix, xbar_matrix  # noqa: E402
from topospace.derivation import (  # noqa: E402
    AnnotatedSD,
    Collapse,
    Metrize,
    analyze_topology,
    apply_derivation,
    sd_to_graph,
)
from topospace.errors import IncompatibleWithKnotTheory, RootIdentityViolation  # noqa: E402
from topospace.knots import (  # noqa: E402
    KnotDiagram,
    apply_rmove,
    attempt_collapse,
    enumerate_applicable_moves,
    is_tricolorable,
    reduce_to_unknot,
)
from topospace.lgraph import WalkClass, classify_walk  # noqa: E402
from topospace.monotonicity import bracketing, is_fs_describable, parse_tree, segment_max_monotonic  # noqa: E402
from topospace.space import SpaceKind, classify_space, make_ultrametric_field, metric_closure, triangle_census  # noqa: E402
from topospace.terms import RelationSet, Term, check_homomorphism, substitute  # noqa: E402

RESULTS: list[str] = []
FILES = bundle_files()


def load(name):
    return json.loads(FILES[name])


@contextlib.contextmanager
def criterion(n):
    try:
        yield
    except BaseException:
        RESULTS.append(f"FAIL criterion {n}")
        print(RESULTS[-1])
        raise
    RESULTS.append(f"PASS criterion {n}")
    print(RESULTS[-1])


def random_trees(count=120, seed=2024):
    rng = random.Random(seed)
    return [random_dendrogram(rng, rng.randint(3, 12)) for _ in range(count)]


def test_criterion_1_xbar_ultrametric():
    with criterion(1):
        for i in (0, 1, 5):
            m = xbar_matrix(i)
            assert classify_space(m).kind == SpaceKind.ULTRAMETRIC
            c = triangle_census(m)
            assert (c.equilateral, c.isosceles_top_two_equal, c.other) == (0, 1, 0)
            assert m.dist("Spec", "X") == m.dist("Spec", "YP") == i + 2
            assert m.dist("X", "YP") == i + 1


def test_criterion_2_table_21():
    with criterion(2):
        sds = [AnnotatedSD.from_json(load(f"sd_21{c}.json")) for c in "abcd"]
        assert len([n for n in FILES if n.startswith("sd_21")]) == 4
        got = [analyze_topology(sd) for sd in sds]
        assert [(r.foldings, r.total_intersections) for r in got] == [(0, 0), (1, 0), (1, 1), (0, 6)]
        assert got[2].self_intersections == {"John": 1}
        assert got[3].self_intersections == {"man": 3, "prize": 3}


def test_criterion_3_isosceles():
    with criterion(3):
        violations = 0
        trees = random_trees()
        assert len(trees) >= 100
        for t in trees:
            d = rows(cophenetic_matrix(t))
            for i, j, k in itertools.combinations(range(len(d)), 3):
                sides = sorted((d[i][j], d[j][k], d[i][k]))
                violations += sides[1] != sides[2]
            assert oracle_census(d)[2] == 0
        assert violations == 0


def test_criterion_4_round_trips():
    with criterion(4):
        trees = random_trees()
        for t in trees:
            m = cophenetic_matrix(t)
            back = build_dendrogram(m)
            assert back.same_tree(t)
            assert cophenetic_matrix(back) == m


def test_criterion_5_metrization_narrative():
    with criterion(5):
        g = sd_to_graph(AnnotatedSD.from_json(load("sd_21b.json")))
        labels = [v.vid for v in g.vertices] + ["x3", "x4", "x5"]
        field = make_ultrametric_field(6, 2, labels)
        script = (Metrize("v0", "v1", F(1, 2)), Metrize("v1", "v2", F(7, 10)), Collapse("John"))
        snaps = apply_derivation(script, field, g)
        kinds = [s.space_class.kind for s in snaps]
        assert kinds[1] == SpaceKind.ULTRAMETRIC
        assert kinds[2] == SpaceKind.METRIC
        assert snaps[2].matrix.dist("v0", "v2") == F(6, 5)
        m = snaps[3].matrix
        assert any(m.dist(a, b) == 0 for a in m.points for b in m.points if a != b)
        walk = ["v0", "v1", "v0"]
        assert classify_walk(snaps[2].graph, walk) == WalkClass.INVALID
        assert classify_walk(snaps[3].graph, walk) == WalkClass.TRAIL


def test_criterion_6_metric_closure():
    with criterion(6):
        rng = random.Random(7)
        for _ in range(150):
            m = random_matrix(rng, rng.randint(1, 10))
            c = metric_closure(m)
            assert triangle_ok(rows(c))
            assert metric_closure(c) == c
            assert all(c.d[i][j] <= m.d[i][j] for i in range(len(m)) for j in range(len(m)))


def test_criterion_7_substitution():
    with criterion(7):
        k = Term.parse(FILES["term_13a.txt"])
        l = Term.parse(FILES["term_13b.txt"])
        assert str(substitute(k, "L", l)) == "[K John [M wished [L that Mary would go out with him]]]"
        try:
            substitute(k, "L", Term("Lp", l.children))
        except RootIdentityViolation:
            pass
        else:
            raise AssertionError("root mismatch accepted")


def test_criterion_8_monotonicity():
    with criterion(8):
        t26 = parse_tree(load("tree_26.json"))
        subj = parse_tree(load("tree_subject.json"))
        assert bracketing(t26) == "[who [shows [he [deserves [it]]]]]"
        assert is_fs_describable(t26) and not is_fs_describable(subj)
        assert len(segment_max_monotonic(t26).segments) == 1
        assert len(segment_max_monotonic(subj).segments) == 2


def test_criterion_9_knots():
    with criterion(9):
        corpus = {n[:-6]: KnotDiagram.parse(c) for n, c in FILES.items() if n.endswith(".gauss")}
        bad = 0
        for d in corpus.values():
            if d.n_crossings > 6:
                continue
            before = is_tricolorable(d)
            for mv in enumerate_applicable_moves(d):
                bad += is_tricolorable(apply_rmove(d, mv)) != before
        assert bad == 0
        assert is_tricolorable(corpus["trefoil"])
        assert not any(is_tricolorable(corpus[n]) for n in ("unknot", "twist1", "twist2"))
        seq = reduce_to_unknot(corpus["twist2"], 12, 8)
        assert seq is not None and len(seq) == 2
        assert reduce_to_unknot(corpus["trefoil"], 12, 8) is None
        for d in corpus.values():
            for a, b in ((0, 1), (1, 2)):
                try:
                    attempt_collapse(d, a, b)
                except IncompatibleWithKnotTheory:
                    continue
                raise AssertionError("collapse accepted")


def test_criterion_10_homomorphism():
    with criterion(10):
        a = RelationSet.from_json(load("relations_30a.json"))
        b = RelationSet.from_json(load("relations_30b.json"))
        assert check_homomorphism(a, b) is True
        assert check_homomorphism(a, b, load("map_30_swap.json")) is False


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(
        ((n, f) for n, f in globals().items() if n.startswith("test_criterion_")),
        key=lambda kv: int(kv[0].split("_")[2]),
    ):
        try:
            fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
