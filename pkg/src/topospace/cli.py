"""Command-line front end: ``topospace <group> <command> ...``.

Exit status 0 on success, 1 when an operation refuses well-formed input
(the error name and its witness go to stderr), 2 for unreadable input or
bad usage. Output depends only on the input, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import derivation as dv
from . import dendrogram as dg
from . import knots as kn
from . import lgraph as lg
from . import monotonicity as mono
from . import space as sp
from . import terms as tm
from .corpus import bundle_examples
from .errors import InputError, TopoError


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def line(self, text: str = "") -> None:
        self.stream.write(text + "\n")

    def json(self, obj) -> None:
        self.stream.write(
            json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
        )

    def raw(self, text: str) -> None:
        self.stream.write(text)


def _fmt(args) -> str:
    return getattr(args, "format", "text")


def _require(args, *allowed) -> None:
    if _fmt(args) not in allowed:
        raise _Usage(f"--format {_fmt(args)} is not available for this command")


class _Usage(Exception):
    pass


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise _Usage(f"{path}: invalid JSON ({exc})") from None


def _matrix_table(m: sp.DistanceMatrix) -> list[str]:
    cells = [[sp.format_decimal(v) for v in row] for row in m.d]
    w = max([len(p) for p in m.points] + [len(c) for row in cells for c in row])
    lines = [" " * w + " " + " ".join(p.rjust(w) for p in m.points)]
    for p, row in zip(m.points, cells):
        lines.append(p.rjust(w) + " " + " ".join(c.rjust(w) for c in row))
    return lines


def _class_text(sc: sp.SpaceClass) -> str:
    if sc.witness is None:
        return f"class: {sc.label}"
    return f"class: {sc.label} ({sc.violated} fails at {', '.join(sc.witness)})"


def _load_graph(path) -> lg.LGraph:
    obj = _load_json(path)
    if isinstance(obj, dict) and "tokens" in obj:
        return dv.sd_to_graph(dv.AnnotatedSD.from_json(obj))
    return lg.LGraph.from_json(obj)


# --- space -----------------------------------------------------------------


def cmd_space_check(args, out: _Out) -> None:
    if args.uniform:
        n, k = args.uniform
        m = sp.make_ultrametric_field(int(n), k)
    elif args.file:
        m = sp.DistanceMatrix.load(args.file)
    else:
        raise _Usage("give a matrix file or --uniform N K")
    if args.closure:
        m = sp.metric_closure(m)
    sc = sp.classify_space(m)
    result = sc.to_json()
    text = [_class_text(sc)]
    if args.closure:
        result["closure"] = m.to_json()
        text += ["closure:"] + _matrix_table(m)
    if args.census:
        c = sp.triangle_census(m)
        result["census"] = c.to_json()
        text.append(
            f"triangles: {c.total} (equilateral {c.equilateral}, "
            f"top-two-equal isosceles {c.isosceles_top_two_equal}, other {c.other})"
        )
    if args.ball:
        x, r = args.ball
        spec = sp.NeighborhoodSpec(x, sp.parse_rational(r), not args.open)
        ball = sorted(sp.closed_neighborhood(m, spec))
        result["ball"] = ball
        kind = "open" if args.open else "closed"
        text.append(f"{kind} ball({x}, {sp.format_rational(spec.radius)}): {{{', '.join(ball)}}}")
    if args.separate:
        x, y = args.separate
        r = sp.are_separated(m, x, y, not args.open)
        result["separatedAt"] = None if r is None else sp.format_rational(r)
        text.append(
            f"separated({x}, {y}): " + ("no" if r is None else f"yes, radius {sp.format_rational(r)}")
        )
    if args.boundary is not None:
        if args.eps is None:
            raise _Usage("--boundary needs --eps")
        subset = [p for p in args.boundary.split(",") if p]
        edge = sorted(sp.boundary(m, subset, args.eps))
        result["boundary"] = edge
        text.append(f"boundary({{{', '.join(subset)}}}, eps={args.eps}): {{{', '.join(edge)}}}")
    if _fmt(args) == "json":
        out.json(result)
    else:
        for t in text:
            out.line(t)


def cmd_space_metrize(args, out: _Out) -> None:
    m = sp.DistanceMatrix.load(args.file)
    raw = sp.set_distance(m, args.x, args.y, args.d)
    closed = sp.metrize_step(m, args.x, args.y, args.d)
    sc = sp.classify_space(closed)
    if _fmt(args) == "json":
        out.json({"matrix": closed.to_json(), "preClosure": raw.to_json(), **sc.to_json()})
        return
    for t in _matrix_table(closed):
        out.line(t)
    out.line(_class_text(sc))


# --- trees -----------------------------------------------------------------


def _tree_lines(node: dg.Node, depth: int = 0) -> list[str]:
    pad = "  " * depth
    if node.is_leaf:
        return [pad + node.label]
    lines = [f"{pad}{node.name} h={sp.format_rational(node.height)}"]
    for c in node.children:
        lines += _tree_lines(c, depth + 1)
    return lines


def cmd_tree_build(args, out: _Out) -> None:
    m = sp.DistanceMatrix.load(args.file)
    t = dg.build_dendrogram(m)
    heights = {k: sp.format_rational(v) for k, v in dg.leaf_heights(t).items()}
    dom = None
    if args.dominates:
        a, b = args.dominates
        dom = dg.roberts_dominates(t, a, b)
    if _fmt(args) == "dot":
        out.raw(t.to_dot())
    elif _fmt(args) == "json":
        obj = {"tree": t.to_json(), "heights": heights}
        if dom is not None:
            obj["dominates"] = dom
        out.json(obj)
    else:
        for line in _tree_lines(t.root):
            out.line(line)
        if dom is not None:
            out.line(f"{args.dominates[0]} dominates {args.dominates[1]}: {'yes' if dom else 'no'}")


def cmd_tree_xbar(args, out: _Out) -> None:
    _require(args, "text", "json")
    m = dg.xbar_matrix(args.i)
    if _fmt(args) == "json":
        out.json(m.to_json())
    else:
        for t in _matrix_table(m):
            out.line(t)


def cmd_tree_cophenetic(args, out: _Out) -> None:
    _require(args, "text", "json")
    m = dg.cophenetic_matrix(dg.Dendrogram.load(args.file))
    if _fmt(args) == "json":
        out.json(m.to_json())
    else:
        for t in _matrix_table(m):
            out.line(t)


# --- sentences and derivations ---------------------------------------------


def cmd_sd_analyze(args, out: _Out) -> None:
    sds = [dv.AnnotatedSD.load(f) for f in args.files]
    reports = [dv.analyze_topology(sd) for sd in sds]
    if _fmt(args) == "dot":
        for i, sd in enumerate(sds):
            out.raw(lg.to_dot(dv.sd_to_graph(sd), f"sd{i}"))
        return
    rows = list(zip(args.files, reports))
    if args.combine:
        rows.append(("combined", dv.combine_reports(reports)))
    if _fmt(args) == "json":
        out.json([{"file": f, **r.to_json()} for f, r in rows])
        return
    for f, r in rows:
        out.line(f"{f}: foldings={r.foldings} intersections={r.total_intersections} | {r.classification}")


def cmd_derive_run(args, out: _Out) -> None:
    script = dv.load_script(args.script)
    if args.sd:
        g = dv.sd_to_graph(dv.AnnotatedSD.load(args.sd))
    elif args.graph:
        g = lg.LGraph.load(args.graph)
    else:
        g = lg.LGraph(())
    if args.field:
        field = sp.DistanceMatrix.load(args.field)
    else:
        labels = [v.vid for v in g.vertices]
        extra = max(0, args.points - len(labels))
        labels += [f"x{i}" for i in range(len(labels), len(labels) + extra)]
        field = sp.make_ultrametric_field(len(labels), args.k, labels)
    term = tm.load_term(args.term) if args.term else None
    snaps = dv.apply_derivation(script, field, g, term)
    if _fmt(args) == "dot":
        out.raw(dv.snapshots_to_dot(snaps))
    elif _fmt(args) == "json":
        out.json([s.to_json() for s in snaps])
    else:
        for s in snaps:
            out.line(f"step {s.step} ({s.op or 'initial'}): {s.space_class.label}")
            if s.term is not None:
                out.line(f"  term: {s.term}")
        for t in _matrix_table(snaps[-1].matrix):
            out.line(t)


def cmd_derive_substitute(args, out: _Out) -> None:
    _require(args, "text", "json")
    k, l = tm.load_term(args.k), tm.load_term(args.l)
    result = tm.substitute(k, args.slot, l)
    if _fmt(args) == "json":
        out.json({"term": str(result)})
    else:
        out.line(str(result))


def cmd_derive_relations(args, out: _Out) -> None:
    _require(args, "text", "json")
    rs = tm.term_relations(tm.load_term(args.term), include_slots=not args.no_slots)
    if _fmt(args) == "json":
        out.json(rs.to_json())
    else:
        for r, x, y in sorted(rs.relations):
            out.line(f"{r}({x}, {y})")


def cmd_derive_homomorphism(args, out: _Out) -> None:
    _require(args, "text", "json")
    src = tm.RelationSet.load(args.src)
    dst = tm.RelationSet.load(args.dst)
    f = _load_json(args.map) if args.map else None
    ok = tm.check_homomorphism(src, dst, f)
    if _fmt(args) == "json":
        out.json({"homomorphism": ok})
    else:
        out.line(f"homomorphism: {'yes' if ok else 'no'}")


# --- graphs ----------------------------------------------------------------


def cmd_graph_audit(args, out: _Out) -> None:
    g = _load_graph(args.file)
    if args.collapse:
        labels = [v.vid for v in g.vertices]
        field = sp.make_ultrametric_field(len(labels), 1, labels)
        g, _ = dv.collapse_chain(g, field, args.collapse)
    if _fmt(args) == "dot":
        out.raw(lg.to_dot(g))
        return
    occ = lg.classify_occurrences(g)
    cycle = lg.find_cycle(g)
    result = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "multipleMothers": sorted(lg.single_mother_violations(g)),
        "occurrences": {v: c.value for v, c in sorted(occ.items())},
        "cycle": cycle,
    }
    text = [
        f"vertices: {len(g.vertices)}  edges: {len(g.edges)}",
        "multiple mothers: " + (", ".join(result["multipleMothers"]) or "none"),
    ]
    for v in g.vertices:
        text.append(f"  {v.vid} {v.form!r} [{v.address}] {occ[v.vid].value}")
    text.append("cycle: " + (" -> ".join(cycle) if cycle else "none"))
    if args.walk:
        seq = [s for s in args.walk.split(",") if s]
        wc = lg.classify_walk(g, seq)
        result["walk"] = wc.value
        text.append(f"walk {' '.join(seq)}: {wc.value}")
    if args.dominates:
        a, b = args.dominates
        rel = {
            "immediately": lg.immediately_dominates(g, a, b),
            "dominates": lg.dominates(g, a, b),
            "ordered": lg.is_ordered(g, a, b),
        }
        result["relation"] = rel
        text.append(
            f"{a} -> {b}: immediately {rel['immediately']}, dominates {rel['dominates']}, "
            f"ordered {rel['ordered']}"
        )
    if _fmt(args) == "json":
        out.json(result)
    else:
        for t in text:
            out.line(t)


# --- monotonicity ----------------------------------------------------------


def _load_plain(args):
    obj = _load_json(args.file)
    if args.history:
        hist = mono.parse_history(obj)
        return hist, mono.history_to_tree(hist)
    return None, mono.parse_tree(obj)


def cmd_mono_segment(args, out: _Out) -> None:
    _require(args, "text", "json")
    hist, tree = _load_plain(args)
    seg = mono.segment_max_monotonic(tree)
    fs = mono.is_fs_describable(tree)
    if _fmt(args) == "json":
        obj = {"fsDescribable": fs, **seg.to_json()}
        if hist is not None:
            obj["steps"] = [g.value for g in mono.classify_steps(hist)]
        out.json(obj)
        return
    if hist is not None:
        out.line("steps: " + " ".join(g.value for g in mono.classify_steps(hist)))
    out.line(f"finite-state describable: {'yes' if fs else 'no'}")
    out.line(f"segments: {len(seg.segments)}")
    for s in seg.segments:
        out.line(f"  {mono.format_path(s.path)}: {mono.bracketing(s.tree)}")
    out.line("joints: " + (", ".join(mono.format_path(p) for p in seg.joints) or "none"))


def cmd_mono_bracket(args, out: _Out) -> None:
    _require(args, "text", "json")
    _, tree = _load_plain(args)
    b = mono.bracketing(tree)
    if _fmt(args) == "json":
        out.json({"bracketing": b})
    else:
        out.line(b)


# --- knots -----------------------------------------------------------------


def cmd_knot_moves(args, out: _Out) -> None:
    _require(args, "text", "json")
    d = kn.KnotDiagram.load(args.file)
    moves = kn.enumerate_applicable_moves(d)
    if args.apply is not None:
        if not 0 <= args.apply < len(moves):
            raise _Usage(f"--apply takes a move number 0..{len(moves) - 1}")
        mv = moves[args.apply]
        res = kn.apply_rmove(d, mv)
        if _fmt(args) == "json":
            out.json({"move": mv.to_json(), "result": str(res)})
        else:
            out.line(f"{mv}: {res}")
        return
    if _fmt(args) == "json":
        out.json([m.to_json() for m in moves])
    else:
        for i, m in enumerate(moves):
            out.line(f"{i}: {m}")


def cmd_knot_reduce(args, out: _Out) -> None:
    _require(args, "text", "json")
    d = kn.KnotDiagram.load(args.file)
    seq = kn.reduce_to_unknot(d, args.max_moves, args.max_crossings, not args.no_prune)
    if _fmt(args) == "json":
        out.json({"moves": None if seq is None else [m.to_json() for m in seq]})
        return
    if seq is None:
        out.line(
            f"no reduction within {args.max_moves} moves and {args.max_crossings} crossings"
        )
        return
    out.line(f"reduced in {len(seq)} move{'s' if len(seq) != 1 else ''}")
    cur = d
    for m in seq:
        cur = kn.apply_rmove(cur, m)
        out.line(f"  {m} -> {cur or '(empty)'}")


def cmd_knot_tricolor(args, out: _Out) -> None:
    _require(args, "text", "json")
    d = kn.KnotDiagram.load(args.file)
    obj = {
        "crossings": d.n_crossings,
        "tricolorable": kn.is_tricolorable(d),
        "writhe": kn.writhe(d),
        "lackenbyBound": str(kn.lackenby_bound(d.n_crossings)),
    }
    if _fmt(args) == "json":
        out.json(obj)
    else:
        out.line(f"crossings: {obj['crossings']}")
        out.line(f"tricolorable: {'yes' if obj['tricolorable'] else 'no'}")
        out.line(f"writhe: {obj['writhe']}")
        out.line(f"move bound for unknotting: {obj['lackenbyBound']}")


def cmd_knot_collapse_demo(args, out: _Out) -> None:
    d = kn.KnotDiagram.load(args.file)
    a, b = args.arcs
    kn.attempt_collapse(d, a, b)


def cmd_bundle(args, out: _Out) -> None:
    for p in bundle_examples(args.out):
        out.line(p)


# --- parser ----------------------------------------------------------------


def _add_format(p, *choices):
    p.add_argument("--format", choices=choices or ("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="topospace",
        description="Distance spaces, L-graphs, derivations and knot diagrams.",
    )
    groups = ap.add_subparsers(dest="group", required=True, metavar="GROUP")

    space = groups.add_parser("space", help="distance matrices").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    p = space.add_parser("check", help="classify a matrix and query it")
    p.add_argument("file", nargs="?")
    p.add_argument("--uniform", nargs=2, metavar=("N", "K"), help="constant field instead of a file")
    p.add_argument("--census", action="store_true", help="count triangle shapes")
    p.add_argument("--closure", action="store_true", help="close under shortest routes first")
    p.add_argument("--ball", nargs=2, metavar=("X", "R"))
    p.add_argument("--open", action="store_true", help="open balls for --ball/--separate")
    p.add_argument("--separate", nargs=2, metavar=("X", "Y"))
    p.add_argument("--boundary", metavar="A,B,...")
    p.add_argument("--eps")
    _add_format(p)
    p.set_defaults(func=cmd_space_check)
    p = space.add_parser("metrize", help="draw two points closer and re-close")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("d")
    _add_format(p)
    p.set_defaults(func=cmd_space_metrize)

    tree = groups.add_parser("tree", help="dendrograms").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    p = tree.add_parser("build", help="dendrogram of an ultrametric matrix")
    p.add_argument("file")
    p.add_argument("--dominates", nargs=2, metavar=("A", "B"))
    _add_format(p, "text", "json", "dot")
    p.set_defaults(func=cmd_tree_build)
    p = tree.add_parser("xbar", help="specifier/head/complement matrix")
    p.add_argument("i", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_tree_xbar)
    p = tree.add_parser("cophenetic", help="matrix of a dendrogram")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(func=cmd_tree_cophenetic)

    sd = groups.add_parser("sd", help="annotated sentences").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    p = sd.add_parser("analyze", help="foldings and self-intersections")
    p.add_argument("files", nargs="+")
    p.add_argument("--combine", action="store_true", help="also sum the reports")
    _add_format(p, "text", "json", "dot")
    p.set_defaults(func=cmd_sd_analyze)

    derive = groups.add_parser("derive", help="derivations, terms, relations").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    p = derive.add_parser("run", help="run a derivation script")
    p.add_argument("script")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--sd", help="annotated sentence supplying the graph")
    src.add_argument("--graph", help="L-graph JSON")
    p.add_argument("--field", help="initial matrix; default is a constant field over the vertices")
    p.add_argument("--k", default="2", help="distance of the default field")
    p.add_argument("--points", type=int, default=0, help="pad the default field to this many points")
    p.add_argument("--term", help="bracketed term for substitute steps")
    _add_format(p, "text", "json", "dot")
    p.set_defaults(func=cmd_derive_run)
    p = derive.add_parser("substitute", help="plug a term into a slot")
    p.add_argument("k")
    p.add_argument("slot")
    p.add_argument("l")
    _add_format(p)
    p.set_defaults(func=cmd_derive_substitute)
    p = derive.add_parser("relations", help="dominance and precedence of a term")
    p.add_argument("term")
    p.add_argument("--no-slots", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_derive_relations)
    p = derive.add_parser("homomorphism", help="check a relation-preserving map")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--map", help="JSON object; identity when omitted")
    _add_format(p)
    p.set_defaults(func=cmd_derive_homomorphism)

    graph = groups.add_parser("graph", help="L-graphs").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    p = graph.add_parser("audit", help="mothers, copies, walks")
    p.add_argument("file", help="L-graph or annotated sentence JSON")
    p.add_argument("--collapse", metavar="ADDRESS", help="collapse a chain first")
    p.add_argument("--walk", metavar="V1,V2,...")
    p.add_argument("--dominates", nargs=2, metavar=("A", "B"))
    _add_format(p, "text", "json", "dot")
    p.set_defaults(func=cmd_graph_audit)

    m = groups.add_parser("mono", help="monotonic growth").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    for name, func, text in (
        ("segment", cmd_mono_segment, "maximal finite-state segments"),
        ("bracket", cmd_mono_bracket, "bracket string of a tree"),
    ):
        p = m.add_parser(name, help=text)
        p.add_argument("file")
        p.add_argument("--history", action="store_true", help="file is a growth history")
        _add_format(p)
        p.set_defaults(func=func)

    knot = groups.add_parser("knot", help="knot diagrams").add_subparsers(
        dest="cmd", required=True, metavar="COMMAND"
    )
    p = knot.add_parser("moves", help="list applicable moves")
    p.add_argument("file")
    p.add_argument("--apply", type=int, metavar="N", help="apply move number N")
    _add_format(p)
    p.set_defaults(func=cmd_knot_moves)
    p = knot.add_parser("reduce", help="search for an unknotting sequence")
    p.add_argument("file")
    p.add_argument("--max-moves", type=int, default=12)
    p.add_argument("--max-crossings", type=int, default=8)
    p.add_argument("--no-prune", action="store_true", help="skip the tricolorability prune")
    _add_format(p)
    p.set_defaults(func=cmd_knot_reduce)
    p = knot.add_parser("tricolor", help="tricolorability and writhe")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(func=cmd_knot_tricolor)
    p = knot.add_parser("collapse-demo", help="try to identify two arcs")
    p.add_argument("file")
    p.add_argument("--arcs", nargs=2, type=int, default=(0, 1), metavar=("A", "B"))
    _add_format(p)
    p.set_defaults(func=cmd_knot_collapse_demo)

    p = groups.add_parser("bundle", help="write the example corpus")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_bundle)
    return ap


def _report(err: TopoError, stream) -> None:
    where = f" (step {err.step})" if err.step is not None else ""
    stream.write(f"{err.name}{where}: {err}\n")
    if err.witness is not None:
        w = err.witness
        if isinstance(w, (tuple, list)):
            w = ", ".join(str(x) for x in w)
        stream.write(f"witness: {w}\n")


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    # buffer so errors never leave partial output behind
    buf = []

    class _Buf:
        def write(self, s):
            buf.append(s)

    try:
        args.func(args, _Out(_Buf()))
    except InputError as err:
        _report(err, stderr)
        return 2
    except TopoError as err:
        _report(err, stderr)
        return 1
    except _Usage as err:
        stderr.write(f"usage error: {err}\n")
        return 2
    except (ValueError, KeyError, TypeError) as err:
        stderr.write(f"InvalidInput: {err}\n")
        return 2
    except OSError as err:
        stderr.write(f"IoError: {err}\n")
        return 2
    stdout.write("".join(buf))
    return 0


if __name__ == "__main__":
    sys.exit(main())
