"""Directed graphs as structural descriptions, multidominance allowed.

Vertices carry an address (the workspace point they point to), a surface form
and a predicative flag. An edge ``(a, b)`` means a immediately dominates b.
"""

from __future__ import annotations

import enum
import json
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MalformedGraph, UnknownVertex


def vid_key(vid: str):
    """Natural order: ``v2`` before ``v10``."""
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", vid)]


@dataclass(frozen=True)
class Vertex:
    vid: str
    address: str
    form: str = ""
    predicative: bool = False


class WalkClass(enum.Enum):
    PATH = "Path"
    TRAIL = "Trail"
    WALK = "Walk"
    INVALID = "Invalid"


class Occurrence(enum.Enum):
    COPY = "Copy"
    REPETITION = "Repetition"
    SINGLE = "Single"


@dataclass(frozen=True)
class LGraph:
    vertices: tuple[Vertex, ...]
    edges: frozenset[tuple[str, str]] = frozenset()
    weights: dict = field(default_factory=dict, compare=False)
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)
    _succ: dict = field(init=False, repr=False, compare=False, hash=False)
    _pred: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(self.vertices, key=lambda v: vid_key(v.vid)))
        by_id = {}
        for v in verts:
            if not v.vid:
                raise MalformedGraph("vertex ids must be non-empty")
            if v.vid in by_id:
                raise MalformedGraph(f"duplicate vertex id {v.vid!r}")
            by_id[v.vid] = v
        edges = frozenset(tuple(e) for e in self.edges)
        succ = {v: [] for v in by_id}
        pred = {v: [] for v in by_id}
        for a, b in sorted(edges):
            if a not in by_id or b not in by_id:
                missing = a if a not in by_id else b
                raise MalformedGraph(f"edge ({a}, {b}) references unknown vertex {missing!r}")
            if a == b:
                raise MalformedGraph(f"self-loop on {a!r}: a vertex cannot immediately dominate itself")
            succ[a].append(b)
            pred[b].append(a)
        for e in self.weights:
            if tuple(e) not in edges:
                raise MalformedGraph(f"weight given for missing edge {tuple(e)}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._by_id[vid]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {vid!r}", witness=vid) from None

    def __contains__(self, vid) -> bool:
        return vid in self._by_id

    def children(self, vid: str) -> list[str]:
        self.vertex(vid)
        return list(self._succ[vid])

    def parents(self, vid: str) -> list[str]:
        self.vertex(vid)
        return list(self._pred[vid])

    def with_address(self, address: str) -> list[Vertex]:
        return [v for v in self.vertices if v.address == address]

    # serialisation

    def to_json(self) -> dict:
        out = {
            "vertices": [
                {"vid": v.vid, "address": v.address, "form": v.form, "predicative": v.predicative}
                for v in self.vertices
            ],
            "edges": [list(e) for e in sorted(self.edges)],
        }
        if self.weights:
            from .space import format_rational

            out["weights"] = [
                [a, b, format_rational(w)] for (a, b), w in sorted(self.weights.items())
            ]
        return out

    @classmethod
    def from_json(cls, obj) -> LGraph:
        if not isinstance(obj, dict) or "vertices" not in obj:
            raise MalformedGraph('graph JSON must be an object with "vertices"')
        verts = []
        for raw in obj["vertices"]:
            if not isinstance(raw, dict) or "vid" not in raw:
                raise MalformedGraph(f"bad vertex entry {raw!r}")
            verts.append(
                Vertex(
                    str(raw["vid"]),
                    str(raw.get("address", raw["vid"])),
                    str(raw.get("form", "")),
                    bool(raw.get("predicative", False)),
                )
            )
        edges = []
        for e in obj.get("edges", []):
            if not isinstance(e, list) or len(e) != 2:
                raise MalformedGraph(f"edges are [from, to] pairs, got {e!r}")
            edges.append((str(e[0]), str(e[1])))
        weights = {}
        if obj.get("weights"):
            from .space import parse_rational

            for a, b, w in obj["weights"]:
                try:
                    weights[(a, b)] = parse_rational(w)
                except ValueError as exc:
                    raise MalformedGraph(str(exc)) from None
        return cls(tuple(verts), frozenset(edges), weights)

    @classmethod
    def load(cls, path) -> LGraph:
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise MalformedGraph(f"{path}: invalid JSON ({exc})") from None


def immediately_dominates(g: LGraph, v1: str, v2: str) -> bool:
    g.vertex(v1), g.vertex(v2)
    return (v1, v2) in g.edges


def dominates(g: LGraph, v1: str, v2: str) -> bool:
    """Transitive domination: a directed walk leads from v1 to v2 (v1 != v2)."""
    g.vertex(v1), g.vertex(v2)
    if v1 == v2:
        return False
    seen = {v1}
    queue = deque([v1])
    while queue:
        u = queue.popleft()
        for w in g._succ[u]:
            if w == v2:
                return True
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def is_ordered(g: LGraph, v1: str, v2: str) -> bool:
    return (
        immediately_dominates(g, v1, v2)
        or immediately_dominates(g, v2, v1)
        or dominates(g, v1, v2)
        or dominates(g, v2, v1)
    )


def classify_walk(g: LGraph, seq: Sequence[str]) -> WalkClass:
    if not seq or any(v not in g for v in seq):
        return WalkClass.INVALID
    steps = list(zip(seq, seq[1:]))
    if any(e not in g.edges for e in steps):
        return WalkClass.INVALID
    if len(set(seq)) == len(seq):
        return WalkClass.PATH
    if len(set(steps)) == len(steps):
        return WalkClass.TRAIL
    return WalkClass.WALK


def single_mother_violations(g: LGraph) -> frozenset[str]:
    """Vertices with two or more mothers."""
    return frozenset(v for v, ps in g._pred.items() if len(ps) >= 2)


def classify_occurrences(g: LGraph) -> dict[str, Occurrence]:
    out = {}
    for v in g.vertices:
        pred_mothers = {p for p in g._pred[v.vid] if g._by_id[p].predicative}
        if len(pred_mothers) >= 2:
            out[v.vid] = Occurrence.COPY
        elif any(w.vid != v.vid and w.form == v.form and w.address != v.address for w in g.vertices):
            out[v.vid] = Occurrence.REPETITION
        else:
            out[v.vid] = Occurrence.SINGLE
    return out


def find_cycle(g: LGraph) -> list[str] | None:
    """A directed cycle as a vertex list (first vertex repeated at the end), or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v.vid: WHITE for v in g.vertices}
    for start in color:
        if color[start] != WHITE:
            continue
        stack = [(start, iter(g._succ[start]))]
        path = [start]
        color[start] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
                path.pop()
            elif color[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(g._succ[nxt])))
                path.append(nxt)
    return None


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LGraph, name: str = "L") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        label = f"{v.form}\\n{v.address}" if v.form else v.address
        shape = ', shape="box"' if v.predicative else ""
        lines.append(f"  {_dot_id(v.vid)} [label={_dot_id(label)}{shape}];")
    for a, b in sorted(g.edges):
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def merge_vertices(g: LGraph, vids: Iterable[str]) -> tuple[LGraph, str]:
    """Fuse vertices into the first of ``vids`` (by id order); edges are redirected.

    Edges that would become self-loops are dropped; parallel edges collapse.
    """
    vids = sorted(set(vids), key=vid_key)
    for v in vids:
        g.vertex(v)
    keep = vids[0]
    gone = set(vids)
    forms = []
    for v in vids:
        f = g.vertex(v).form
        if f not in forms:
            forms.append(f)
    merged = Vertex(
        keep,
        g.vertex(keep).address,
        "/".join(f for f in forms if f),
        any(g.vertex(v).predicative for v in vids),
    )
    rename = {v: keep for v in gone}
    verts = [merged] + [v for v in g.vertices if v.vid not in gone]
    edges = set()
    weights = {}
    for a, b in g.edges:
        na, nb = rename.get(a, a), rename.get(b, b)
        if na != nb:
            edges.add((na, nb))
            if (a, b) in g.weights:
                w = g.weights[(a, b)]
                weights[(na, nb)] = min(w, weights.get((na, nb), w))
    return LGraph(tuple(verts), frozenset(edges), weights), keep
