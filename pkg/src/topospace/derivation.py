"""Annotated sentences, their folding/intersection analysis, and derivations.

An annotated sentence lists its tokens and, per address, the token spans at
which that address occurs. A trailing gap (the unpronounced position a
displaced phrase is interpreted in) counts as one more occurrence, sitting
in a virtual slot just after the last token.

A derivation is a script of steps run against a workspace, i.e. a distance
matrix plus an L-graph: ``metrize`` draws two points closer, ``collapse``
identifies all occurrences of an address, ``substitute`` plugs a term into a
slot of the current term. Every step leaves a snapshot behind.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    MalformedAnnotation,
    MalformedScript,
    NothingToCollapse,
    NotUltrametric,
    SlotResolutionError,
    TopoError,
    UnknownPoint,
)
from .lgraph import LGraph, Vertex, merge_vertices
from .space import (
    DistanceMatrix,
    SpaceClass,
    SpaceKind,
    classify_space,
    format_rational,
    metric_closure,
    metrize_step,
    parse_rational,
    set_distance,
)
from .terms import Term, substitute

GAP = "_"


@dataclass(frozen=True)
class Address:
    id: str
    occurrences: tuple[tuple[int, int], ...] = ()
    gap_final: bool = False

    @property
    def contexts(self) -> int:
        return len(self.occurrences) + int(self.gap_final)


@dataclass(frozen=True)
class AnnotatedSD:
    tokens: tuple[str, ...]
    addresses: tuple[Address, ...] = ()
    bracketing: tuple | None = None
    predicates: frozenset[int] = frozenset()

    def __post_init__(self):
        n = len(self.tokens)
        if n == 0:
            raise MalformedAnnotation("a sentence needs at least one token")
        seen = set()
        gaps = 0
        for a in self.addresses:
            if not a.id:
                raise MalformedAnnotation("address ids must be non-empty")
            if a.id in seen:
                raise MalformedAnnotation(f"address {a.id!r} listed twice")
            seen.add(a.id)
            if a.contexts < 1:
                raise MalformedAnnotation(f"address {a.id!r} has no occurrence")
            for s, e in a.occurrences:
                if not 0 <= s <= e < n:
                    raise MalformedAnnotation(
                        f"span [{s},{e}] of {a.id!r} outside tokens 0..{n - 1}"
                    )
            _check_disjoint(a)
            gaps += a.gap_final
        if gaps > 1:
            raise MalformedAnnotation("only one address may fill the final gap")
        for i in self.predicates:
            if not 0 <= i < n:
                raise MalformedAnnotation(f"predicate index {i} outside tokens")
        object.__setattr__(self, "predicates", frozenset(self.predicates))

    @property
    def has_gap(self) -> bool:
        return any(a.gap_final for a in self.addresses)

    def to_json(self) -> dict:
        out = {
            "tokens": list(self.tokens),
            "addresses": [
                {"id": a.id, "occurrences": [list(s) for s in a.occurrences], "gapFinal": a.gap_final}
                for a in self.addresses
            ],
        }
        if self.bracketing is not None:
            out["bracketing"] = _unfreeze(self.bracketing)
        if self.predicates:
            out["predicates"] = sorted(self.predicates)
        return out

    @classmethod
    def from_json(cls, obj) -> AnnotatedSD:
        if not isinstance(obj, dict) or "tokens" not in obj:
            raise MalformedAnnotation('annotation must be an object with "tokens"')
        try:
            addrs = tuple(
                Address(
                    str(a["id"]),
                    tuple((int(s), int(e)) for s, e in a.get("occurrences", [])),
                    bool(a.get("gapFinal", False)),
                )
                for a in obj.get("addresses", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedAnnotation(f"bad address entry: {exc}") from None
        br = obj.get("bracketing")
        return cls(
            tuple(str(t) for t in obj["tokens"]),
            addrs,
            _freeze(br) if br is not None else None,
            frozenset(int(i) for i in obj.get("predicates", [])),
        )

    @classmethod
    def load(cls, path) -> AnnotatedSD:
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise MalformedAnnotation(f"{path}: invalid JSON ({exc})") from None


def _freeze(br):
    if isinstance(br, list):
        return tuple(_freeze(x) for x in br)
    if isinstance(br, str):
        return br
    raise MalformedAnnotation(f"bracketing items are strings or lists, got {br!r}")


def _unfreeze(br):
    return [_unfreeze(x) for x in br] if isinstance(br, tuple) else br


def _check_disjoint(a: Address) -> None:
    spans = sorted(a.occurrences)
    for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
        if s2 <= e1:
            raise MalformedAnnotation(
                f"spans [{s1},{e1}] and [{s2},{e2}] of {a.id!r} overlap",
                witness=(a.id, (s1, e1), (s2, e2)),
            )


# --- topology of a sentence -------------------------------------------------


@dataclass(frozen=True)
class TopoReport:
    foldings: int
    self_intersections: dict
    gluings: tuple[str, ...] = ()

    @property
    def total_intersections(self) -> int:
        return sum(self.self_intersections.values())

    @property
    def classification(self) -> str:
        parts = []
        if self.foldings == 1:
            parts.append("end-to-end gluing")
        elif self.foldings > 1:
            parts.append(f"{self.foldings} end-to-end gluings")
        for addr, c in self.self_intersections.items():
            parts.append(f"{c} self-intersection{'s' if c != 1 else ''} at Δ = {addr}")
        if not parts:
            return "no folding"
        if not self.self_intersections:
            parts[-1] += " (unknot)"
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "foldings": self.foldings,
            "gluings": list(self.gluings),
            "selfIntersections": dict(self.self_intersections),
            "totalIntersections": self.total_intersections,
            "classification": self.classification,
        }


def count_address(a: Address, n_tokens: int) -> tuple[int, int]:
    """(gluings, self-intersections) contributed by one address.

    Two contexts sitting at opposite peripheries glue end to end; any other
    multi-context address intersects itself once per pair of contexts.
    """
    k = a.contexts
    if k < 2:
        return 0, 0
    if k == 2:
        ctx = list(a.occurrences) + ([(n_tokens, n_tokens)] if a.gap_final else [])
        (s1, e1), (s2, e2) = ctx

        def left(s):
            return s == 0

        def right(e):
            return e >= n_tokens - 1

        if (left(s1) and right(e2)) or (left(s2) and right(e1)):
            return 1, 0
    return 0, k * (k - 1) // 2


def analyze_topology(sd: AnnotatedSD) -> TopoReport:
    for a in sd.addresses:
        _check_disjoint(a)
    foldings = 0
    glued = []
    inter = {}
    for a in sd.addresses:
        g, s = count_address(a, len(sd.tokens))
        foldings += g
        if g:
            glued.append(a.id)
        if s:
            inter[a.id] = s
    return TopoReport(foldings, inter, tuple(glued))


def combine_reports(reports: Iterable[TopoReport]) -> TopoReport:
    """Concatenate the reports of sentences sharing one address namespace."""
    foldings = 0
    glued: list[str] = []
    inter: dict[str, int] = {}
    for r in reports:
        foldings += r.foldings
        glued.extend(r.gluings)
        for addr, c in r.self_intersections.items():
            inter[addr] = inter.get(addr, 0) + c
    return TopoReport(foldings, inter, tuple(glued))


# --- sentence to graph ------------------------------------------------------


def _frontier(br) -> list[str]:
    if isinstance(br, str):
        return [br]
    if not br:
        raise MalformedAnnotation("empty bracket in bracketing")
    return [leaf for item in br for leaf in _frontier(item)]


def sd_to_graph(sd: AnnotatedSD) -> LGraph:
    """One vertex per occurrence (plus one per unannotated token).

    Vertex ids run ``v0, v1, ...`` in surface order, the final gap last.
    Edges come from the optional bracketing. The head of a bracket is the
    item whose token is starred (``"*likes"``), or else its first item; the
    head immediately dominates the heads of the other items.
    """
    n = len(sd.tokens)
    spans = []  # (start, end, address, form)
    for a in sd.addresses:
        for s, e in a.occurrences:
            spans.append((s, e, a.id, " ".join(sd.tokens[s:e + 1])))
        if a.gap_final:
            spans.append((n, n, a.id, GAP))
    covered = {i for s, e, _, _ in spans for i in range(s, e + 1) if i < n}
    for i in range(n):
        if i not in covered:
            spans.append((i, i, f"@{i}", sd.tokens[i]))
    spans.sort(key=lambda t: (t[0], -t[1], t[2]))
    vid_of = {}
    for k, sp in enumerate(spans):
        vid_of[sp] = f"v{k}"
    # innermost span wins for each position
    owner = {}
    for sp in spans:
        s, e = sp[0], sp[1]
        for i in range(s, e + 1):
            cur = owner.get(i)
            if cur is None or (e - s) < (cur[1] - cur[0]):
                owner[i] = sp
    verts = []
    for sp in spans:
        pred = any(owner.get(i) is sp for i in sd.predicates)
        verts.append(Vertex(vid_of[sp], sp[2], sp[3], pred))

    edges = set()
    if sd.bracketing is not None:
        front = [w[1:] if w.startswith("*") else w for w in _frontier(sd.bracketing)]
        expect = list(sd.tokens) + ([GAP] if sd.has_gap else [])
        if front != expect and front != list(sd.tokens):
            raise MalformedAnnotation(
                f"bracketing frontier {front} does not match tokens {expect}"
            )
        pos = iter(range(len(front)))

        def index(br):
            # leaves become (position, starred) pairs
            if isinstance(br, str):
                return (next(pos), br.startswith("*"))
            return [index(x) for x in br]

        def head(item):
            if isinstance(item, tuple):
                return item[0]
            starred = [x for x in item if isinstance(x, tuple) and x[1]]
            if len(starred) > 1:
                raise MalformedAnnotation("a bracket may star only one head")
            return head(starred[0] if starred else item[0])

        def link(item):
            if isinstance(item, tuple):
                return
            h = head(item)
            hv = vid_of[owner[h]]
            for other in item:
                o = vid_of[owner[head(other)]]
                if head(other) != h and o != hv:
                    edges.add((hv, o))
            for x in item:
                link(x)

        link(index(sd.bracketing))
    return LGraph(tuple(verts), frozenset(edges))


# --- collapse ---------------------------------------------------------------


def _chain_points(g: LGraph, m: DistanceMatrix, addr: str) -> list[str]:
    verts = g.with_address(addr)
    if len(verts) < 2:
        raise NothingToCollapse(
            f"address {addr!r} has {len(verts)} vertex; need at least 2", witness=addr
        )
    pts = [v.vid for v in verts]
    for p in pts:
        if p not in m:
            raise UnknownPoint(f"vertex {p!r} has no point in the distance matrix", witness=p)
    return pts


def collapse_chain(g: LGraph, m: DistanceMatrix, addr: str) -> tuple[LGraph, DistanceMatrix]:
    """Identify every occurrence of ``addr``: distance 0 and one merged vertex.

    Matrix points are vertex ids; the matrix keeps all of them, now at
    distance 0 from each other.
    """
    pts = _chain_points(g, m, addr)
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if m.dist(x, y) > 0:
                m = metrize_step(m, x, y, 0)
    merged, _ = merge_vertices(g, pts)
    return merged, m


def _zeroed(m: DistanceMatrix, pts: Sequence[str]) -> DistanceMatrix:
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if m.dist(x, y) > 0:
                m = set_distance(m, x, y, 0)
    return m


# --- scripts ----------------------------------------------------------------


@dataclass(frozen=True)
class Metrize:
    x: str
    y: str
    d: Fraction


@dataclass(frozen=True)
class Collapse:
    address: str


@dataclass(frozen=True)
class Substitute:
    slot: str
    term: Term


def step_from_json(obj) -> object:
    if not isinstance(obj, dict) or "op" not in obj:
        raise MalformedScript(f'script steps are objects with an "op", got {obj!r}')
    op = obj["op"]
    try:
        if op == "metrize":
            return Metrize(str(obj["x"]), str(obj["y"]), parse_rational(obj["d"]))
        if op == "collapse":
            return Collapse(str(obj["address"]))
        if op == "substitute":
            return Substitute(str(obj["slot"]), Term.parse(obj["term"]))
    except KeyError as exc:
        raise MalformedScript(f"step {op!r} is missing {exc}") from None
    except ValueError as exc:
        raise MalformedScript(f"step {op!r}: {exc}") from None
    raise MalformedScript(f"unknown op {op!r}")


def step_to_json(step) -> dict:
    if isinstance(step, Metrize):
        return {"op": "metrize", "x": step.x, "y": step.y, "d": format_rational(step.d)}
    if isinstance(step, Collapse):
        return {"op": "collapse", "address": step.address}
    return {"op": "substitute", "slot": step.slot, "term": str(step.term)}


def load_script(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedScript(f"{path}: invalid JSON ({exc})") from None
    return parse_script(obj)


def parse_script(obj) -> tuple:
    if isinstance(obj, dict):
        obj = obj.get("steps")
    if not isinstance(obj, list):
        raise MalformedScript("a script is a list of steps")
    return tuple(step_from_json(s) for s in obj)


@dataclass(frozen=True)
class Snapshot:
    step: int
    op: str | None
    matrix: DistanceMatrix
    raw: DistanceMatrix
    graph: LGraph
    space_class: SpaceClass
    term: Term | None = None

    def to_json(self) -> dict:
        out = {
            "step": self.step,
            "op": self.op,
            "class": self.space_class.label,
            "matrix": self.matrix.to_json(),
            "graph": self.graph.to_json(),
        }
        if self.raw != self.matrix:
            out["preClosure"] = self.raw.to_json()
        if self.term is not None:
            out["term"] = str(self.term)
        return out


def apply_derivation(
    script: Sequence, field: DistanceMatrix, g: LGraph, term: Term | None = None
) -> list[Snapshot]:
    """Run ``script`` from the ground-state ``field``; one snapshot per step.

    Snapshot 0 is the initial state. Each later snapshot also keeps the matrix
    as it stood before the metric closure was re-applied. Errors carry the
    1-based index of the failing step in ``err.step``.
    """
    sc = classify_space(field)
    if sc.kind != SpaceKind.ULTRAMETRIC:
        raise NotUltrametric(
            f"the initial field must be Ultrametric, got {sc.label}", witness=sc.witness
        )
    snaps = [Snapshot(0, None, field, field, g, sc, term)]
    m = field
    for i, step in enumerate(script, start=1):
        try:
            if isinstance(step, Metrize):
                raw = set_distance(m, step.x, step.y, step.d)
                m = metric_closure(raw)
                op = "metrize"
            elif isinstance(step, Collapse):
                pts = _chain_points(g, m, step.address)
                raw = _zeroed(m, pts)
                g, m = collapse_chain(g, m, step.address)
                op = "collapse"
            elif isinstance(step, Substitute):
                if term is None:
                    raise SlotResolutionError("no term in the derivation state to substitute into")
                term = substitute(term, step.slot, step.term)
                raw = m
                op = "substitute"
            else:
                raise MalformedScript(f"unknown step {step!r}")
        except TopoError as err:
            err.step = i
            raise
        snaps.append(Snapshot(i, op, m, raw, g, classify_space(m), term))
    return snaps


def snapshots_to_dot(snaps: Sequence[Snapshot]) -> str:
    from .lgraph import to_dot

    return "".join(to_dot(s.graph, f"step{s.step}") for s in snaps)
