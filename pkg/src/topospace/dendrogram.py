"""Dendrograms: the tree form of an ultrametric matrix.

Internal nodes are named by their sorted leaf set, e.g. ``"[X YP]"``; leaves
are named by their point label. Child order carries no meaning; it is kept
sorted by name so output is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MalformedDendrogram, NotUltrametric, UnknownNode
from .space import (
    DistanceMatrix,
    SpaceKind,
    classify_space,
    format_rational,
    parse_rational,
)


@dataclass(frozen=True)
class Node:
    height: Fraction
    children: tuple[Node, ...] = ()
    label: str | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> tuple[str, ...]:
        if self.is_leaf:
            return (self.label,)
        return tuple(lf for c in self.children for lf in c.leaves())

    @property
    def name(self) -> str:
        if self.is_leaf:
            return self.label
        return "[" + " ".join(sorted(self.leaves())) + "]"


def leaf(label: str) -> Node:
    return Node(Fraction(0), (), label)


def cluster(height, *children: Node) -> Node:
    return Node(parse_rational(height), tuple(sorted(children, key=lambda c: c.name)))


@dataclass(frozen=True)
class Dendrogram:
    root: Node
    leaf_order: tuple[str, ...] | None = None
    _nodes: dict = field(init=False, repr=False, compare=False, hash=False)
    _parent: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        nodes: dict[str, Node] = {}
        parent: dict[str, str] = {}
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                if not node.label:
                    raise MalformedDendrogram("leaves need a non-empty label")
                if node.height != 0:
                    raise MalformedDendrogram(f"leaf {node.label!r} must sit at height 0")
            else:
                if node.label is not None:
                    raise MalformedDendrogram("internal nodes carry no label")
                if len(node.children) < 2:
                    raise MalformedDendrogram(f"node {node.name} has fewer than 2 children")
                if node.height <= 0:
                    raise MalformedDendrogram(f"node {node.name} needs a positive height")
                for c in node.children:
                    if c.height >= node.height:
                        raise MalformedDendrogram(
                            f"height must drop from {node.name} to child {c.name}"
                        )
                    parent[c.name] = node.name
                    stack.append(c)
            if node.name in nodes:
                raise MalformedDendrogram(f"leaf {node.name!r} occurs twice")
            nodes[node.name] = node
        leaves = self.root.leaves()
        order = tuple(self.leaf_order) if self.leaf_order is not None else leaves
        if sorted(order) != sorted(leaves):
            raise MalformedDendrogram("leaf_order must list exactly the tree's leaves")
        object.__setattr__(self, "leaf_order", order)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_parent", parent)

    @property
    def leaves(self) -> tuple[str, ...]:
        return self.leaf_order

    def node(self, name: str) -> Node:
        try:
            return self._nodes[name]
        except KeyError:
            raise UnknownNode(f"no node named {name!r}", witness=name) from None

    def nodes(self) -> list[Node]:
        return sorted(self._nodes.values(), key=lambda n: (-n.height, n.name))

    def parent(self, name: str) -> Node | None:
        self.node(name)
        p = self._parent.get(name)
        return self._nodes[p] if p is not None else None

    def canonical(self):
        """Order-free structural key: equal iff the trees agree up to child order."""
        def key(n: Node):
            if n.is_leaf:
                return n.label
            return (n.height, frozenset(key(c) for c in n.children))
        return key(self.root)

    def same_tree(self, other: Dendrogram) -> bool:
        return self.canonical() == other.canonical()

    # serialisation

    def to_json(self) -> dict:
        def enc(n: Node):
            if n.is_leaf:
                return {"leaf": n.label}
            return {"height": format_rational(n.height), "children": [enc(c) for c in n.children]}
        return enc(self.root)

    @classmethod
    def from_json(cls, obj) -> Dendrogram:
        def dec(o):
            if not isinstance(o, dict):
                raise MalformedDendrogram(f"expected an object, got {o!r}")
            if "leaf" in o:
                return leaf(o["leaf"])
            if "height" not in o or "children" not in o:
                raise MalformedDendrogram('internal nodes need "height" and "children"')
            try:
                h = parse_rational(o["height"])
            except ValueError as exc:
                raise MalformedDendrogram(str(exc)) from None
            return cluster(h, *(dec(c) for c in o["children"]))
        return cls(dec(obj))

    @classmethod
    def load(cls, path) -> Dendrogram:
        with open(path, encoding="utf-8") as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise MalformedDendrogram(f"{path}: invalid JSON ({exc})") from None

    def to_dot(self) -> str:
        lines = ["digraph dendrogram {"]
        for n in sorted(self._nodes.values(), key=lambda n: n.name):
            text = n.label if n.is_leaf else f"{n.name}\\nh={format_rational(n.height)}"
            lines.append(f'  "{n.name}" [label="{text}"];')
        for n in sorted(self._nodes.values(), key=lambda n: n.name):
            for c in n.children:
                lines.append(f'  "{n.name}" -> "{c.name}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_dendrogram(m: DistanceMatrix) -> Dendrogram:
    """Agglomerate clusters at the smallest inter-cluster distance.

    All clusters tied at that distance merge into a single node, which is
    what ultrametricity licenses: the tie relation is transitive there.
    """
    sc = classify_space(m)
    if sc.kind != SpaceKind.ULTRAMETRIC:
        raise NotUltrametric(
            f"matrix is {sc.label}, not Ultrametric ({sc.violated} fails at "
            f"{', '.join(sc.witness)})",
            witness=sc.witness,
        )
    # each cluster: (representative point index, node)
    clusters = [(i, leaf(p)) for i, p in enumerate(m.points)]
    while len(clusters) > 1:
        h = min(
            m.d[a[0]][b[0]]
            for ia, a in enumerate(clusters)
            for b in clusters[ia + 1:]
        )
        # union the clusters linked at distance h
        group = list(range(len(clusters)))

        def find(x):
            while group[x] != x:
                group[x] = group[group[x]]
                x = group[x]
            return x

        for ia in range(len(clusters)):
            for ib in range(ia + 1, len(clusters)):
                if m.d[clusters[ia][0]][clusters[ib][0]] == h:
                    group[find(ia)] = find(ib)
        merged: dict[int, list[int]] = {}
        for idx in range(len(clusters)):
            merged.setdefault(find(idx), []).append(idx)
        nxt = []
        for members in merged.values():
            if len(members) == 1:
                nxt.append(clusters[members[0]])
            else:
                rep = min(clusters[i][0] for i in members)
                nxt.append((rep, cluster(h, *(clusters[i][1] for i in members))))
        clusters = sorted(nxt, key=lambda c: c[0])
    return Dendrogram(clusters[0][1], m.points)


def cophenetic_matrix(t: Dendrogram) -> DistanceMatrix:
    """d(x, y) = height of the lowest common ancestor of leaves x and y."""
    pts = t.leaves
    idx = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    rows = [[Fraction(0)] * n for _ in range(n)]

    def walk(node: Node) -> list[str]:
        if node.is_leaf:
            return [node.label]
        groups = [walk(c) for c in node.children]
        for gi, ga in enumerate(groups):
            for gb in groups[gi + 1:]:
                for a in ga:
                    for b in gb:
                        rows[idx[a]][idx[b]] = rows[idx[b]][idx[a]] = node.height
        return [p for g in groups for p in g]

    walk(t.root)
    return DistanceMatrix(pts, tuple(tuple(r) for r in rows))


def xbar_matrix(i: int = 0) -> DistanceMatrix:
    """Specifier/head/complement distances over a base distance ``i``."""
    if i < 0:
        raise ValueError("base distance must be nonnegative")
    return DistanceMatrix.from_pairs(
        ("Spec", "X", "YP"),
        {("Spec", "X"): i + 2, ("Spec", "YP"): i + 2, ("X", "YP"): i + 1},
    )


def leaf_heights(t: Dendrogram) -> dict[str, Fraction]:
    return {n.name: n.height for n in t.nodes()}


def roberts_dominates(t: Dendrogram, a: str, b: str) -> bool:
    """Height-based domination.

    ``a`` dominates ``b`` iff height(a) >= height(b) and some walk from a to b
    goes only downward except for at most one upward edge. In a tree the only
    new ground one upward edge opens is the parent's subtree, so the walk test
    reduces to: b lies under a, or under a's parent.
    """
    na, nb = t.node(a), t.node(b)
    if na.height < nb.height:
        return False
    if _under(na, b):
        return True
    up = t.parent(a)
    return up is not None and _under(up, b)


def _under(node: Node, name: str) -> bool:
    if node.name == name:
        return True
    return any(_under(c, name) for c in node.children)
