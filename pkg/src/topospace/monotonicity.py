"""Monotonic growth and finite-state describability of phrase markers.

A plain tree is a nested tuple whose leaves are strings::

    ("who", ("shows", ("he", ("deserves", ("it",)))))

A tree is finite-state describable when no node splits into two non-leaf
daughters, so every branching point continues along a single spine.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import MalformedTree, NotBinary

PlainTree = Union[str, tuple]
Path = tuple[int, ...]


def parse_tree(obj) -> PlainTree:
    """Nested lists (JSON) to nested tuples, checking the shape."""
    if isinstance(obj, str):
        if not obj:
            raise MalformedTree("leaves must be non-empty strings")
        return obj
    if isinstance(obj, (list, tuple)):
        if not obj:
            raise MalformedTree("internal nodes need at least one child")
        return tuple(parse_tree(c) for c in obj)
    raise MalformedTree(f"tree nodes are strings or lists, got {obj!r}")


def load_tree(path) -> PlainTree:
    with open(path, encoding="utf-8") as fh:
        try:
            return parse_tree(json.load(fh))
        except json.JSONDecodeError as exc:
            raise MalformedTree(f"{path}: invalid JSON ({exc})") from None


def to_lists(t: PlainTree):
    return t if isinstance(t, str) else [to_lists(c) for c in t]


def is_leaf(t: PlainTree) -> bool:
    return isinstance(t, str)


def frontier(t: PlainTree) -> list[str]:
    if is_leaf(t):
        return [t]
    return [w for c in t for w in frontier(c)]


def subtree(t: PlainTree, path: Path) -> PlainTree:
    for i in path:
        t = t[i]
    return t


def bracketing(t: PlainTree) -> str:
    """Bracket string; a lone leaf still gets its brackets."""
    if is_leaf(t):
        return f"[{t}]"

    def render(node):
        if is_leaf(node):
            return node
        return "[" + " ".join(render(c) for c in node) + "]"

    return render(t)


def _check_binary(t: PlainTree, path: Path = ()) -> None:
    if is_leaf(t):
        return
    if len(t) > 2:
        raise NotBinary(
            f"node at {format_path(path)} has {len(t)} children", witness=path
        )
    for i, c in enumerate(t):
        _check_binary(c, path + (i,))


def _linear(t: PlainTree) -> bool:
    if is_leaf(t):
        return True
    inner = [c for c in t if not is_leaf(c)]
    return len(inner) <= 1 and all(_linear(c) for c in inner)


def is_fs_describable(t: PlainTree) -> bool:
    _check_binary(t)
    return _linear(t)


@dataclass(frozen=True)
class Segment:
    path: Path
    tree: PlainTree

    @property
    def frontier(self) -> list[str]:
        return frontier(self.tree)


@dataclass(frozen=True)
class Segmentation:
    segments: tuple[Segment, ...]
    joints: tuple[Path, ...]

    def to_json(self) -> dict:
        return {
            "segments": [
                {"path": format_path(s.path), "bracketing": bracketing(s.tree)}
                for s in self.segments
            ],
            "joints": [format_path(p) for p in self.joints],
        }


def segment_max_monotonic(t: PlainTree) -> Segmentation:
    """Cut ``t`` into maximal finite-state subtrees, left to right.

    Every leaf belongs to the highest linear subtree above it; joints are the
    nodes whose two daughters are both non-leaves.
    """
    _check_binary(t)
    segs: list[Segment] = []
    joints: list[Path] = []

    def walk(node, path):
        if _linear(node):
            segs.append(Segment(path, node))
            return
        if all(not is_leaf(c) for c in node) and len(node) == 2:
            joints.append(path)
        for i, c in enumerate(node):
            walk(c, path + (i,))

    walk(t, ())
    return Segmentation(tuple(segs), tuple(joints))


def format_path(path: Path) -> str:
    return "root" if not path else ".".join(str(i) for i in path)


# --- growth histories -------------------------------------------------------


class Growth(enum.Enum):
    MONOTONIC = "Monotonic"
    NON_MONOTONIC = "NonMonotonic"


@dataclass(frozen=True)
class Terminal:
    form: str


@dataclass(frozen=True)
class ComplexObject:
    tree: PlainTree

    def __post_init__(self):
        if len(frontier(self.tree)) < 2:
            raise MalformedTree(
                "a complex object needs at least two leaves; use a terminal step instead"
            )


def parse_history(obj) -> tuple:
    """Steps from JSON: a string is a terminal, a list is a complex object."""
    if not isinstance(obj, list) or not obj:
        raise MalformedTree("a growth history is a non-empty list of steps")
    steps = []
    for item in obj:
        if isinstance(item, dict):
            if "terminal" in item:
                item = item["terminal"]
            elif "complex" in item:
                item = item["complex"]
            else:
                raise MalformedTree(f"unknown step {item!r}")
        if isinstance(item, str):
            steps.append(Terminal(parse_tree(item)))
        else:
            steps.append(ComplexObject(parse_tree(item)))
    return tuple(steps)


def classify_steps(history: Sequence) -> list[Growth]:
    return [
        Growth.MONOTONIC if isinstance(s, Terminal) else Growth.NON_MONOTONIC
        for s in history
    ]


def history_to_tree(history: Sequence) -> PlainTree:
    """Right-nested spine in surface order: ``[s1 [s2 ... [sn]]]``."""
    if not history:
        raise MalformedTree("a growth history needs at least one step")
    items = [s.form if isinstance(s, Terminal) else s.tree for s in history]
    tree: PlainTree = (items[-1],)
    for it in reversed(items[:-1]):
        tree = (it, tree)
    return tree
