"""Labelled terms, substitution at frontier slots, and relation-preserving maps.

Terms are written in bracket notation: the first item after ``[`` is the
node label, the rest are children (words or nested terms). A bracket holding
only a label, like ``[L]``, is an open slot.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import (
    MalformedTerm,
    PartialMapping,
    RootIdentityViolation,
    SlotResolutionError,
)

Child = Union["Term", str]


@dataclass(frozen=True)
class Term:
    label: str
    children: tuple[Child, ...] = ()

    @property
    def is_slot(self) -> bool:
        return not self.children

    def __str__(self) -> str:
        if self.is_slot:
            return f"[{self.label}]"
        return "[" + self.label + " " + " ".join(str(c) for c in self.children) + "]"

    def slots(self, label: str | None = None) -> list[tuple[int, ...]]:
        """Paths of open slots, optionally only those with ``label``."""
        out = []

        def walk(t: Term, path):
            if t.is_slot:
                if label is None or t.label == label:
                    out.append(path)
                return
            for i, c in enumerate(t.children):
                if isinstance(c, Term):
                    walk(c, path + (i,))

        walk(self, ())
        return out

    @classmethod
    def parse(cls, text: str) -> Term:
        tokens = re.findall(r"\[|\]|[^\s\[\]]+", text)
        pos = 0

        def parse_node() -> Term:
            nonlocal pos
            if pos >= len(tokens) or tokens[pos] != "[":
                raise MalformedTerm(f"expected '[' at token {pos} in {text!r}")
            pos += 1
            if pos >= len(tokens) or tokens[pos] in "[]":
                raise MalformedTerm(f"bracket without a label at token {pos} in {text!r}")
            label = tokens[pos]
            pos += 1
            kids: list[Child] = []
            while True:
                if pos >= len(tokens):
                    raise MalformedTerm(f"unclosed bracket in {text!r}")
                tok = tokens[pos]
                if tok == "]":
                    pos += 1
                    return cls(label, tuple(kids))
                if tok == "[":
                    kids.append(parse_node())
                else:
                    kids.append(tok)
                    pos += 1

        term = parse_node()
        if pos != len(tokens):
            raise MalformedTerm(f"trailing material after term in {text!r}")
        return term


def _replace(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    kids = list(t.children)
    kids[i] = _replace(kids[i], path[1:], new)
    return Term(t.label, tuple(kids))


def substitute(k: Term, slot_label: str, l: Term) -> Term:
    """Plug ``l`` into the unique open slot of ``k`` labelled ``slot_label``.

    Works only when the root of ``l`` bears exactly that label.

    >>> str(substitute(Term.parse("[K John [M wished [L]]]"), "L",
    ...                Term.parse("[L that Mary left]")))
    '[K John [M wished [L that Mary left]]]'
    """
    if l.label != slot_label:
        raise RootIdentityViolation(
            f"root of the substituted term is {l.label!r}, slot is {slot_label!r}",
            witness=(slot_label, l.label),
        )
    paths = k.slots(slot_label)
    if len(paths) != 1:
        raise SlotResolutionError(
            f"expected exactly one open slot {slot_label!r}, found {len(paths)}",
            witness=len(paths),
        )
    return _replace(k, paths[0], l)


@dataclass(frozen=True)
class RelationSet:
    relations: frozenset[tuple[str, str, str]]
    universe: frozenset[str] = field(default=None)

    def __post_init__(self):
        rels = frozenset(tuple(r) for r in self.relations)
        for r in rels:
            if len(r) != 3:
                raise ValueError(f"relations are (name, arg1, arg2), got {r!r}")
        args = {a for _, x, y in rels for a in (x, y)}
        universe = frozenset(self.universe) if self.universe is not None else frozenset(args)
        stray = args - universe
        if stray:
            raise ValueError(f"arguments outside the declared universe: {sorted(stray)}")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "universe", universe)

    def to_json(self) -> dict:
        return {
            "universe": sorted(self.universe),
            "relations": [list(r) for r in sorted(self.relations)],
        }

    @classmethod
    def from_json(cls, obj) -> RelationSet:
        if isinstance(obj, list):
            obj = {"relations": obj}
        try:
            return cls(
                frozenset(tuple(r) for r in obj["relations"]),
                frozenset(obj["universe"]) if "universe" in obj else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTerm(f"bad relation set: {exc}") from None

    @classmethod
    def load(cls, path) -> RelationSet:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def check_homomorphism(
    src: RelationSet, dst: RelationSet, f: Mapping[str, str] | None = None
) -> bool:
    """Every (R, x, y) in ``src`` must reappear as (R, f(x), f(y)) in ``dst``.

    ``f=None`` is the identity on the universe of ``src``.
    """
    if f is None:
        f = {x: x for x in src.universe}
    missing = sorted(x for x in src.universe if x not in f)
    if missing:
        raise PartialMapping(f"mapping undefined on {missing}", witness=tuple(missing))
    return all((r, f[x], f[y]) in dst.relations for r, x, y in src.relations)


def _node_id(path: tuple[int, ...], node: Child) -> str:
    where = "r" + "".join(f".{i}" for i in path)
    return f"{where}:{node.label if isinstance(node, Term) else node}"


def term_relations(t: Term, include_slots: bool = True) -> RelationSet:
    """Immediate dominance and sibling precedence over Gorn-addressed nodes.

    Node ids look like ``r.1.0:wished``; they survive substitution, since
    plugging a slot leaves every other address unchanged.
    """
    rels = set()
    universe = set()

    def keep(node: Child) -> bool:
        return include_slots or not (isinstance(node, Term) and node.is_slot)

    def walk(node: Child, path):
        nid = _node_id(path, node)
        if keep(node):
            universe.add(nid)
        if not isinstance(node, Term):
            return
        kids = [(_node_id(path + (i,), c), c) for i, c in enumerate(node.children)]
        for cid, c in kids:
            if keep(node) and keep(c):
                rels.add(("dominates", nid, cid))
        for (aid, a), (bid, b) in zip(kids, kids[1:]):
            if keep(a) and keep(b):
                rels.add(("precedes", aid, bid))
        for i, c in enumerate(node.children):
            walk(c, path + (i,))

    walk(t, ())
    return RelationSet(frozenset(rels), frozenset(universe))


def load_term(path) -> Term:
    with open(path, encoding="utf-8") as fh:
        return Term.parse(fh.read().strip())


def relation_union(*sets: Iterable[RelationSet]) -> RelationSet:
    rels = frozenset().union(*(s.relations for s in sets))
    uni = frozenset().union(*(s.universe for s in sets))
    return RelationSet(rels, uni)
