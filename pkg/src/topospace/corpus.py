"""Bundled example corpus and the ``bundle_examples`` writer.

Everything here is plain data. ``bundle_examples`` writes it to a directory
as JSON, bracket text and Gauss code files, byte-identical on every run.
"""

from __future__ import annotations

import json
import os

from .dendrogram import xbar_matrix
from .space import DistanceMatrix

SD_21 = {
    "sd_21a.json": {
        "tokens": ["Mary", "was", "reading", "a", "book"],
        "addresses": [],
        "bracketing": ["Mary", "*was", ["reading", ["a", "book"]]],
        "predicates": [2],
    },
    "sd_21b.json": {
        "tokens": ["John", "despises", "himself"],
        "addresses": [{"id": "John", "occurrences": [[0, 0], [2, 2]], "gapFinal": False}],
        "bracketing": ["John", ["despises", "himself"]],
        "predicates": [1],
    },
    "sd_21c.json": {
        "tokens": ["Which", "picture", "of", "himself", "did", "John", "say", "Mary", "likes"],
        "addresses": [
            {"id": "wh", "occurrences": [[0, 3]], "gapFinal": True},
            {"id": "John", "occurrences": [[3, 3], [5, 5]], "gapFinal": False},
        ],
        "bracketing": [
            ["Which", "picture", ["of", "himself"]],
            "*did",
            ["John", "*say", ["Mary", "*likes", "_"]],
        ],
        "predicates": [6, 8],
    },
    # the second "he" (token 11) is left out of the man chain
    "sd_21d.json": {
        "tokens": [
            "The", "man", "who", "shows", "he", "deserves", "it",
            "will", "get", "the", "prize", "he", "desires",
        ],
        "addresses": [
            {"id": "man", "occurrences": [[0, 1], [2, 2], [4, 4]], "gapFinal": False},
            {"id": "prize", "occurrences": [[6, 6], [9, 10]], "gapFinal": True},
        ],
        "bracketing": [
            [["The", "man"], ["who", "*shows", ["he", "*deserves", "it"]]],
            "*will",
            ["get", [["the", "prize"], ["he", "*desires", "_"]]],
        ],
        "predicates": [3, 5, 8, 12],
    },
}

TERMS_13 = {
    "term_13a.txt": "[K John [M wished [L]]]",
    "term_13b.txt": "[L that Mary would go out with him]",
}
TERM_13C = "[K John [M wished [L that Mary would go out with him]]]"

# relative-clause spine and the complex-subject sentence
TREE_26 = ["who", ["shows", ["he", ["deserves", ["it"]]]]]
TREE_SUBJECT = [["the", "man"], ["saw", "her"]]
HISTORY_SUBJECT = [["the", "man"], "saw", "her"]
HISTORY_8A = ["he", "saw", "her"]

RELATIONS_30A = {
    "universe": ["John", "be", "e", "murdered"],
    "relations": [["murder", "e", "John"], ["rho", "be", "murdered"]],
}
RELATIONS_30B = {
    "universe": ["John", "be", "e", "murdered"],
    "relations": [["murder", "e", "John"], ["rho", "be", "John"], ["rho", "be", "murdered"]],
}
SWAP_30 = {"John": "e", "e": "John", "be": "be", "murdered": "murdered"}

# "the man ate a dog": both noun phrases merge at height 1, everything else at 2
ROBERTS_9 = {
    "points": ["the", "man", "ate", "a", "dog"],
    "pairs": {
        ("the", "man"): 1,
        ("a", "dog"): 1,
    },
    "default": 2,
}

KNOTS = {
    "unknot.gauss": "",
    "twist1.gauss": "O1+ U1+",
    "twist2.gauss": "O1+ U1+ O2+ U2+",
    "poke.gauss": "O1+ O2- U1+ U2-",
    "slide.gauss": "O1+ O2- O3+ U1+ U2- U3+",
    "trefoil.gauss": "O1+ U2+ O3+ U1+ O2+ U3+",
    "figure8.gauss": "O1- U2+ O3+ U1- O4- U3+ O2+ U4-",
}

# metrize a and b, then b and c, on a constant field
SCRIPT_METRIZE = [
    {"op": "metrize", "x": "v0", "y": "v1", "d": "1/2"},
    {"op": "metrize", "x": "v1", "y": "v2", "d": "7/10"},
]
SCRIPT_COLLAPSE = SCRIPT_METRIZE + [{"op": "collapse", "address": "John"}]


def roberts_matrix() -> DistanceMatrix:
    pts = ROBERTS_9["points"]
    pairs = {}
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            pairs[(a, b)] = ROBERTS_9["pairs"].get((a, b), ROBERTS_9["default"])
    return DistanceMatrix.from_pairs(pts, pairs)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def bundle_files() -> dict[str, str]:
    """File name to file contents for the whole corpus."""
    files = {name: _dump(sd) for name, sd in SD_21.items()}
    files.update({name: text + "\n" for name, text in TERMS_13.items()})
    files["tree_26.json"] = _dump(TREE_26)
    files["tree_subject.json"] = _dump(TREE_SUBJECT)
    files["history_subject.json"] = _dump(HISTORY_SUBJECT)
    files["history_8a.json"] = _dump(HISTORY_8A)
    files["relations_30a.json"] = _dump(RELATIONS_30A)
    files["relations_30b.json"] = _dump(RELATIONS_30B)
    files["map_30_swap.json"] = _dump(SWAP_30)
    for i in (0, 1, 5):
        files[f"xbar_i{i}.json"] = _dump(xbar_matrix(i).to_json())
    files["roberts_9.json"] = _dump(roberts_matrix().to_json())
    files["script_metrize.json"] = _dump(SCRIPT_METRIZE)
    files["script_collapse.json"] = _dump(SCRIPT_COLLAPSE)
    files.update({name: code + "\n" for name, code in KNOTS.items()})
    return dict(sorted(files.items()))


def bundle_examples(out_dir) -> list[str]:
    """Write the corpus into ``out_dir`` (created if needed); returns the paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, text in bundle_files().items():
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written
