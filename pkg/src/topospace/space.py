"""Finite distance spaces with exact rational distances.

A ``DistanceMatrix`` is symmetric, zero on the diagonal and nonnegative by
construction; whether it also satisfies positivity, the triangle inequality
or the ultrametric inequality is decided by :func:`classify_space`.
"""

from __future__ import annotations

import enum
import json
import math
import re
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .errors import (
    EmptyField,
    MalformedMatrix,
    NotACloserDistance,
    SamePoint,
    UnknownPoint,
)

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, an integer string, an int or a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value.strip()):
        num, _, den = value.strip().partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ValueError(f"not a rational (expected 'p/q' or integer): {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction) -> str:
    """Decimal rendering; a trailing ``~`` marks a rounded (inexact) value."""
    den = q.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        digits = 0
        d = q.denominator
        while d != 1:
            d //= math.gcd(d, 10)
            digits += 1
        text = f"{q.numerator / q.denominator:.{digits}f}" if digits else str(q.numerator)
        return text
    return f"{float(q):.4f}~"


@dataclass(frozen=True)
class DistanceMatrix:
    points: tuple[str, ...]
    d: tuple[tuple[Fraction, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        points = tuple(self.points)
        if not points:
            raise MalformedMatrix("a distance matrix needs at least one point")
        for p in points:
            if not isinstance(p, str) or not p:
                raise MalformedMatrix(f"point labels must be non-empty strings, got {p!r}")
        if len(set(points)) != len(points):
            dup = next(p for p in points if points.count(p) > 1)
            raise MalformedMatrix(f"duplicate point label {dup!r}")
        n = len(points)
        if len(self.d) != n:
            raise MalformedMatrix(f"expected {n} rows, got {len(self.d)}")
        rows = []
        for i, row in enumerate(self.d):
            if len(row) != n:
                raise MalformedMatrix(f"row {points[i]!r} has {len(row)} entries, expected {n}")
            cells = []
            for j, v in enumerate(row):
                try:
                    cells.append(parse_rational(v))
                except ValueError as exc:
                    raise MalformedMatrix(f"cell ({points[i]}, {points[j]}): {exc}") from None
            rows.append(tuple(cells))
        for i in range(n):
            if rows[i][i] != 0:
                raise MalformedMatrix(
                    f"cell ({points[i]}, {points[i]}) is {rows[i][i]}, diagonal must be 0",
                    witness=(points[i], points[i]),
                )
            for j in range(n):
                if rows[i][j] < 0:
                    raise MalformedMatrix(
                        f"cell ({points[i]}, {points[j]}) is negative ({rows[i][j]})",
                        witness=(points[i], points[j]),
                    )
                if rows[i][j] != rows[j][i]:
                    raise MalformedMatrix(
                        f"cell ({points[i]}, {points[j]}) = {rows[i][j]} but "
                        f"({points[j]}, {points[i]}) = {rows[j][i]}: not symmetric",
                        witness=(points[i], points[j]),
                    )
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "d", tuple(rows))
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(points)})

    @classmethod
    def from_pairs(cls, points: Iterable[str], pairs: dict) -> DistanceMatrix:
        """Build from ``{(x, y): distance}`` for unordered pairs; missing pairs are an error."""
        points = tuple(points)
        n = len(points)
        rows = [[Fraction(0)] * n for _ in range(n)]
        lookup = {}
        for (x, y), v in pairs.items():
            lookup[frozenset((x, y))] = parse_rational(v)
        for i in range(n):
            for j in range(i + 1, n):
                key = frozenset((points[i], points[j]))
                if key not in lookup:
                    raise MalformedMatrix(f"no distance given for ({points[i]}, {points[j]})")
                rows[i][j] = rows[j][i] = lookup[key]
        return cls(points, tuple(tuple(r) for r in rows))

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise UnknownPoint(f"unknown point {p!r}", witness=p) from None

    def __contains__(self, p) -> bool:
        return p in self._index

    def dist(self, x: str, y: str) -> Fraction:
        return self.d[self.index(x)][self.index(y)]

    def pairs(self):
        """Yield ``(x, y, d)`` for every unordered pair x before y."""
        n = len(self.points)
        for i in range(n):
            for j in range(i + 1, n):
                yield self.points[i], self.points[j], self.d[i][j]

    def with_distance(self, x: str, y: str, value) -> DistanceMatrix:
        i, j = self.index(x), self.index(y)
        rows = [list(r) for r in self.d]
        rows[i][j] = rows[j][i] = parse_rational(value)
        return DistanceMatrix(self.points, tuple(tuple(r) for r in rows))

    # integer view for the kernels

    def scaled(self) -> tuple[list[int], int]:
        """Entries times the lcm of denominators, flattened row-major."""
        den = 1
        for row in self.d:
            for v in row:
                den = den * v.denominator // math.gcd(den, v.denominator)
        flat = [int(v * den) for row in self.d for v in row]
        return flat, den

    @classmethod
    def from_scaled(cls, points, flat: list[int], den: int) -> DistanceMatrix:
        n = len(points)
        rows = tuple(
            tuple(Fraction(flat[i * n + j], den) for j in range(n)) for i in range(n)
        )
        return cls(tuple(points), rows)

    # serialisation

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "d": [[format_rational(v) for v in row] for row in self.d],
        }

    @classmethod
    def from_json(cls, obj) -> DistanceMatrix:
        if not isinstance(obj, dict) or "points" not in obj or "d" not in obj:
            raise MalformedMatrix('matrix JSON must be an object with "points" and "d"')
        if not isinstance(obj["points"], list) or not isinstance(obj["d"], list):
            raise MalformedMatrix('"points" and "d" must be lists')
        for row in obj["d"]:
            if not isinstance(row, list):
                raise MalformedMatrix('"d" must be a list of rows')
        return cls(tuple(obj["points"]), tuple(tuple(r) for r in obj["d"]))

    @classmethod
    def load(cls, path) -> DistanceMatrix:
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise MalformedMatrix(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json(obj)


class SpaceKind(enum.IntEnum):
    # NOT_SEMIMETRIC is kept for completeness; DistanceMatrix construction
    # already rejects every input that would earn it.
    NOT_SEMIMETRIC = 0
    SEMIMETRIC = 1
    METRIC = 2
    ULTRAMETRIC = 3

    @property
    def label(self) -> str:
        return {
            SpaceKind.NOT_SEMIMETRIC: "NotSemimetric",
            SpaceKind.SEMIMETRIC: "Semimetric",
            SpaceKind.METRIC: "Metric",
            SpaceKind.ULTRAMETRIC: "Ultrametric",
        }[self]


@dataclass(frozen=True)
class SpaceClass:
    kind: SpaceKind
    witness: tuple[str, ...] | None = None
    violated: str | None = None  # "positivity" | "triangle" | "ultrametric"

    @property
    def label(self) -> str:
        return self.kind.label

    def at_least(self, kind: SpaceKind) -> bool:
        return self.kind >= kind

    def to_json(self) -> dict:
        out = {"class": self.label}
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["violated"] = self.violated
        return out


@dataclass(frozen=True)
class TriangleCensus:
    equilateral: int = 0
    isosceles_top_two_equal: int = 0
    other: int = 0

    @property
    def total(self) -> int:
        return self.equilateral + self.isosceles_top_two_equal + self.other

    def to_json(self) -> dict:
        return {
            "equilateral": self.equilateral,
            "isoscelesTopTwoEqual": self.isosceles_top_two_equal,
            "other": self.other,
            "total": self.total,
        }


@dataclass(frozen=True)
class NeighborhoodSpec:
    center: str
    radius: Fraction
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "radius", parse_rational(self.radius))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")


def classify_space(m: DistanceMatrix) -> SpaceClass:
    """Tightest of Semimetric < Metric < Ultrametric.

    Positivity (distinct points at positive distance) is checked first; a zero
    off-diagonal entry caps the result at Semimetric with the offending pair as
    witness. Otherwise the witness is the first triple violating the strongest
    inequality that failed.
    """
    pts = m.points
    for x, y, v in m.pairs():
        if v == 0:
            return SpaceClass(SpaceKind.SEMIMETRIC, (x, y), "positivity")
    flat, _ = m.scaled()
    tri, ultra = kernels.scan_triples(flat, len(pts))
    if tri is not None:
        return SpaceClass(SpaceKind.SEMIMETRIC, tuple(pts[i] for i in tri), "triangle")
    if ultra is not None:
        return SpaceClass(SpaceKind.METRIC, tuple(pts[i] for i in ultra), "ultrametric")
    return SpaceClass(SpaceKind.ULTRAMETRIC)


def triangle_census(m: DistanceMatrix) -> TriangleCensus:
    """Classify every unordered triple by its side lengths.

    >>> triangle_census(make_ultrametric_field(4, 1)).equilateral
    4
    """
    if len(m) < 3:
        return TriangleCensus()
    flat, _ = m.scaled()
    return TriangleCensus(*kernels.census(flat, len(m)))


def closed_neighborhood(m: DistanceMatrix, spec: NeighborhoodSpec) -> frozenset[str]:
    """Ball around ``spec.center``: closed uses ``<=``, open uses ``<``."""
    row = m.d[m.index(spec.center)]
    if spec.closed:
        return frozenset(p for p, v in zip(m.points, row) if v <= spec.radius)
    return frozenset(p for p, v in zip(m.points, row) if v < spec.radius)


def are_separated(m: DistanceMatrix, x: str, y: str, closed: bool = True) -> Fraction | None:
    """Largest half-distance radius whose balls around x and y are disjoint.

    Candidate radii are the positive halves of the matrix entries; a finite
    space has no other thresholds worth trying. None when no candidate works.
    """
    if x == y:
        raise SamePoint(f"{x!r} cannot be separated from itself", witness=(x, y))
    m.index(x), m.index(y)
    candidates = sorted({v / 2 for row in m.d for v in row if v > 0}, reverse=True)
    for r in candidates:
        bx = closed_neighborhood(m, NeighborhoodSpec(x, r, closed))
        by = closed_neighborhood(m, NeighborhoodSpec(y, r, closed))
        if not bx & by:
            return r
    return None


def boundary(m: DistanceMatrix, subset: Iterable[str], eps) -> frozenset[str]:
    """Points of ``subset`` within ``eps`` of some point outside it."""
    eps = parse_rational(eps)
    inside = frozenset(subset)
    for p in inside:
        m.index(p)
    outside = [i for i, p in enumerate(m.points) if p not in inside]
    return frozenset(
        p for p in inside if any(m.d[m.index(p)][j] <= eps for j in outside)
    )


def metric_closure(m: DistanceMatrix) -> DistanceMatrix:
    """Shortest-route distances; the largest metric below ``m`` pointwise."""
    flat, den = m.scaled()
    return DistanceMatrix.from_scaled(m.points, kernels.closure(flat, len(m)), den)


def set_distance(m: DistanceMatrix, x: str, y: str, new_d) -> DistanceMatrix:
    """One metrization edit without re-closing; validates the step."""
    new_d = parse_rational(new_d)
    if x == y:
        raise SamePoint(f"cannot move {x!r} relative to itself", witness=(x, y))
    current = m.dist(x, y)
    if not 0 <= new_d < current:
        raise NotACloserDistance(
            f"d({x}, {y}) = {format_rational(current)}; new distance "
            f"{format_rational(new_d)} must be nonnegative and strictly smaller",
            witness=(x, y),
        )
    return m.with_distance(x, y, new_d)


def metrize_step(m: DistanceMatrix, x: str, y: str, new_d) -> DistanceMatrix:
    """Draw x and y to ``new_d`` and re-close so the triangle inequality holds.

    ``new_d = 0`` identifies the two points.
    """
    return metric_closure(set_distance(m, x, y, new_d))


def default_labels(n: int) -> tuple[str, ...]:
    if n <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"p{i}" for i in range(n))


def make_ultrametric_field(n: int, k=1, labels: Iterable[str] | None = None) -> DistanceMatrix:
    """Constant-distance field: every pair of distinct points sits at ``k``.

    Labels default to ``a, b, c, ...`` (``p0, p1, ...`` beyond 26 points).
    """
    if n < 1:
        raise EmptyField("a field needs at least one point")
    k = parse_rational(k)
    if k <= 0:
        raise ValueError("field distance must be positive")
    labels = tuple(labels) if labels is not None else default_labels(n)
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} points")
    rows = tuple(
        tuple(Fraction(0) if i == j else k for j in range(n)) for i in range(n)
    )
    return DistanceMatrix(labels, rows)
