"""Exception hierarchy.

Two families: ``TopoError`` for domain failures (a well-formed input that an
operation refuses, e.g. a non-ultrametric matrix handed to the dendrogram
builder) and ``InputError`` for malformed input data. The CLI maps the first to
exit status 1 and the second to exit status 2.
"""

from __future__ import annotations


class TopoError(Exception):
    """Base class for domain errors; ``witness`` carries offending data."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness
        self.step: int | None = None

    @property
    def name(self) -> str:
        return type(self).__name__


class InputError(TopoError):
    """Malformed input (bad file contents, broken invariants at construction)."""


# --- distance spaces -------------------------------------------------------

class MalformedMatrix(InputError):
    pass


class UnknownPoint(TopoError):
    pass


class SamePoint(TopoError):
    pass


class NotACloserDistance(TopoError):
    pass


class EmptyField(TopoError):
    pass


# --- dendrograms -----------------------------------------------------------

class NotUltrametric(TopoError):
    pass


class UnknownNode(TopoError):
    pass


class MalformedDendrogram(InputError):
    pass


# --- graphs ----------------------------------------------------------------

class MalformedGraph(InputError):
    pass


class UnknownVertex(TopoError):
    pass


# --- derivations -----------------------------------------------------------

class MalformedAnnotation(InputError):
    pass


class NothingToCollapse(TopoError):
    pass


class RootIdentityViolation(TopoError):
    pass


class SlotResolutionError(TopoError):
    pass


class PartialMapping(TopoError):
    pass


class MalformedTerm(InputError):
    pass


class MalformedScript(InputError):
    pass


# --- monotonicity ----------------------------------------------------------

class NotBinary(TopoError):
    pass


class MalformedTree(InputError):
    pass


# --- knots -----------------------------------------------------------------

class GaussParseError(InputError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message, witness=position)
        self.position = position


class InvalidDiagram(InputError):
    pass


class MoveNotApplicable(TopoError):
    pass


class IncompatibleWithKnotTheory(TopoError):
    pass
