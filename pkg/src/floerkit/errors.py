"""Exception types shared across the toolkit.

Every failure that a caller can act on carries a machine-readable
``witness`` attribute (indices, points, or move data) in addition to the
human-readable message.
"""


class FloerkitError(Exception):
    """Base class; ``witness`` holds structured data about the failure."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# -- group table loading -------------------------------------------------

class NonAssociative(FloerkitError):
    pass


class NoIdentity(FloerkitError):
    pass


class NoInverse(FloerkitError):
    pass


# -- words / automorphisms ----------------------------------------------

class GenusMismatch(FloerkitError):
    pass


class InvalidAutomorphism(FloerkitError):
    pass


# -- bordism chains ------------------------------------------------------

class BoundaryMismatch(FloerkitError):
    pass


class MoveNotApplicable(FloerkitError):
    pass


# -- relations -----------------------------------------------------------

class EndpointMismatch(FloerkitError):
    pass


class NotEmbedded(FloerkitError):
    pass


class ResourceLimit(FloerkitError):
    pass


# -- finite categories ---------------------------------------------------

class MiddleMismatch(FloerkitError):
    pass


class CategoryMismatch(FloerkitError):
    pass


class InvalidObject(FloerkitError):
    pass


class IllFormedQuotient(FloerkitError):
    pass


# -- quilt diagrams -------------------------------------------------------

class InvalidEnd(FloerkitError):
    pass


class CyclicMismatch(FloerkitError):
    pass


class NotAStrip(FloerkitError):
    pass


class LabelMismatch(FloerkitError):
    pass


class InputNotGenerator(FloerkitError):
    pass
