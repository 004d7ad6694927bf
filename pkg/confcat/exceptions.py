"""
Custom exceptions for django-confcat.

This module defines the exception hierarchy used across the combinatorial
engine. Legal "negative" answers (a missing lift, a failed checker) are
returned as values; these exceptions signal violated preconditions.
"""


class ConfcatError(Exception):
    """Base exception for confcat operations"""


class FinMapError(ConfcatError):
    """Raised when a map of finite sets is malformed"""


class PartitionError(ConfcatError):
    """Raised when blocks do not form a partition of their ground set"""


class CategoryError(ConfcatError):
    """Raised when a finite category table is inconsistent"""


class FunctorialityError(ConfcatError):
    """Raised when a functor or set-valued diagram fails functoriality"""


class GroupActionError(ConfcatError):
    """Raised when a group or group action is invalid or incompatible"""


class SimplicialError(ConfcatError):
    """Raised when simplicial identities or operator arguments are violated"""


class FiberConditionError(SimplicialError):
    """Raised when a stored pair (a, b) violates ref(a) = beta*(b)"""


class SegalConditionError(SimplicialError):
    """Raised when an operation requiring a Segal space gets something else"""


class BoundsError(ConfcatError):
    """Raised when enumeration bounds cannot cover the inputs"""

    def __init__(self, message, minimal_bounds=None):
        super().__init__(message)
        self.minimal_bounds = minimal_bounds


class CompressionError(ConfcatError):
    """Raised when a simplex over a degenerate base string cannot be compressed"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HomologyError(ConfcatError):
    """Raised when a chain complex is malformed (e.g. boundary squared is nonzero)"""


class InvalidStateTransitionError(ConfcatError, ValueError):
    """Raised when attempting invalid verification run state transition"""
