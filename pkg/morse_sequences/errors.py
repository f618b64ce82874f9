"""
Exceptions raised by the morse_sequences package.
"""

from typing import Optional as O


class MorseSequenceError(Exception):
    """
    The base class of all exceptions thrown by this package.
    """
    pass


class DomainError(MorseSequenceError, ValueError):
    """
    An exception thrown when an argument is outside the domain of an operation, e.g. a simplex
    that is not a member of a pool, a stack that is not total, or a non-injective vertex map
    where a ϑ-map is required.
    """
    pass


class StackError(DomainError):
    """
    An exception thrown when a weight function is not monotone under face inclusion.

    sigma - the face with the larger weight.
    tau - the coface with the smaller weight.
    """

    def __init__(self, message: str, sigma: O[tuple[int, ...]] = None,
                 tau: O[tuple[int, ...]] = None):
        super().__init__(message)
        self.sigma = sigma
        self.tau = tau


class MoveError(MorseSequenceError):
    """
    An exception thrown when an elementary move is applied but its precondition does not hold.
    The message names the violated condition.
    """
    pass
