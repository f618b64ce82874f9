"""
The simplex-wise Morse sequence value type, its validation, its gradient vector field, and the
maximality and minimality audits.
"""

from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional as O, Union

from morse_sequences.core_complex import (
    Simplex,
    SimplexPool,
    closure,
    is_simplicial,
    make_simplex,
    underline,
)
from morse_sequences.errors import DomainError, StackError
from morse_sequences.homology_oracle import available_collapses, available_expansions
from morse_sequences.moves import PoolView
from morse_sequences.stacks import Stack, find_stack_violation


@dataclass(frozen=True)
class Critical:
    """
    A critical simplex of a Morse sequence, added by an elementary filling.
    """
    nu: Simplex

    def __post_init__(self):
        if not self.nu:
            raise ValueError("nu is required")
        object.__setattr__(self, "nu", make_simplex(self.nu))

    def simplexes(self) -> tuple[Simplex, ...]:
        return (self.nu,)

    @property
    def dimension(self) -> int:
        return len(self.nu) - 1


@dataclass(frozen=True)
class Pair:
    """
    A regular pair of a Morse sequence, added by an elementary expansion.

    sigma - the face.
    tau - the coface; σ must be a codimension one face of τ.
    """
    sigma: Simplex
    tau: Simplex

    def __post_init__(self):
        if not self.sigma or not self.tau:
            raise ValueError("sigma and tau are required")
        sigma = make_simplex(self.sigma)
        tau = make_simplex(self.tau)
        if len(tau) != len(sigma) + 1 or not set(sigma) < set(tau):
            raise ValueError(f"{sigma} is not a codimension one face of {tau}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", tau)

    def simplexes(self) -> tuple[Simplex, ...]:
        return (self.sigma, self.tau)

    @property
    def dimension(self) -> int:
        """ The dimension of τ. """
        return len(self.tau) - 1


MorseItem = Union[Critical, Pair]


@dataclass(frozen=True)
class MorseSequence:
    """
    A Morse sequence in simplex-wise form.

    items - the criticals and pairs, in the order they are added to the base.
    base - the complex L the sequence starts from. Empty by default.
    """
    items: tuple[MorseItem, ...]
    base: SimplexPool = field(default_factory=SimplexPool)

    def __post_init__(self):
        if self.items is None:
            raise ValueError("items is required")
        if self.base is None:
            raise ValueError("base is required")
        object.__setattr__(self, "items", tuple(self.items))
        for it in self.items:
            if not isinstance(it, (Critical, Pair)):
                raise ValueError(f"Illegal sequence item: {it!r}")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def simplexes(self) -> list[Simplex]:
        """ The simplexes added by the sequence, in order. """
        return [s for it in self.items for s in it.simplexes()]

    def complex(self) -> SimplexPool:
        """ The complex the sequence ends at: the base plus every added simplex. """
        return self.base.union(self.simplexes())

    def criticals(self) -> list[Simplex]:
        return [it.nu for it in self.items if isinstance(it, Critical)]

    def pairs(self) -> list[tuple[Simplex, Simplex]]:
        return [(it.sigma, it.tau) for it in self.items if isinstance(it, Pair)]


class ViolationType(Enum):
    """
    The reason a Morse sequence failed validation.
    """
    NOT_IN_COMPLEX = 1
    NOT_AN_EXPANSION = 2
    NOT_A_FILLING = 3
    WEIGHT_MISMATCH = 4
    INCOMPLETE = 5
    BASE_MISMATCH = 6


_REPORT_INDEX = "index"
_REPORT_VIOLATION = "violation"
_REPORT_MESSAGE = "message"

_VIOLATION_TO_REQ_ARGS = {
    ViolationType.NOT_IN_COMPLEX: (_REPORT_MESSAGE,),
    ViolationType.NOT_AN_EXPANSION: (_REPORT_MESSAGE,),
    ViolationType.NOT_A_FILLING: (_REPORT_MESSAGE,),
    ViolationType.WEIGHT_MISMATCH: (_REPORT_MESSAGE,),
    ViolationType.INCOMPLETE: (_REPORT_MESSAGE,),
    ViolationType.BASE_MISMATCH: (_REPORT_MESSAGE,),
}

# the base is not an item so a base mismatch has no index
_INDEXED = set(ViolationType) - {ViolationType.BASE_MISMATCH}


@dataclass(frozen=True)
class ValidationReport:
    f"""
    The outcome of validating a Morse sequence.

    valid - whether the sequence is valid.
    {_REPORT_INDEX} - the index of the first violating item. For an
        {ViolationType.INCOMPLETE.name} violation this is the number of items.
    {_REPORT_VIOLATION} - the type of the violation.
    {_REPORT_MESSAGE} - a description of the violation.

    A valid report has no other fields. An invalid report requires {_REPORT_VIOLATION} and
    {_REPORT_MESSAGE}, and {_REPORT_INDEX} for every violation type other than
    {ViolationType.BASE_MISMATCH.name}.
    """
    valid: bool
    index: O[int] = None
    violation: O[ViolationType] = None
    message: O[str] = None

    def __post_init__(self):
        if self.valid:
            if self.index is not None or self.violation or self.message:
                raise ValueError("A valid report cannot carry violation information")
            return
        if not self.violation:
            raise ValueError("violation is required for an invalid report")
        for attr in _VIOLATION_TO_REQ_ARGS[self.violation]:
            if not getattr(self, attr):
                raise ValueError(
                    f"{attr} is required for a {self.violation.name} violation")
        if self.violation in _INDEXED and (self.index is None or self.index < 0):
            raise ValueError(f"index is required for a {self.violation.name} violation")

    def __bool__(self) -> bool:
        return self.valid


_VALID = ValidationReport(True)


def _require_stack(F: Stack, S: SimplexPool):
    bad = find_stack_violation(F, S)
    if bad:
        raise StackError(
            f"The weight of {bad[0]} exceeds the weight of its coface {bad[1]}", *bad)


def _replay(
        seq: MorseSequence,
        K: SimplexPool,
        weight: O[Callable[[Simplex], int]] = None
) -> ValidationReport:
    view = PoolView(K, (K.index(s) for s in seq.base))
    for n, it in enumerate(seq.items):
        for s in it.simplexes():
            if s not in K:
                return ValidationReport(
                    False, n, ViolationType.NOT_IN_COMPLEX, f"{s} is not in the complex")
        if isinstance(it, Critical):
            i = K.index(it.nu)
            err = view.filling_violation(i)
            if err:
                return ValidationReport(False, n, ViolationType.NOT_A_FILLING, err)
            view.fill(i, checked=False)
        else:
            sigma, tau = K.index(it.sigma), K.index(it.tau)
            err = view.expansion_violation(sigma, tau)
            if err:
                return ValidationReport(False, n, ViolationType.NOT_AN_EXPANSION, err)
            if weight and weight(it.sigma) != weight(it.tau):
                return ValidationReport(
                    False, n, ViolationType.WEIGHT_MISMATCH,
                    f"F{it.sigma} = {weight(it.sigma)} but F{it.tau} = {weight(it.tau)}")
            view.expand(sigma, tau, checked=False)
    if len(view) != len(K):
        return ValidationReport(
            False, len(seq.items), ViolationType.INCOMPLETE,
            f"the sequence ends with {len(view)} of the {len(K)} simplexes of the complex")
    return _VALID


def _require_base(seq: MorseSequence, K: SimplexPool):
    if not is_simplicial(K):
        raise DomainError("Morse sequences are validated against a simplicial complex")
    for s in seq.base:
        if s not in K:
            raise DomainError(f"The base simplex {s} is not in the complex")
    if not is_simplicial(seq.base):
        raise DomainError("The base of the sequence is not a simplicial complex")


def validate(seq: MorseSequence, K: SimplexPool) -> ValidationReport:
    """
    Replay a sequence from its base and check that every pair is an elementary expansion and
    every critical simplex an elementary filling, and that the sequence ends at K.

    seq - the sequence.
    K - the simplicial complex the sequence should end at. The base must be a subcomplex.
    :returns: a report naming the first violating item, if any.
    """
    _require_base(seq, K)
    return _replay(seq, K)


def validate_f(seq: MorseSequence, K: SimplexPool, F: Stack) -> ValidationReport:
    """
    Validate a sequence as in validate and also check that both simplexes of every pair have the
    same weight.

    F - a stack total on K \\ L. Throws a StackError if F is not monotone.
    """
    _require_base(seq, K)
    S = K.difference(seq.base)
    _require_stack(F, S)
    return _replay(seq, K, F.__getitem__)


def validate_on(
        seq: MorseSequence,
        S: SimplexPool,
        F: O[Stack] = None
) -> ValidationReport:
    """
    Validate a sequence on a cosimplicial complex S, that is a sequence from the underline of S
    to the closure of S.

    F - an optional stack on S. If provided the sequence is validated as an F-sequence.
    """
    if not S.cosimplicial:
        raise DomainError("The pool is not a cosimplicial complex")
    if seq.base != underline(S):
        return ValidationReport(
            False, violation=ViolationType.BASE_MISMATCH,
            message="the base of the sequence is not the underline of the cosimplicial complex")
    K = closure(S)
    if F is None:
        return _replay(seq, K)
    _require_stack(F, S)
    return _replay(seq, K, F.__getitem__)


@dataclass(frozen=True)
class GradientVectorField:
    """
    The regular pairs of a Morse sequence together with its critical simplexes.

    pairs - the (σ, τ) pairs. No simplex may appear in two pairs.
    criticals - the critical simplexes.
    """
    pairs: frozenset[tuple[Simplex, Simplex]]
    criticals: frozenset[Simplex] = frozenset()

    def __post_init__(self):
        if self.pairs is None:
            raise ValueError("pairs is required")
        seen = Counter(s for p in self.pairs for s in p)
        dupes = sorted(s for s, c in seen.items() if c > 1)
        if dupes:
            raise ValueError(f"Simplex {dupes[0]} appears in more than one pair")
        both = seen.keys() & self.criticals
        if both:
            raise ValueError(f"Simplex {min(both)} is both critical and paired")

    @cached_property
    def partner(self) -> dict[Simplex, Simplex]:
        """ Maps σ to τ for every pair (σ, τ). """
        return dict(self.pairs)

    @cached_property
    def heads(self) -> frozenset[Simplex]:
        """ The τ of every pair. """
        return frozenset(t for _, t in self.pairs)


def gradient_field(seq: MorseSequence) -> GradientVectorField:
    """ The gradient vector field of a sequence: all of its regular pairs. """
    return GradientVectorField(frozenset(seq.pairs()), frozenset(seq.criticals()))


def equivalent(seq_a: MorseSequence, seq_b: MorseSequence) -> bool:
    """ True if the two sequences have the same gradient vector field. """
    return gradient_field(seq_a) == gradient_field(seq_b)


def critical_vector(seq: MorseSequence) -> list[int]:
    """
    The number of critical simplexes per dimension, from 0 up to the highest dimension of an
    item of the sequence.
    """
    top = max((it.dimension for it in seq.items), default=-1)
    counts = [0] * (top + 1)
    for nu in seq.criticals():
        counts[len(nu) - 1] += 1
    return counts


def euler_from_criticals(seq: MorseSequence) -> int:
    """ The alternating sum of the critical vector. """
    return sum((-1) ** d * c for d, c in enumerate(critical_vector(seq)))


def _weight(it: MorseItem, F: Stack) -> int:
    return F[it.nu] if isinstance(it, Critical) else F[it.tau]


def restrict_to_cut(seq: MorseSequence, F: Stack, lambda_: int) -> MorseSequence:
    """
    Restrict an F-sequence to the cut of F at level λ: the items of weight at most λ, in order,
    starting from the part of the base in the cut.

    F - a stack total on the base and on every simplex of the sequence.
    """
    base = SimplexPool((s for s in seq.base if F[s] <= lambda_), canonical=True)
    return MorseSequence(tuple(it for it in seq.items if _weight(it, F) <= lambda_), base)


def _weights_outside(K: SimplexPool, base: SimplexPool, F: Stack) -> list[O[int]]:
    # simplexes of the base never take part in a move, so they need no weight
    return [None if s in base else F[s] for s in K]


def audit_maximal(seq: MorseSequence, K: SimplexPool, F: Stack) -> bool:
    """
    Check that a valid F-sequence is maximal for F: before every critical simplex is added, the
    complex built so far admits no elementary F-expansion inside K.

    This is an exhaustive check, suitable for small complexes only.

    seq - the sequence, valid from its base to K.
    K - the simplicial complex.
    F - a stack total on K \\ L.
    """
    _require_base(seq, K)
    w = _weights_outside(K, seq.base, F)
    view = PoolView(K, (K.index(s) for s in seq.base))
    for it in seq.items:
        if isinstance(it, Critical):
            if next(available_expansions(view, w), None) is not None:
                return False
            view.fill(K.index(it.nu), checked=False)
        else:
            view.expand(K.index(it.sigma), K.index(it.tau), checked=False)
    return True


def audit_minimal(seq: MorseSequence, L: SimplexPool, F: Stack) -> bool:
    """
    Check that a valid F-sequence is minimal for F. Read right to left the sequence removes
    pairs by collapses and critical simplexes by perforations; it is minimal if, whenever a
    critical simplex is about to be removed, the current complex admits no elementary F-collapse
    of a pair outside L.

    This is an exhaustive check, suitable for small complexes only.

    seq - the sequence, valid from L to its final complex.
    L - the base of the sequence.
    F - a stack total on the simplexes added by the sequence.
    """
    if L != seq.base:
        raise DomainError("L is not the base of the sequence")
    K = seq.complex()
    w = _weights_outside(K, seq.base, F)
    keep = [s in seq.base for s in K]
    view = PoolView(K, (K.index(s) for s in seq.base))
    for it in seq.items:
        if isinstance(it, Critical):
            view.fill(K.index(it.nu), checked=False)
            if next(available_collapses(view, w, keep), None) is not None:
                return False
        else:
            view.expand(K.index(it.sigma), K.index(it.tau), checked=False)
    return True


def items_from(simplexes: Iterable[Union[Simplex, tuple[Simplex, Simplex]]]) -> tuple:
    """
    Build sequence items from plain values: a simplex becomes a Critical, a (σ, τ) tuple of
    simplexes becomes a Pair.
    """
    res = []
    for x in simplexes:
        if x and isinstance(x[0], tuple):
            res.append(Pair(*x))
        else:
            res.append(Critical(x))
    return tuple(res)
