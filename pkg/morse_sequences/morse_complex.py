"""
The Morse complex of a Morse sequence over the two element field.

The Morse reference maps each simplex to the critical simplexes of the same dimension reached
by an odd number of gradient paths. It is computed in one left to right pass over the sequence:
a critical ν references itself, and when a pair (σ, τ) is added σ references the sum of the
references of the other faces of τ while τ references nothing. The Morse boundary of a critical
simplex is the sum of the references of its faces.
"""

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from frozendict import frozendict

from morse_sequences.core_complex import Simplex, faces
from morse_sequences.errors import DomainError
from morse_sequences.morse_sequence import Critical, MorseSequence, validate
from morse_sequences.utils import Settings


def _sum(chains: Iterable[frozenset]) -> frozenset:
    res = set()
    for c in chains:
        res ^= c
    return frozenset(res)


@dataclass(frozen=True)
class MorseReference:
    """
    The Morse reference of a sequence.

    references - a map from every simplex of the complex to a set of critical simplexes of the
        same dimension.
    """
    references: frozendict

    def __post_init__(self):
        if self.references is None:
            raise ValueError("references is required")

    def __getitem__(self, s: Simplex) -> frozenset:
        return self.references[tuple(sorted(s))]

    def __len__(self) -> int:
        return len(self.references)


@dataclass(frozen=True)
class MorseBoundary:
    """
    The boundary operator of the Morse complex.

    boundary - a map from every critical d-simplex to the set of critical (d - 1)-simplexes in
        its boundary.
    """
    boundary: frozendict

    def __post_init__(self):
        if self.boundary is None:
            raise ValueError("boundary is required")

    def __getitem__(self, nu: Simplex) -> frozenset:
        return self.boundary[tuple(sorted(nu))]

    def criticals(self, d: int) -> list[Simplex]:
        """ The critical simplexes of dimension d, sorted. """
        return sorted(nu for nu in self.boundary if len(nu) == d + 1)

    def squares_to_zero(self) -> bool:
        return all(not _sum(self.boundary[mu] for mu in b) for b in self.boundary.values())


def _require_valid(seq: MorseSequence):
    if len(seq.base):
        raise DomainError("The Morse complex is only computed for sequences with an empty base")
    report = validate(seq, seq.complex())
    if not report.valid:
        raise DomainError(f"Invalid Morse sequence at item {report.index}: {report.message}")


def morse_reference(seq: MorseSequence) -> MorseReference:
    """
    Compute the Morse reference of a valid Morse sequence with an empty base.
    Throws a DomainError if the sequence is invalid.
    """
    _require_valid(seq)
    ref = {}
    for it in seq.items:
        if isinstance(it, Critical):
            ref[it.nu] = frozenset((it.nu,))
        else:
            ref[it.sigma] = _sum(ref[mu] for mu in faces(it.tau) if mu != it.sigma)
            ref[it.tau] = frozenset()
    return MorseReference(frozendict(ref))


def _boundary_from(ref: Mapping[Simplex, frozenset], criticals: Iterable[Simplex]) -> dict:
    return {nu: _sum(ref[mu] for mu in faces(nu)) for nu in criticals}


def morse_boundary(seq: MorseSequence) -> MorseBoundary:
    """
    Compute the boundary operator of the Morse complex of a valid Morse sequence with an empty
    base. Throws a DomainError if the sequence is invalid.
    """
    ref = morse_reference(seq).references
    mb = MorseBoundary(frozendict(_boundary_from(ref, seq.criticals())))
    if Settings.debug_checks():
        assert mb.squares_to_zero(), "the Morse boundary does not square to zero"
    return mb


def _rank(columns: Mapping[Simplex, frozenset]) -> int:
    # column reduction by lowest pivot over the two element field
    pivots = {}
    rank = 0
    for col in sorted(columns):
        c = set(columns[col])
        while c:
            low = max(c)
            if low not in pivots:
                pivots[low] = c
                rank += 1
                break
            c ^= pivots[low]
    return rank


def betti_mod2_from_morse(seq: MorseSequence) -> list[int]:
    """
    The mod 2 Betti numbers of the complex of a sequence, computed on its Morse complex.
    """
    mb = morse_boundary(seq)
    top = seq.complex().dimension
    counts = [len(mb.criticals(d)) for d in range(top + 1)]
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        ranks[d] = _rank({nu: mb[nu] for nu in mb.criticals(d)})
    return [counts[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)]
