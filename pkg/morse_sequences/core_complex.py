"""
Simplexes, pools of simplexes, and the simplicial and cosimplicial predicates.

A simplex is a strictly increasing tuple of non-negative vertex ids, so structural equality is
set equality. A SimplexPool is an immutable finite set of simplexes with a stable index per
simplex. Pools are ordered by (dimension, vertex sequence) and carry their boundary and
coboundary index lists, computed once at construction, so that ∂ and δ queries relative to the
pool cost O(d).
"""

import itertools
import numbers

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional as O

from morse_sequences.errors import DomainError
from morse_sequences.utils import Settings

Simplex = tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """
    Canonicalize a collection of vertex ids into a simplex.

    vertices - the vertex ids. There must be at least one, all non-negative integers, with no
        duplicates.
    """
    verts = tuple(vertices)
    if not verts:
        raise DomainError("A simplex must have at least one vertex")
    for v in verts:
        if isinstance(v, bool) or not isinstance(v, numbers.Integral) or v < 0:
            raise DomainError(f"Vertex ids must be non-negative integers, got {v!r}")
    s = tuple(sorted(int(v) for v in verts))
    if len(set(s)) != len(s):
        raise DomainError(f"Duplicate vertex id in simplex {verts}")
    return s


def dim(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex) -> tuple[Simplex, ...]:
    """ The codimension one faces of a simplex; empty for a vertex. """
    if len(s) < 2:
        return ()
    return tuple(s[:i] + s[i + 1:] for i in range(len(s)))


def _as_key(s: Any) -> O[Simplex]:
    # membership tests accept any iterable of vertex ids without raising
    try:
        return tuple(sorted(s))
    except TypeError:
        return None


def _order_key(s: Simplex) -> tuple[int, Simplex]:
    return (len(s), s)


class SimplexPool:
    """
    An immutable, deterministically ordered finite set of simplexes.

    Iteration and indexing follow the order (dimension, vertex sequence). Duplicate input
    simplexes are merged.
    """

    def __init__(self, simplexes: Iterable[Iterable[int]] = (), *, canonical: bool = False):
        """
        simplexes - the members of the pool.
        canonical - skip validation; the caller guarantees that every member is already a
            canonical simplex.
        """
        if canonical:
            members = set(simplexes)
        else:
            members = {make_simplex(s) for s in simplexes}
        self._simplexes = tuple(sorted(members, key=_order_key))
        self._index = {s: i for i, s in enumerate(self._simplexes)}
        boundary = []
        coboundary = [[] for _ in self._simplexes]
        for i, s in enumerate(self._simplexes):
            b = []
            for face in faces(s):
                j = self._index.get(face)
                if j is not None:
                    b.append(j)
                    coboundary[j].append(i)
            boundary.append(tuple(b))
        self._boundary = tuple(boundary)
        self._coboundary = tuple(tuple(c) for c in coboundary)

    def __len__(self) -> int:
        return len(self._simplexes)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self._simplexes)

    def __getitem__(self, i: int) -> Simplex:
        return self._simplexes[i]

    def __contains__(self, s: Any) -> bool:
        return _as_key(s) in self._index

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SimplexPool):
            return NotImplemented
        return self._simplexes == other._simplexes

    def __hash__(self) -> int:
        return hash(self._simplexes)

    def __repr__(self) -> str:
        return f"SimplexPool({list(self._simplexes)!r})"

    @property
    def simplexes(self) -> tuple[Simplex, ...]:
        return self._simplexes

    @property
    def dimension(self) -> int:
        """ The maximum simplex dimension, or -1 for an empty pool. """
        return dim(self._simplexes[-1]) if self._simplexes else -1

    def index(self, s: Iterable[int]) -> int:
        """ Get the index of a member simplex. Throws a DomainError if it is not a member. """
        i = self._index.get(_as_key(s))
        if i is None:
            raise DomainError(f"Simplex {tuple(s)} is not a member of the pool")
        return i

    def boundary_indices(self, i: int) -> tuple[int, ...]:
        return self._boundary[i]

    def coboundary_indices(self, i: int) -> tuple[int, ...]:
        return self._coboundary[i]

    def vertices(self) -> tuple[Simplex, ...]:
        return tuple(s for s in self._simplexes if len(s) == 1)

    def count_by_dimension(self) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for s in self._simplexes:
            counts[len(s) - 1] += 1
        return counts

    def union(self, simplexes: Iterable[Simplex]) -> "SimplexPool":
        return SimplexPool(
            itertools.chain(self._simplexes, (make_simplex(s) for s in simplexes)),
            canonical=True)

    def difference(self, simplexes: Iterable[Simplex]) -> "SimplexPool":
        drop = {_as_key(s) for s in simplexes}
        return SimplexPool((s for s in self._simplexes if s not in drop), canonical=True)

    @cached_property
    def simplicial(self) -> bool:
        return is_simplicial(self)

    @cached_property
    def cosimplicial(self) -> bool:
        return is_cosimplicial(self)


def _require_member(nu: Simplex, S: SimplexPool) -> int:
    return S.index(nu)


def boundary(nu: Simplex, S: SimplexPool) -> set[Simplex]:
    """
    The faces of ν of dimension dim(ν) - 1 that are members of S.
    Throws a DomainError if ν is not a member of S.
    """
    i = _require_member(nu, S)
    return {S[j] for j in S.boundary_indices(i)}


def _closure_coboundary(nu: Simplex, S: SimplexPool) -> set[Simplex]:
    # δ(ν, S̄) without materializing S̄
    nu_set = set(nu)
    res = set()
    for w in S:
        if len(w) > len(nu) and nu_set.issubset(w):
            for v in w:
                if v not in nu_set:
                    res.add(tuple(sorted(nu + (v,))))
    return res


def coboundary(nu: Simplex, S: SimplexPool) -> set[Simplex]:
    """
    The simplexes τ ⊃ ν of dimension dim(ν) + 1 that are members of the closure of S.
    Throws a DomainError if ν is not a member of S.

    For a cosimplicial pool the result is contained in S and is read from the precomputed
    coboundary lists.
    """
    i = _require_member(nu, S)
    if not S.cosimplicial:
        return _closure_coboundary(S[i], S)
    res = {S[j] for j in S.coboundary_indices(i)}
    if Settings.debug_checks():
        assert res == _closure_coboundary(S[i], S), f"coboundary of {nu} escapes the pool"
    return res


def closure(S: SimplexPool) -> SimplexPool:
    """ The smallest simplicial complex containing S. """
    members = set()
    for s in S:
        if s in members:
            continue
        for r in range(1, len(s) + 1):
            members.update(itertools.combinations(s, r))
    return SimplexPool(members, canonical=True)


def underline(S: SimplexPool) -> SimplexPool:
    """ The closure of S minus S. Empty when S is a simplicial complex. """
    if S.simplicial:
        return SimplexPool()
    return closure(S).difference(S)


def is_simplicial(S: SimplexPool) -> bool:
    """ True if every non-empty subset of every member of S is a member of S. """
    # closing under codimension one faces is enough by induction on dimension
    return all(len(S.boundary_indices(i)) == len(S[i]) for i in range(len(S))
               if len(S[i]) > 1)


def is_cosimplicial(S: SimplexPool) -> bool:
    """ True if ν ∈ S whenever σ ⊆ ν ⊆ τ for some σ, τ ∈ S. """
    # If a between-simplex is missing, the largest missing simplex on a maximal chain from σ to
    # τ is a missing codimension one face of a member that still contains a member. So it is
    # enough to check missing codimension one faces.
    for i, tau in enumerate(S):
        if len(S.boundary_indices(i)) == len(faces(tau)):
            continue
        for nu in faces(tau):
            if nu in S:
                continue
            for r in range(1, len(nu)):
                if any(sub in S for sub in itertools.combinations(nu, r)):
                    return False
    return True


def euler_characteristic(S: SimplexPool) -> int:
    return sum((-1) ** (len(s) - 1) for s in S)


@dataclass(frozen=True)
class CosimplicialComplex:
    """
    A pool of simplexes closed under betweenness.

    pool - the simplexes. Construction fails with a DomainError if the pool is not
        cosimplicial.
    """
    pool: SimplexPool

    def __post_init__(self):
        if self.pool is None:
            raise ValueError("pool is required")
        if not self.pool.cosimplicial:
            raise DomainError("The pool is not a cosimplicial complex")

    def __len__(self) -> int:
        return len(self.pool)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.pool)

    def __contains__(self, s: Any) -> bool:
        return s in self.pool
