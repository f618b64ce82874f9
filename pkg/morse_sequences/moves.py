"""
Elementary moves on simplicial complexes (collapse, expansion, filling, perforation) and their
set-level counterparts on cosimplicial complexes (reduction, perforation, coreduction,
coperforation).

The module level functions are the checked entry points: they verify the precondition of the
move, throw a MoveError naming the violated condition, and return a new pool. PoolView is the
mutable counterpart used by the schedulers and the validators; its moves can skip the
precondition checks.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from enum import Enum
from typing import Optional as O

from morse_sequences.core_complex import (
    Simplex,
    SimplexPool,
    boundary,
    coboundary,
    is_simplicial,
    make_simplex,
)
from morse_sequences.errors import DomainError, MoveError


@dataclass(frozen=True)
class FreePair:
    """
    A candidate pair for a collapse or an expansion.

    sigma - the face.
    tau - the coface, one dimension higher than sigma and containing it.
    """
    sigma: Simplex
    tau: Simplex

    def __post_init__(self):
        if not self.sigma or not self.tau:
            raise ValueError("sigma and tau are required")
        if len(self.tau) != len(self.sigma) + 1 or not set(self.sigma) < set(self.tau):
            raise ValueError(
                f"{self.sigma} is not a codimension one face of {self.tau}")


class Move(Enum):
    """
    The elementary moves.
    """
    COLLAPSE = 1
    EXPANSION = 2
    FILLING = 3
    PERFORATION = 4
    REDUCTION = 5
    SET_PERFORATION = 6
    COREDUCTION = 7
    COPERFORATION = 8


def _is_codim_one(sigma: Simplex, tau: Simplex) -> bool:
    return len(tau) == len(sigma) + 1 and set(sigma) < set(tau)


def _strict_cofaces(K: SimplexPool, sigma: Simplex) -> set[Simplex]:
    s = set(sigma)
    return {t for t in K if len(t) > len(sigma) and s.issubset(t)}


def _require_members(K: SimplexPool, *simplexes: Simplex):
    for s in simplexes:
        if s not in K:
            raise DomainError(f"Simplex {tuple(s)} is not a member of the complex")


def is_free_pair(sigma: Simplex, tau: Simplex, K: SimplexPool) -> bool:
    """
    True if τ is the only member of the simplicial complex K strictly containing σ.
    Throws a DomainError if σ or τ is not a member of K.
    """
    _require_members(K, sigma, tau)
    sigma, tau = make_simplex(sigma), make_simplex(tau)
    return _is_codim_one(sigma, tau) and _strict_cofaces(K, sigma) == {tau}


def _collapse_violation(K: SimplexPool, sigma: Simplex, tau: Simplex) -> O[str]:
    if not is_simplicial(K):
        return "the complex is not a simplicial complex"
    if sigma not in K or tau not in K:
        return f"({sigma}, {tau}) is not a pair of the complex"
    if not is_free_pair(sigma, tau, K):
        return f"({sigma}, {tau}) is not a free pair of the complex"
    return None


def _expansion_violation(L: SimplexPool, sigma: Simplex, tau: Simplex) -> O[str]:
    if sigma in L or tau in L:
        return f"({sigma}, {tau}) is not disjoint from the complex"
    K = L.union((sigma, tau))
    if not is_simplicial(K):
        return f"adding ({sigma}, {tau}) does not give a simplicial complex"
    if not is_free_pair(sigma, tau, K):
        return f"({sigma}, {tau}) is not a free pair of the expanded complex"
    return None


def _filling_violation(L: SimplexPool, nu: Simplex) -> O[str]:
    if nu in L:
        return f"{nu} is already in the complex"
    if _strict_cofaces(L, nu):
        return f"{nu} is not a facet of the filled complex"
    if not is_simplicial(L.union((nu,))):
        return f"adding {nu} does not give a simplicial complex"
    return None


def _perforation_violation(K: SimplexPool, nu: Simplex) -> O[str]:
    if not is_simplicial(K):
        return "the complex is not a simplicial complex"
    if nu not in K:
        return f"{nu} is not in the complex"
    if _strict_cofaces(K, nu):
        return f"{nu} is not a facet of the complex"
    return None


def _cosimplicial_violation(S: SimplexPool, *simplexes: Simplex) -> O[str]:
    if not S.cosimplicial:
        return "the pool is not a cosimplicial complex"
    for s in simplexes:
        if s not in S:
            return f"{s} is not in the cosimplicial complex"
    return None


def _reduction_violation(S: SimplexPool, sigma: Simplex, tau: Simplex) -> O[str]:
    err = _cosimplicial_violation(S, sigma, tau)
    if err:
        return err
    if coboundary(sigma, S) != {tuple(tau)} or not _is_codim_one(tuple(sigma), tuple(tau)):
        return f"the coboundary of {sigma} is not {{{tau}}}"
    return None


def _set_perforation_violation(S: SimplexPool, nu: Simplex) -> O[str]:
    err = _cosimplicial_violation(S, nu)
    if err:
        return err
    if coboundary(nu, S):
        return f"the coboundary of {nu} is not empty"
    return None


def _coreduction_violation(S: SimplexPool, sigma: Simplex, tau: Simplex) -> O[str]:
    err = _cosimplicial_violation(S, sigma, tau)
    if err:
        return err
    if boundary(tau, S) != {tuple(sigma)}:
        return f"the boundary of {tau} is not {{{sigma}}}"
    return None


def _coperforation_violation(S: SimplexPool, nu: Simplex) -> O[str]:
    err = _cosimplicial_violation(S, nu)
    if err:
        return err
    if boundary(nu, S):
        return f"the boundary of {nu} is not empty"
    return None


_MOVE_CHECKS: dict[Move, Callable[..., O[str]]] = {
    Move.COLLAPSE: _collapse_violation,
    Move.EXPANSION: _expansion_violation,
    Move.FILLING: _filling_violation,
    Move.PERFORATION: _perforation_violation,
    Move.REDUCTION: _reduction_violation,
    Move.SET_PERFORATION: _set_perforation_violation,
    Move.COREDUCTION: _coreduction_violation,
    Move.COPERFORATION: _coperforation_violation,
}

_ADDS = {Move.EXPANSION, Move.FILLING}


def move_violation(move: Move, pool: SimplexPool, *simplexes: Simplex) -> O[str]:
    """
    Check the precondition of a move.

    move - the move.
    pool - the complex (or cosimplicial complex) the move applies to.
    simplexes - (sigma, tau) for the pair moves, (nu,) for the single simplex moves.
    :returns: None if the move applies, otherwise the violated condition.
    """
    return _MOVE_CHECKS[move](pool, *(make_simplex(s) for s in simplexes))


def can_apply(move: Move, pool: SimplexPool, *simplexes: Simplex) -> bool:
    return move_violation(move, pool, *simplexes) is None


def apply_move(move: Move, pool: SimplexPool, *simplexes: Simplex) -> SimplexPool:
    """
    Apply a move and return the resulting pool. Throws a MoveError if the precondition fails.
    """
    err = move_violation(move, pool, *simplexes)
    if err:
        raise MoveError(f"{move.name.lower().replace('_', ' ')} failed: {err}")
    simplexes = tuple(make_simplex(s) for s in simplexes)
    if move in _ADDS:
        return pool.union(simplexes)
    return pool.difference(simplexes)


def elementary_collapse(K: SimplexPool, pair: FreePair) -> SimplexPool:
    return apply_move(Move.COLLAPSE, K, pair.sigma, pair.tau)


def elementary_expansion(L: SimplexPool, pair: FreePair) -> SimplexPool:
    return apply_move(Move.EXPANSION, L, pair.sigma, pair.tau)


def elementary_filling(L: SimplexPool, nu: Simplex) -> SimplexPool:
    return apply_move(Move.FILLING, L, nu)


def elementary_perforation(K: SimplexPool, nu: Simplex) -> SimplexPool:
    return apply_move(Move.PERFORATION, K, nu)


def reduction(S: SimplexPool, sigma: Simplex, tau: Simplex) -> SimplexPool:
    return apply_move(Move.REDUCTION, S, sigma, tau)


def perforation_set(S: SimplexPool, nu: Simplex) -> SimplexPool:
    return apply_move(Move.SET_PERFORATION, S, nu)


def coreduction(S: SimplexPool, sigma: Simplex, tau: Simplex) -> SimplexPool:
    return apply_move(Move.COREDUCTION, S, sigma, tau)


def coperforation(S: SimplexPool, nu: Simplex) -> SimplexPool:
    return apply_move(Move.COPERFORATION, S, nu)


class PoolView:
    """
    A mutable membership bitmap over an immutable pool.

    The view models the simplicial complex made of the present members of the pool together
    with every face that lies outside the pool. For a cosimplicial pool S those outside faces are
    exactly the underline of S, so a view that starts empty holds S̲ and a full view holds the
    closure of S.

    All arguments are pool indices. A view has a single owner and is never shared between
    workers.
    """

    def __init__(self, pool: SimplexPool, present: Iterable[int] = ()):
        self.pool = pool
        self._present = bytearray(len(pool))
        self._count = 0
        for i in present:
            self.add(i)

    @staticmethod
    def full(pool: SimplexPool) -> "PoolView":
        return PoolView(pool, range(len(pool)))

    def __len__(self) -> int:
        return self._count

    def __contains__(self, i: int) -> bool:
        return bool(self._present[i])

    def add(self, i: int):
        if not self._present[i]:
            self._present[i] = 1
            self._count += 1

    def remove(self, i: int):
        if self._present[i]:
            self._present[i] = 0
            self._count -= 1

    def present_boundary(self, i: int) -> list[int]:
        return [j for j in self.pool.boundary_indices(i) if self._present[j]]

    def absent_boundary(self, i: int) -> list[int]:
        return [j for j in self.pool.boundary_indices(i) if not self._present[j]]

    def present_coboundary(self, i: int) -> list[int]:
        return [j for j in self.pool.coboundary_indices(i) if self._present[j]]

    def absent_coboundary(self, i: int) -> list[int]:
        return [j for j in self.pool.coboundary_indices(i) if not self._present[j]]

    def members(self) -> SimplexPool:
        return SimplexPool(
            (s for i, s in enumerate(self.pool) if self._present[i]), canonical=True)

    def expansion_violation(self, sigma: int, tau: int) -> O[str]:
        p = self.pool
        if self._present[sigma] or self._present[tau]:
            return f"({p[sigma]}, {p[tau]}) is not disjoint from the complex"
        if sigma not in p.boundary_indices(tau):
            return f"{p[sigma]} is not a face of {p[tau]}"
        if self.absent_boundary(sigma):
            return f"a face of {p[sigma]} is missing from the complex"
        if self.absent_boundary(tau) != [sigma]:
            return f"a face of {p[tau]} other than {p[sigma]} is missing from the complex"
        return None

    def filling_violation(self, nu: int) -> O[str]:
        p = self.pool
        if self._present[nu]:
            return f"{p[nu]} is already in the complex"
        if self.absent_boundary(nu):
            return f"a face of {p[nu]} is missing from the complex"
        return None

    def collapse_violation(self, sigma: int, tau: int) -> O[str]:
        p = self.pool
        if not (self._present[sigma] and self._present[tau]):
            return f"({p[sigma]}, {p[tau]}) is not in the complex"
        if self.present_coboundary(sigma) != [tau]:
            return f"{p[tau]} is not the only coface of {p[sigma]}"
        if self.present_coboundary(tau):
            return f"{p[tau]} is not a facet of the complex"
        return None

    def perforation_violation(self, nu: int) -> O[str]:
        p = self.pool
        if not self._present[nu]:
            return f"{p[nu]} is not in the complex"
        if self.present_coboundary(nu):
            return f"{p[nu]} is not a facet of the complex"
        return None

    @staticmethod
    def _raise_if(move: str, err: O[str]):
        if err:
            raise MoveError(f"{move} failed: {err}")

    def expand(self, sigma: int, tau: int, checked: bool = True):
        """ Add a free pair. Equivalent to a coreduction of the absent part of the pool. """
        if checked:
            self._raise_if("expansion", self.expansion_violation(sigma, tau))
        self.add(sigma)
        self.add(tau)

    def fill(self, nu: int, checked: bool = True):
        """ Add a facet. Equivalent to a coperforation of the absent part of the pool. """
        if checked:
            self._raise_if("filling", self.filling_violation(nu))
        self.add(nu)

    def collapse(self, sigma: int, tau: int, checked: bool = True):
        """ Remove a free pair. Equivalent to a reduction of the present part of the pool. """
        if checked:
            self._raise_if("collapse", self.collapse_violation(sigma, tau))
        self.remove(sigma)
        self.remove(tau)

    def perforate(self, nu: int, checked: bool = True):
        """ Remove a facet. Equivalent to a perforation of the present part of the pool. """
        if checked:
            self._raise_if("perforation", self.perforation_violation(nu))
        self.remove(nu)
