"""
Construction of Morse sequences: the maximal increasing sweep Max(S, F), the minimal decreasing
sweep Min(S, F), the lower star driver that runs Max on every lower star of a ϑ-map in
parallel, and the slow whole-complex schemes the sweeps are checked against.

Both sweeps visit the pool in a fixed total order. The Max order sorts by weight, then dimension,
then vertex sequence; the Min order is its exact reverse. The candidate worklist is a heap keyed
by position in that order, so the sweeps and the schemes pick the same move at every step.
"""

import asyncio
import heapq
import logging

from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional as O, Union

from morse_sequences.core_complex import (
    CosimplicialComplex,
    Simplex,
    SimplexPool,
    is_simplicial,
    underline,
)
from morse_sequences.errors import DomainError, StackError
from morse_sequences.homology_oracle import available_collapses, available_expansions
from morse_sequences.morse_sequence import Critical, MorseItem, MorseSequence, Pair
from morse_sequences.moves import PoolView
from morse_sequences.stacks import (
    Stack,
    VertexMap,
    constant_stack,
    find_stack_violation,
    is_theta_map,
    lower_star_partition,
    weights_on,
)
from morse_sequences.utils import Settings


class Scheme(Enum):
    """
    The direction of a sequence construction.
    """
    MAX = 1
    MIN = 2


def max_order(pool: SimplexPool, weights: Sequence[int]) -> list[int]:
    """ Pool indexes by increasing weight, then dimension, then vertex sequence. """
    return sorted(range(len(pool)), key=lambda i: (weights[i], len(pool[i]), pool[i]))


def min_order(pool: SimplexPool, weights: Sequence[int]) -> list[int]:
    """ The reverse of max_order. """
    return max_order(pool, weights)[::-1]


@dataclass
class OrderedPool:
    """
    The scratch state of one sweep.

    pool - the cosimplicial complex being swept.
    weights - the weight of every pool index.
    order - the pool indexes in sweep order.
    rho - per index, the number of its not yet added boundary faces (Max) or coboundary faces
        (Min) inside the pool.
    candidates - a heap of (position in order, index) entries with rho equal to one when pushed.
    removed - the indexes already emitted.

    The candidates are a priority queue keyed by sweep order rather than a FIFO queue. Pairs then
    come out in the same order as from scheme_max and scheme_min, item for item, at the price of
    O(n log n) heap work over the sweep instead of O(n).
    """
    pool: SimplexPool
    weights: Sequence[int]
    order: list[int]
    rho: list[int] = field(default_factory=list)
    candidates: list[tuple[int, int]] = field(default_factory=list)
    removed: bytearray = field(default_factory=bytearray)

    def __post_init__(self):
        self.position = [0] * len(self.order)
        for p, i in enumerate(self.order):
            self.position[i] = p
        if not self.removed:
            self.removed = bytearray(len(self.pool))

    def push(self, i: int):
        heapq.heappush(self.candidates, (self.position[i], i))


_Adjacency = Callable[[int], Sequence[int]]


def _check_rho(op: OrderedPool, down: _Adjacency):
    for i in range(len(op.pool)):
        if not op.removed[i]:
            fresh = sum(1 for j in down(i) if not op.removed[j])
            assert op.rho[i] == fresh, f"stale counter at {op.pool[i]}"


def _sweep(
        op: OrderedPool,
        down: _Adjacency,
        up: _Adjacency,
        emit_pair: Callable[[int, int], None],
        emit_critical: Callable[[int], None],
) -> None:
    op.rho = [len(down(i)) for i in range(len(op.pool))]
    op.candidates = [(op.position[i], i) for i in range(len(op.pool)) if op.rho[i] == 1]
    heapq.heapify(op.candidates)
    debug = Settings.debug_checks()

    def take(x: int):
        op.removed[x] = 1
        for m in up(x):
            op.rho[m] -= 1
            if op.rho[m] == 1:
                op.push(m)

    k = 0
    n = len(op.pool)
    while k < n:
        while op.candidates:
            _, x = heapq.heappop(op.candidates)
            if op.removed[x] or op.rho[x] != 1:
                continue
            partner = next(j for j in down(x) if not op.removed[j])
            if op.weights[partner] != op.weights[x]:
                # the pair stays unavailable for good: only partner can leave down(x)
                continue
            emit_pair(partner, x)
            take(partner)
            take(x)
        while k < n and op.removed[op.order[k]]:
            k += 1
        if k < n:
            x = op.order[k]
            emit_critical(x)
            take(x)
        if debug:
            _check_rho(op, down)


def _max_items(pool: SimplexPool, weights: Sequence[int]) -> list[MorseItem]:
    op = OrderedPool(pool, weights, max_order(pool, weights))
    items = []
    view = PoolView(pool) if Settings.debug_checks() else None

    def emit_pair(sigma: int, tau: int):
        if view:
            view.expand(sigma, tau)
        items.append(Pair(pool[sigma], pool[tau]))

    def emit_critical(nu: int):
        if view:
            view.fill(nu)
        items.append(Critical(pool[nu]))

    _sweep(op, pool.boundary_indices, pool.coboundary_indices, emit_pair, emit_critical)
    return items


def _min_items(pool: SimplexPool, weights: Sequence[int]) -> list[MorseItem]:
    op = OrderedPool(pool, weights, min_order(pool, weights))
    items = []
    view = PoolView.full(pool) if Settings.debug_checks() else None

    def emit_pair(tau: int, sigma: int):
        if view:
            view.collapse(sigma, tau)
        items.append(Pair(pool[sigma], pool[tau]))

    def emit_critical(nu: int):
        if view:
            view.perforate(nu)
        items.append(Critical(pool[nu]))

    _sweep(op, pool.coboundary_indices, pool.boundary_indices, emit_pair, emit_critical)
    # built right to left
    items.reverse()
    return items


def _pool_of(S: Union[CosimplicialComplex, SimplexPool]) -> SimplexPool:
    if isinstance(S, CosimplicialComplex):
        return S.pool
    if not S.cosimplicial:
        raise DomainError("The pool is not a cosimplicial complex")
    return S


def _stack_weights(F: Stack, S: SimplexPool) -> list[int]:
    w = weights_on(F, S)
    bad = find_stack_violation(F, S)
    if bad:
        raise StackError(
            f"The weight of {bad[0]} exceeds the weight of its coface {bad[1]}", *bad)
    return w


def _log_summary(name: str, pool: SimplexPool, items: list[MorseItem]):
    if logging.getLogger().isEnabledFor(logging.DEBUG):
        crit = [0] * (pool.dimension + 1)
        for it in items:
            if isinstance(it, Critical):
                crit[len(it.nu) - 1] += 1
        logging.debug({"scheduler": name, "simplexes": len(pool), "critical_vector": crit})


def max_f(S: Union[CosimplicialComplex, SimplexPool], F: Stack) -> MorseSequence:
    """
    Compute a maximal simplex-wise F-sequence on a cosimplicial complex, i.e. a sequence from the
    underline of S to its closure whose pairs have equal weights and which adds a critical
    simplex only when no F-expansion is available.

    S - the cosimplicial complex.
    F - a stack total on S.

    Throws a DomainError if S is not cosimplicial or F not total, a StackError if F is not
    monotone.
    """
    pool = _pool_of(S)
    w = _stack_weights(F, pool)
    items = _max_items(pool, w)
    _log_summary("max_f", pool, items)
    return MorseSequence(tuple(items), underline(pool))


def min_f(S: Union[CosimplicialComplex, SimplexPool], F: Stack) -> MorseSequence:
    """
    Compute a minimal simplex-wise F-sequence on a cosimplicial complex. The sequence is built
    from the closure of S down to its underline by F-collapses and perforations, and returned
    in increasing order.

    Throws the same errors as max_f.
    """
    pool = _pool_of(S)
    w = _stack_weights(F, pool)
    items = _min_items(pool, w)
    _log_summary("min_f", pool, items)
    return MorseSequence(tuple(items), underline(pool))


def _lower_star_items(simplexes: tuple[Simplex, ...]) -> list[MorseItem]:
    pool = SimplexPool(simplexes, canonical=True)
    return _max_items(pool, [1] * len(pool))


async def _run_blocks(blocks: list[tuple[Simplex, ...]], jobs: int) -> list[list[MorseItem]]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [loop.run_in_executor(pool, _lower_star_items, b) for b in blocks]
        # gather keeps the input order whatever the completion order
        return await asyncio.gather(*futures)


def max_lower_star(K: SimplexPool, f: VertexMap, jobs: O[int] = None) -> MorseSequence:
    """
    Compute a Morse sequence on K that is maximal on each lower star of an injective vertex map.
    Each lower star is swept with Max and the constant stack, independently, and the results are
    concatenated in increasing order of f.

    K - the simplicial complex.
    f - an injective vertex map defined on exactly the vertices of K.
    jobs - the number of worker processes. Defaults to the configured value. The output does not
        depend on it.

    Throws a DomainError if K is not simplicial or f is not injective.
    """
    if not is_simplicial(K):
        raise DomainError("Lower stars are only defined on a simplicial complex")
    f.check_domain(K)
    if not is_theta_map(f):
        raise DomainError(
            "The vertex map is not injective; compute max_f(K, induced_stack(f, K)) instead")
    jobs = Settings.jobs() if jobs is None else jobs
    if jobs < 1:
        raise ValueError(f"jobs must be at least 1, got {jobs}")
    blocks = [tuple(b.pool) for b in lower_star_partition(K, f)]
    if jobs == 1 or len(blocks) < 2:
        results = [_lower_star_items(b) for b in blocks]
    else:
        results = asyncio.run(_run_blocks(blocks, jobs))
    items = [it for r in results for it in r]
    logging.debug({"scheduler": "max_lower_star", "simplexes": len(K), "blocks": len(blocks),
                   "jobs": jobs})
    return MorseSequence(tuple(items))


def _scheme_setup(L: SimplexPool, K: SimplexPool, F: Stack) -> tuple[SimplexPool, list[int]]:
    if not is_simplicial(K) or not is_simplicial(L):
        raise DomainError("L and K must be simplicial complexes")
    for s in L:
        if s not in K:
            raise DomainError(f"{s} is in L but not in K")
    S = K.difference(L)
    return S, _stack_weights(F, S)


def scheme_max(L: SimplexPool, K: SimplexPool, F: Stack) -> MorseSequence:
    """
    The increasing scheme on whole complexes: starting from L, add the available F-expansion
    whose coface comes first in the Max order, or, if there is none, fill the first fillable
    simplex in that order, until K is reached.

    Every step searches the whole complex; for checking max_f on small complexes.

    L - the starting complex.
    K - the final complex, containing L.
    F - a stack total on K \\ L.
    """
    S, w = _scheme_setup(L, K, F)
    order = max_order(S, w)
    pos = {i: p for p, i in enumerate(order)}
    view = PoolView(S)
    items = []
    while len(view) < len(S):
        moves = list(available_expansions(view, w))
        if moves:
            sigma, tau = min(moves, key=lambda m: pos[m[1]])
            view.expand(sigma, tau)
            items.append(Pair(S[sigma], S[tau]))
            continue
        nu = next(i for i in order if i not in view and view.filling_violation(i) is None)
        view.fill(nu)
        items.append(Critical(S[nu]))
    return MorseSequence(tuple(items), L)


def scheme_min(L: SimplexPool, K: SimplexPool, F: Stack) -> MorseSequence:
    """
    The decreasing scheme on whole complexes: starting from K, remove the available F-collapse
    whose face comes first in the Min order, or, if there is none, perforate the first removable
    simplex in that order, until L is reached. The removals, read backwards, are the sequence.

    Every step searches the whole complex; for checking min_f on small complexes.
    """
    S, w = _scheme_setup(L, K, F)
    order = min_order(S, w)
    pos = {i: p for p, i in enumerate(order)}
    view = PoolView.full(S)
    items = []
    while len(view):
        moves = list(available_collapses(view, w))
        if moves:
            sigma, tau = min(moves, key=lambda m: pos[m[0]])
            view.collapse(sigma, tau)
            items.append(Pair(S[sigma], S[tau]))
            continue
        nu = next(i for i in order if i in view and view.perforation_violation(i) is None)
        view.perforate(nu)
        items.append(Critical(S[nu]))
    items.reverse()
    return MorseSequence(tuple(items), L)


def sequence_between(
        L: SimplexPool,
        K: SimplexPool,
        F: O[Stack] = None,
        scheme: Scheme = Scheme.MAX
) -> MorseSequence:
    """
    Compute a maximal or minimal F-sequence from L to K by sweeping the cosimplicial complex
    K \\ L.

    F - a stack total on K \\ L. Defaults to the constant stack.
    """
    if not is_simplicial(K) or not is_simplicial(L):
        raise DomainError("L and K must be simplicial complexes")
    for s in L:
        if s not in K:
            raise DomainError(f"{s} is in L but not in K")
    S = K.difference(L)
    F = constant_stack(S) if F is None else F
    seq = max_f(S, F) if scheme == Scheme.MAX else min_f(S, F)
    return MorseSequence(seq.items, L)


def max_sequence(K: SimplexPool) -> MorseSequence:
    """ A maximal Morse sequence on a simplicial complex. """
    return max_f(K, constant_stack(K))


def min_sequence(K: SimplexPool) -> MorseSequence:
    """ A minimal Morse sequence on a simplicial complex. """
    return min_f(K, constant_stack(K))
