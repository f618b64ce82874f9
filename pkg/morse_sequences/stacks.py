"""
Stacks (integer weight functions on pools that are monotone under face inclusion), cuts and
sections, vertex maps and the stacks they induce, and the lower star decomposition.
"""

import numbers

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from frozendict import frozendict
from typing import Optional as O, Union

from morse_sequences.core_complex import (
    CosimplicialComplex,
    Simplex,
    SimplexPool,
    is_simplicial,
    make_simplex,
)
from morse_sequences.errors import DomainError
from morse_sequences.utils import Settings


def _is_int(v) -> bool:
    return isinstance(v, numbers.Integral) and not isinstance(v, bool)


@dataclass(frozen=True)
class VertexMap:
    """
    A map from vertex ids to integers.

    values - the mapping. Keys must be non-negative integer vertex ids, values integers.
    """
    values: frozendict

    def __post_init__(self):
        if self.values is None:
            raise ValueError("values is required")
        for v, x in self.values.items():
            if not _is_int(v) or v < 0:
                raise ValueError(f"Vertex ids must be non-negative integers, got {v!r}")
            if not _is_int(x):
                raise ValueError(f"Value for vertex {v} must be an integer, got {x!r}")

    @staticmethod
    def of(values: Mapping[int, int]) -> "VertexMap":
        return VertexMap(frozendict({int(v): int(x) for v, x in values.items()}))

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def check_domain(self, K: SimplexPool):
        """ Throws a DomainError unless the map is defined on exactly the vertices of K. """
        verts = {s[0] for s in K.vertices()}
        keys = set(self.values)
        if verts != keys:
            missing = sorted(verts - keys)
            extra = sorted(keys - verts)
            raise DomainError(
                "The vertex map must be defined on exactly the vertices of the complex; "
                + f"missing {missing}, not in complex {extra}")


@dataclass(frozen=True)
class Stack:
    """
    An integer weight per member of a pool.

    pool - the pool the stack is defined on.
    weights - the weights, indexed like the pool.
    source - the vertex map the stack was induced by, if any.

    Monotonicity is not checked on construction; use validate_stack.
    """
    pool: SimplexPool
    weights: tuple[int, ...]
    source: O[VertexMap] = None

    def __post_init__(self):
        if self.pool is None:
            raise ValueError("pool is required")
        if self.weights is None or len(self.weights) != len(self.pool):
            raise ValueError("There must be exactly one weight per simplex of the pool")
        for w in self.weights:
            if not _is_int(w):
                raise ValueError(f"Weights must be integers, got {w!r}")

    @staticmethod
    def from_mapping(pool: SimplexPool, weights: Mapping[Simplex, int]) -> "Stack":
        """
        Build a stack from a mapping of simplexes to weights. Throws a DomainError if the mapping
        misses a member of the pool.
        """
        canon = {make_simplex(s): w for s, w in weights.items()}
        missing = [s for s in pool if s not in canon]
        if missing:
            raise DomainError(f"The stack is not defined on {missing[0]}")
        return Stack(pool, tuple(canon[s] for s in pool))

    def __getitem__(self, s: Simplex) -> int:
        return self.weights[self.pool.index(s)]

    def at(self, i: int) -> int:
        return self.weights[i]

    def __contains__(self, s: Simplex) -> bool:
        return s in self.pool

    def levels(self) -> list[int]:
        """ The distinct weights in increasing order. """
        return sorted(set(self.weights))


def weights_on(F: Stack, S: SimplexPool) -> list[int]:
    """
    The weights of F on the members of S, indexed like S. Throws a DomainError if F is not total
    on S.
    """
    if F.pool is S or F.pool == S:
        return list(F.weights)
    res = []
    for s in S:
        if s not in F.pool:
            raise DomainError(f"The stack is not defined on {s}")
        res.append(F[s])
    return res


def constant_stack(S: SimplexPool, value: int = 1) -> Stack:
    """ The constant stack on S, 𝟙_S by default. """
    return Stack(S, (value,) * len(S))


def find_stack_violation(F: Stack, S: O[SimplexPool] = None) -> O[tuple[Simplex, Simplex]]:
    """
    Find the first pair σ ⊂ τ of members of S, in pool order of τ, with F(σ) > F(τ).

    F - the weight function.
    S - the pool to check, defaulting to the pool of F. F must be total on S.
    :returns: the offending pair (σ, τ), or None if F is monotone on S.
    """
    S = F.pool if S is None else S
    w = weights_on(F, S)
    if S.cosimplicial:
        # betweenness makes codimension one pairs sufficient
        for i in range(len(S)):
            for j in S.boundary_indices(i):
                if w[j] > w[i]:
                    return S[j], S[i]
        return None
    for i, tau in enumerate(S):
        for j in range(i):
            sigma = S[j]
            if len(sigma) < len(tau) and set(sigma).issubset(tau) and w[j] > w[i]:
                return sigma, tau
    return None


def validate_stack(F: Stack, S: O[SimplexPool] = None) -> bool:
    """
    True if F is monotone under face inclusion on S (the pool of F by default).
    Throws a DomainError if F is not total on S.
    """
    S = F.pool if S is None else S
    monotone = find_stack_violation(F, S) is None
    if Settings.debug_checks() and is_simplicial(S):
        all_cuts_simplicial = all(
            is_simplicial(cut(F, S, lam)) for lam in set(weights_on(F, S)))
        assert monotone == all_cuts_simplicial, "stack monotonicity disagrees with its cuts"
    return monotone


def cut_indices(F: Stack, S: SimplexPool, lambda_: int) -> list[int]:
    w = weights_on(F, S)
    return [i for i in range(len(S)) if w[i] <= lambda_]


def section_indices(F: Stack, S: SimplexPool, lambda_: int) -> list[int]:
    w = weights_on(F, S)
    return [i for i in range(len(S)) if w[i] == lambda_]


def cut(F: Stack, S: SimplexPool, lambda_: int) -> SimplexPool:
    """ The members of S with weight at most λ. """
    return SimplexPool((S[i] for i in cut_indices(F, S, lambda_)), canonical=True)


def section(F: Stack, S: SimplexPool, lambda_: int) -> SimplexPool:
    """ The members of S with weight exactly λ. """
    return SimplexPool((S[i] for i in section_indices(F, S, lambda_)), canonical=True)


def induced_stack(f: VertexMap, K: SimplexPool) -> Stack:
    """
    The stack induced by a vertex map: each simplex gets the maximum value of its vertices.
    Throws a DomainError if K is not simplicial or f is not defined on exactly V(K).
    """
    if not is_simplicial(K):
        raise DomainError("A vertex map induces a stack only on a simplicial complex")
    f.check_domain(K)
    return Stack(K, tuple(max(f[v] for v in s) for s in K), source=f)


def is_theta_map(f: VertexMap) -> bool:
    """ True if f is injective. """
    return len(set(f.values.values())) == len(f.values)


def ordering_map(vertices: Iterable[int]) -> VertexMap:
    """ The ϑ-map f(σᵢ) = i induced by a total order of the vertices. """
    order = list(vertices)
    if len(set(order)) != len(order):
        raise DomainError("A vertex ordering must not repeat vertices")
    return VertexMap.of({v: i for i, v in enumerate(order)})


def _require_theta_stack(F: Stack):
    if F.source is None:
        raise DomainError("Lower stars are only defined for stacks induced by a vertex map")
    if not is_theta_map(F.source):
        raise DomainError(
            "Lower stars require an injective vertex map; compute max_f(K, induced_stack(f, K))"
            + " instead")


def _vertex_id(sigma: Union[int, Simplex]) -> int:
    if _is_int(sigma):
        return int(sigma)
    s = make_simplex(sigma)
    if len(s) != 1:
        raise DomainError(f"{s} is not a vertex")
    return s[0]


def lower_star(sigma: Union[int, Simplex], K: SimplexPool, F: Stack) -> CosimplicialComplex:
    """
    The lower star of a vertex: the cofaces of σ with the same weight as σ.

    sigma - the vertex, as an id or a 0-simplex.
    K - the simplicial complex.
    F - a stack on K induced by an injective vertex map.
    """
    _require_theta_stack(F)
    v = _vertex_id(sigma)
    if (v,) not in K:
        raise DomainError(f"Vertex {v} is not in the complex")
    w = weights_on(F, K)
    level = w[K.index((v,))]
    star = SimplexPool(
        (s for i, s in enumerate(K) if v in s and w[i] == level), canonical=True)
    if Settings.debug_checks():
        assert star == section(F, K, level), f"lower star of {v} is not a section"
    return CosimplicialComplex(star)


def lower_star_partition(K: SimplexPool, f: VertexMap) -> list[CosimplicialComplex]:
    """
    Split K into the lower stars of its vertices, ordered by increasing value of f.
    Throws a DomainError if f is not injective.
    """
    F = induced_stack(f, K)
    _require_theta_stack(F)
    blocks = {s[0]: [] for s in K.vertices()}
    for s in K:
        # the vertex with the largest value owns the simplex; unique since f is injective
        blocks[max(s, key=f.__getitem__)].append(s)
    order = sorted(blocks, key=f.__getitem__)
    return [CosimplicialComplex(SimplexPool(blocks[v], canonical=True)) for v in order]


def random_stack_levels(S: SimplexPool, increments: Iterable[int]) -> Stack:
    """
    Build a monotone stack on a simplicial pool by walking the pool in order and giving each
    simplex the largest weight of its faces plus the next increment (0 for vertices' faces).
    """
    it = iter(increments)
    w = []
    for i in range(len(S)):
        base = max((w[j] for j in S.boundary_indices(i)), default=0)
        w.append(base + next(it, 0))
    return Stack(S, tuple(w))
