"""
Independent ground truth for the Morse machinery: mod 2 Betti numbers from full boundary
matrices, brute force gradient path parity, acyclicity of gradient vector fields, and
exhaustive enumeration of the moves available on a complex.

Everything here is exponential or quadratic and intended for small complexes.
"""

from collections.abc import Iterator, Sequence
from typing import TYPE_CHECKING, Optional as O

import networkx as nx
import numpy as np

from morse_sequences.core_complex import Simplex, SimplexPool, faces, is_simplicial, make_simplex
from morse_sequences.errors import DomainError
from morse_sequences.moves import PoolView

if TYPE_CHECKING:
    from morse_sequences.morse_sequence import GradientVectorField


def gf2_rank(matrix: np.ndarray) -> int:
    """
    The rank of a 0/1 matrix over the two element field, by Gaussian elimination with XOR row
    operations.
    """
    R = (np.asarray(matrix, dtype=np.uint8) % 2).copy()
    if R.ndim != 2 or 0 in R.shape:
        return 0
    m, n = R.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        rows = np.nonzero(R[rank:, col])[0]
        if rows.size == 0:
            continue
        pivot = rank + rows[0]
        if pivot != rank:
            R[[rank, pivot]] = R[[pivot, rank]]
        below = rank + 1 + np.nonzero(R[rank + 1:, col])[0]
        R[below] ^= R[rank]
        rank += 1
    return rank


def _by_dimension(K: SimplexPool) -> list[list[Simplex]]:
    res = [[] for _ in range(K.dimension + 1)]
    for s in K:
        res[len(s) - 1].append(s)
    return res


def boundary_matrix(K: SimplexPool, d: int) -> np.ndarray:
    """
    The mod 2 boundary matrix from dimension d to dimension d - 1. Rows are the (d - 1)-simplexes
    and columns the d-simplexes of K, both in pool order.
    """
    layers = _by_dimension(K)
    rows = layers[d - 1] if 1 <= d <= len(layers) else []
    cols = layers[d] if 0 <= d < len(layers) else []
    row_index = {s: i for i, s in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for j, s in enumerate(cols):
        for f in faces(s):
            if f in row_index:
                M[row_index[f], j] = 1
    return M


def betti_mod2(K: SimplexPool) -> list[int]:
    """
    The mod 2 Betti numbers of a simplicial complex, from dimension 0 to the dimension of K.
    Throws a DomainError if K is not a simplicial complex.
    """
    if not is_simplicial(K):
        raise DomainError("Betti numbers are only computed for simplicial complexes")
    counts = K.count_by_dimension()
    ranks = [0] + [gf2_rank(boundary_matrix(K, d)) for d in range(1, len(counts))] + [0]
    return [counts[d] - ranks[d] - ranks[d + 1] for d in range(len(counts))]


def vpath_graph(gvf: "GradientVectorField") -> nx.DiGraph:
    """
    The gradient path digraph: an edge σ → μ for every pair (σ, τ) and every face μ ≠ σ of τ.
    """
    G = nx.DiGraph()
    for sigma, tau in gvf.pairs:
        G.add_node(sigma)
        for mu in faces(tau):
            if mu != sigma:
                G.add_edge(sigma, mu)
    return G


def count_vpaths_mod2(gvf: "GradientVectorField", start: Simplex, target: Simplex) -> int:
    """
    The parity of the number of gradient paths from a simplex to a critical simplex of the same
    dimension, by exhaustive enumeration. The empty path counts when start is the target.
    """
    start, target = make_simplex(start), make_simplex(target)
    if target not in gvf.criticals:
        raise DomainError(f"{target} is not a critical simplex")
    if start == target:
        return 1
    if len(start) != len(target):
        return 0
    G = vpath_graph(gvf)
    if start not in G or target not in G:
        return 0
    return sum(1 for _ in nx.all_simple_paths(G, start, target)) % 2


def acyclicity(gvf: "GradientVectorField", K: SimplexPool) -> bool:
    """
    True if no closed gradient path exists. Throws a DomainError if a paired simplex is not in K.
    """
    for sigma, tau in gvf.pairs:
        for s in (sigma, tau):
            if s not in K:
                raise DomainError(f"Paired simplex {s} is not in the complex")
    return nx.is_directed_acyclic_graph(vpath_graph(gvf))


def available_expansions(
        view: PoolView,
        weights: Sequence[O[int]]
) -> Iterator[tuple[int, int]]:
    """
    Enumerate the elementary F-expansions of the complex a view holds, restricted to its pool.

    view - the current complex.
    weights - the weight of each pool index. Present simplexes may have no weight.
    :returns: (σ, τ) index pairs in pool order of τ.
    """
    for tau in range(len(view.pool)):
        if tau in view:
            continue
        absent = view.absent_boundary(tau)
        if len(absent) != 1:
            continue
        sigma = absent[0]
        if weights[sigma] == weights[tau] and view.expansion_violation(sigma, tau) is None:
            yield sigma, tau


def available_collapses(
        view: PoolView,
        weights: Sequence[O[int]],
        keep: O[Sequence[bool]] = None
) -> Iterator[tuple[int, int]]:
    """
    Enumerate the elementary F-collapses of the complex a view holds.

    view - the current complex.
    weights - the weight of each pool index. Kept simplexes may have no weight.
    keep - pool indexes flagged here may not be removed, e.g. the base of a sequence.
    :returns: (σ, τ) index pairs in pool order of σ.
    """
    for sigma in range(len(view.pool)):
        if sigma not in view or (keep and keep[sigma]):
            continue
        cof = view.present_coboundary(sigma)
        if len(cof) != 1:
            continue
        tau = cof[0]
        if keep and keep[tau]:
            continue
        if weights[sigma] == weights[tau] and view.collapse_violation(sigma, tau) is None:
            yield sigma, tau
