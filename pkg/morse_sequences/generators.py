"""
Small named complexes used as fixtures and benchmark inputs.
"""

from collections.abc import Iterable

from morse_sequences.core_complex import SimplexPool, closure, make_simplex
from morse_sequences.stacks import VertexMap


def full_simplex(vertices: Iterable[int]) -> SimplexPool:
    """ The simplex on the given vertices and all of its faces. """
    return closure(SimplexPool([make_simplex(vertices)]))


def simplex_boundary(vertices: Iterable[int]) -> SimplexPool:
    """ The proper faces of the simplex on the given vertices: a sphere. """
    top = make_simplex(vertices)
    if len(top) < 2:
        raise ValueError("The boundary of a vertex is empty")
    return full_simplex(top).difference([top])


def triangulated_grid(k: int) -> SimplexPool:
    """
    A k by k grid of vertices, numbered row by row, with every unit square split into two
    triangles along the same diagonal. A disk with 2(k - 1)² triangles.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    triangles = []
    for i in range(k - 1):
        for j in range(k - 1):
            a = i * k + j
            b, c, d = a + 1, a + k, a + k + 1
            triangles.append((a, b, d))
            triangles.append((a, c, d))
    if not triangles:
        return SimplexPool([(0,)])
    return closure(SimplexPool(triangles))


def minimal_torus() -> SimplexPool:
    """ The seven vertex triangulation of the torus. """
    triangles = []
    for i in range(7):
        triangles.append((i, (i + 1) % 7, (i + 3) % 7))
        triangles.append((i, (i + 2) % 7, (i + 3) % 7))
    return closure(SimplexPool(triangles))


def two_basin_square() -> tuple[SimplexPool, VertexMap]:
    """
    A square with corners 1 to 4 in cyclic order and a center vertex 5, cut into four triangles,
    with a vertex map that has two minima on the opposite corners 1 and 3, saddles on 2 and 4
    and a maximum at the center.
    """
    K = closure(SimplexPool([(1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 4, 5)]))
    f = VertexMap.of({1: 0, 3: 0, 2: 1, 4: 1, 5: 2})
    return K, f
