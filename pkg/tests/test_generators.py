from pytest import raises
from tests.test_utils import assert_exception_correct, closed, pool

from morse_sequences.core_complex import euler_characteristic, is_simplicial
from morse_sequences.generators import (
    full_simplex,
    minimal_torus,
    simplex_boundary,
    triangulated_grid,
    two_basin_square,
)
from morse_sequences.stacks import induced_stack, validate_stack


def test_full_simplex():
    assert full_simplex([3, 1, 2]) == closed((1, 2, 3))
    assert len(full_simplex(range(5))) == 31


def test_simplex_boundary():
    assert simplex_boundary([1, 2]) == pool((1,), (2,))
    assert simplex_boundary([1, 2, 3, 4]).count_by_dimension() == [4, 6, 4]
    assert euler_characteristic(simplex_boundary([1, 2, 3, 4])) == 2


def test_simplex_boundary_fail():
    with raises(Exception) as got:
        simplex_boundary([1])
    assert_exception_correct(got.value, ValueError("The boundary of a vertex is empty"))


def test_triangulated_grid():
    assert triangulated_grid(1) == pool((0,))
    assert triangulated_grid(2) == closed((0, 1, 3), (0, 2, 3))

    K = triangulated_grid(3)
    assert K.count_by_dimension() == [9, 16, 8]
    assert euler_characteristic(K) == 1
    assert is_simplicial(K)
    for k in (4, 7):
        assert triangulated_grid(k).count_by_dimension()[2] == 2 * (k - 1) ** 2


def test_triangulated_grid_fail():
    for k in (0, -3):
        with raises(Exception) as got:
            triangulated_grid(k)
        assert_exception_correct(got.value, ValueError("k must be at least 1"))


def test_minimal_torus():
    K = minimal_torus()

    assert K.count_by_dimension() == [7, 21, 14]
    assert euler_characteristic(K) == 0
    assert is_simplicial(K)


def test_two_basin_square():
    K, f = two_basin_square()

    assert K.count_by_dimension() == [5, 8, 4]
    assert euler_characteristic(K) == 1
    assert f.values == {1: 0, 2: 1, 3: 0, 4: 1, 5: 2}
    assert validate_stack(induced_stack(f, K))
