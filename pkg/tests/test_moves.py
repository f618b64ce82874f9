from hypothesis import given
from pytest import raises
from tests.test_utils import assert_exception_correct, closed, complex_pairs, pool

from morse_sequences.core_complex import SimplexPool, boundary, closure, underline
from morse_sequences.errors import DomainError, MoveError
from morse_sequences.moves import (
    FreePair,
    Move,
    PoolView,
    apply_move,
    can_apply,
    coperforation,
    coreduction,
    elementary_collapse,
    elementary_expansion,
    elementary_filling,
    elementary_perforation,
    is_free_pair,
    move_violation,
    perforation_set,
    reduction,
)

# closed((1, 2, 3)) indices:
# 0 (1,)  1 (2,)  2 (3,)  3 (1, 2)  4 (1, 3)  5 (2, 3)  6 (1, 2, 3)
TRIANGLE = closed((1, 2, 3))
HOLLOW = TRIANGLE.difference([(1, 2, 3)])
COSIMPLICIAL = pool((1, 2), (1, 2, 3))


def test_FreePair_init():
    fp = FreePair((1,), (1, 2))

    assert fp.sigma == (1,)
    assert fp.tau == (1, 2)


def test_FreePair_init_fail():
    freePair_init_fail((), (1,), ValueError("sigma and tau are required"))
    freePair_init_fail((1,), None, ValueError("sigma and tau are required"))
    freePair_init_fail(
        (1,), (2, 3), ValueError("(1,) is not a codimension one face of (2, 3)"))
    freePair_init_fail(
        (1,), (1, 2, 3), ValueError("(1,) is not a codimension one face of (1, 2, 3)"))


def freePair_init_fail(sigma, tau, expected: Exception):
    with raises(Exception) as got:
        FreePair(sigma, tau)
    assert_exception_correct(got.value, expected)


def test_is_free_pair():
    assert is_free_pair((1,), (1, 2), closed((1, 2)))
    assert is_free_pair((2,), (1, 2), closed((1, 2), (1, 3)))
    assert not is_free_pair((1,), (1, 2), closed((1, 2), (1, 3)))
    assert is_free_pair((1, 2), (1, 2, 3), TRIANGLE)
    assert not is_free_pair((1,), (1, 2), TRIANGLE)
    assert not is_free_pair((1,), (2, 3), TRIANGLE)


def test_is_free_pair_fail():
    with raises(Exception) as got:
        is_free_pair((4,), (1, 2), closed((1, 2)))
    assert_exception_correct(got.value, DomainError("Simplex (4,) is not a member of the complex"))


def test_collapse_and_expansion():
    assert elementary_collapse(closed((1, 2)), FreePair((2,), (1, 2))) == pool((1,))
    assert elementary_collapse(TRIANGLE, FreePair((2, 3), (1, 2, 3))) == pool(
        (1,), (2,), (3,), (1, 2), (1, 3))
    assert elementary_expansion(pool((1,)), FreePair((2,), (1, 2))) == closed((1, 2))
    assert elementary_expansion(HOLLOW.difference([(2, 3)]), FreePair((2, 3), (1, 2, 3))) == (
        TRIANGLE)


def test_filling_and_perforation():
    assert elementary_filling(HOLLOW, (1, 2, 3)) == TRIANGLE
    assert elementary_filling(SimplexPool(), (4,)) == pool((4,))
    assert elementary_perforation(TRIANGLE, (1, 2, 3)) == HOLLOW
    assert elementary_perforation(pool((4,)), (4,)) == SimplexPool()


def test_simplicial_moves_fail():
    move_fail(lambda: elementary_collapse(closed((1, 2), (1, 3)), FreePair((1,), (1, 2))),
              "collapse failed: ((1,), (1, 2)) is not a free pair of the complex")
    move_fail(lambda: elementary_collapse(pool((1, 2), (1,)), FreePair((1,), (1, 2))),
              "collapse failed: the complex is not a simplicial complex")
    move_fail(lambda: elementary_expansion(pool((1,)), FreePair((1,), (1, 2))),
              "expansion failed: ((1,), (1, 2)) is not disjoint from the complex")
    move_fail(lambda: elementary_expansion(pool((1,)), FreePair((3,), (2, 3))),
              "expansion failed: adding ((3,), (2, 3)) does not give a simplicial complex")
    move_fail(lambda: elementary_filling(pool((1,)), (1,)),
              "filling failed: (1,) is already in the complex")
    move_fail(lambda: elementary_filling(pool((1,)), (1, 2)),
              "filling failed: adding (1, 2) does not give a simplicial complex")
    move_fail(lambda: elementary_filling(SimplexPool([(1,), (1, 2)]), (2,)),
              "filling failed: (2,) is not a facet of the filled complex")
    move_fail(lambda: elementary_perforation(TRIANGLE, (1, 2)),
              "perforation failed: (1, 2) is not a facet of the complex")
    move_fail(lambda: elementary_perforation(TRIANGLE, (4,)),
              "perforation failed: (4,) is not in the complex")


def move_fail(move, message: str):
    with raises(Exception) as got:
        move()
    assert_exception_correct(got.value, MoveError(message))


def test_cosimplicial_moves():
    assert reduction(COSIMPLICIAL, (1, 2), (1, 2, 3)) == SimplexPool()
    assert perforation_set(COSIMPLICIAL, (1, 2, 3)) == pool((1, 2))
    assert coreduction(COSIMPLICIAL, (1, 2), (1, 2, 3)) == SimplexPool()
    assert coperforation(COSIMPLICIAL, (1, 2)) == pool((1, 2, 3))
    assert reduction(TRIANGLE, (2, 3), (1, 2, 3)) == pool((1,), (2,), (3,), (1, 2), (1, 3))


def test_cosimplicial_moves_fail():
    move_fail(lambda: reduction(pool((1,), (1, 2, 3)), (1,), (1, 2, 3)),
              "reduction failed: the pool is not a cosimplicial complex")
    move_fail(lambda: reduction(COSIMPLICIAL, (1, 3), (1, 2, 3)),
              "reduction failed: (1, 3) is not in the cosimplicial complex")
    move_fail(lambda: reduction(TRIANGLE, (1,), (1, 2)),
              "reduction failed: the coboundary of (1,) is not {(1, 2)}")
    move_fail(lambda: perforation_set(COSIMPLICIAL, (1, 2)),
              "set perforation failed: the coboundary of (1, 2) is not empty")
    move_fail(lambda: coreduction(TRIANGLE, (1, 2), (1, 2, 3)),
              "coreduction failed: the boundary of (1, 2, 3) is not {(1, 2)}")
    move_fail(lambda: coperforation(COSIMPLICIAL, (1, 2, 3)),
              "coperforation failed: the boundary of (1, 2, 3) is not empty")


def test_move_violation_and_can_apply():
    assert move_violation(Move.FILLING, pool((1,)), (2,)) is None
    assert can_apply(Move.FILLING, pool((1,)), [2])
    assert move_violation(Move.PERFORATION, TRIANGLE, (1, 2)) == (
        "(1, 2) is not a facet of the complex")
    assert not can_apply(Move.COLLAPSE, TRIANGLE, (1,), (1, 2))
    assert apply_move(Move.EXPANSION, pool((1,)), [2], [2, 1]) == closed((1, 2))


def test_PoolView_build_triangle():
    v = PoolView(TRIANGLE)
    assert len(v) == 0

    v.fill(0)
    v.fill(1)
    v.expand(2, 4)
    v.fill(3)
    v.expand(5, 6)

    assert len(v) == 7
    assert 6 in v
    assert v.members() == TRIANGLE


def test_PoolView_collapse_triangle():
    v = PoolView.full(TRIANGLE)

    assert v.present_coboundary(0) == [3, 4]
    v.collapse(5, 6)
    assert v.absent_coboundary(1) == [5]
    assert v.present_boundary(3) == [1, 0]
    v.perforate(3)
    v.collapse(2, 4)
    v.perforate(1)

    assert v.members() == pool((1,))
    assert len(v) == 1


def test_PoolView_moves_fail():
    pool_view_fail(lambda: PoolView(TRIANGLE).fill(3),
                   "filling failed: a face of (1, 2) is missing from the complex")
    pool_view_fail(lambda: PoolView(TRIANGLE, [0]).fill(0),
                   "filling failed: (1,) is already in the complex")
    pool_view_fail(
        lambda: PoolView(TRIANGLE).expand(0, 3),
        "expansion failed: a face of (1, 2) other than (1,) is missing from the complex")
    pool_view_fail(lambda: PoolView(TRIANGLE).expand(0, 5),
                   "expansion failed: (1,) is not a face of (2, 3)")
    pool_view_fail(lambda: PoolView(TRIANGLE, [0]).expand(3, 6),
                   "expansion failed: a face of (1, 2) is missing from the complex")
    pool_view_fail(lambda: PoolView.full(TRIANGLE).collapse(0, 3),
                   "collapse failed: (1, 2) is not the only coface of (1,)")
    pool_view_fail(lambda: PoolView.full(TRIANGLE).perforate(3),
                   "perforation failed: (1, 2) is not a facet of the complex")
    pool_view_fail(lambda: PoolView(TRIANGLE).perforate(6),
                   "perforation failed: (1, 2, 3) is not in the complex")


def pool_view_fail(move, message: str):
    with raises(Exception) as got:
        move()
    assert_exception_correct(got.value, MoveError(message))


def test_PoolView_unchecked():
    v = PoolView(TRIANGLE)
    v.fill(6, checked=False)

    assert 6 in v
    assert v.filling_violation(6) == "(1, 2, 3) is already in the complex"


def test_PoolView_over_cosimplicial_pool():
    # faces outside the pool count as present, so the empty view holds the underline
    v = PoolView(COSIMPLICIAL)

    assert v.filling_violation(0) is None
    assert v.expansion_violation(0, 1) is None
    v.expand(0, 1)
    assert v.members() == COSIMPLICIAL
    assert v.collapse_violation(0, 1) is None


@given(complex_pairs())
def test_set_moves_match_simplicial_moves(pair):
    L, K = pair
    S = K.difference(L)
    top, bottom = closure(S), underline(S)

    for tau in S:
        for sigma in boundary(tau, S):
            assert can_apply(Move.COLLAPSE, top, sigma, tau) == can_apply(
                Move.REDUCTION, S, sigma, tau)
            assert can_apply(Move.EXPANSION, bottom, sigma, tau) == can_apply(
                Move.COREDUCTION, S, sigma, tau)
    for nu in S:
        assert can_apply(Move.PERFORATION, top, nu) == can_apply(Move.SET_PERFORATION, S, nu)
        assert can_apply(Move.FILLING, bottom, nu) == can_apply(Move.COPERFORATION, S, nu)
