import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gamedecomp.compose import (
    ProductLayout,
    SumLayout,
    product_game,
    product_index,
    product_index_inverse,
    sum_game,
)
from gamedecomp.game import BimatrixGame, ContractError, PreconditionError

from conftest import EX_A, EX_B, EX_PRODUCT, games
from oracles import naive_product, naive_sum

EX_LAYOUT = ProductLayout(4, 4, 3, 3)


def test_layout_validation():
    with pytest.raises(ContractError):
        ProductLayout(0, 1, 1, 1)
    with pytest.raises(ContractError):
        SumLayout(1, 1, 0)
    assert EX_LAYOUT.shape == (12, 12)


def test_index_corner():
    for lay in (EX_LAYOUT, ProductLayout(2, 5, 3, 1), ProductLayout(1, 1, 1, 1)):
        assert product_index(1, 1, 1, 1, lay) == (1, 1)


def test_index_first_factor_block():
    for i in range(1, 5):
        for j in range(1, 5):
            assert product_index(i, 1, j, 1, EX_LAYOUT) == (3 * i - 2, j)


def test_index_second_factor_block():
    for i in range(1, 4):
        for j in range(1, 4):
            assert product_index(2, i, 1, j, EX_LAYOUT) == (3 + i, 4 * j - 3)


def test_index_out_of_range():
    with pytest.raises(ContractError):
        product_index(5, 1, 1, 1, EX_LAYOUT)
    with pytest.raises(ContractError):
        product_index(1, 1, 1, 0, EX_LAYOUT)
    with pytest.raises(ContractError):
        product_index_inverse(13, 1, EX_LAYOUT)


@pytest.mark.parametrize("dims", [(2, 3, 3, 2), (1, 4, 2, 1), (3, 1, 1, 3), (2, 2, 2, 2)])
def test_index_bijection(dims):
    lay = ProductLayout(*dims)
    n1, m1, n2, m2 = dims
    hits = {}
    for i1, i2, j1, j2 in itertools.product(range(1, n1 + 1), range(1, n2 + 1),
                                            range(1, m1 + 1), range(1, m2 + 1)):
        rc = product_index(i1, i2, j1, j2, lay)
        assert rc not in hits
        hits[rc] = (i1, i2, j1, j2)
        assert product_index_inverse(*rc, lay) == (i1, i2, j1, j2)
    assert set(hits) == {(r, c) for r in range(1, n1 * n2 + 1) for c in range(1, m1 * m2 + 1)}


def test_example_product_golden(game_a, game_b):
    g = product_game(game_a, game_b)
    assert g.shape == (12, 12)
    assert [list(r) for r in g.A] == EX_PRODUCT
    assert [list(r) for r in g.B] == [[-v for v in r] for r in EX_PRODUCT]
    assert list(g.A[0]) == [1, 2, 3, 4] * 3
    assert g.A[11][11] == 6


def test_product_with_trivial_factor(game_a):
    zero = BimatrixGame([[0]], [[0]])
    assert product_game(game_a, zero) == game_a
    assert product_game(zero, game_a) == game_a


def test_sum_example(game_a, game_b):
    g = sum_game(game_a, game_b, 5)
    assert g.shape == (7, 7)
    assert [list(r) for r in g.A] == naive_sum(EX_A, EX_B, 5)
    assert [list(r) for r in g.B] == naive_sum([[-v for v in r] for r in EX_A],
                                               [[-v for v in r] for r in EX_B], -5)


def test_sum_of_two_zeros():
    z = BimatrixGame([[0]], [[0]])
    g = sum_game(z, z, 1)
    assert g.A == ((0, 1), (1, 0))
    assert g.B == ((0, -1), (-1, 0))


def test_sum_k_too_small(game_a, game_b):
    with pytest.raises(PreconditionError, match=r"\|A\[1,3\]\|=3"):
        sum_game(game_a, game_b, 3)
    with pytest.raises(PreconditionError):
        sum_game(game_a, game_b, 4)


def test_sum_accepts_rational_k(game_a, game_b):
    g = sum_game(game_a, game_b, Fraction(9, 2))
    assert g.A[0][6] == Fraction(9, 2)


@settings(max_examples=100, deadline=None)
@given(games(max_n=3, max_m=3), games(max_n=3, max_m=3))
def test_product_matches_definition(g1, g2):
    g = product_game(g1, g2)
    assert [list(r) for r in g.A] == naive_product(g1.A, g2.A)
    assert [list(r) for r in g.B] == naive_product(g1.B, g2.B)
    assert g.size == g1.size * g2.size


@settings(max_examples=50, deadline=None)
@given(games(max_n=2, max_m=2), games(max_n=2, max_m=2), games(max_n=2, max_m=2))
def test_product_associative_up_to_relabeling(a, b, c):
    left = product_game(product_game(a, b), c)
    right = product_game(a, product_game(b, c))
    la, lb = ProductLayout(a.n, a.m, b.n, b.m), ProductLayout(b.n, b.m, c.n, c.m)
    lab = ProductLayout(a.n * b.n, a.m * b.m, c.n, c.m)
    lbc = ProductLayout(a.n, a.m, b.n * c.n, b.m * c.m)
    for i, j, k in itertools.product(range(a.n), range(b.n), range(c.n)):
        for p, q, s in itertools.product(range(a.m), range(b.m), range(c.m)):
            r1 = lab.row(la.row(i, j), k)
            c1 = lab.col(la.col(p, q), s)
            r2 = lbc.row(i, lb.row(j, k))
            c2 = lbc.col(p, lb.col(q, s))
            assert left.A[r1][c1] == right.A[r2][c2]
            assert left.B[r1][c1] == right.B[r2][c2]


@settings(max_examples=100, deadline=None)
@given(games(max_n=3, max_m=3), games(max_n=3, max_m=3), st.integers(0, 4))
def test_sum_block_structure(g1, g2, extra):
    K = max(g1.max_abs_payoff(), g2.max_abs_payoff()) + 1 + extra
    g = sum_game(g1, g2, K)
    assert g.shape == (g1.n + g2.n, g1.m + g2.m)
    for i in range(g.n):
        for j in range(g.m):
            if (i < g1.n) == (j < g1.m):
                assert abs(g.A[i][j]) < K and abs(g.B[i][j]) < K
            else:
                assert (g.A[i][j], g.B[i][j]) == (K, -K)
