from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gamedecomp import BimatrixGame, detect_product, detect_shifted_sum
from gamedecomp.decompose import iter_nodes

# reference matrices, used as zero-sum games
EX_A = [[1, 2, 3, 4], [0, 1, 0, 1], [2, 2, 2, 2], [4, 1, 2, 3]]
EX_B = [[0, 0, 0], [1, 0, 1], [1, 2, 3]]

# their 12x12 product, written out entry by entry
EX_PRODUCT = [
    [1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4],
    [2, 3, 4, 5, 1, 2, 3, 4, 2, 3, 4, 5],
    [2, 3, 4, 5, 3, 4, 5, 6, 4, 5, 6, 7],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
    [1, 2, 1, 2, 0, 1, 0, 1, 1, 2, 1, 2],
    [1, 2, 1, 2, 2, 3, 2, 3, 3, 4, 3, 4],
    [2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [3, 3, 3, 3, 2, 2, 2, 2, 3, 3, 3, 3],
    [3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5],
    [4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3],
    [5, 2, 3, 4, 4, 1, 2, 3, 5, 2, 3, 4],
    [5, 2, 3, 4, 6, 3, 4, 5, 7, 4, 5, 6],
]

MP = [[1, -1], [-1, 1]]


@pytest.fixture
def game_a():
    return BimatrixGame.zero_sum(EX_A)


@pytest.fixture
def game_b():
    return BimatrixGame.zero_sum(EX_B)


@pytest.fixture
def pennies():
    return BimatrixGame.zero_sum(MP)


@pytest.fixture
def dilemma():
    return BimatrixGame([[3, 0], [5, 1]], [[3, 5], [0, 1]])


@st.composite
def games(draw, max_n=4, max_m=4, lo=-5, hi=5, min_n=1, min_m=1):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(min_m, max_m))
    cell = st.integers(lo, hi)
    A = draw(st.lists(st.lists(cell, min_size=m, max_size=m), min_size=n, max_size=n))
    B = draw(st.lists(st.lists(cell, min_size=m, max_size=m), min_size=n, max_size=n))
    return BimatrixGame(A, B)


@st.composite
def strategies_for(draw, k):
    weights = draw(st.lists(st.integers(0, 6), min_size=k, max_size=k).filter(any))
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)


def has_duplicate_strategies(g):
    rows = [tuple(zip(g.A[i], g.B[i])) for i in range(g.n)]
    cols = [tuple((g.A[i][j], g.B[i][j]) for i in range(g.n)) for j in range(g.m)]
    return len(set(rows)) < g.n or len(set(cols)) < g.m


def exclusive_everywhere(tree):
    """No node of the tree is both a (shifted) sum and a product."""
    return all(detect_shifted_sum(node.game) is None or detect_product(node.game) is None
               for node in iter_nodes(tree))


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
