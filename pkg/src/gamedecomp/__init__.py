"""Exact divide-and-conquer Nash equilibrium computation for bimatrix games.

Games that are built from smaller games by sums and products (and by adding
strictly dominated strategies) are split back into their pieces, the pieces
are solved exactly, and the equilibria are lifted back up.
"""

from .compose import ProductLayout, SumLayout, product_game, product_index, sum_game
from .decompose import (
    decompose_tree,
    detect_product,
    detect_shifted_sum,
    detect_sum,
    eliminate_dominated,
)
from .equilibrium import (
    lift_elimination,
    lift_product,
    lift_sum,
    project_product,
    project_sum,
    solve_base,
)
from .game import (
    BimatrixGame,
    Equilibrium,
    best_response_value,
    expected_payoffs,
    is_nash,
)
from .solver import SolveReport, solve

__all__ = [
    "BimatrixGame", "Equilibrium", "ProductLayout", "SolveReport", "SumLayout",
    "best_response_value", "decompose_tree", "detect_product", "detect_shifted_sum",
    "detect_sum", "eliminate_dominated", "expected_payoffs", "is_nash", "lift_elimination",
    "lift_product", "lift_sum", "product_game", "product_index", "project_product",
    "project_sum", "solve", "solve_base", "sum_game",
]
