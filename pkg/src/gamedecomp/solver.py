"""Divide-and-conquer equilibrium computation over a decomposition tree."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .decompose import (
    DEFAULT_ORDER,
    ElimNode,
    Leaf,
    ProductNode,
    SumNode,
    Tree,
    decompose_tree,
    iter_nodes,
    node_counts,
)
from .equilibrium import lift_elimination, lift_product, lift_sum, solve_base
from .game import ZERO, BimatrixGame, Equilibrium, InvariantError, col_payoffs, row_payoffs


@dataclass
class SolveReport:
    size: int
    lambda_: int
    node_counts: dict[str, int]
    leaf_sizes: list[int]
    timings: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "S": self.size,
            "lambda": self.lambda_,
            "node_counts": dict(self.node_counts),
            "leaf_sizes": list(self.leaf_sizes),
            "timings": dict(self.timings),
        }


def verify(g: BimatrixGame, eq: Equilibrium) -> bool:
    """Exact Nash check that also confirms the payoffs stored in ``eq``."""
    if (len(eq.x), len(eq.y)) != g.shape:
        return False
    ay = row_payoffs(g.A, eq.y)
    p = sum((xi * v for xi, v in zip(eq.x, ay) if xi), ZERO)
    if p != eq.p1_payoff or max(ay) > p:
        return False
    xb = col_payoffs(g.B, eq.x)
    q = sum((yj * v for yj, v in zip(eq.y, xb) if yj), ZERO)
    return q == eq.p2_payoff and max(xb) <= q


def _lift(node: Tree, solved: dict[int, Equilibrium]) -> Equilibrium:
    if isinstance(node, Leaf):
        return solved[id(node)]
    if isinstance(node, SumNode):
        eq = lift_sum(_lift(node.left, solved), _lift(node.right, solved), node.layout.K)
        if any(node.shift):
            da, db = node.shift
            eq = Equilibrium(eq.x, eq.y, eq.p1_payoff + da, eq.p2_payoff + db)
    elif isinstance(node, ProductNode):
        eq = lift_product(_lift(node.left, solved), _lift(node.right, solved), node.layout)
    else:
        eq = lift_elimination(_lift(node.child, solved), node.record)
    if not verify(node.game, eq):
        kind = type(node).__name__
        raise InvariantError(f"lifted profile at {kind} ({node.game.n}x{node.game.m}) "
                             "is not an equilibrium")
    return eq


def solve_tree(tree: Tree, threads: int = 1) -> tuple[Equilibrium, SolveReport]:
    """Solve the leaves of an existing tree and lift the results to its root."""
    timings = {}
    leaf_nodes = [node for node in iter_nodes(tree) if isinstance(node, Leaf)]

    t0 = time.perf_counter()
    games = [leaf.game for leaf in leaf_nodes]
    if threads > 1 and len(games) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            eqs = list(pool.map(solve_base, games))
    else:
        eqs = [solve_base(leaf_game) for leaf_game in games]
    timings["base_solve"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    eq = _lift(tree, {id(leaf): e for leaf, e in zip(leaf_nodes, eqs)})
    timings["lift"] = time.perf_counter() - t0

    sizes = [leaf.game.size for leaf in leaf_nodes]
    report = SolveReport(tree.game.size, max(sizes), node_counts(tree), sizes, timings)
    return eq, report


def solve(g: BimatrixGame, eliminate: bool = True, threads: int = 1,
          order: Sequence[str] = DEFAULT_ORDER) -> tuple[Equilibrium, SolveReport]:
    """Exact equilibrium of ``g`` via decomposition, with a report of the run.

    Every lifted profile is checked against its node's game; a failure raises
    :class:`InvariantError`.
    """
    t0 = time.perf_counter()
    tree = decompose_tree(g, eliminate, order)
    t_decompose = time.perf_counter() - t0
    eq, report = solve_tree(tree, threads)
    report.timings = {"decompose": t_decompose, **report.timings}
    if not verify(g, eq):
        raise InvariantError("final profile is not an equilibrium")
    return eq, report


def solve_direct(g: BimatrixGame) -> tuple[Equilibrium, SolveReport]:
    """Base solver on the whole game, no decomposition."""
    t0 = time.perf_counter()
    eq = solve_base(g)
    elapsed = time.perf_counter() - t0
    counts = {"sum": 0, "product": 0, "elim": 0, "leaf": 1}
    report = SolveReport(g.size, g.size, counts, [g.size],
                         {"decompose": 0.0, "base_solve": elapsed, "lift": 0.0})
    return eq, report
