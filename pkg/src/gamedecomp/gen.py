"""Seeded random games with a known sum/product/elimination structure.

Generation happens in two stages.  :func:`generate_tree` fixes the shape of
every node (dimensions, split points, where dominated strategies go);
:func:`realize` then draws leaf payoffs and composes the game bottom-up.
Each node owns a seed derived from its parent's, so any subtree can be
built on its own and the result never depends on evaluation order.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .compose import ProductLayout, SumLayout, product_game, sum_game
from .decompose import ElimNode, EliminationRecord, Leaf, ProductNode, Removal, SumNode, Tree
from .game import BimatrixGame, InvariantError

MAX_SLACK = 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    p_sum: float = 0.4
    p_prod: float = 0.4
    p_elim: float = 0.2
    max_height: int = 80
    leaf_max_size: int = 6
    min_strategies: int = 95
    max_strategies: int = 105
    leaf_payoff_max: int = 50
    max_elim_insertions: int = 3
    seed: int = 0

    def __post_init__(self):
        probs = (self.p_sum, self.p_prod, self.p_elim)
        if any(p < 0 for p in probs) or not math.isclose(sum(probs), 1.0, abs_tol=1e-9):
            raise ConfigError(f"kind probabilities must be >= 0 and sum to 1, got {probs}")
        if self.min_strategies < 1 or self.min_strategies > self.max_strategies:
            raise ConfigError(
                f"need 1 <= min_strategies <= max_strategies, got "
                f"{self.min_strategies}..{self.max_strategies}")
        if self.leaf_max_size < 1:
            raise ConfigError("leaf_max_size must be at least 1")
        if self.max_height < 0 or self.max_elim_insertions < 1 or self.leaf_payoff_max < 0:
            raise ConfigError("max_height, max_elim_insertions and leaf_payoff_max out of range")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be an unsigned 64-bit value, got {self.seed}")


@dataclass(frozen=True)
class Insertion:
    """Add a copy of strategy ``source`` at ``position``, own payoffs lowered by ``slack``."""

    player: int
    source: int
    position: int
    slack: tuple[int, ...]


@dataclass(frozen=True)
class GenNode:
    kind: str
    n: int
    m: int
    seed: int
    children: tuple["GenNode", ...] = ()
    split: tuple[int, int] | None = None  # (n1, m1) for sum and product nodes
    insertions: tuple[Insertion, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.n * self.m


def split_seed(seed: int, index: int) -> int:
    """Seed of child ``index``; a fixed function of the parent seed."""
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _nontrivial_divisors(k: int) -> list[int]:
    return [d for d in range(2, k) if k % d == 0]


def generate_tree(config: GenConfig) -> GenNode:
    rng = random.Random(config.seed)
    n = rng.randint(config.min_strategies, config.max_strategies)
    m = rng.randint(config.min_strategies, config.max_strategies)
    return _plan(n, m, 0, split_seed(config.seed, 0), config)


def _plan(n: int, m: int, depth: int, seed: int, cfg: GenConfig) -> GenNode:
    if n * m <= cfg.leaf_max_size or depth >= cfg.max_height:
        return GenNode("leaf", n, m, seed)
    rng = random.Random(seed)
    kind = rng.choices(("sum", "product", "elim"), weights=(cfg.p_sum, cfg.p_prod, cfg.p_elim))[0]
    div_n, div_m = _nontrivial_divisors(n), _nontrivial_divisors(m)
    if kind == "product" and not (div_n and div_m):
        kind = "sum"
    if kind == "sum" and (n < 2 or m < 2):
        kind = "elim"

    def sub(k, a, b):
        return _plan(a, b, depth + 1, split_seed(seed, k), cfg)

    if kind == "sum":
        n1, m1 = rng.randint(1, n - 1), rng.randint(1, m - 1)
        return GenNode("sum", n, m, seed, (sub(1, n1, m1), sub(2, n - n1, m - m1)), (n1, m1))
    if kind == "product":
        n1, m1 = rng.choice(div_n), rng.choice(div_m)
        return GenNode("product", n, m, seed,
                       (sub(1, n1, m1), sub(2, n // n1, m // m1)), (n1, m1))

    r1 = rng.randint(1, min(cfg.max_elim_insertions, n - 1)) if n > 1 else 0
    r2 = rng.randint(1, min(cfg.max_elim_insertions, m - 1)) if m > 1 else 0
    cn, cm = n - r1, m - r2
    plan = []
    for t in range(r1):
        rows = cn + t
        plan.append(Insertion(1, rng.randrange(rows), rng.randint(0, rows),
                              tuple(rng.randint(1, MAX_SLACK) for _ in range(cm))))
    for t in range(r2):
        cols = cm + t
        plan.append(Insertion(2, rng.randrange(cols), rng.randint(0, cols),
                              tuple(rng.randint(1, MAX_SLACK) for _ in range(n))))
    return GenNode("elim", n, m, seed, (sub(1, cn, cm),), insertions=tuple(plan))


def _insert(A: list[list[Fraction]], B: list[list[Fraction]], ins: Insertion):
    if ins.player == 1:
        A.insert(ins.position, [v - s for v, s in zip(A[ins.source], ins.slack)])
        B.insert(ins.position, list(B[ins.source]))
    else:
        for i in range(len(A)):
            A[i].insert(ins.position, A[i][ins.source])
            B[i].insert(ins.position, B[i][ins.source] - ins.slack[i])


def _removal_record(A, B, plan: tuple[Insertion, ...]) -> EliminationRecord:
    """Record that strips the planned insertions again, last one first."""
    A = [list(r) for r in A]
    B = [list(r) for r in B]
    rows = list(range(len(A)))
    cols = list(range(len(A[0])))
    removals = []
    for ins in reversed(plan):
        p = ins.position
        dominator = ins.source + 1 if p <= ins.source else ins.source
        if ins.player == 1:
            removals.append(Removal(1, p, dominator, tuple(A[p]), tuple(B[p])))
            del A[p], B[p], rows[p]
        else:
            removals.append(Removal(2, p, dominator, tuple(r[p] for r in A), tuple(r[p] for r in B)))
            for r in A:
                del r[p]
            for r in B:
                del r[p]
            del cols[p]
    return EliminationRecord(tuple(removals), tuple(rows), tuple(cols))


def realize_tree(node: GenNode, config: GenConfig) -> Tree:
    """Realise payoffs; the result is a decomposition tree of the generated game."""
    if node.kind == "leaf":
        rng = random.Random(node.seed)
        hi = config.leaf_payoff_max
        A = [[rng.randint(0, hi) for _ in range(node.m)] for _ in range(node.n)]
        B = [[rng.randint(0, hi) for _ in range(node.m)] for _ in range(node.n)]
        return Leaf(BimatrixGame(A, B))
    kids = [realize_tree(c, config) for c in node.children]
    if node.kind == "sum":
        left, right = kids
        K = 1 + max(left.game.max_abs_payoff(), right.game.max_abs_payoff())
        game = sum_game(left.game, right.game, K)
        return SumNode(game, SumLayout(*node.split, K), left, right)
    if node.kind == "product":
        left, right = kids
        game = product_game(left.game, right.game)
        return ProductNode(game, ProductLayout(left.game.n, left.game.m, right.game.n, right.game.m),
                           left, right)
    (child,) = kids
    A = [list(r) for r in child.game.A]
    B = [list(r) for r in child.game.B]
    for ins in node.insertions:
        _insert(A, B, ins)
    game = BimatrixGame(A, B)
    return ElimNode(game, _removal_record(game.A, game.B, node.insertions), child)


def payoff_bound(node: GenNode, config: GenConfig) -> int:
    """Largest absolute payoff the realised node can contain."""
    if node.kind == "leaf":
        return config.leaf_payoff_max
    bounds = [payoff_bound(c, config) for c in node.children]
    if node.kind == "product":
        return bounds[0] + bounds[1]
    if node.kind == "sum":
        return 1 + max(bounds)
    # copies of copies can stack slack
    return bounds[0] + MAX_SLACK * len(node.insertions)


def realize(tree: GenNode, config: GenConfig) -> BimatrixGame:
    game = realize_tree(tree, config).game
    cap = payoff_bound(tree, config)
    if game.max_abs_payoff() > cap:
        raise InvariantError(f"payoff {game.max_abs_payoff()} exceeds structural cap {cap}")
    return game


def generate(config: GenConfig) -> BimatrixGame:
    return realize(generate_tree(config), config)


def plan_height(node: GenNode) -> int:
    return 1 + max(plan_height(c) for c in node.children) if node.children else 0
