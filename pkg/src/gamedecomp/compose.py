"""Product and sum composition of bimatrix games.

Index convention for products: rows are factor-1-major,
``r = (i1 - 1) * n2 + i2``, while columns are factor-2-major,
``c = (j2 - 1) * m1 + j1`` (all 1-based).  The two strides differ on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game import BimatrixGame, ContractError, PreconditionError, rational


@dataclass(frozen=True)
class ProductLayout:
    n1: int
    m1: int
    n2: int
    m2: int

    def __post_init__(self):
        if min(self.n1, self.m1, self.n2, self.m2) < 1:
            raise ContractError(f"layout dimensions must be positive: {self}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.n1 * self.n2, self.m1 * self.m2

    # 0-based helpers used on hot paths
    def row(self, i1: int, i2: int) -> int:
        return i1 * self.n2 + i2

    def col(self, j1: int, j2: int) -> int:
        return j2 * self.m1 + j1

    def split_row(self, r: int) -> tuple[int, int]:
        return divmod(r, self.n2)

    def split_col(self, c: int) -> tuple[int, int]:
        j2, j1 = divmod(c, self.m1)
        return j1, j2


@dataclass(frozen=True)
class SumLayout:
    n1: int
    m1: int
    K: Fraction

    def __post_init__(self):
        object.__setattr__(self, "K", rational(self.K))
        if self.n1 < 1 or self.m1 < 1:
            raise ContractError(f"summand 1 must be at least 1x1: {self}")
        if self.K <= 0:
            raise ContractError(f"K must be positive, got {self.K}")


def product_index(i1: int, i2: int, j1: int, j2: int, layout: ProductLayout) -> tuple[int, int]:
    """1-based position of the component cell pair inside the product game."""
    for name, v, hi in (("i1", i1, layout.n1), ("i2", i2, layout.n2),
                        ("j1", j1, layout.m1), ("j2", j2, layout.m2)):
        if not 1 <= v <= hi:
            raise ContractError(f"{name}={v} out of range 1..{hi}")
    return layout.row(i1 - 1, i2 - 1) + 1, layout.col(j1 - 1, j2 - 1) + 1


def product_index_inverse(r: int, c: int, layout: ProductLayout) -> tuple[int, int, int, int]:
    """Inverse of :func:`product_index`; returns 1-based ``(i1, i2, j1, j2)``."""
    n, m = layout.shape
    if not (1 <= r <= n and 1 <= c <= m):
        raise ContractError(f"cell ({r}, {c}) outside the {n}x{m} product")
    i1, i2 = layout.split_row(r - 1)
    j1, j2 = layout.split_col(c - 1)
    return i1 + 1, i2 + 1, j1 + 1, j2 + 1


def product_game(g1: BimatrixGame, g2: BimatrixGame) -> BimatrixGame:
    """Play both games simultaneously; payoffs add."""
    lay = ProductLayout(g1.n, g1.m, g2.n, g2.m)

    def combine(M1, M2):
        out = []
        for i1 in range(lay.n1):
            r1 = M1[i1]
            for i2 in range(lay.n2):
                r2 = M2[i2]
                out.append([r1[j1] + r2[j2] for j2 in range(lay.m2) for j1 in range(lay.m1)])
        return out

    return BimatrixGame(combine(g1.A, g2.A), combine(g1.B, g2.B))


def sum_game(g1: BimatrixGame, g2: BimatrixGame, K) -> BimatrixGame:
    """Block-diagonal combination with ``(K, -K)`` off the diagonal blocks."""
    K = rational(K)
    for tag, g in (("first", g1), ("second", g2)):
        for name, M in (("A", g.A), ("B", g.B)):
            for i, row in enumerate(M, 1):
                for j, v in enumerate(row, 1):
                    if abs(v) >= K:
                        raise PreconditionError(
                            f"K={K} does not exceed |{name}[{i},{j}]|={abs(v)} of the {tag} game")
    m1, m2 = g1.m, g2.m

    def blocks(M1, M2, off):
        top = [list(row) + [off] * m2 for row in M1]
        bottom = [[off] * m1 + list(row) for row in M2]
        return top + bottom

    return BimatrixGame(blocks(g1.A, g2.A, K), blocks(g1.B, g2.B, -K))
