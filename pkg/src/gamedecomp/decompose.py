"""Recognising sums and products, dominance elimination, decomposition trees."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .compose import ProductLayout, SumLayout, product_game, sum_game
from .game import BimatrixGame, ContractError


@dataclass(frozen=True)
class SumDecomposition:
    g1: BimatrixGame
    g2: BimatrixGame
    layout: SumLayout


@dataclass(frozen=True)
class ProductDecomposition:
    """Factors of a product; ``g2`` is normalised so both its (1,1) payoffs are 0."""

    g1: BimatrixGame
    g2: BimatrixGame
    layout: ProductLayout


def detect_sum(g: BimatrixGame) -> SumDecomposition | None:
    """Split ``g`` into ``sum_game(g1, g2, K)`` if it has that block shape.

    ``K`` is read from the top-right corner; the block boundaries are the
    maximal runs of ``(K, -K)`` down the last column and along the last row.
    """
    n, m = g.shape
    if n < 2 or m < 2:
        return None
    A, B = g.A, g.B
    K = A[0][m - 1]
    if K <= 0 or B[0][m - 1] != -K:
        return None
    negK = -K
    n1 = 0
    while n1 < n and A[n1][m - 1] == K and B[n1][m - 1] == negK:
        n1 += 1
    m1 = 0
    while m1 < m and A[n - 1][m1] == K and B[n - 1][m1] == negK:
        m1 += 1
    if not (1 <= n1 < n and 1 <= m1 < m):
        return None

    for i in range(n):
        Ai, Bi = A[i], B[i]
        if i < n1:
            diag, off = range(m1), range(m1, m)
        else:
            diag, off = range(m1, m), range(m1)
        for j in off:
            if Ai[j] != K or Bi[j] != negK:
                return None
        for j in diag:
            if not (-K < Ai[j] < K and -K < Bi[j] < K):
                return None

    rows1, rows2 = range(n1), range(n1, n)
    cols1, cols2 = range(m1), range(m1, m)
    return SumDecomposition(g.submatrix(rows1, cols1), g.submatrix(rows2, cols2),
                            SumLayout(n1, m1, K))


def detect_shifted_sum(g: BimatrixGame) -> tuple[SumDecomposition, tuple[Fraction, Fraction]] | None:
    """Like :func:`detect_sum`, but allowing a constant offset per player.

    Returns ``(dec, (shift_a, shift_b))`` with
    ``g == sum_game(dec.g1, dec.g2, K).shifted(shift_a, shift_b)``.  Exact
    sums come back unshifted.  Product factors are only determined up to such
    offsets, so this is the test the tree builder needs.
    """
    n, m = g.shape
    if n < 2 or m < 2:
        return None
    A, B = g.A, g.B
    alpha, beta = A[0][m - 1], B[0][m - 1]
    if beta == -alpha and alpha > 0:
        dec = detect_sum(g)
        if dec is not None:
            return dec, (Fraction(0), Fraction(0))
    n1 = 0
    while n1 < n and A[n1][m - 1] == alpha and B[n1][m - 1] == beta:
        n1 += 1
    m1 = 0
    while m1 < m and A[n - 1][m1] == alpha and B[n - 1][m1] == beta:
        m1 += 1
    if not (1 <= n1 < n and 1 <= m1 < m):
        return None

    # off-diagonal blocks (alpha, beta); diagonal blocks need A < alpha, B > beta
    K = None
    for i in range(n):
        Ai, Bi = A[i], B[i]
        if i < n1:
            diag, off = range(m1), range(m1, m)
        else:
            diag, off = range(m1, m), range(m1)
        for j in off:
            if Ai[j] != alpha or Bi[j] != beta:
                return None
        for j in diag:
            da, db = alpha - Ai[j], Bi[j] - beta
            if da <= 0 or db <= 0:
                return None
            top = da if da > db else db
            if K is None or top > K:
                K = top
    shift_a, shift_b = alpha - K, beta + K
    g1 = g.submatrix(range(n1), range(m1)).shifted(-shift_a, -shift_b)
    g2 = g.submatrix(range(n1, n), range(m1, m)).shifted(-shift_a, -shift_b)
    return SumDecomposition(g1, g2, SumLayout(n1, m1, K)), (shift_a, shift_b)


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def product_layouts(n: int, m: int) -> Iterator[ProductLayout]:
    """Candidate layouts for an ``n x m`` product, skipping 1x1 factors."""
    for n1 in _divisors(n):
        for m1 in _divisors(m):
            n2, m2 = n // n1, m // m1
            if n1 * m1 == 1 or n2 * m2 == 1:
                continue
            yield ProductLayout(n1, m1, n2, m2)


def _factor_candidates(M, lay: ProductLayout):
    corner = M[0][0]
    F = [[M[lay.row(i1, 0)][lay.col(j1, 0)] for j1 in range(lay.m1)] for i1 in range(lay.n1)]
    G = [[M[lay.row(0, i2)][lay.col(0, j2)] - corner for j2 in range(lay.m2)]
         for i2 in range(lay.n2)]
    return F, G


def _verify_product(M, F, G, lay: ProductLayout) -> bool:
    n2, m1, m2 = lay.n2, lay.m1, lay.m2
    for i1, Fi in enumerate(F):
        for i2, Gi in enumerate(G):
            row = M[i1 * n2 + i2]
            for j2 in range(m2):
                shift = Gi[j2]
                base = j2 * m1
                for j1 in range(m1):
                    if row[base + j1] != Fi[j1] + shift:
                        return False
    return True


def detect_product(g: BimatrixGame) -> ProductDecomposition | None:
    """First layout (``n1`` then ``m1`` ascending) under which ``g`` is a product."""
    for lay in product_layouts(*g.shape):
        FA, GA = _factor_candidates(g.A, lay)
        if not _verify_product(g.A, FA, GA, lay):
            continue
        FB, GB = _factor_candidates(g.B, lay)
        if not _verify_product(g.B, FB, GB, lay):
            continue
        return ProductDecomposition(BimatrixGame(FA, FB), BimatrixGame(GA, GB), lay)
    return None


# -- dominance ---------------------------------------------------------------

@dataclass(frozen=True)
class Removal:
    """One elimination step; indices are 0-based in the game current at that step.

    ``payoffs_a``/``payoffs_b`` hold the removed row (or column) so the step
    can be undone.
    """

    player: int
    index: int
    dominated_by: int
    payoffs_a: tuple[Fraction, ...]
    payoffs_b: tuple[Fraction, ...]


@dataclass(frozen=True)
class EliminationRecord:
    removals: tuple[Removal, ...]
    surviving_rows: tuple[int, ...]
    surviving_cols: tuple[int, ...]

    @property
    def original_shape(self) -> tuple[int, int]:
        n = len(self.surviving_rows) + sum(1 for r in self.removals if r.player == 1)
        m = len(self.surviving_cols) + sum(1 for r in self.removals if r.player == 2)
        return n, m

    def __bool__(self) -> bool:
        return bool(self.removals)


def _as_integers(M) -> list[list[int]]:
    """``M`` scaled by the lcm of its denominators; same order relations."""
    lcm = 1
    for row in M:
        for v in row:
            d = v.denominator
            if lcm % d:
                lcm = lcm * d // math.gcd(lcm, d)
    return [[v.numerator * (lcm // v.denominator) for v in row] for row in M]


def _row_dominator(M, rows: list[int], cols: list[int], p: int) -> int | None:
    victim = M[rows[p]]
    for k, rk in enumerate(rows):
        if k == p:
            continue
        cand = M[rk]
        if all(cand[c] > victim[c] for c in cols):
            return k
    return None


def _col_dominator(M, rows: list[int], cols: list[int], q: int) -> int | None:
    victim = cols[q]
    for k, ck in enumerate(cols):
        if k == q:
            continue
        if all(M[r][ck] > M[r][victim] for r in rows):
            return k
    return None


def eliminate_dominated(g: BimatrixGame) -> tuple[BimatrixGame, EliminationRecord]:
    """Iterated removal of pure strategies strictly dominated by a pure strategy.

    Each round scans rows in ascending order, then columns, removes the first
    dominated strategy found and starts over.  Rows that were already found
    undominated stay so while only rows are removed (and likewise for
    columns), so the rescans resume where they left off; the removal sequence
    is the same as a literal restart would give.
    """
    A, B = _as_integers(g.A), _as_integers(g.B)
    rows, cols = list(range(g.n)), list(range(g.m))
    removals: list[Removal] = []
    row_from = col_from = 0
    while True:
        p = row_from
        while p < len(rows):
            k = _row_dominator(A, rows, cols, p)
            if k is not None:
                r = rows[p]
                removals.append(Removal(1, p, k, tuple(g.A[r][c] for c in cols),
                                        tuple(g.B[r][c] for c in cols)))
                del rows[p]
                break
            p += 1
        else:
            p = None
        if p is not None:
            row_from, col_from = p, 0
            continue
        row_from = len(rows)

        q = col_from
        while q < len(cols):
            k = _col_dominator(B, rows, cols, q)
            if k is not None:
                c = cols[q]
                removals.append(Removal(2, q, k, tuple(g.A[r][c] for r in rows),
                                        tuple(g.B[r][c] for r in rows)))
                del cols[q]
                break
            q += 1
        else:
            break
        row_from, col_from = 0, q

    record = EliminationRecord(tuple(removals), tuple(rows), tuple(cols))
    if not removals:
        return g, record
    return g.submatrix(rows, cols), record


def reinsert(reduced: BimatrixGame, record: EliminationRecord) -> BimatrixGame:
    """Undo an elimination, restoring the removed rows and columns."""
    if reduced.shape != (len(record.surviving_rows), len(record.surviving_cols)):
        raise ContractError(
            f"reduced game is {reduced.n}x{reduced.m}, record expects "
            f"{len(record.surviving_rows)}x{len(record.surviving_cols)}")
    A = [list(r) for r in reduced.A]
    B = [list(r) for r in reduced.B]
    for rem in reversed(record.removals):
        if rem.player == 1:
            A.insert(rem.index, list(rem.payoffs_a))
            B.insert(rem.index, list(rem.payoffs_b))
        else:
            for i in range(len(A)):
                A[i].insert(rem.index, rem.payoffs_a[i])
                B[i].insert(rem.index, rem.payoffs_b[i])
    return BimatrixGame(A, B)


# -- trees -------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    game: BimatrixGame


@dataclass(frozen=True)
class SumNode:
    """``game == sum_game(left, right, K)`` plus ``shift`` added to (A, B)."""

    game: BimatrixGame
    layout: SumLayout
    left: "Tree"
    right: "Tree"
    shift: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))


@dataclass(frozen=True)
class ProductNode:
    game: BimatrixGame
    layout: ProductLayout
    left: "Tree"
    right: "Tree"


@dataclass(frozen=True)
class ElimNode:
    game: BimatrixGame
    record: EliminationRecord
    child: "Tree"


Tree = Union[Leaf, SumNode, ProductNode, ElimNode]

DEFAULT_ORDER = ("sum", "product")


def decompose_tree(g: BimatrixGame, eliminate: bool = True,
                   order: Sequence[str] = DEFAULT_ORDER) -> Tree:
    """Recursively split ``g`` into sums, products and elimination steps.

    ``order`` sets which structural test runs first; the default tries sums
    before products.
    """
    if sorted(order) != ["product", "sum"]:
        raise ContractError(f"order must be a permutation of sum/product, got {order!r}")
    return _decompose(g, eliminate, tuple(order))


def _decompose(g: BimatrixGame, eliminate: bool, order: tuple[str, ...]) -> Tree:
    if eliminate:
        reduced, record = eliminate_dominated(g)
        if record:
            return ElimNode(g, record, _decompose(reduced, eliminate, order))
    for kind in order:
        if kind == "sum":
            found = detect_shifted_sum(g)
            if found is not None:
                dec, shift = found
                return SumNode(g, dec.layout, _decompose(dec.g1, eliminate, order),
                               _decompose(dec.g2, eliminate, order), shift)
        else:
            dec = detect_product(g)
            if dec is not None:
                return ProductNode(g, dec.layout, _decompose(dec.g1, eliminate, order),
                                   _decompose(dec.g2, eliminate, order))
    return Leaf(g)


def children(t: Tree) -> tuple[Tree, ...]:
    if isinstance(t, (SumNode, ProductNode)):
        return (t.left, t.right)
    if isinstance(t, ElimNode):
        return (t.child,)
    return ()


def iter_nodes(t: Tree) -> Iterator[Tree]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def leaves(t: Tree) -> list[BimatrixGame]:
    """Leaf games, left to right."""
    return [node.game for node in iter_nodes(t) if isinstance(node, Leaf)]


def node_counts(t: Tree) -> dict[str, int]:
    counts = {"sum": 0, "product": 0, "elim": 0, "leaf": 0}
    kinds = {Leaf: "leaf", SumNode: "sum", ProductNode: "product", ElimNode: "elim"}
    for node in iter_nodes(t):
        counts[kinds[type(node)]] += 1
    return counts


def height(t: Tree) -> int:
    kids = children(t)
    return 1 + max(height(c) for c in kids) if kids else 0


def recompose(t: Tree) -> BimatrixGame:
    """Rebuild the root game from the leaf games and node data alone."""
    if isinstance(t, Leaf):
        return t.game
    if isinstance(t, SumNode):
        summed = sum_game(recompose(t.left), recompose(t.right), t.layout.K)
        return summed.shifted(*t.shift) if any(t.shift) else summed
    if isinstance(t, ProductNode):
        return product_game(recompose(t.left), recompose(t.right))
    return reinsert(recompose(t.child), t.record)
