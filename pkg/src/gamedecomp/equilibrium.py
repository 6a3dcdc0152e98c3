"""Base solver plus the maps that carry equilibria across sums, products and
elimination steps."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .compose import ProductLayout, SumLayout
from .decompose import EliminationRecord
from .game import (
    ZERO,
    BimatrixGame,
    ContractError,
    Equilibrium,
    InvariantError,
    PreconditionError,
    col_payoffs,
    expected_payoffs,
    rational,
    row_payoffs,
)


def _solve_unique(rows: list[list[Fraction]], nvars: int) -> list[Fraction] | None:
    """Solve an augmented system exactly; None unless the solution is unique."""
    M = [r[:] for r in rows]
    rank = 0
    for col in range(nvars):
        pivot = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if pivot is None:
            return None
        M[rank], M[pivot] = M[pivot], M[rank]
        prow = M[rank]
        inv = 1 / prow[col]
        for k in range(col, nvars + 1):
            prow[k] *= inv
        for r in range(len(M)):
            if r != rank and M[r][col]:
                f = M[r][col]
                row = M[r]
                for k in range(col, nvars + 1):
                    row[k] -= f * prow[k]
        rank += 1
    if any(M[r][nvars] for r in range(rank, len(M))):
        return None
    return [M[i][nvars] for i in range(nvars)]


def _mix_making_indifferent(M, support: Sequence[int], targets: Sequence[int],
                            own_rows: bool) -> list[Fraction] | None:
    """Probabilities on ``support`` that equalise the opponent's payoff on ``targets``.

    With ``own_rows`` the mixer is the row player and ``M`` is the column
    player's matrix (``M[i][j]``); otherwise the mixer picks columns and
    ``M`` is the row player's matrix.  Unknowns: the probabilities, then the
    common value.
    """
    k = len(support)
    system = []
    for t in targets:
        if own_rows:
            coeffs = [M[i][t] for i in support]
        else:
            coeffs = [M[t][j] for j in support]
        system.append(coeffs + [Fraction(-1), ZERO])
    system.append([Fraction(1)] * k + [ZERO, Fraction(1)])
    sol = _solve_unique(system, k + 1)
    if sol is None or any(p < 0 for p in sol[:k]):
        return None
    return sol[:k]


def _subsets_lex(k: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Subsets of range(k) with size in [lo, hi], in lexicographic tuple order."""
    prefix: list[int] = []

    def rec(start: int):
        if lo <= len(prefix):
            yield tuple(prefix)
        if len(prefix) == hi:
            return
        for i in range(start, k):
            prefix.append(i)
            yield from rec(i + 1)
            prefix.pop()

    return rec(0)


def support_pairs(n: int, m: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All support pairs ordered by total size, then lexicographically."""
    for total in range(2, n + m + 1):
        for s1 in _subsets_lex(n, max(1, total - m), min(n, total - 1)):
            for s2 in combinations(range(m), total - len(s1)):
                yield s1, s2


def _expand(k: int, support: Sequence[int], probs: Sequence[Fraction]) -> list[Fraction]:
    full = [ZERO] * k
    for i, p in zip(support, probs):
        full[i] = p
    return full


def _try_profile(g: BimatrixGame, x: list[Fraction], y: list[Fraction]) -> Equilibrium | None:
    ay = row_payoffs(g.A, y)
    xb = col_payoffs(g.B, x)
    p = sum((xi * v for xi, v in zip(x, ay)), ZERO)
    q = sum((yj * v for yj, v in zip(y, xb)), ZERO)
    if max(ay) > p or max(xb) > q:
        return None
    return Equilibrium(x, y, p, q)


def _vertex_mixes(M, k: int, other: int, own_rows: bool) -> list[list[Fraction]]:
    """Extreme points of the mixer's best-response polyhedron (square bases)."""
    found: list[list[Fraction]] = []
    for size in range(1, min(k, other) + 1):
        for support in combinations(range(k), size):
            for tight in combinations(range(other), size):
                probs = _mix_making_indifferent(M, support, tight, own_rows)
                if probs is None:
                    continue
                full = _expand(k, support, probs)
                if full not in found:
                    found.append(full)
    return found


def _vertex_enumeration(g: BimatrixGame) -> Equilibrium | None:
    xs = _vertex_mixes(g.B, g.n, g.m, own_rows=True)
    ys = _vertex_mixes(g.A, g.m, g.n, own_rows=False)
    for x in xs:
        for y in ys:
            eq = _try_profile(g, x, y)
            if eq is not None:
                return eq
    return None


def solve_base(g: BimatrixGame) -> Equilibrium:
    """One exact Nash equilibrium by support enumeration.

    Support pairs are tried smallest first.  A pair is used only when both
    indifference systems have a unique solution; degenerate games where no
    such pair works fall through to an enumeration of vertex pairs of the
    best-response polyhedra, which always contains an equilibrium.
    """
    n, m = g.shape
    A, B = g.A, g.B
    for s1, s2 in support_pairs(n, m):
        if len(s1) == 1 == len(s2):
            # pure cell: no system to solve, just compare payoffs
            i, j = s1[0], s2[0]
            a, b = A[i][j], B[i][j]
            if all(A[k][j] <= a for k in range(n)) and all(v <= b for v in B[i]):
                return Equilibrium(_expand(n, s1, (Fraction(1),)), _expand(m, s2, (Fraction(1),)),
                                   a, b)
            continue
        px = _mix_making_indifferent(g.B, s1, s2, own_rows=True)
        if px is None:
            continue
        py = _mix_making_indifferent(g.A, s2, s1, own_rows=False)
        if py is None:
            continue
        eq = _try_profile(g, _expand(n, s1, px), _expand(m, s2, py))
        if eq is not None:
            return eq
    eq = _vertex_enumeration(g)
    if eq is None:
        raise InvariantError(f"no equilibrium found for a {n}x{m} game")
    return eq


# -- products ----------------------------------------------------------------

def lift_product(eq1: Equilibrium, eq2: Equilibrium, layout: ProductLayout) -> Equilibrium:
    """Independent play of both factor equilibria."""
    if (len(eq1.x), len(eq1.y)) != (layout.n1, layout.m1) or \
            (len(eq2.x), len(eq2.y)) != (layout.n2, layout.m2):
        raise ContractError("factor equilibria do not match the product layout")
    x = [a * b for a in eq1.x for b in eq2.x]
    y = [eq1.y[j1] * eq2.y[j2] for j2 in range(layout.m2) for j1 in range(layout.m1)]
    return Equilibrium(x, y, eq1.p1_payoff + eq2.p1_payoff, eq1.p2_payoff + eq2.p2_payoff)


def product_marginals(x: Sequence[Fraction], y: Sequence[Fraction], layout: ProductLayout,
                      factor: int) -> tuple[list[Fraction], list[Fraction]]:
    """Marginal strategies of a product profile on one factor (1 or 2)."""
    if (len(x), len(y)) != layout.shape:
        raise ContractError(f"profile of shape {len(x)}x{len(y)} does not fit layout {layout}")
    if factor == 1:
        xs = [ZERO] * layout.n1
        ys = [ZERO] * layout.m1
    elif factor == 2:
        xs = [ZERO] * layout.n2
        ys = [ZERO] * layout.m2
    else:
        raise ContractError(f"factor must be 1 or 2, got {factor}")
    for r, p in enumerate(x):
        i1, i2 = layout.split_row(r)
        xs[i1 if factor == 1 else i2] += p
    for c, p in enumerate(y):
        j1, j2 = layout.split_col(c)
        ys[j1 if factor == 1 else j2] += p
    return xs, ys


def project_product(eq: Equilibrium, layout: ProductLayout, factor: int,
                    factor_game: BimatrixGame) -> Equilibrium:
    """Marginal of a product equilibrium on one factor, priced on ``factor_game``."""
    xs, ys = product_marginals(eq.x, eq.y, layout, factor)
    return Equilibrium.of(factor_game, xs, ys)


# -- sums --------------------------------------------------------------------

def sum_weights(eq1: Equilibrium, eq2: Equilibrium, K) -> tuple[Fraction, Fraction]:
    """Mass on the first row block and on the first column block.

    The row mix makes the column player indifferent between the blocks, whose
    off-diagonal payoff is ``-K``; the column mix does the same for the row
    player at ``+K``.
    """
    K = rational(K)
    P1, Q1, P2, Q2 = eq1.p1_payoff, eq1.p2_payoff, eq2.p1_payoff, eq2.p2_payoff
    for name, v in (("P1", P1), ("Q1", Q1), ("P2", P2), ("Q2", Q2)):
        if abs(v) >= K:
            raise PreconditionError(f"K={K} does not exceed |{name}|={abs(v)}")
    rows1 = (K + Q2) / (2 * K + Q1 + Q2)
    cols1 = (K - P2) / (2 * K - P1 - P2)
    return rows1, cols1


def lift_sum(eq1: Equilibrium, eq2: Equilibrium, K) -> Equilibrium:
    """Combine summand equilibria into an equilibrium of the sum game."""
    K = rational(K)
    a1, b1 = sum_weights(eq1, eq2, K)
    a2, b2 = 1 - a1, 1 - b1
    x = [a1 * p for p in eq1.x] + [a2 * p for p in eq2.x]
    y = [b1 * p for p in eq1.y] + [b2 * p for p in eq2.y]
    off = a1 * b2 + a2 * b1
    p = a1 * b1 * eq1.p1_payoff + a2 * b2 * eq2.p1_payoff + off * K
    q = a1 * b1 * eq1.p2_payoff + a2 * b2 * eq2.p2_payoff - off * K
    return Equilibrium(x, y, p, q)


def project_sum(eq: Equilibrium, layout: SumLayout, g1: BimatrixGame,
                g2: BimatrixGame) -> tuple[Equilibrium, Equilibrium]:
    """Renormalised block restrictions of a sum equilibrium."""
    n1, m1 = layout.n1, layout.m1
    if (len(eq.x), len(eq.y)) != (n1 + g2.n, m1 + g2.m) or g1.shape != (n1, m1):
        raise ContractError("equilibrium and summands do not match the sum layout")
    s = sum(eq.x[:n1], ZERO)
    t = sum(eq.y[:m1], ZERO)
    if not (0 < s < 1 and 0 < t < 1):
        raise PreconditionError(
            f"block masses ({s}, {t}) must lie strictly between 0 and 1 for a sum equilibrium")
    e1 = Equilibrium.of(g1, [p / s for p in eq.x[:n1]], [p / t for p in eq.y[:m1]])
    e2 = Equilibrium.of(g2, [p / (1 - s) for p in eq.x[n1:]], [p / (1 - t) for p in eq.y[m1:]])
    return e1, e2


# -- elimination -------------------------------------------------------------

def lift_elimination(eq: Equilibrium, record: EliminationRecord) -> Equilibrium:
    """Put the removed strategies back with probability zero."""
    if (len(eq.x), len(eq.y)) != (len(record.surviving_rows), len(record.surviving_cols)):
        raise ContractError("equilibrium does not match the reduced game of the record")
    if not record:
        return eq
    n, m = record.original_shape
    x = _expand(n, record.surviving_rows, eq.x)
    y = _expand(m, record.surviving_cols, eq.y)
    return Equilibrium(x, y, eq.p1_payoff, eq.p2_payoff)


def payoffs_agree(g: BimatrixGame, eq: Equilibrium) -> bool:
    return expected_payoffs(g, eq.x, eq.y) == (eq.p1_payoff, eq.p2_payoff)
