"""Bimatrix games over exact rationals, mixed strategies and the Nash check.

Every payoff and probability is a :class:`fractions.Fraction`, which is always
kept in lowest terms with a positive denominator.  Nothing in this module
rounds; :func:`is_nash` compares exactly.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Strategy = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class ContractError(ValueError):
    """An operation was called with arguments of the wrong shape."""


class PreconditionError(ValueError):
    """Arguments have the right shape but violate a stated precondition."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; this indicates a bug."""


def rational(value) -> Fraction:
    """Convert an int, Fraction or rational string to a Fraction.

    Floats are refused: they would smuggle binary rounding into exact data.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact payoff {value!r}")
    if isinstance(value, (numbers.Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(rational(v) for v in row) for row in rows)


@dataclass(frozen=True)
class BimatrixGame:
    """Payoff matrices ``A`` (row player) and ``B`` (column player).

    Construct with nested sequences of ints, Fractions or rational strings;
    entries are normalised to Fractions.
    """

    A: Matrix
    B: Matrix

    def __post_init__(self):
        A = _matrix(self.A)
        B = _matrix(self.B)
        if not A or not A[0]:
            raise ContractError("a game needs at least one row and one column")
        m = len(A[0])
        for name, mat in (("A", A), ("B", B)):
            if len(mat) != len(A):
                raise ContractError(f"{name} has {len(mat)} rows, expected {len(A)}")
            for i, row in enumerate(mat, 1):
                if len(row) != m:
                    raise ContractError(f"{name} row {i} has {len(row)} entries, expected {m}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.A[0])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.A), len(self.A[0])

    @property
    def size(self) -> int:
        return len(self.A) * len(self.A[0])

    def max_abs_payoff(self) -> Fraction:
        return max(abs(v) for mat in (self.A, self.B) for row in mat for v in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> BimatrixGame:
        """Restriction to the given (0-based) rows and columns, in that order."""
        return BimatrixGame(
            [[self.A[i][j] for j in cols] for i in rows],
            [[self.B[i][j] for j in cols] for i in rows],
        )

    def shifted(self, da=ZERO, db=ZERO) -> BimatrixGame:
        da, db = rational(da), rational(db)
        return BimatrixGame(
            [[v + da for v in row] for row in self.A],
            [[v + db for v in row] for row in self.B],
        )

    def transpose(self) -> BimatrixGame:
        """Swap the roles of the players."""
        return BimatrixGame(list(zip(*self.B)), list(zip(*self.A)))

    @classmethod
    def zero_sum(cls, A) -> BimatrixGame:
        A = _matrix(A)
        return cls(A, [[-v for v in row] for row in A])


def mixed_strategy(probs: Iterable) -> Strategy:
    """Validate and normalise a probability vector."""
    s = tuple(rational(p) for p in probs)
    if not s:
        raise ContractError("empty strategy")
    if any(p < 0 for p in s):
        raise ContractError(f"negative probability in {s}")
    if sum(s) != 1:
        raise ContractError(f"probabilities sum to {sum(s)}, not 1")
    return s


def pure_strategy(k: int, i: int) -> Strategy:
    """Point mass on the 0-based strategy ``i`` of ``k``."""
    if not 0 <= i < k:
        raise ContractError(f"strategy {i + 1} out of range 1..{k}")
    return tuple(ONE if t == i else ZERO for t in range(k))


def uniform_strategy(k: int) -> Strategy:
    return (Fraction(1, k),) * k


@dataclass(frozen=True)
class Equilibrium:
    """A strategy profile together with the payoffs it yields."""

    x: Strategy
    y: Strategy
    p1_payoff: Fraction
    p2_payoff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", mixed_strategy(self.x))
        object.__setattr__(self, "y", mixed_strategy(self.y))
        object.__setattr__(self, "p1_payoff", rational(self.p1_payoff))
        object.__setattr__(self, "p2_payoff", rational(self.p2_payoff))

    @classmethod
    def of(cls, g: BimatrixGame, x, y) -> Equilibrium:
        """Profile ``(x, y)`` with payoffs evaluated on ``g``."""
        x, y = mixed_strategy(x), mixed_strategy(y)
        p, q = expected_payoffs(g, x, y)
        return cls(x, y, p, q)


def _check_dims(g: BimatrixGame, x: Sequence | None, y: Sequence | None):
    if x is not None and len(x) != g.n:
        raise ContractError(f"row strategy has length {len(x)}, game has {g.n} rows")
    if y is not None and len(y) != g.m:
        raise ContractError(f"column strategy has length {len(y)}, game has {g.m} columns")


def _support(s: Sequence[Fraction]) -> list[int]:
    return [i for i, p in enumerate(s) if p]


def row_payoffs(M: Matrix, y: Sequence[Fraction]) -> list[Fraction]:
    """``M @ y`` exactly, skipping zero-probability columns."""
    supp = [(j, y[j]) for j in _support(y)]
    return [sum((row[j] * p for j, p in supp), ZERO) for row in M]


def col_payoffs(M: Matrix, x: Sequence[Fraction]) -> list[Fraction]:
    """``x @ M`` exactly, skipping zero-probability rows."""
    m = len(M[0])
    out = [ZERO] * m
    for i in _support(x):
        p = x[i]
        row = M[i]
        for j in range(m):
            out[j] += p * row[j]
    return out


def _bilinear(M: Matrix, x, y) -> Fraction:
    sy = [(j, y[j]) for j in _support(y)]
    total = ZERO
    for i in _support(x):
        row = M[i]
        total += x[i] * sum((row[j] * q for j, q in sy), ZERO)
    return total


def expected_payoffs(g: BimatrixGame, x: Sequence, y: Sequence) -> tuple[Fraction, Fraction]:
    """Exact ``(x^T A y, x^T B y)``."""
    _check_dims(g, x, y)
    return _bilinear(g.A, x, y), _bilinear(g.B, x, y)


def best_response_value(g: BimatrixGame, player: int, opponent: Sequence) -> Fraction:
    """Best payoff ``player`` (1 or 2) can get against a fixed opponent strategy."""
    if player == 1:
        _check_dims(g, None, opponent)
        return max(row_payoffs(g.A, opponent))
    if player == 2:
        _check_dims(g, opponent, None)
        return max(col_payoffs(g.B, opponent))
    raise ContractError(f"player must be 1 or 2, got {player}")


def is_nash(g: BimatrixGame, x: Sequence, y: Sequence) -> bool:
    """True iff neither player has a profitable pure deviation (exact)."""
    _check_dims(g, x, y)
    ay = row_payoffs(g.A, y)
    p = sum((x[i] * ay[i] for i in _support(x)), ZERO)
    if max(ay) > p:
        return False
    xb = col_payoffs(g.B, x)
    q = sum((y[j] * xb[j] for j in _support(y)), ZERO)
    return max(xb) <= q


def check_equilibrium(g: BimatrixGame, eq: Equilibrium) -> bool:
    """``is_nash`` plus agreement of the recorded payoffs with the game."""
    if (len(eq.x), len(eq.y)) != g.shape:
        return False
    return is_nash(g, eq.x, eq.y) and expected_payoffs(g, eq.x, eq.y) == (eq.p1_payoff, eq.p2_payoff)
