"""Text and JSON formats.

Game files::

    bimatrix <n> <m>
    <n lines of m entries: row player's payoffs>
    <n lines of m entries: column player's payoffs>

An entry is an optional ``-``, digits, and optionally ``/`` and a positive
denominator.  Blank lines are ignored.  Rationals are written the same way
inside every JSON document; floats never appear.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .compose import ProductLayout, SumLayout, product_game, sum_game
from .decompose import (
    ElimNode,
    EliminationRecord,
    Leaf,
    ProductNode,
    Removal,
    SumNode,
    Tree,
    reinsert,
)
from .game import BimatrixGame, Equilibrium

_ENTRY = re.compile(r"-?[0-9]+(?:/[0-9]+)?")
_TOKEN = re.compile(r"\S+")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def parse_rational(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    if not _ENTRY.fullmatch(text):
        raise ParseError(f"malformed entry {text!r}", line, column)
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}", line, column)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(v: Fraction) -> str:
    return str(v)


def parse_game(text: str) -> BimatrixGame:
    lines = [(no, line) for no, line in enumerate(text.splitlines(), 1) if line.strip()]
    if not lines:
        raise ParseError("empty input")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "bimatrix" or not all(p.isdigit() for p in parts[1:]):
        raise ParseError(f"expected 'bimatrix <n> <m>', got {header.strip()!r}", no, 1)
    n, m = int(parts[1]), int(parts[2])
    if n < 1 or m < 1:
        raise ParseError("dimensions must be positive", no)
    body = lines[1:]
    if len(body) < 2 * n:
        line = body[-1][0] + 1 if body else no + 1
        raise ParseError(f"expected {2 * n} payoff rows, found {len(body)}", line)
    if len(body) > 2 * n:
        raise ParseError("unexpected content after the payoff rows", body[2 * n][0], 1)

    rows = []
    for k, (no, line) in enumerate(body):
        tokens = list(_TOKEN.finditer(line))
        if len(tokens) != m:
            which = "A" if k < n else "B"
            noun = "entry" if len(tokens) == 1 else "entries"
            raise ParseError(f"{which} row {k % n + 1} has {len(tokens)} {noun}, expected {m}",
                             no, tokens[min(len(tokens), m) - 1].start() + 1 if tokens else 1)
        rows.append([parse_rational(t.group(), no, t.start() + 1) for t in tokens])
    return BimatrixGame(rows[:n], rows[n:])


def write_game(g: BimatrixGame) -> str:
    out = [f"bimatrix {g.n} {g.m}"]
    for M in (g.A, g.B):
        out.extend(" ".join(format_rational(v) for v in row) for row in M)
    return "\n".join(out) + "\n"


# -- JSON --------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _strs(values) -> list[str]:
    return [format_rational(v) for v in values]


def _parse_list(values, what: str) -> list[Fraction]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise ParseError(f"{what} must be a list of rational strings")
    return [parse_rational(v) for v in values]


def equilibrium_to_json(eq: Equilibrium) -> dict:
    return {
        "x": _strs(eq.x),
        "y": _strs(eq.y),
        "p1_payoff": format_rational(eq.p1_payoff),
        "p2_payoff": format_rational(eq.p2_payoff),
    }


def equilibrium_from_json(data: dict) -> Equilibrium:
    try:
        x = _parse_list(data["x"], "x")
        y = _parse_list(data["y"], "y")
        p = parse_rational(data["p1_payoff"])
        q = parse_rational(data["p2_payoff"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad equilibrium document: {exc}") from None
    return Equilibrium(x, y, p, q)


def game_to_json(g: BimatrixGame) -> dict:
    return {"n": g.n, "m": g.m,
            "A": [_strs(r) for r in g.A], "B": [_strs(r) for r in g.B]}


def game_from_json(data: dict) -> BimatrixGame:
    try:
        A = [_parse_list(r, "A row") for r in data["A"]]
        B = [_parse_list(r, "B row") for r in data["B"]]
        g = BimatrixGame(A, B)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad game document: {exc}") from None
    if (data.get("n"), data.get("m")) != g.shape:
        raise ParseError("declared dimensions do not match the payoff rows")
    return g


def tree_to_json(t: Tree) -> dict:
    """Tree document; strategy indices are 1-based."""
    if isinstance(t, Leaf):
        return {"kind": "leaf", "game": game_to_json(t.game)}
    if isinstance(t, SumNode):
        doc = {"kind": "sum", "K": format_rational(t.layout.K),
               "n1": t.layout.n1, "m1": t.layout.m1}
        if any(t.shift):
            doc["shift"] = _strs(t.shift)
        doc["left"] = tree_to_json(t.left)
        doc["right"] = tree_to_json(t.right)
        return doc
    if isinstance(t, ProductNode):
        lay = t.layout
        return {"kind": "product", "n1": lay.n1, "m1": lay.m1, "n2": lay.n2, "m2": lay.m2,
                "left": tree_to_json(t.left), "right": tree_to_json(t.right)}
    rec = t.record
    return {
        "kind": "elim",
        "removals": [{"player": r.player, "index": r.index + 1,
                      "dominated_by": r.dominated_by + 1,
                      "payoffs_a": _strs(r.payoffs_a), "payoffs_b": _strs(r.payoffs_b)}
                     for r in rec.removals],
        "surviving_rows": [i + 1 for i in rec.surviving_rows],
        "surviving_cols": [j + 1 for j in rec.surviving_cols],
        "child": tree_to_json(t.child),
    }


def tree_from_json(data: dict) -> Tree:
    """Inverse of :func:`tree_to_json`; node games are rebuilt bottom-up."""
    kind = data.get("kind")
    if kind == "leaf":
        return Leaf(game_from_json(data["game"]))
    if kind == "sum":
        left, right = tree_from_json(data["left"]), tree_from_json(data["right"])
        K = parse_rational(data["K"])
        shift = tuple(_parse_list(data.get("shift", ["0", "0"]), "shift"))
        game = sum_game(left.game, right.game, K)
        if any(shift):
            game = game.shifted(*shift)
        return SumNode(game, SumLayout(data["n1"], data["m1"], K), left, right, shift)
    if kind == "product":
        left, right = tree_from_json(data["left"]), tree_from_json(data["right"])
        lay = ProductLayout(data["n1"], data["m1"], data["n2"], data["m2"])
        return ProductNode(product_game(left.game, right.game), lay, left, right)
    if kind == "elim":
        child = tree_from_json(data["child"])
        removals = tuple(
            Removal(r["player"], r["index"] - 1, r["dominated_by"] - 1,
                    tuple(_parse_list(r["payoffs_a"], "payoffs_a")),
                    tuple(_parse_list(r["payoffs_b"], "payoffs_b")))
            for r in data["removals"])
        rec = EliminationRecord(removals, tuple(i - 1 for i in data["surviving_rows"]),
                                tuple(j - 1 for j in data["surviving_cols"]))
        return ElimNode(reinsert(child.game, rec), rec, child)
    raise ParseError(f"unknown tree node kind {kind!r}")

