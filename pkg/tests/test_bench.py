import math

import pytest

from gamedecomp import bench
from gamedecomp.game import BimatrixGame
from gamedecomp.gen import GenConfig

from conftest import MP

SMALL = GenConfig(min_strategies=8, max_strategies=12)


def test_bench_game_row():
    row = bench.bench_game(GenConfig(min_strategies=8, max_strategies=12, seed=3))
    assert set(row) == set(bench.FIELDS)
    assert row["verified"] == 1 and row["lambda"] <= 6
    assert row["S"] == row["n"] * row["m"]
    assert row["baseline_ms"] == ""


def test_run_bench_seeds_and_summary(tmp_path):
    rows = bench.run_bench(SMALL, 3, 40, baseline=True, baseline_timeout=2)
    assert [r["seed"] for r in rows] == [40, 41, 42]
    s = bench.summarize(rows)
    assert s["games"] == s["verified"] == 3 and s["baseline_compared"] == 3
    path = tmp_path / "out.csv"
    bench.write_csv(rows, str(path))
    assert path.read_text().splitlines()[0] == ",".join(bench.FIELDS)


def test_timed_baseline():
    ms, status = bench.timed_baseline(BimatrixGame.zero_sum(MP), 5)
    assert status == "ok" and ms >= 0


def test_quadratic_guard_exact_square():
    pts = [(s, 3e-9 * s * s) for s in (100, 400, 900, 2500, 10000)]
    c, rows = bench.quadratic_guard(pts)
    assert c == pytest.approx(3e-9)
    assert all(r == pytest.approx(1) for _, _, r in rows)


def test_quadratic_guard_flags_cubic():
    pts = [(s, 1e-9 * s ** 3) for s in (100, 400, 900, 2500, 10000)]
    _, rows = bench.quadratic_guard(pts)
    assert rows[-1][2] > 4


def test_power_law_exponent():
    pts = [(s, 2 * s ** 1.5) for s in (10, 100, 1000)]
    assert bench.power_law_exponent(pts) == pytest.approx(1.5)


def test_structure_time_positive():
    from gamedecomp.gen import generate
    t = bench.structure_time(generate(GenConfig(min_strategies=10, max_strategies=10)))
    assert t > 0 and math.isfinite(t)


def test_scaling_sweep_shape():
    pts = bench.scaling_sweep([5, 8], reps=1)
    assert [s for s, _ in pts] == [25, 64]
