"""Benchmark harness: generated corpora, timing, baseline comparison, scaling."""

from __future__ import annotations

import csv
import math
import multiprocessing as mp
import statistics
import time
from dataclasses import replace
from typing import Iterable

from .decompose import decompose_tree
from .equilibrium import solve_base
from .gen import GenConfig, generate
from .game import BimatrixGame
from .solver import solve, solve_tree, verify

FIELDS = ["seed", "n", "m", "S", "lambda", "sum", "product", "elim", "leaf",
          "solve_ms", "verified", "baseline_ms", "baseline_status", "speedup"]


def _baseline_worker(g: BimatrixGame, conn):
    t0 = time.perf_counter()
    solve_base(g)
    conn.send((time.perf_counter() - t0) * 1000)
    conn.close()


def timed_baseline(g: BimatrixGame, timeout: float) -> tuple[float, str]:
    """Milliseconds the base solver needs on ``g``, measured in a child process.

    Returns ``(timeout_ms, "timeout")`` if the child does not finish in time.
    """
    ctx = mp.get_context("fork")
    recv, send = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_baseline_worker, args=(g, send), daemon=True)
    proc.start()
    send.close()
    if recv.poll(timeout):
        ms = recv.recv()
        proc.join()
        return ms, "ok"
    proc.terminate()
    proc.join()
    return timeout * 1000, "timeout"


def bench_game(config: GenConfig, baseline: bool = False, baseline_timeout: float = 30.0,
               baseline_max_size: int = 400) -> dict:
    g = generate(config)
    t0 = time.perf_counter()
    eq, report = solve(g)
    solve_ms = (time.perf_counter() - t0) * 1000
    row = {
        "seed": config.seed, "n": g.n, "m": g.m, "S": g.size, "lambda": report.lambda_,
        **report.node_counts,
        "solve_ms": round(solve_ms, 3), "verified": int(verify(g, eq)),
        "baseline_ms": "", "baseline_status": "", "speedup": "",
    }
    if baseline and g.size <= baseline_max_size:
        ms, status = timed_baseline(g, baseline_timeout)
        row["baseline_ms"] = round(ms, 3)
        row["baseline_status"] = status
        # a timed-out baseline gives a lower bound on the speedup
        row["speedup"] = round(ms / solve_ms, 3)
    return row


def run_bench(base: GenConfig, count: int, seed: int, **kwargs) -> list[dict]:
    return [bench_game(replace(base, seed=seed + i), **kwargs) for i in range(count)]


def write_csv(rows: Iterable[dict], path: str):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def summarize(rows: list[dict]) -> dict:
    out = {
        "games": len(rows),
        "verified": sum(r["verified"] for r in rows),
        "max_lambda": max(r["lambda"] for r in rows),
        "under_3s": sum(r["solve_ms"] < 3000 for r in rows),
        "median_solve_ms": statistics.median(r["solve_ms"] for r in rows),
    }
    compared = [r for r in rows if r["baseline_status"]]
    if compared:
        out["baseline_compared"] = len(compared)
        out["decomposition_faster"] = sum(r["solve_ms"] < r["baseline_ms"] for r in compared)
        out["median_speedup"] = statistics.median(r["speedup"] for r in compared)
    return out


def structure_time(g: BimatrixGame) -> float:
    """Seconds spent decomposing and lifting, leaf solving excluded."""
    t0 = time.perf_counter()
    tree = decompose_tree(g, True)
    t_dec = time.perf_counter() - t0
    _, report = solve_tree(tree)
    return t_dec + report.timings["lift"]


def scaling_sweep(dims: Iterable[int], seed: int = 0, reps: int = 3,
                  base: GenConfig | None = None) -> list[tuple[int, float]]:
    """``(S, seconds)`` per square dimension, median over ``reps`` generated games."""
    base = base or GenConfig()
    points = []
    for k in dims:
        times = []
        sizes = []
        for r in range(reps):
            cfg = replace(base, min_strategies=k, max_strategies=k, seed=seed + 1000 * k + r)
            g = generate(cfg)
            sizes.append(g.size)
            times.append(structure_time(g))
        points.append((sizes[0], statistics.median(times)))
    return points


def quadratic_guard(points: list[tuple[int, float]],
                    anchor_max: int = 1000) -> tuple[float, list[tuple[int, float, float]]]:
    """Fit ``t = c * S**2`` on the points with ``S <= anchor_max``.

    Returns ``c`` and ``(S, t, t / (c * S**2))`` for every point.  A ratio
    well above 1 at large ``S`` means faster than quadratic growth.
    """
    anchor = [(s, t) for s, t in points if s <= anchor_max] or points[:1]
    c = sum(t * s * s for s, t in anchor) / sum(s ** 4 for s, _ in anchor)
    return c, [(s, t, t / (c * s * s)) for s, t in points]


def power_law_exponent(points: list[tuple[int, float]]) -> float:
    """Least-squares slope of log t against log S."""
    xs = [math.log(s) for s, _ in points]
    ys = [math.log(t) for _, t in points]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
