"""Scaling of decomposition-driven evaluation on series-parallel shapes.

Doubles the shape size at a fixed leaf-set width and reports the time per
evaluation. The ratio between consecutive rows should stay well below the
factor 4 that quadratic growth would give for the evaluation itself.

    python3 scripts/bench_series_parallel.py --start 250 --steps 5
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from ojoin.evaluator import evaluate
from ojoin.generate import random_grundy_set, random_series_parallel
from ojoin.poset import modular_decompose


@dataclass
class BenchConfig:
    start: int = 250
    steps: int = 5
    max_value: int = 16
    max_set_size: int = 4
    repeats: int = 3
    seed: int = 7


def run(cfg: BenchConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    rows = []
    n = cfg.start
    for _ in range(cfg.steps):
        shape = random_series_parallel(rng, n)
        leaf = {e: random_grundy_set(rng, cfg.max_value, cfg.max_set_size) for e in shape.elements}
        t = time.perf_counter()
        tree = modular_decompose(shape)
        t_dec = time.perf_counter() - t
        best = float("inf")
        for _ in range(cfg.repeats):
            t = time.perf_counter()
            ev = evaluate(shape, leaf, decomposition=tree)
            best = min(best, time.perf_counter() - t)
        rows.append({
            "elements": n,
            "decompose_s": round(t_dec, 4),
            "evaluate_s": round(best, 4),
            "prime_nodes": ev.stats.indecomposable_nodes,
            "grundy": ev.grundy_number,
        })
        n *= 2
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(BenchConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    ap.add_argument("--json", action="store_true")
    args = vars(ap.parse_args())
    as_json = args.pop("json")
    rows = run(BenchConfig(**args))
    if as_json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'elements':>9} {'decompose s':>12} {'evaluate s':>11} {'ratio':>6} {'prime':>6} {'grundy':>7}")
    prev = None
    for r in rows:
        ratio = f"{r['evaluate_s'] / prev:.2f}" if prev else "-"
        print(f"{r['elements']:>9} {r['decompose_s']:>12.4f} {r['evaluate_s']:>11.4f} {ratio:>6} {r['prime_nodes']:>6} {r['grundy']:>7}")
        prev = r["evaluate_s"] or None


if __name__ == "__main__":
    main()
