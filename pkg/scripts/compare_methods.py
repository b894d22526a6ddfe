"""Naive expansion against decomposition-driven evaluation on random joins.

For each random join (arbitrary poset shape, random component games) this
computes the Grundy set both ways, checks they agree, and reports how many
positions the naive expansion interned next to the evaluator's work.

    python3 scripts/compare_methods.py --joins 200 --max-shape 7
"""

from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from ojoin.evaluator import grundy_set_of_join, naive_grundy_set
from ojoin.games import GameStore
from ojoin.generate import random_join


@dataclass
class CompareConfig:
    joins: int = 200
    max_shape: int = 7
    max_positions: int = 8
    seed: int = 3


def main() -> None:
    ap = argparse.ArgumentParser(description="naive vs decomposition evaluation")
    ap.add_argument("--joins", type=int, default=CompareConfig.joins)
    ap.add_argument("--max-shape", type=int, default=CompareConfig.max_shape)
    ap.add_argument("--max-positions", type=int, default=CompareConfig.max_positions)
    ap.add_argument("--seed", type=int, default=CompareConfig.seed)
    cfg = CompareConfig(**vars(ap.parse_args()))

    rng = random.Random(cfg.seed)
    naive_t, fast_t, interned = [], [], []
    for _ in range(cfg.joins):
        store = GameStore()
        p = random_join(store, rng, cfg.max_shape, cfg.max_positions)
        t = time.perf_counter()
        fast = grundy_set_of_join(p)
        fast_t.append(time.perf_counter() - t)
        before = len(store)
        t = time.perf_counter()
        naive = naive_grundy_set(p)
        naive_t.append(time.perf_counter() - t)
        interned.append(len(store) - before)
        if fast != naive:
            raise SystemExit(f"disagreement on {p}: {fast} vs {naive}")
    print(f"{cfg.joins} joins, all agree")
    print(f"naive:         median {statistics.median(naive_t) * 1e3:8.3f} ms, max {max(naive_t) * 1e3:8.3f} ms")
    print(f"decomposition: median {statistics.median(fast_t) * 1e3:8.3f} ms, max {max(fast_t) * 1e3:8.3f} ms")
    print(f"positions interned by naive expansion: median {statistics.median(interned)}, max {max(interned)}")


if __name__ == "__main__":
    main()
