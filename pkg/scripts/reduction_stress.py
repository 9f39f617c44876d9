"""Scramble reduced matrices with random SL(2,Z) words and reduce them back.

Reports how often the greedy descent needed the best-first fallback.

    python scripts/reduction_stress.py --trials 2000 --word-len 20
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from osckit import cycles
from osckit.cycles import H0_red_elements, cycle_of, reduce_to_cycle
from osckit.mat import A_HAT, B_HAT, W_HAT, Mat2, conjugate


@dataclass
class StressConfig:
    tmin: int = 3
    tmax: int = 12
    trials: int = 2000
    word_len: int = 20
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(StressConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = StressConfig(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    moves = [A_HAT, A_HAT.inverse(), B_HAT, B_HAT.inverse(), W_HAT]

    fallbacks = 0
    original = cycles._best_first

    def counting(*args):
        nonlocal fallbacks
        fallbacks += 1
        return original(*args)

    cycles._best_first = counting
    t0 = time.perf_counter()
    max_entry = 0
    for _ in range(cfg.trials):
        b0 = rng.choice(H0_red_elements(rng.randint(cfg.tmin, cfg.tmax)))
        C = Mat2(1, 0, 0, 1)
        for _ in range(rng.randint(1, cfg.word_len)):
            C = rng.choice(moves) @ C
        b = conjugate(C, b0)
        max_entry = max(max_entry, max(abs(x) for x in b.entries()))
        rep, _ = reduce_to_cycle(b)
        assert rep in cycle_of(b0)
    cycles._best_first = original
    print(f"trials={cfg.trials} fallbacks={fallbacks} max|entry|={max_entry} time={time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
