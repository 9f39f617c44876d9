"""Cycle and class statistics per trace: |H0_red|, number of cycles,
number of GL(2,Z) classes (cycle pairs), reversible classes, and root index.

    python scripts/cycle_stats.py --tmin 3 --tmax 40
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from osckit.classify import class_representatives, commensurability_field
from osckit.cycles import H0_red_elements, decompose_trace
from osckit.quad import spectral_of_trace
from osckit.symmetry import symmetry_data


@dataclass
class StatsConfig:
    tmin: int = 3
    tmax: int = 40


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tmin", type=int, default=StatsConfig.tmin)
    p.add_argument("--tmax", type=int, default=StatsConfig.tmax)
    cfg = StatsConfig(**vars(p.parse_args()))
    print(f"{'T':>4} {'d':>5} {'m':>3} {'|H0red|':>8} {'cycles':>7} {'classes':>8} {'reversible':>10}  root indices")
    t0 = time.perf_counter()
    for T in range(cfg.tmin, cfg.tmax + 1):
        reps = class_representatives(T)
        data = [symmetry_data(B) for B in reps]
        print(
            f"{T:>4} {commensurability_field(T):>5} {spectral_of_trace(T).m:>3} "
            f"{len(H0_red_elements(T)):>8} {len(decompose_trace(T)):>7} {len(reps):>8} "
            f"{sum(s.reversible for s in data):>10}  {sorted(s.j for s in data)}"
        )
    print(f"# {time.perf_counter() - t0:.3f}s")


if __name__ == "__main__":
    main()
