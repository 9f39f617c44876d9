"""Print the classification table for small traces and time it.

    python scripts/reproduce_table.py --tmax 7 --rmax 24
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from osckit.io import table_data, table_to_text


@dataclass
class TableConfig:
    tmax: int = 7
    rmax: int = 24


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tmax", type=int, default=TableConfig.tmax)
    p.add_argument("--rmax", type=int, default=TableConfig.rmax)
    cfg = TableConfig(**vars(p.parse_args()))
    t0 = time.perf_counter()
    data = table_data(cfg.tmax, list(range(1, cfg.rmax + 1)))
    print(table_to_text(data), end="")
    print(f"# {time.perf_counter() - t0:.3f}s")


if __name__ == "__main__":
    main()
