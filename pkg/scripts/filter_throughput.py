"""Records per second of the batch c4 and k4e filters on relabeled K_12 survivors.

Survivors pass every check, so each record costs a full scan: a worst case.
"""

import argparse
import random
import time
from dataclasses import dataclass

import numpy as np

from hyperfocus.filters import c4_batch, k4e_batch
from hyperfocus.twelve import fixture


@dataclass
class Config:
    records: int = 200_000
    k4e_records: int = 2_000
    seed: int = 0


def relabeled_rows(count: int, rng: random.Random) -> np.ndarray:
    base = [fixture(0), fixture(1)]
    rows = []
    for _ in range(min(count, 500)):
        vp, cp = list(range(12)), list(range(11))
        rng.shuffle(vp)
        rng.shuffle(cp)
        rows.append(rng.choice(base).relabel(vp, cp).colors)
    X = np.array(rows, dtype=np.uint8)
    return np.tile(X, (count // len(X) + 1, 1))[:count]


def rate(fn, X) -> float:
    fn(X[:4], 12)  # compile
    t = time.perf_counter()
    fn(X, 12)
    return len(X) / (time.perf_counter() - t)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--records", type=int, default=Config.records)
    a = p.parse_args()
    cfg = Config(records=a.records)
    rng = random.Random(cfg.seed)
    print(f"c4:  {rate(c4_batch, relabeled_rows(cfg.records, rng)):.3e} records/s")
    print(f"k4e: {rate(k4e_batch, relabeled_rows(cfg.k4e_records, rng)):.3e} records/s")


if __name__ == "__main__":
    main()
