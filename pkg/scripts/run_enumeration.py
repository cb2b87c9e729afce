"""Enumerate 1-factorization classes of K_n and cross-check the labeled counts."""

import argparse
import time
from dataclasses import dataclass
from math import factorial
from pathlib import Path

from hyperfocus.filters import c4_filter, k4e_filter
from hyperfocus.onefact import automorphism_count, enumerate_factorizations


@dataclass
class Config:
    n_max: int = 10
    out_dir: Path | None = None
    labeled_check_max: int = 8  # orbit-stabilizer sums get slow beyond this


def run(cfg: Config) -> None:
    print("| n | classes | c4 survivors | c4+k4e survivors | labeled | seconds |")
    print("|---|---|---|---|---|---|")
    for n in range(4, cfg.n_max + 1, 2):
        t = time.perf_counter()
        reps = list(enumerate_factorizations(n))
        secs = time.perf_counter() - t
        c4 = [F for F in reps if c4_filter(F) is None]
        both = [F for F in c4 if k4e_filter(F) is None]
        labeled = "-"
        if n <= cfg.labeled_check_max:
            labeled = str(sum(factorial(n) // automorphism_count(F) for F in reps))
        print(f"| {n} | {len(reps)} | {len(c4)} | {len(both)} | {labeled} | {secs:.1f} |")
        if cfg.out_dir:
            cfg.out_dir.mkdir(parents=True, exist_ok=True)
            (cfg.out_dir / f"k{n}.1fc").write_text("".join(F.compact() + "\n" for F in reps))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--out-dir", type=Path)
    a = p.parse_args()
    run(Config(n_max=a.n_max, out_dir=a.out_dir))


if __name__ == "__main__":
    main()
