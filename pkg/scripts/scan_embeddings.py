"""Embedding verdicts of the two K_12 survivors over GF(2^h), with contradiction counts."""

import argparse
from dataclasses import dataclass

from hyperfocus.embed import embed, verify_embedding
from hyperfocus.gf2m import make_ctx, min_poly, poly_str
from hyperfocus.twelve import extract_parameter, fixture, matches_table


@dataclass
class Config:
    h_min: int = 1
    h_max: int = 7
    prune: bool = True
    time_limit: float | None = None


def run(cfg: Config) -> None:
    for idx in (0, 1):
        F = fixture(idx)
        print(f"## survivor {idx}: {F.compact()}")
        for h in range(cfg.h_min, cfg.h_max + 1):
            r = embed(F, make_ctx(h), prune=cfg.prune, time_limit=cfg.time_limit)
            line = f"h={h:2d} {r.status.value:6s} nodes={r.nodes:6d} {r.seconds:7.2f}s"
            if r.sat:
                a = extract_parameter(r)
                line += (f" verified={verify_embedding(r, F)} a={a:x}"
                         f" min_poly={poly_str(min_poly(r.ctx, a))} table={matches_table(r)}")
            else:
                line += " " + ", ".join(f"{k}={v}" for k, v in sorted(r.contradictions.items()))
            print(line, flush=True)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--h-min", type=int, default=1)
    p.add_argument("--h-max", type=int, default=7)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--time-limit", type=float)
    a = p.parse_args()
    run(Config(a.h_min, a.h_max, not a.no_prune, a.time_limit))


if __name__ == "__main__":
    main()
