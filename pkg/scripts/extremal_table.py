"""Exhaustive i_H(n) next to g(n,h) and the nested blowup count, with densities."""

import argparse
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from inducibility.blowup import nested_blowup
from inducibility.counting import count_induced_copies
from inducibility.extremal import exhaustive_extremal
from inducibility.formulas import g_value
from inducibility.graph import graph6_decode


@dataclass
class Config:
    patterns: tuple[str, ...] = ("Bw", "Bg", "EQqw")
    n_min: int = 4
    n_max: int = 8
    workers: int = 1


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--patterns", default=",".join(Config.patterns), help="comma-separated graph6")
    p.add_argument("--n-min", type=int, default=Config.n_min)
    p.add_argument("--n-max", type=int, default=Config.n_max)
    p.add_argument("--workers", type=int, default=Config.workers)
    a = p.parse_args()
    cfg = Config(tuple(a.patterns.split(",")), a.n_min, a.n_max, a.workers)
    print("pattern,n,max_copies,g,nested,density,maximizers")
    for s in cfg.patterns:
        h = graph6_decode(s)
        for n in range(max(cfg.n_min, h.n), cfg.n_max + 1):
            r = exhaustive_extremal(h, n, cfg.workers)
            nested = count_induced_copies(h, nested_blowup(h, n)).copies
            dens = Fraction(r.max_copies, math.comb(n, h.n))
            print(f"{s},{n},{r.max_copies},{g_value(n, h.n)},{nested},{dens},{len(r.extremal_g6)}")
            sys.stdout.flush()


if __name__ == "__main__":
    main()
