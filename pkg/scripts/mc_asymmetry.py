"""Pass rates of the strong-asymmetry conditions on G(h, 1/2) across several h."""

import argparse
import csv
import sys
from dataclasses import dataclass, field

from inducibility.asymmetry import CSV_COLUMNS, mc_theorem1


@dataclass
class Config:
    hs: list[int] = field(default_factory=lambda: [50, 100, 200, 400, 1000])
    trials: int = 20
    seed: int = 1
    deep_budget: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--hs", default="50,100,200,400,1000")
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--deep-budget", type=int, default=Config.deep_budget)
    a = p.parse_args()
    cfg = Config([int(x) for x in a.hs.split(",")], a.trials, a.seed, a.deep_budget)
    w = csv.DictWriter(sys.stdout, CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for h in cfg.hs:
        for row in mc_theorem1(h, cfg.trials, cfg.seed, cfg.deep_budget):
            w.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
