"""Edge-flip hill climbing against the nested blowup for orders past the exhaustive range."""

import argparse
from dataclasses import dataclass

from inducibility.blowup import nested_blowup
from inducibility.counting import count_induced_copies
from inducibility.extremal import HillclimbConfig, hillclimb_extremal
from inducibility.formulas import g_value
from inducibility.graph import graph6_decode


@dataclass
class Config:
    pattern: str = "Bg"
    ns: tuple[int, ...] = (10, 12, 15, 20)
    restarts: int = 3
    max_steps: int = 100
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--pattern", default=Config.pattern)
    p.add_argument("--ns", default="10,12,15,20")
    p.add_argument("--restarts", type=int, default=Config.restarts)
    p.add_argument("--max-steps", type=int, default=Config.max_steps)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    cfg = Config(a.pattern, tuple(int(x) for x in a.ns.split(",")), a.restarts, a.max_steps, a.seed)
    h = graph6_decode(cfg.pattern)
    print("n,g,nested,hillclimb,best_g6")
    for n in cfg.ns:
        hc = HillclimbConfig(cfg.restarts, cfg.max_steps, 20, cfg.seed)
        r = hillclimb_extremal(h, n, hc)
        nested = count_induced_copies(h, nested_blowup(h, n)).copies
        print(f"{n},{g_value(n, h.n)},{nested},{r.max_copies},{r.extremal_g6[0]}", flush=True)


if __name__ == "__main__":
    main()
