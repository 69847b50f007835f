"""Build and re-check the blown-up-clique graph that beats g(n,h); writes the certificate as JSON."""

import argparse
import json
from dataclasses import dataclass

from inducibility.counting import automorphism_count
from inducibility.enumeration import enumerate_graphs
from inducibility.extremal import build_counterexample, run_checks


@dataclass
class Config:
    q: int = 6
    r: int = 4
    offset: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--r", type=int, default=Config.r)
    p.add_argument("--offset", type=int, default=Config.offset, help="skip this many asymmetric graphs")
    p.add_argument("--output")
    a = p.parse_args()
    cfg = Config(a.q, a.r, a.offset)
    asym = [g for g in enumerate_graphs(cfg.q) if automorphism_count(g) == 1]
    cert = build_counterexample(cfg.q, cfg.r, asym[cfg.offset:cfg.offset + cfg.r])
    assert run_checks(cert) == cert.checks
    text = json.dumps(cert.as_dict(), indent=2)
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    raise SystemExit(0 if cert.ok else 1)


if __name__ == "__main__":
    main()
