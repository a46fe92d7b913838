"""Print pi_n(S^{k rho_bar} box HM) by recognized name for a range of k."""

import argparse
from dataclasses import dataclass

from bredon.complexes import VirtualRep, homology, realize, suspension_complex
from bredon.mackey import zoo
from bredon.recognition import match


@dataclass
class ConeConfig:
    coeff: str = "A"
    kmax: int = 6
    negative: bool = False
    margin: int = 2


def cone_rows(cfg: ConeConfig):
    sign = -1 if cfg.negative else 1
    for k in range(1, cfg.kmax + 1):
        mc = realize(suspension_complex(VirtualRep.rho_bar(sign * k)), zoo(cfg.coeff))
        degrees = range(0, k + cfg.margin + 1) if sign > 0 else range(0, -k - cfg.margin - 1, -1)
        yield sign * k, [(n, str(match(homology(mc, n)))) for n in degrees]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--coeff", default="A")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--negative", action="store_true")
    p.add_argument("--margin", type=int, default=2)
    cfg = ConeConfig(**vars(p.parse_args()))
    for k, row in cone_rows(cfg):
        print(f"k = {k}")
        for n, name in row:
            if name != "0":
                print(f"  n = {n:3d}: {name}")


if __name__ == "__main__":
    main()
