"""Chart of H_x(S^{-y sigma_H}; A)(K/K) in a square window, both sign conventions."""

import argparse
from dataclasses import dataclass

from bredon.complexes import dualize, homology, realize, sphere_sigma
from bredon.mackey import zoo
from bredon.zlinalg import describe_group


@dataclass
class SigmaChartConfig:
    kernel: str = "L"
    radius: int = 10
    convention: str = "plus"


def chart(cfg: SigmaChartConfig) -> dict[tuple[int, int], str]:
    a = zoo("A")
    out = {}
    for y in range(-cfg.radius, cfg.radius + 1):
        q = -y if cfg.convention == "plus" else y
        c = sphere_sigma(cfg.kernel, q) if q >= 0 else dualize(sphere_sigma(cfg.kernel, -q))
        mc = realize(c, a)
        for x in range(-cfg.radius, cfg.radius + 1):
            out[(x, y)] = describe_group(homology(mc, x).levels["K"])
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kernel", default="L", choices=["L", "D", "R"])
    p.add_argument("--radius", type=int, default=10)
    p.add_argument("--convention", default="plus", choices=["plus", "minus"])
    cfg = SigmaChartConfig(**vars(p.parse_args()))
    cells = chart(cfg)
    xs = range(-cfg.radius, cfg.radius + 1)
    width = max(len(v) for v in cells.values())
    print("y\\x ".rjust(5) + " ".join(str(x).rjust(width) for x in xs))
    for y in range(cfg.radius, -cfg.radius - 1, -1):
        print(f"{y:4d} " + " ".join(("." if cells[(x, y)] == "0" else cells[(x, y)]).rjust(width) for x in xs))


if __name__ == "__main__":
    main()
