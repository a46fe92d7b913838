"""E^2 pages of the rho_bar double complexes with the total-homology comparison."""

import argparse
from dataclasses import dataclass, field

from bredon.mackey import zoo
from bredon.recognition import match
from bredon.ss import compare_with_total, page, rho_bicomplex


@dataclass
class PagesConfig:
    coeffs: list[str] = field(default_factory=lambda: ["A", "Z", "I"])
    ks: list[int] = field(default_factory=lambda: [-4, -3, -2, 2, 3, 4])
    group: str = "K4"


def report(coeff: str, k: int, group: str) -> str:
    b = rho_bicomplex(k, zoo(coeff, group))
    lines = [f"{coeff}, k = {k}"]
    for (i, j), v in page(b, 2).nonzero().items():
        lines.append(f"  E2({i},{j}) = {match(v)}")
    for c in compare_with_total(b):
        if c.status != "match":
            lines.append(f"  n = {c.n}: {c.status}, split = {c.split}, total {c.total}")
    return "\n".join(lines)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--coeffs", nargs="+", default=["A", "Z", "I"])
    p.add_argument("--ks", nargs="+", type=int, default=[-4, -3, -2, 2, 3, 4])
    p.add_argument("--group", default="K4", choices=["K4", "C2"])
    cfg = PagesConfig(**vars(p.parse_args()))
    for coeff in cfg.coeffs:
        for k in cfg.ks:
            print(report(coeff, k, cfg.group))


if __name__ == "__main__":
    main()
