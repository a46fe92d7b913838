"""Command-line front end: ``bredon compute | verify | zoo | ss``.

Chart cells follow the usual ``pi_{x + yV}`` labelling: with the default
``plus`` convention the cell at ``(x, y)`` is ``H_x`` of ``S^{-yV}`` with
coefficients in ``M``, so positive suspensions sit in the fourth quadrant.
``minus`` flips the sign of ``y``.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass
from functools import lru_cache

import click

from .complexes import VirtualRep, homology, realize, suspension_complex, verify_cofiber_les
from .gset import FinGSet, get_group
from .mackey import (
    MackeyFunctor,
    free_on,
    hom_group,
    induce,
    realize_box_free,
    restrict,
    short_exact_failures,
    standard_sequences,
    to_dict,
    validate_axioms,
    zoo,
    zoo_names,
)
from .recognition import catalog_collisions, fingerprint, match
from .ss import compare_with_total, page, rho_bicomplex
from .zlinalg import describe_group, iso_invariants

SCHEMA = 1
DEFAULT_CAP = 16


# ---------------------------------------------------------------- charts


@dataclass(frozen=True)
class ChartRequest:
    group: str = "K4"
    coeff: str = "A"
    grading: str = "rho_bar"
    xs: tuple[int, ...] = ()
    ys: tuple[int, ...] = ()
    convention: str = "plus"
    level: str | None = None

    def __post_init__(self):
        grp = get_group(self.group)
        zoo(self.coeff, self.group)
        if self.convention not in ("plus", "minus"):
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.level is not None and self.level not in grp.subgroups:
            raise ValueError(f"{self.level!r} is not a subgroup of {self.group}")
        self.sign_subgroups()

    def sign_subgroups(self) -> tuple[str, ...]:
        """Kernels of the sign representations making up one unit of ``y``."""
        if self.grading == "rho_bar":
            return ("e",) if self.group == "C2" else ("L", "D", "R")
        kind, _, h = self.grading.partition(":")
        if kind != "sigma":
            raise ValueError(f"unknown grading {self.grading!r}")
        if self.group == "C2":
            if h not in ("", "e"):
                raise ValueError("the only C2 sign representation has kernel e")
            return ("e",)
        if h not in ("L", "D", "R"):
            raise ValueError("sigma grading needs a kernel L, D or R")
        return (h,)

    def suspension(self, y: int) -> VirtualRep:
        q = -y if self.convention == "plus" else y
        if self.group == "C2":
            return VirtualRep(sigma=q, group="C2")
        return VirtualRep(**{"q" + h: q for h in self.sign_subgroups()})


@dataclass(frozen=True)
class Cell:
    x: int
    y: int
    suspension: str
    value: MackeyFunctor

    def label(self, level: str | None = None) -> str:
        if level is not None:
            return describe_group(self.value.levels[level])
        r = match(self.value)
        if r.status == "unrecognized":
            return "?{" + "; ".join(f"{h}:{describe_group(g)}" for h, g in self.value.levels.items()) + "}"
        return str(r)


@lru_cache(maxsize=64)
def _realized(v: VirtualRep, coeff: str):
    return realize(suspension_complex(v), zoo(coeff, v.group))


def compute_chart(req: ChartRequest) -> list[Cell]:
    """Cells in row-major order: ``y`` descending, ``x`` ascending."""
    cells = []
    for y in sorted(req.ys, reverse=True):
        v = req.suspension(y)
        mc = _realized(v, req.coeff)
        for x in sorted(req.xs):
            cells.append(Cell(x, y, str(v), homology(mc, x)))
    return cells


def _grid(rows: list[str], cols: list[str], body: dict[tuple[str, str], str], corner: str) -> str:
    width = [max([len(corner)] + [len(r) for r in rows])]
    for c in cols:
        width.append(max([len(c)] + [len(body[(r, c)]) for r in rows]))
    lines = ["  ".join(s.rjust(w) for s, w in zip([corner] + cols, width))]
    for r in rows:
        lines.append("  ".join(s.rjust(w) for s, w in zip([r] + [body[(r, c)] for c in cols], width)))
    return "\n".join(lines) + "\n"


def render_table(req: ChartRequest, cells: list[Cell]) -> str:
    if not cells:
        return "(empty chart)\n"
    ys = [str(y) for y in sorted(req.ys, reverse=True)]
    xs = [str(x) for x in sorted(req.xs)]
    body = {(str(c.y), str(c.x)): c.label(req.level) for c in cells}
    return _grid(ys, xs, body, "y\\x")


def render_csv(req: ChartRequest, cells: list[Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "level", "group", "name"])
    for c in cells:
        name = c.label()
        for h, g in c.value.levels.items():
            w.writerow([c.x, c.y, h, describe_group(g), name])
    return buf.getvalue()


def chart_json(req: ChartRequest, cells: list[Cell]) -> dict:
    out = {
        "schema": SCHEMA,
        "request": {"group": req.group, "coeff": req.coeff, "grading": req.grading,
                    "convention": req.convention, "x": sorted(req.xs), "y": sorted(req.ys)},
        "cells": [],
    }
    for c in cells:
        r = match(c.value)
        out["cells"].append({
            "x": c.x, "y": c.y, "suspension": c.suspension,
            "name": str(r), "status": r.status,
            "fingerprint": fingerprint(c.value).to_list(),
            "mackey": to_dict(c.value),
        })
    return out


def render_json(req: ChartRequest, cells: list[Cell]) -> str:
    return json.dumps(chart_json(req, cells), sort_keys=True, indent=1) + "\n"


RENDERERS = {"table": render_table, "csv": render_csv, "json": render_json}


def parse_range(text: str) -> tuple[int, ...]:
    """``"3"``, ``"-2:4"`` (inclusive) or ``"1,3,5"``; ``"1:0"`` is empty."""
    text = text.strip()
    if not text:
        return ()
    if ":" in text:
        lo, hi = (int(t) for t in text.split(":", 1))
        return tuple(range(lo, hi + 1))
    return tuple(int(t) for t in text.split(","))


# ---------------------------------------------------------------- verification suites


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.suite}: {self.name}" + (f" ({self.detail})" if self.detail else "")


def suite_axioms() -> list[Check]:
    out = []
    for g in ("K4", "C2"):
        for n in zoo_names(g):
            rep = validate_axioms(zoo(n, g))
            out.append(Check("axioms", f"{g} {n}", rep.ok, "; ".join(rep.violations[:3])))
    return out


def suite_ses() -> list[Check]:
    out = []
    for g in ("K4", "C2"):
        for label, (f, h) in standard_sequences(g).items():
            bad = short_exact_failures(f, h) + [str(x) for x in (f.check(), h.check()) if not x.ok]
            out.append(Check("ses", f"{g} 0 -> {label} -> 0", not bad, "; ".join(bad)))
    return out


def suite_les(ks=range(-3, 4)) -> list[Check]:
    out = []
    for k in ks:
        degrees = range(-3, k + 4) if k >= 0 else range(k - 3, 4)
        for m in ("A", "Z", "I"):
            for h in ("L", "D", "R"):
                rep = verify_cofiber_les(h, VirtualRep.rho_bar(k), zoo(m), degrees)
                out.append(Check("les", f"K/{h} cofiber, {k} rho_bar, {m}", rep.ok, "; ".join(rep.failures[:3])))
    return out


def suite_boxformula() -> list[Check]:
    """``A_{G/H} box M = up_H down_H M``, and ``Hom(A_{G/H}, M) = M(G/H)`` by solving for morphisms."""
    out = []
    for g in ("K4", "C2"):
        grp = get_group(g)
        for n in zoo_names(g):
            m = zoo(n, g)
            for h in grp.subgroups:
                orbit = FinGSet(grp, (h,))
                box = fingerprint(realize_box_free(orbit, m)) == fingerprint(induce(h, restrict(h, m), grp))
                yoneda = iso_invariants(hom_group(free_on(orbit), m)) == iso_invariants(m.levels[h])
                detail = "; ".join(t for t, ok in (("box formula", box), ("Yoneda", yoneda)) if not ok)
                out.append(Check("boxformula", f"{g} {n} at {h}", box and yoneda, detail and detail + " fails"))
    return out


# Total degrees with several nonzero E^2 entries inside the range of interest.
EXPECTED_EXTENSIONS = {("A", 3): {3}, ("A", 4): {4}, ("A", -4): {-4}, ("Z", 3): {3}, ("Z", 4): {4}}


def range_of_interest(k: int) -> range:
    return range(0, k + 2) if k > 0 else range(k - 1, 1)


def suite_sscompare() -> list[Check]:
    out = []
    for k in (1, 2):
        b = rho_bicomplex(k, zoo("A", "C2"))
        bad = [c.n for c in compare_with_total(b) if c.status != "match"]
        out.append(Check("sscompare", f"C2 A, {k} sigma", not bad, f"degrees {bad}" if bad else ""))
    for m in ("A", "Z", "I"):
        for k in (-4, -3, -2, 2, 3, 4):
            comps = compare_with_total(rho_bicomplex(k, zoo(m)))
            failed = [c.n for c in comps if c.status == "failure"]
            flagged = {c.n for c in comps if c.status == "extension" and c.n in range_of_interest(k)}
            expected = EXPECTED_EXTENSIONS.get((m, k), set())
            unsplit = [c.n for c in comps if c.status == "extension" and not c.split]
            ok = not failed and flagged == expected and not unsplit
            detail = "" if ok else f"failures {failed}, extensions {sorted(flagged)}, expected {sorted(expected)}"
            out.append(Check("sscompare", f"K4 {m}, {k} rho_bar", ok, detail))
    return out


def suite_catalog() -> list[Check]:
    return [Check("catalog", f"{g} fingerprints pairwise distinct", not (c := catalog_collisions(g)),
                  ", ".join(f"{a}={b}" for a, b in c)) for g in ("K4", "C2")]


SUITES = {
    "axioms": suite_axioms,
    "ses": suite_ses,
    "les": suite_les,
    "boxformula": suite_boxformula,
    "sscompare": suite_sscompare,
    "catalog": suite_catalog,
}


# ---------------------------------------------------------------- zoo dump


def describe_functor(m: MackeyFunctor) -> str:
    grp = m.group
    lines = [f"{m.name or 'functor'} over {grp.name}"]
    for h in reversed(grp.subgroups):
        lines.append(f"  {grp.name}/{h}: {m.levels[h]}")
    for h, j in sorted(grp.covering_pairs(), key=lambda p: -grp.subgroups.index(p[0])):
        if not (m.levels[h].ngens and m.levels[j].ngens):
            continue
        lines.append(f"  res {h}>{j}: {m.res[(h, j)].tolist()}")
        lines.append(f"  tr  {j}>{h}: {m.tr[(j, h)].tolist()}")
    for h in reversed(grp.subgroups):
        for g in grp.elements:
            if g in grp.members(h) or not m.levels[h].ngens:
                continue
            w = m.action(h, g)
            if w.tolist() != [[int(i == j) for j in range(w.shape[1])] for i in range(w.shape[0])]:
                lines.append(f"  {grp.element_name(g)} on {h}: {w.tolist()}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- click commands


def _check_cap(values, cap: int, axis: str) -> None:
    big = [v for v in values if abs(v) > cap]
    if big:
        raise click.BadParameter(f"|{axis}| exceeds {cap} (raise --max-degree)", param_hint=f"--{axis}")


@click.group()
def main():
    """Bredon homology of representation spheres for C2 and the Klein four group."""


@main.command()
@click.option("--group", default="K4", type=click.Choice(["K4", "C2"]))
@click.option("--coeff", default="A", help="Zoo name of the coefficient functor.")
@click.option("--grading", default="rho_bar", help="rho_bar or sigma:H.")
@click.option("--x", "xr", default="-4:4", help="Trivial degrees, e.g. -4:4 or 0,2.")
@click.option("--y", "yr", default="-4:4", help="Multiples of the grading representation.")
@click.option("--format", "fmt", default="table", type=click.Choice(sorted(RENDERERS)))
@click.option("--convention", default="plus", type=click.Choice(["plus", "minus"]))
@click.option("--level", default=None, help="Show only the group at this level.")
@click.option("--max-degree", default=DEFAULT_CAP, show_default=True)
def compute(group, coeff, grading, xr, yr, fmt, convention, level, max_degree):
    """Chart of pi_{x + y V}(H M), one recognized functor per cell."""
    try:
        xs, ys = parse_range(xr), parse_range(yr)
    except ValueError as e:
        raise click.BadParameter(str(e)) from None
    _check_cap(xs, max_degree, "x")
    _check_cap(ys, max_degree, "y")
    try:
        req = ChartRequest(group, coeff, grading, xs, ys, convention, level)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    click.echo(RENDERERS[fmt](req, compute_chart(req)), nl=False)


@main.command()
@click.option("--suite", default="all", type=click.Choice(sorted(SUITES) + ["all"]))
@click.option("--quiet", is_flag=True, help="Only print failures and the summary.")
def verify(suite, quiet):
    """Run invariant suites; exit status 1 if any check fails."""
    names = sorted(SUITES) if suite == "all" else [suite]
    checks = [c for n in names for c in SUITES[n]()]
    for c in checks:
        if not quiet or not c.ok:
            click.echo(c.line())
    failed = sum(not c.ok for c in checks)
    click.echo(f"{len(checks) - failed}/{len(checks)} checks passed")
    sys.exit(1 if failed else 0)


@main.command(name="zoo")
@click.argument("action", type=click.Choice(["list", "show"]))
@click.argument("name", required=False)
@click.option("--group", default="K4", type=click.Choice(["K4", "C2"]))
def zoo_cmd(action, name, group):
    """List the catalog or print one functor's levels and matrices."""
    if action == "list":
        for n in zoo_names(group):
            click.echo(n)
        return
    if not name:
        raise click.UsageError("show needs a functor name")
    try:
        m = zoo(name, group)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    click.echo(describe_functor(m), nl=False)


@main.command()
@click.option("--group", default="K4", type=click.Choice(["K4", "C2"]))
@click.option("--coeff", default="A")
@click.option("--k", "k", type=int, required=True, help="Spectral sequence for S^{k rho_bar} (k != 0).")
@click.option("--page", "r", default=2, type=click.Choice(["1", "2"]))
@click.option("--method", default="exact", type=click.Choice(["exact", "direct"]))
@click.option("--format", "fmt", default="table", type=click.Choice(["table", "json"]))
def ss(group, coeff, k, r, method, fmt):
    """E^1 or E^2 of the smash bicomplex, with the comparison to total homology."""
    if k == 0:
        raise click.BadParameter("k must be nonzero", param_hint="--k")
    try:
        m = zoo(coeff, group)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    b = rho_bicomplex(k, m)
    pg = page(b, int(r), method)
    comps = compare_with_total(b)
    names = {ij: str(match(v)) for ij, v in sorted(pg.entries.items())}
    if fmt == "json":
        doc = {
            "schema": SCHEMA, "group": group, "coeff": coeff, "k": k, "page": int(r), "method": method,
            "entries": [{"i": i, "j": j, "name": n, "mackey": to_dict(pg.entries[(i, j)])}
                        for (i, j), n in names.items()],
            "comparison": [{"n": c.n, "status": c.status, "split": c.split, "total": c.total,
                            "detail": c.detail} for c in comps],
        }
        click.echo(json.dumps(doc, sort_keys=True, indent=1))
        return
    js = sorted({j for _, j in names}, reverse=True)
    is_ = sorted({i for i, _ in names})
    body = {(str(j), str(i)): names[(i, j)] for i, j in names}
    click.echo(_grid([str(j) for j in js], [str(i) for i in is_], body, "j\\i"), nl=False)
    click.echo()
    for c in comps:
        extra = f" split={c.split}" if c.split is not None else ""
        click.echo(f"n={c.n}: {c.status}{extra}  total {c.total}" + (f"  [{c.detail}]" if c.detail else ""))


if __name__ == "__main__":
    main()
