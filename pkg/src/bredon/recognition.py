"""Naming computed Mackey functors as sums of catalog members.

Every functor gets an additive fingerprint: primary-part counts of the
isomorphism types of its levels and of the kernels, images and cokernels of
its structure maps (and a few composites).  Isomorphic functors have equal
fingerprints and the fingerprint of a direct sum is the sum of fingerprints,
so naming a functor reduces to a nonnegative integer decomposition over the
catalog.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .mackey import MackeyFunctor, zoo, zoo_names
from .zlinalg import (
    FgAbelianGroup,
    GroupHom,
    cokernel,
    identity,
    image_group,
    kernel,
    mat_sum,
    primary_parts,
    scale,
)

__all__ = [
    "Fingerprint",
    "Recognition",
    "AmbiguousMatch",
    "fingerprint",
    "match",
    "name_of",
    "default_catalog",
    "catalog_collisions",
]

# Isomorphic pairs in the zoo; the second name is dropped from catalogs.
_ALIASES = {"K4": {"A_{K/e}": "up_e Z"}, "C2": {}}


@dataclass(frozen=True)
class Fingerprint:
    """Sorted ``((invariant, primary part), count)`` pairs."""

    counts: tuple[tuple[tuple[str, str], int], ...] = ()

    @classmethod
    def of(cls, c: Counter) -> "Fingerprint":
        return cls(tuple(sorted((k, v) for k, v in c.items() if v)))

    def counter(self) -> Counter:
        return Counter(dict(self.counts))

    def __add__(self, other: "Fingerprint") -> "Fingerprint":
        return Fingerprint.of(self.counter() + other.counter())

    def __rmul__(self, n: int) -> "Fingerprint":
        return Fingerprint.of(Counter({k: n * v for k, v in self.counts}))

    def is_zero(self) -> bool:
        return not self.counts

    def levels(self) -> dict[str, dict[str, int]]:
        """Primary-part counts of each level."""
        out: dict[str, dict[str, int]] = {}
        for (inv, part), c in self.counts:
            if inv.startswith("level "):
                out.setdefault(inv[6:], {})[part] = c
        return out

    def to_list(self) -> list:
        return [[inv, part, c] for (inv, part), c in self.counts]

    @classmethod
    def from_list(cls, data) -> "Fingerprint":
        return cls.of(Counter({(inv, part): c for inv, part, c in data}))


def _add_group(acc: Counter, label: str, g: FgAbelianGroup) -> None:
    for part, c in primary_parts(g).items():
        acc[(label, part)] += c


def _add_map(acc: Counter, label: str, f: GroupHom) -> None:
    _add_group(acc, f"ker {label}", kernel(f).group)
    _add_group(acc, f"im {label}", image_group(f))
    _add_group(acc, f"coker {label}", cokernel(f).group)


def _stack(parts: list[GroupHom], vertical: bool) -> GroupHom:
    if vertical:
        tgt = FgAbelianGroup(sum((p.target.orders for p in parts), ()))
        return GroupHom(parts[0].source, tgt, np.vstack([p.matrix for p in parts]))
    src = FgAbelianGroup(sum((p.source.orders for p in parts), ()))
    return GroupHom(src, parts[0].target, np.hstack([p.matrix for p in parts]))


def fingerprint(m: MackeyFunctor) -> Fingerprint:
    """Isomorphism-invariant, additive summary of ``m``."""
    grp = m.group
    lv = m.levels
    acc: Counter = Counter()
    for h in grp.subgroups:
        _add_group(acc, f"level {h}", lv[h])
    for h, j in grp.covering_pairs():
        res = GroupHom(lv[h], lv[j], m.res[(h, j)])
        tr = GroupHom(lv[j], lv[h], m.tr[(j, h)])
        _add_map(acc, f"res {h}>{j}", res)
        _add_map(acc, f"tr {j}>{h}", tr)
        _add_map(acc, f"res.tr {j}>{h}", res @ tr)
        _add_map(acc, f"tr.res {h}>{j}", tr @ res)
    top, bottom = grp.top, grp.bottom
    if len(grp.chain(top, bottom)) > 2:
        _add_map(acc, "res top>bottom", GroupHom(lv[top], lv[bottom], m.restriction(top, bottom)))
        _add_map(acc, "tr bottom>top", GroupHom(lv[bottom], lv[top], m.transfer(bottom, top)))
    for h in grp.subgroups:
        below = grp.covers(h)
        if len(below) > 1:
            _add_map(acc, f"joint res {h}", _stack([GroupHom(lv[h], lv[j], m.res[(h, j)]) for j in below], True))
            _add_map(acc, f"joint tr {h}", _stack([GroupHom(lv[j], lv[h], m.tr[(j, h)]) for j in below], False))
        outside = [g for g in grp.elements if g not in grp.members(h)]
        if not outside or lv[h].ngens == 0:
            continue
        one = identity(lv[h].ngens)
        fixers = []
        for g in outside:
            w = m.action(h, g)
            minus = GroupHom(lv[h], lv[h], mat_sum(one, scale(-1, w)))
            plus = GroupHom(lv[h], lv[h], mat_sum(one, w))
            name = grp.element_name(g)
            _add_map(acc, f"1-{name} on {h}", minus)
            _add_map(acc, f"1+{name} on {h}", plus)
            fixers.append(minus)
        if len(fixers) > 1:
            _add_group(acc, f"fixed {h}", kernel(_stack(fixers, True)).group)
    return Fingerprint.of(acc)


# ---------------------------------------------------------------- matching


class AmbiguousMatch(ValueError):
    """Two different multisets of catalog members have the same fingerprint."""


@dataclass(frozen=True)
class Recognition:
    """Outcome of :func:`match`.

    ``status`` is ``"certified"`` (unique fingerprint decomposition),
    ``"unrecognized"`` or ``"ambiguous"``.
    """

    status: str
    terms: tuple[tuple[str, int], ...] = ()
    alternatives: tuple[tuple[tuple[str, int], ...], ...] = field(default=(), repr=False)

    @property
    def ok(self) -> bool:
        return self.status == "certified"

    def multiset(self) -> Counter:
        return Counter(dict(self.terms))

    def __str__(self) -> str:
        if self.status == "unrecognized":
            return "?"
        if self.status == "ambiguous":
            return " | ".join(_render(t) for t in self.alternatives)
        return _render(self.terms)


def _render(terms) -> str:
    if not terms:
        return "0"
    return " + ".join(name if c == 1 else f"{name}^{c}" for name, c in terms)


def default_catalog(group: str = "K4") -> tuple[str, ...]:
    aliases = _ALIASES.get(group, {})
    return tuple(n for n in zoo_names(group) if n not in aliases)


@lru_cache(maxsize=None)
def _catalog_prints(group: str, names: tuple[str, ...]) -> tuple[Fingerprint, ...]:
    return tuple(fingerprint(zoo(n, group)) for n in names)


def catalog_collisions(group: str = "K4", names: tuple[str, ...] | None = None) -> list[tuple[str, str]]:
    """Pairs of catalog members with equal fingerprints (should be empty)."""
    names = names or default_catalog(group)
    fps = _catalog_prints(group, names)
    return [(a, b) for i, a in enumerate(names) for b, fb in zip(names[i + 1:], fps[i + 1:]) if fps[i] == fb]


def _solve(target: Counter, members: list[Counter], limit: int = 2) -> list[tuple[int, ...]]:
    """Nonnegative vectors ``c`` with ``sum c_i members[i] == target`` (at most ``limit``)."""
    n = len(members)
    later: list[set] = [set() for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        later[i] = later[i + 1] | set(members[i])
    found: list[tuple[int, ...]] = []
    chosen = [0] * n

    def go(i: int, rest: Counter) -> None:
        if len(found) >= limit:
            return
        if not rest:
            found.append(tuple(chosen[:i]) + (0,) * (n - i))
            return
        if i == n or not set(rest) <= later[i]:
            return
        mem = members[i]
        top = min(rest.get(k, 0) // v for k, v in mem.items())
        for c in range(top, -1, -1):
            chosen[i] = c
            nxt = rest - Counter({k: c * v for k, v in mem.items()}) if c else rest
            go(i + 1, nxt)
        chosen[i] = 0

    go(0, +target)
    return found


def match(m: MackeyFunctor, catalog: tuple[str, ...] | list[str] | None = None) -> Recognition:
    """Decompose ``m`` as a sum of catalog members by fingerprint."""
    group = m.group.name
    names = tuple(catalog) if catalog is not None else default_catalog(group)
    target = fingerprint(m).counter()
    if not +target:
        return Recognition("certified")
    members = [f.counter() for f in _catalog_prints(group, names)]
    sols = _solve(target, members)
    as_terms = [tuple((n, c) for n, c in zip(names, s) if c) for s in sols]
    if not sols:
        return Recognition("unrecognized")
    if len(sols) > 1:
        return Recognition("ambiguous", alternatives=tuple(as_terms))
    return Recognition("certified", as_terms[0])


def name_of(m: MackeyFunctor, catalog=None) -> str:
    """Rendered name; raises :class:`AmbiguousMatch` rather than picking a tie."""
    r = match(m, catalog)
    if r.status == "ambiguous":
        raise AmbiguousMatch(str(r))
    return str(r)
