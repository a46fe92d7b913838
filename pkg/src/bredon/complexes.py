"""Cellular chain complexes of representation spheres and their homology.

A :class:`FreeComplex` lives in the Burnside category: its terms are finite
G-sets and its differentials are span matrices.  Tensoring with a Mackey
functor (:func:`realize`) turns it into a complex of Mackey functors, whose
homology functors are the homotopy Mackey functors of ``Sigma^V HM``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .gset import K4, FinGSet, GroupDatum, SpanBasisElement, SpanMatrix, compose_spans, get_group, product, span_product
from .mackey import (
    MackeyFunctor,
    MackeyMorphism,
    _induced_functor,
    realize_box_free,
    realize_span_morphism,
    zero_morphism,
)
from .zlinalg import (
    FgAbelianGroup,
    GroupHom,
    Subquotient,
    cokernel as group_cokernel,
    exactness_defect,
    induced_on_subquotient,
    is_zero,
    subquotient,
)

__all__ = [
    "FreeComplex",
    "VirtualRep",
    "MackeyComplex",
    "LesReport",
    "sphere_sigma",
    "orbit_complex",
    "smash",
    "dualize",
    "shift",
    "suspension_complex",
    "realize",
    "homology",
    "homology_with_data",
    "chain_map_on_homology",
    "verify_cofiber_les",
]


# ---------------------------------------------------------------- free complexes


@dataclass(frozen=True)
class FreeComplex:
    """Bounded complex of finite G-sets with span-matrix differentials.

    ``terms[i]`` sits in degree ``lo + i``; ``diffs[i]`` maps degree ``lo + i``
    to degree ``lo + i - 1`` (so ``diffs[0]`` is the zero map out of the bottom).
    """

    group: GroupDatum
    lo: int
    terms: tuple[FinGSet, ...]
    diffs: tuple[SpanMatrix, ...]

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, i: int) -> FinGSet:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return FinGSet(self.group, ())

    def diff(self, i: int) -> SpanMatrix:
        if self.lo < i <= self.hi:
            return self.diffs[i - self.lo]
        return SpanMatrix.zero(self.term(i), self.term(i - 1))

    def cell_counts(self) -> dict[int, int]:
        return {i: len(self.term(i)) for i in self.degrees}

    def check(self) -> list[int]:
        """Degrees ``i`` where ``d(i-1) d(i)`` is nonzero."""
        return [i for i in range(self.lo + 2, self.hi + 1)
                if not compose_spans(self.diff(i), self.diff(i - 1)).is_zero()]


def _complex(group: GroupDatum, lo: int, terms: list[FinGSet], diff_of) -> FreeComplex:
    diffs = [SpanMatrix.zero(terms[0], FinGSet(group, ()))]
    diffs += [diff_of(lo + i) for i in range(1, len(terms))]
    return FreeComplex(group, lo, tuple(terms), tuple(diffs))


def _unit(group: GroupDatum) -> FreeComplex:
    return orbit_complex(group, group.top)


def orbit_complex(group: GroupDatum, h: str) -> FreeComplex:
    """A single orbit ``G/h`` in degree 0."""
    x = FinGSet(group, (h,))
    return FreeComplex(group, 0, (x,), (SpanMatrix.zero(x, FinGSet(group, ())),))


def _twist(group: GroupDatum, h: str) -> int:
    return next(g for g in group.coset_reps(h) if g)


@lru_cache(maxsize=None)
def sphere_sigma(h: str, k: int, group: GroupDatum = K4) -> FreeComplex:
    """Reduced cellular complex of ``S^{k sigma}`` where ``sigma`` has kernel ``h``.

    Degree 0 is the fixed orbit, degrees ``1..k`` are copies of ``G/h``.  The
    first differential is the collapse ``G/h -> G/G``; above it the differential
    is ``1 - (-1)^i w`` with ``w`` the deck transformation of ``G/h``.

    >>> [len(sphere_sigma("L", k).terms) for k in (0, 3)]
    [1, 4]
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if h not in group.subgroups or 2 * group.size(h) != group.order:
        raise ValueError(f"{h} is not an index-two subgroup of {group.name}")
    top = FinGSet(group, (group.top,))
    cell = FinGSet(group, (h,))
    w = _twist(group, h)

    def diff(i: int) -> SpanMatrix:
        if i == 1:
            return SpanMatrix.build(cell, top, {(0, 0, SpanBasisElement(h, group.top, h, 0)): 1})
        sign = -1 if i % 2 == 0 else 1
        return SpanMatrix.build(cell, cell, [((0, 0, SpanBasisElement(h, h, h, 0)), 1),
                                              ((0, 0, SpanBasisElement(h, h, h, w)), sign)])

    return _complex(group, 0, [top] + [cell] * k, diff)


def _embed(sp: SpanMatrix, source: FinGSet, target: FinGSet, so: int, to: int) -> list:
    return [((i + so, j + to, e), c) for (i, j, e), c in sp.terms]


def _smash2(a: FreeComplex, b: FreeComplex) -> FreeComplex:
    grp = a.group
    lo, hi = a.lo + b.lo, a.hi + b.hi
    layout: dict[int, dict[int, int]] = {}
    terms = []
    for n in range(lo, hi + 1):
        pieces, offs, off = [], {}, 0
        for p in a.degrees:
            q = n - p
            if b.lo <= q <= b.hi:
                offs[p] = off
                g = product(a.term(p), b.term(q)).gset
                pieces.append(g)
                off += len(g)
        layout[n] = offs
        terms.append(FinGSet(grp, tuple(o for g in pieces for o in g.orbits)))

    def diff(n: int) -> SpanMatrix:
        src, tgt = terms[n - lo], terms[n - 1 - lo]
        acc = []
        for p, so in layout[n].items():
            q = n - p
            if p - 1 in layout[n - 1]:
                sp = span_product(a.diff(p), SpanMatrix.identity(b.term(q)))
                acc += _embed(sp, src, tgt, so, layout[n - 1][p - 1])
            if p in layout[n - 1]:
                sp = span_product(SpanMatrix.identity(a.term(p)), b.diff(q))
                if p % 2:
                    sp = -sp
                acc += _embed(sp, src, tgt, so, layout[n - 1][p])
        return SpanMatrix.build(src, tgt, acc)

    return _complex(grp, lo, terms, diff)


def smash(cs: list[FreeComplex]) -> FreeComplex:
    """Tensor product of complexes with the Koszul sign ``(-1)^|x|`` on the second factor."""
    if not cs:
        raise ValueError("need at least one complex")
    if any(c.group.name != cs[0].group.name for c in cs):
        raise ValueError("complexes over different groups")
    out = cs[0]
    for c in cs[1:]:
        out = _smash2(out, c)
    return out


def dualize(c: FreeComplex) -> FreeComplex:
    """Cochain complex of ``c`` reindexed homologically: degree ``i`` goes to ``-i``."""
    terms = [c.term(i) for i in range(c.hi, c.lo - 1, -1)]
    return _complex(c.group, -c.hi, terms, lambda j: c.diff(-j + 1).transpose())


def shift(c: FreeComplex, n: int) -> FreeComplex:
    return FreeComplex(c.group, c.lo + n, c.terms, c.diffs)


# ---------------------------------------------------------------- gradings


@dataclass(frozen=True)
class VirtualRep:
    """``n + qL sigma_L + qD sigma_D + qR sigma_R`` (or ``n + sigma * sigma`` for C2)."""

    n: int = 0
    qL: int = 0
    qD: int = 0
    qR: int = 0
    sigma: int = 0
    group: str = "K4"

    def __post_init__(self):
        if self.group == "C2" and (self.qL or self.qD or self.qR):
            raise ValueError("C2 gradings only carry a sigma multiplicity")
        if self.group == "K4" and self.sigma:
            raise ValueError("K4 gradings use qL, qD, qR")

    @classmethod
    def rho_bar(cls, k: int, n: int = 0) -> "VirtualRep":
        return cls(n, k, k, k)

    @classmethod
    def one_sigma(cls, h: str, q: int, n: int = 0, group: str = "K4") -> "VirtualRep":
        if group == "C2":
            return cls(n, sigma=q, group="C2")
        return cls(n, **{"q" + h: q})

    def multiplicities(self) -> dict[str, int]:
        """Kernel subgroup of each sign representation -> multiplicity."""
        if self.group == "C2":
            return {"e": self.sigma}
        return {"L": self.qL, "D": self.qD, "R": self.qR}

    @property
    def mixed(self) -> bool:
        qs = self.multiplicities().values()
        return any(q > 0 for q in qs) and any(q < 0 for q in qs)

    def __str__(self) -> str:
        parts = [f"{self.n}"] if self.n else []
        for h, q in self.multiplicities().items():
            if q:
                parts.append(f"{q}s{h}" if self.group == "K4" else f"{q}sigma")
        return " + ".join(parts) or "0"


@lru_cache(maxsize=None)
def suspension_complex(v: VirtualRep) -> FreeComplex:
    """Reduced cellular complex of ``S^V``; negative sign multiplicities are dualized."""
    grp = get_group(v.group)
    factors = []
    for h, q in v.multiplicities().items():
        if q > 0:
            factors.append(sphere_sigma(h, q, grp))
        elif q < 0:
            factors.append(dualize(sphere_sigma(h, -q, grp)))
    base = smash(factors) if factors else _unit(grp)
    return shift(base, v.n)


# ---------------------------------------------------------------- realized complexes


@dataclass(frozen=True, eq=False)
class MackeyComplex:
    """Complex of Mackey functors; ``diffs[i]`` maps degree ``lo + i`` down one."""

    group: GroupDatum
    lo: int
    terms: tuple[MackeyFunctor, ...]
    diffs: tuple[MackeyMorphism, ...]
    _homology: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, i: int) -> MackeyFunctor:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return MackeyFunctor.zero(self.group)

    def diff(self, i: int) -> MackeyMorphism:
        if self.lo < i <= self.hi:
            return self.diffs[i - self.lo]
        return zero_morphism(self.term(i), self.term(i - 1))

    def check(self) -> list[int]:
        """Degrees ``i`` where ``d(i-1) d(i)`` is nonzero at some level."""
        return [i for i in range(self.lo + 2, self.hi + 1) if not self.diff(i).then(self.diff(i - 1)).is_zero()]


def realize(c: FreeComplex, m: MackeyFunctor) -> MackeyComplex:
    """``C box M``: each orbit ``G/H`` contributes ``A_{G/H} box M``."""
    if c.group.name != m.group.name:
        raise ValueError("complex and coefficients over different groups")
    terms = tuple(realize_box_free(c.term(i), m) for i in c.degrees)
    diffs = [zero_morphism(terms[0], MackeyFunctor.zero(m.group))]
    diffs += [realize_span_morphism(c.diff(i), m) for i in range(c.lo + 1, c.hi + 1)]
    return MackeyComplex(m.group, c.lo, terms, tuple(diffs))


def homology_with_data(c: MackeyComplex, n: int) -> tuple[MackeyFunctor, dict[str, Subquotient]]:
    """``H_n`` together with its levelwise subquotient coordinates."""
    if n not in c._homology:
        inc, out = c.diff(n + 1), c.diff(n)
        sq = {h: subquotient(inc.hom(h), out.hom(h), canonical=False) for h in c.group.subgroups}
        c._homology[n] = (_induced_functor(c.term(n), sq), sq)
    return c._homology[n]


def homology(c: MackeyComplex, n: int) -> MackeyFunctor:
    """The homology Mackey functor in degree ``n`` (zero outside the complex)."""
    return homology_with_data(c, n)[0]


def chain_map_on_homology(f: MackeyMorphism, src: Subquotient, tgt: Subquotient, level: str) -> GroupHom:
    return induced_on_subquotient(f.hom(level), src, tgt)


# ---------------------------------------------------------------- cofiber sequence check


@dataclass
class LesReport:
    """Exactness of ``G/H_+ ^ X -> X -> Sigma^{sigma_H} X -> ...`` at the top level."""

    subgroup: str
    checked: list[tuple[int, str]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return f"exact at {len(self.checked)} positions"
        return "; ".join(self.failures)


def _spans_contain(ambient: FgAbelianGroup, big: GroupHom, small: GroupHom) -> bool:
    q = group_cokernel(big)
    return is_zero(q.project(small.matrix))


def _collapse(c: FreeComplex, h: str, n: int) -> SpanMatrix:
    grp = c.group
    counit = SpanMatrix.build(FinGSet(grp, (h,)), FinGSet(grp, (grp.top,)),
                              {(0, 0, SpanBasisElement(h, grp.top, h, 0)): 1})
    return span_product(counit, SpanMatrix.identity(c.term(n)))


def _block(src: FinGSet, tgt: FinGSet, start: int, length: int, into: bool) -> SpanMatrix:
    """Inclusion of orbits ``start..start+length`` of ``tgt`` (or projection onto those of ``src``)."""
    terms = {}
    for i in range(length):
        if into:
            o = src.orbits[i]
            terms[(i, start + i, SpanBasisElement(o, o, o, 0))] = 1
        else:
            o = tgt.orbits[i]
            terms[(start + i, i, SpanBasisElement(o, o, o, 0))] = 1
    return SpanMatrix.build(src, tgt, terms)


def verify_cofiber_les(h: str, v: VirtualRep, m: MackeyFunctor, degrees: range) -> LesReport:
    """Check exactness of the long exact sequence of the cofibration
    ``G/h_+ ^ X -> X -> Sigma^{sigma_h} X`` for ``X = Sigma^V HM`` at the top level.

    Also certifies that the image of the orbit collapse equals the image of the
    transfer from ``G/h`` in ``H_n(X)(G/G)``.
    """
    grp = get_group(v.group)
    if m.group.name != grp.name:
        raise ValueError("grading and coefficients over different groups")
    if 2 * grp.size(h) != grp.order:
        raise ValueError(f"{h} is not an index-two subgroup")
    top = grp.top
    x = suspension_complex(v)
    orbit = smash([orbit_complex(grp, h), x])
    unit = smash([orbit_complex(grp, top), x])
    cone = smash([sphere_sigma(h, 1, grp), x])
    mo, mx, mc = realize(orbit, m), realize(unit, m), realize(cone, m)
    rep = LesReport(h)
    lo, hi = min(degrees), max(degrees)

    def hom_at(cx: MackeyComplex, sp: SpanMatrix, src_n: int, tgt_cx: MackeyComplex, tgt_n: int) -> GroupHom:
        f = realize_span_morphism(sp, m)
        _, s = homology_with_data(cx, src_n)
        _, t = homology_with_data(tgt_cx, tgt_n)
        return chain_map_on_homology(f, s[top], t[top], top)

    collapse, include, connect = {}, {}, {}
    for n in range(lo - 1, hi + 2):
        collapse[n] = hom_at(mo, _collapse(x, h, n), n, mx, n)
        include[n] = hom_at(mx, _block(unit.term(n), cone.term(n), 0, len(unit.term(n)), True), n, mc, n)
        # the top cell block of the cone is the last one in degree n
        ct, ot = cone.term(n), orbit.term(n - 1)
        connect[n] = hom_at(mc, _block(ct, ot, len(ct) - len(ot), len(ot), False), n, mo, n - 1)
    for n in range(lo, hi + 1):
        for label, f, g in (("orbit", connect[n + 1], collapse[n]),
                            ("X", collapse[n], include[n]),
                            ("cofiber", include[n], connect[n])):
            rep.checked.append((n, label))
            err = exactness_defect(f, g)
            if err:
                rep.failures.append(f"degree {n} at {label}: {err}")
        hx, _ = homology_with_data(mx, n)
        tr = GroupHom(hx.levels[h], hx.levels[top], hx.transfer(h, top))
        amb = hx.levels[top]
        img = collapse[n]
        if not (_spans_contain(amb, img, tr) and _spans_contain(amb, tr, img)):
            rep.failures.append(f"degree {n}: image of collapse differs from image of transfer")
    return rep
