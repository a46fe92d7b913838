"""Spectral sequence of the double complex ``C(left) x C(right) box M``.

The horizontal index ``i`` runs over cells of ``left`` and the vertical index
``j`` over cells of ``right``.  ``E^1`` is homology along rows and ``d^1`` is
induced by the vertical differential, so ``E^2(i, j)`` is the ``j``-th
homology of the ``i``-th column of ``E^1``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .complexes import FreeComplex, MackeyComplex, VirtualRep, homology_with_data, realize, smash, suspension_complex
from .gset import SpanMatrix, product, span_product
from .mackey import MackeyFunctor, MackeyMorphism, _induced_functor, realize_box_free, realize_span_morphism, zero_morphism
from .recognition import fingerprint, match
from .zlinalg import induced_on_subquotient, scale, subquotient

__all__ = [
    "Bicomplex",
    "SpectralPage",
    "DegreeComparison",
    "bicomplex_from_smash",
    "rho_bicomplex",
    "page",
    "compare_with_total",
]

Index = tuple[int, int]


@dataclass(eq=False)
class Bicomplex:
    """``D(i,j) = A_{left_i x right_j} box M``; ``d_v`` carries the sign ``(-1)^i``."""

    left: FreeComplex
    right: FreeComplex
    coefficients: MackeyFunctor
    total_complex: FreeComplex | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def group(self):
        return self.coefficients.group

    def indices(self) -> list[Index]:
        return [(i, j) for i in self.left.degrees for j in self.right.degrees]

    def term(self, i: int, j: int) -> MackeyFunctor:
        return realize_box_free(product(self.left.term(i), self.right.term(j)).gset, self.coefficients)

    def d_h(self, i: int, j: int) -> MackeyMorphism:
        """``D(i,j) -> D(i-1,j)``."""
        key = ("h", i, j)
        if key not in self._cache:
            sp = span_product(self.left.diff(i), SpanMatrix.identity(self.right.term(j)))
            self._cache[key] = realize_span_morphism(sp, self.coefficients)
        return self._cache[key]

    def d_v(self, i: int, j: int) -> MackeyMorphism:
        """``D(i,j) -> D(i,j-1)``."""
        key = ("v", i, j)
        if key not in self._cache:
            sp = span_product(SpanMatrix.identity(self.left.term(i)), self.right.diff(j))
            self._cache[key] = realize_span_morphism(-sp if i % 2 else sp, self.coefficients)
        return self._cache[key]

    def total(self) -> MackeyComplex:
        """Realized total complex.

        Defaults to the smash of the two factors; any other cell structure on
        the same sphere (``total_complex``) gives an independent check.
        """
        if "total" not in self._cache:
            cx = self.total_complex or smash([self.left, self.right])
            self._cache["total"] = realize(cx, self.coefficients)
        return self._cache["total"]


def bicomplex_from_smash(left: FreeComplex, right: FreeComplex, m: MackeyFunctor,
                         total: FreeComplex | None = None) -> Bicomplex:
    if not (left.group.name == right.group.name == m.group.name):
        raise ValueError("factors and coefficients over different groups")
    return Bicomplex(left, right, m, total)


def rho_bicomplex(k: int, m: MackeyFunctor) -> Bicomplex:
    """Double complex for ``S^{(k-1) rho} ^ S^{rho}`` (duals for ``k < 0``), ``|k| >= 1``.

    For C2 the reduced regular representation is ``sigma``.

    The total homology is taken from the three-factor cell structure of
    ``S^{k rho}``, not from the product of the two factors.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    s = 1 if k > 0 else -1
    rep = _reduced_regular(m.group.name)
    left = suspension_complex(rep(k - s))
    right = suspension_complex(rep(s))
    return bicomplex_from_smash(left, right, m, suspension_complex(rep(k)))


def _reduced_regular(group: str):
    if group == "C2":
        return lambda k: VirtualRep(sigma=k, group="C2")
    return VirtualRep.rho_bar


@dataclass(eq=False)
class SpectralPage:
    """Entries ``E^r(i,j)`` and, on page 1, the vertical differentials ``d^1``.

    ``differentials[(i,j)]`` maps ``E^1(i,j) -> E^1(i,j-1)``.  Page 2 carries no
    differentials; collapse is certified by :func:`compare_with_total` instead.
    """

    r: int
    entries: dict[Index, MackeyFunctor]
    differentials: dict[Index, MackeyMorphism] = field(default_factory=dict)

    def nonzero(self) -> dict[Index, MackeyFunctor]:
        return {k: v for k, v in sorted(self.entries.items()) if not v.is_zero()}

    def total_degree(self, n: int) -> dict[Index, MackeyFunctor]:
        return {(i, j): v for (i, j), v in self.nonzero().items() if i + j == n}


def _first_page(b: Bicomplex) -> tuple[SpectralPage, dict]:
    grp = b.group
    sqs, entries = {}, {}
    for i, j in b.indices():
        inc, out = b.d_h(i + 1, j), b.d_h(i, j)
        sq = {h: subquotient(inc.hom(h), out.hom(h), canonical=False) for h in grp.subgroups}
        sqs[(i, j)] = sq
        entries[(i, j)] = _induced_functor(b.term(i, j), sq)
    diffs = {}
    for i, j in b.indices():
        src = entries[(i, j)]
        if (i, j - 1) not in entries:
            diffs[(i, j)] = zero_morphism(src, MackeyFunctor.zero(grp))
            continue
        dv = b.d_v(i, j)
        comps = {h: induced_on_subquotient(dv.hom(h), sqs[(i, j)][h], sqs[(i, j - 1)][h]).matrix
                 for h in grp.subgroups}
        diffs[(i, j)] = MackeyMorphism(src, entries[(i, j - 1)], comps)
    return SpectralPage(1, entries, diffs), sqs


def _first_page_exact(b: Bicomplex) -> SpectralPage:
    """Row homology via ``H(A_T box C) = A_T box H(C)`` for free ``A_T``."""
    grp = b.group
    lc = realize(b.left, b.coefficients)
    entries, diffs = {}, {}
    for i, j in b.indices():
        hi = homology_with_data(lc, i)[0]
        entries[(i, j)] = realize_box_free(b.right.term(j), hi)
    for i, j in b.indices():
        src = entries[(i, j)]
        if (i, j - 1) not in entries:
            diffs[(i, j)] = zero_morphism(src, MackeyFunctor.zero(grp))
            continue
        hi = homology_with_data(lc, i)[0]
        d = realize_span_morphism(b.right.diff(j), hi)
        if i % 2:
            d = MackeyMorphism.build(d.source, d.target, {h: scale(-1, c) for h, c in d.components.items()})
        diffs[(i, j)] = d
    return SpectralPage(1, entries, diffs)


def page(b: Bicomplex, r: int, method: str = "exact") -> SpectralPage:
    """``E^1`` (row homology with ``d^1``) or ``E^2`` (homology of ``d^1``).

    ``method="direct"`` takes homology of the realized rows themselves;
    ``"exact"`` (default) boxes the homology of ``left`` with the free cells
    of ``right``, which is far smaller.
    """
    if r not in (1, 2):
        raise ValueError("only pages 1 and 2 are computed")
    if method not in ("exact", "direct"):
        raise ValueError(f"unknown method {method!r}")
    key = ("page", r, method)
    if key in b._cache:
        return b._cache[key]
    if r == 1:
        out = _first_page(b)[0] if method == "direct" else _first_page_exact(b)
    else:
        e1 = page(b, 1, method)
        grp = b.group
        entries = {}
        for i, j in b.indices():
            inc = e1.differentials.get((i, j + 1)) or zero_morphism(MackeyFunctor.zero(grp), e1.entries[(i, j)])
            out_ = e1.differentials[(i, j)]
            sq = {h: subquotient(inc.hom(h), out_.hom(h), canonical=False) for h in grp.subgroups}
            entries[(i, j)] = _induced_functor(e1.entries[(i, j)], sq)
        out = SpectralPage(2, entries)
    b._cache[key] = out
    return out


# ---------------------------------------------------------------- comparison with the total complex


@dataclass
class DegreeComparison:
    """Outcome for one total degree ``n``.

    ``status`` is ``"match"`` (at most one nonzero entry, equal to ``H_n``),
    ``"extension"`` (several entries whose ranks add up to ``H_n``) or
    ``"failure"`` (ranks or a single entry disagree with ``H_n``).
    """

    n: int
    entries: dict[Index, str]
    total: str
    status: str
    split: bool | None = None
    detail: str = ""


def _level_ranks(m: MackeyFunctor) -> dict[str, int]:
    return {h: g.free_rank for h, g in m.levels.items()}


def _torsion_size(m: MackeyFunctor) -> dict[str, int | None]:
    """Order of each level, or ``None`` for infinite levels."""
    out = {}
    for h, g in m.levels.items():
        out[h] = None if g.free_rank else math.prod(g.invariant_factors)
    return out


def compare_with_total(b: Bicomplex, degrees=None) -> list[DegreeComparison]:
    """Check ``E^2`` against the directly computed total homology, degree by degree.

    Free ranks are additive along the filtration at every level and finite
    levels have multiplicative orders, so any disagreement there means the
    spectral sequence does not collapse at ``E^2``.
    """
    e2 = page(b, 2)
    tot = b.total()
    degrees = degrees if degrees is not None else tot.degrees
    out = []
    for n in degrees:
        ents = e2.total_degree(n)
        hn = homology_with_data(tot, n)[0]
        rep = DegreeComparison(n, {k: str(match(v)) for k, v in ents.items()}, str(match(hn)), "match")
        ranks = Counter()
        for v in ents.values():
            ranks.update(_level_ranks(v))
        direct = _level_ranks(hn)
        sizes = [_torsion_size(v) for v in ents.values()]
        bad = [h for h in direct if ranks.get(h, 0) != direct[h]]
        for h, size in _torsion_size(hn).items():
            if size is not None and all(s[h] is not None for s in sizes):
                if math.prod(s[h] for s in sizes) != size:
                    bad.append(h)
        if bad:
            rep.status, rep.detail = "failure", f"levels {sorted(set(bad))} disagree"
        elif len(ents) <= 1:
            f_direct = fingerprint(hn)
            f_page = fingerprint(next(iter(ents.values()))) if ents else fingerprint(MackeyFunctor.zero(b.group))
            if f_direct != f_page:
                rep.status, rep.detail = "failure", "single entry differs from total homology"
        else:
            rep.status = "extension"
            summed = sum((fingerprint(v) for v in ents.values()), fingerprint(MackeyFunctor.zero(b.group)))
            rep.split = summed == fingerprint(hn)
        out.append(rep)
    return out
