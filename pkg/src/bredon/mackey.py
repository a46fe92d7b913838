"""Mackey functors for C2 and the Klein four group.

A functor stores one abelian group per subgroup, restriction and transfer
matrices for each covering pair ``J < H`` (longer ones are composites), and the
action of each group generator on every level.  Everything else, including the
value on an arbitrary finite G-set, is derived from those maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .gset import (
    C2,
    K4,
    TRIVIAL,
    FinGSet,
    GMap,
    GroupDatum,
    SpanBasisElement,
    SpanMatrix,
    basis_as_maps,
    decompose,
    get_group,
    product,
)
from .zlinalg import (
    FgAbelianGroup,
    GroupHom,
    IntMatrix,
    as_matrix,
    block_diag,
    identity,
    induced_on_subquotient,
    kernel as group_kernel,
    cokernel as group_cokernel,
    exactness_defect,
    mat_sum,
    matmul,
    reduce_rows,
    scale,
    subquotient,
    zeros,
)


def _key(h: str, j: str) -> str:
    return f"{h}>{j}"


@dataclass(frozen=True, eq=False)
class MackeyFunctor:
    """Levels, covering restrictions/transfers and generator actions.

    ``res[(H, J)]`` maps ``M(G/H) -> M(G/J)`` and ``tr[(J, H)]`` goes back, for
    ``J`` maximal in ``H``; ``weyl[(H, k)]`` is the action of generator ``k`` on
    ``M(G/H)``.
    """

    group: GroupDatum
    levels: Mapping[str, FgAbelianGroup]
    res: Mapping[tuple[str, str], IntMatrix]
    tr: Mapping[tuple[str, str], IntMatrix]
    weyl: Mapping[tuple[str, int], IntMatrix]
    name: str | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # ---- construction

    @classmethod
    def build(cls, group: GroupDatum, levels: Mapping[str, Iterable[int]], res=None, tr=None,
              weyl=None, name: str | None = None) -> "MackeyFunctor":
        """Fill unspecified maps with zeros and unspecified actions with identities."""
        lv = {h: g if isinstance(g, FgAbelianGroup) else FgAbelianGroup(tuple(g))
              for h, g in ((h, levels.get(h, ())) for h in group.subgroups)}
        res, tr, weyl = dict(res or {}), dict(tr or {}), dict(weyl or {})
        out_res, out_tr, out_w = {}, {}, {}
        for h, j in group.covering_pairs():
            out_res[(h, j)] = _fit(res.get((h, j)), lv[j], lv[h])
            out_tr[(j, h)] = _fit(tr.get((j, h)), lv[h], lv[j])
        for h in group.subgroups:
            for k in range(len(group.generators)):
                m = weyl.get((h, k))
                out_w[(h, k)] = identity(lv[h].ngens) if m is None else _fit(m, lv[h], lv[h])
        return cls(group, lv, out_res, out_tr, out_w, name)

    @classmethod
    def zero(cls, group: GroupDatum) -> "MackeyFunctor":
        return cls.build(group, {})

    def named(self, name: str) -> "MackeyFunctor":
        return MackeyFunctor(self.group, self.levels, self.res, self.tr, self.weyl, name, self._cache)

    # ---- structure maps

    def restriction(self, h: str, j: str) -> IntMatrix:
        """Composite restriction ``M(G/h) -> M(G/j)``."""
        key = ("res", h, j)
        if key not in self._cache:
            path = self.group.chain(h, j)
            m = identity(self.levels[h].ngens)
            for a, b in zip(path, path[1:]):
                m = reduce_rows(matmul(self.res[(a, b)], m), self.levels[b].orders)
            self._cache[key] = m
        return self._cache[key]

    def transfer(self, j: str, h: str) -> IntMatrix:
        """Composite transfer ``M(G/j) -> M(G/h)``."""
        key = ("tr", j, h)
        if key not in self._cache:
            path = self.group.chain(h, j)[::-1]
            m = identity(self.levels[j].ngens)
            for a, b in zip(path, path[1:]):
                m = reduce_rows(matmul(self.tr[(a, b)], m), self.levels[b].orders)
            self._cache[key] = m
        return self._cache[key]

    def act_word(self, h: str, word: tuple[int, ...]) -> IntMatrix:
        m = identity(self.levels[h].ngens)
        for k in word:
            m = reduce_rows(matmul(self.weyl[(h, k)], m), self.levels[h].orders)
        return m

    def action(self, h: str, g: int) -> IntMatrix:
        """Action of the group element ``g`` on ``M(G/h)``."""
        return self.act_word(h, self.group.word(g))

    # ---- queries

    def is_zero(self) -> bool:
        return all(g.is_trivial() for g in self.levels.values())

    def ranks(self) -> dict[str, tuple[int, list[int]]]:
        return {h: g.iso_invariants() for h, g in self.levels.items()}

    def __str__(self) -> str:
        body = ", ".join(f"{h}: {g}" for h, g in self.levels.items())
        return f"{self.name or 'M'}[{body}]"


def _fit(m, target: FgAbelianGroup, source: FgAbelianGroup) -> IntMatrix:
    rows, cols = target.ngens, source.ngens
    if m is None:
        return zeros(rows, cols)
    a = as_matrix(m, rows, cols)
    if a.shape != (rows, cols):
        a = a.reshape(rows, cols)
    return reduce_rows(a, target.orders)


# ---------------------------------------------------------------- axioms


@dataclass
class AxiomReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, label: str, lhs: IntMatrix, rhs: IntMatrix) -> None:
        self.violations.append(f"{label}: {lhs.tolist()} != {rhs.tolist()}")

    def __str__(self) -> str:
        return "pass" if self.ok else "fail\n  " + "\n  ".join(self.violations)


def _equal_in(a: IntMatrix, b: IntMatrix, target: FgAbelianGroup) -> bool:
    return a.shape == b.shape and np.array_equal(reduce_rows(a, target.orders), reduce_rows(b, target.orders))


def validate_axioms(m: MackeyFunctor) -> AxiomReport:
    """Check every Mackey functor identity; the report lists each failure."""
    rep = AxiomReport()
    grp, lv = m.group, m.levels
    # well-formed maps
    maps = [(f"res {h}>{j}", a, lv[h], lv[j]) for (h, j), a in m.res.items()]
    maps += [(f"tr {j}>{h}", a, lv[j], lv[h]) for (j, h), a in m.tr.items()]
    maps += [(f"weyl {h}:{k}", a, lv[h], lv[h]) for (h, k), a in m.weyl.items()]
    for label, a, src, tgt in maps:
        try:
            GroupHom(src, tgt, a)
        except ValueError as exc:
            rep.violations.append(f"{label}: {exc}")
    if rep.violations:
        return rep
    # Weyl actions: commuting involutions, trivial on the subgroup itself
    ngen = len(grp.generators)
    for h in grp.subgroups:
        one = identity(lv[h].ngens)
        for k in range(ngen):
            w = m.weyl[(h, k)]
            if not _equal_in(matmul(w, w), one, lv[h]):
                rep.add(f"weyl {h}:{grp.element_name(grp.generators[k])} is not an involution", matmul(w, w), one)
            for k2 in range(k + 1, ngen):
                a, b = matmul(w, m.weyl[(h, k2)]), matmul(m.weyl[(h, k2)], w)
                if not _equal_in(a, b, lv[h]):
                    rep.add(f"weyl actions on {h} do not commute", a, b)
        for g in grp.members(h):
            if not _equal_in(m.action(h, g), one, lv[h]):
                rep.add(f"{grp.element_name(g)} in {h} acts nontrivially on {h}", m.action(h, g), one)
    # equivariance
    for h, j in grp.covering_pairs():
        r, t = m.res[(h, j)], m.tr[(j, h)]
        for k in range(ngen):
            a, b = matmul(r, m.weyl[(h, k)]), matmul(m.weyl[(j, k)], r)
            if not _equal_in(a, b, lv[j]):
                rep.add(f"res {h}>{j} not equivariant", a, b)
            a, b = matmul(t, m.weyl[(j, k)]), matmul(m.weyl[(h, k)], t)
            if not _equal_in(a, b, lv[h]):
                rep.add(f"tr {j}>{h} not equivariant", a, b)
    # transitivity: every chain between two subgroups gives the same composite
    for h in grp.subgroups:
        for j in grp.subgroups:
            if j == h or not grp.le(j, h):
                continue
            for mid in grp.subgroups:
                if mid in (h, j) or not (grp.le(j, mid) and grp.le(mid, h)):
                    continue
                a = reduce_rows(matmul(m.restriction(mid, j), m.restriction(h, mid)), lv[j].orders)
                if not _equal_in(a, m.restriction(h, j), lv[j]):
                    rep.add(f"res {h}>{j} depends on the path through {mid}", a, m.restriction(h, j))
                b = reduce_rows(matmul(m.transfer(mid, h), m.transfer(j, mid)), lv[h].orders)
                if not _equal_in(b, m.transfer(j, h), lv[h]):
                    rep.add(f"tr {j}>{h} depends on the path through {mid}", b, m.transfer(j, h))
    # double coset formula
    for h in grp.subgroups:
        for j in grp.subgroups:
            if j == h or not grp.le(j, h):
                continue
            for j2 in grp.subgroups:
                if j2 == h or not grp.le(j2, h):
                    continue
                lhs = matmul(m.restriction(h, j2), m.transfer(j, h))
                rhs = zeros(lv[j2].ngens, lv[j].ngens)
                meet = grp.meet(j, j2)
                for g in grp.coset_reps(grp.join(j, j2)):
                    if g not in grp.members(h):
                        continue
                    term = matmul(m.transfer(meet, j2), matmul(m.action(meet, g), m.restriction(j, meet)))
                    rhs = mat_sum(rhs, term)
                if not _equal_in(lhs, rhs, lv[j2]):
                    rep.add(f"double coset formula res {h}>{j2} o tr {j}>{h}", lhs, rhs)
    return rep


# ---------------------------------------------------------------- morphisms


@dataclass(frozen=True, eq=False)
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    components: Mapping[str, IntMatrix]

    @classmethod
    def build(cls, source: MackeyFunctor, target: MackeyFunctor, components: Mapping[str, object]) -> "MackeyMorphism":
        comps = {h: _fit(components.get(h), target.levels[h], source.levels[h]) for h in source.group.subgroups}
        return cls(source, target, comps)

    def hom(self, h: str) -> GroupHom:
        return GroupHom(self.source.levels[h], self.target.levels[h], self.components[h])

    def then(self, other: "MackeyMorphism") -> "MackeyMorphism":
        """``other`` after ``self``."""
        return MackeyMorphism.build(self.source, other.target,
                                    {h: matmul(other.components[h], self.components[h]) for h in self.components})

    def is_zero(self) -> bool:
        return all(not np.any(reduce_rows(c, self.target.levels[h].orders) != 0) for h, c in self.components.items())

    def check(self) -> AxiomReport:
        """Commutation with every restriction, transfer and generator action."""
        rep = AxiomReport()
        s, t, f = self.source, self.target, self.components
        grp = s.group
        for h in grp.subgroups:
            try:
                self.hom(h)
            except ValueError as exc:
                rep.violations.append(f"component {h}: {exc}")
        if rep.violations:
            return rep
        for h, j in grp.covering_pairs():
            a, b = matmul(f[j], s.res[(h, j)]), matmul(t.res[(h, j)], f[h])
            if not _equal_in(a, b, t.levels[j]):
                rep.add(f"res {h}>{j}", a, b)
            a, b = matmul(f[h], s.tr[(j, h)]), matmul(t.tr[(j, h)], f[j])
            if not _equal_in(a, b, t.levels[h]):
                rep.add(f"tr {j}>{h}", a, b)
        for (h, k), w in s.weyl.items():
            a, b = matmul(f[h], w), matmul(t.weyl[(h, k)], f[h])
            if not _equal_in(a, b, t.levels[h]):
                rep.add(f"weyl {h}:{k}", a, b)
        return rep


def identity_morphism(m: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism.build(m, m, {h: identity(g.ngens) for h, g in m.levels.items()})


def zero_morphism(s: MackeyFunctor, t: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism.build(s, t, {})


# ---------------------------------------------------------------- abelian structure


def direct_sum(*ms: MackeyFunctor, group: GroupDatum | None = None) -> MackeyFunctor:
    """Levelwise direct sum (the empty sum needs ``group``)."""
    if not ms:
        return MackeyFunctor.zero(group or K4)
    grp = ms[0].group
    if any(m.group.name != grp.name for m in ms):
        raise ValueError("functors over different groups")
    lv = {h: reduce(lambda a, b: a + b, (m.levels[h] for m in ms)) for h in grp.subgroups}
    res = {k: block_diag([m.res[k] for m in ms]) for k in ms[0].res}
    tr = {k: block_diag([m.tr[k] for m in ms]) for k in ms[0].tr}
    weyl = {k: block_diag([m.weyl[k] for m in ms]) for k in ms[0].weyl}
    return MackeyFunctor(grp, lv, res, tr, weyl)


def _induced_functor(m: MackeyFunctor, sq: Mapping[str, object]) -> MackeyFunctor:
    """Functor on levelwise subquotients of ``m`` with induced structure maps."""
    grp = m.group
    lv = {h: sq[h].group for h in grp.subgroups}
    res, tr, weyl = {}, {}, {}
    for h, j in grp.covering_pairs():
        res[(h, j)] = induced_on_subquotient(GroupHom(m.levels[h], m.levels[j], m.res[(h, j)]), sq[h], sq[j]).matrix
        tr[(j, h)] = induced_on_subquotient(GroupHom(m.levels[j], m.levels[h], m.tr[(j, h)]), sq[j], sq[h]).matrix
    for (h, k), w in m.weyl.items():
        weyl[(h, k)] = induced_on_subquotient(GroupHom(m.levels[h], m.levels[h], w), sq[h], sq[h]).matrix
    return MackeyFunctor(grp, lv, res, tr, weyl)


def kernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Kernel with its inclusion; level bases are in Hermite (echelon) form."""
    sq = {h: group_kernel(f.hom(h)) for h in f.source.group.subgroups}
    k = _induced_functor(f.source, sq)
    return k, MackeyMorphism.build(k, f.source, {h: sq[h].section for h in sq})


def cokernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Cokernel with its projection."""
    sq = {h: group_cokernel(f.hom(h)) for h in f.source.group.subgroups}
    c = _induced_functor(f.target, sq)
    proj = {h: sq[h].project(identity(f.target.levels[h].ngens)) for h in sq}
    return c, MackeyMorphism.build(f.target, c, proj)


def homology_functor(incoming: MackeyMorphism, outgoing: MackeyMorphism) -> MackeyFunctor:
    """``ker(outgoing) / im(incoming)`` with induced structure maps."""
    sq = {h: subquotient(incoming.hom(h), outgoing.hom(h), canonical=False) for h in incoming.target.group.subgroups}
    return _induced_functor(incoming.target, sq)


def canonical_form(m: MackeyFunctor) -> MackeyFunctor:
    """Same functor with every level rewritten in Smith-canonical coordinates."""
    k, _ = kernel(zero_morphism(m, MackeyFunctor.zero(m.group)))
    return k.named(m.name) if m.name else k


# ---------------------------------------------------------------- evaluation on G-sets


def _offsets(m: MackeyFunctor, s: FinGSet) -> list[int]:
    out = [0]
    for h in s.orbits:
        out.append(out[-1] + m.levels[h].ngens)
    return out


def evaluate(m: MackeyFunctor, s: FinGSet) -> FgAbelianGroup:
    """``M(S)``: one copy of ``M(G/H)`` per orbit ``G/H`` of ``S``."""
    return reduce(lambda a, b: a + b, (m.levels[h] for h in s.orbits), FgAbelianGroup())


def pullback(m: MackeyFunctor, f: GMap) -> IntMatrix:
    """``f^* : M(target) -> M(source)``."""
    datum = f.source.group
    so, to = _offsets(m, f.source), _offsets(m, f.target)
    out = zeros(so[-1], to[-1])
    for i, (p, (j, a)) in enumerate(zip(f.source.orbits, f.images)):
        q = f.target.orbits[j]
        blk = matmul(m.restriction(q, p), m.act_word(q, datum.word(a)))
        out[so[i]:so[i + 1], to[j]:to[j + 1]] = blk
    return reduce_rows(out, evaluate(m, f.source).orders)


def pushforward(m: MackeyFunctor, f: GMap) -> IntMatrix:
    """``f_* : M(source) -> M(target)``."""
    datum = f.source.group
    so, to = _offsets(m, f.source), _offsets(m, f.target)
    out = zeros(to[-1], so[-1])
    for i, (p, (j, a)) in enumerate(zip(f.source.orbits, f.images)):
        q = f.target.orbits[j]
        blk = matmul(m.act_word(q, datum.word(a)), m.transfer(p, q))
        out[to[j]:to[j + 1], so[i]:so[i + 1]] = mat_sum(out[to[j]:to[j + 1], so[i]:so[i + 1]], blk)
    return reduce_rows(out, evaluate(m, f.target).orders)


def _product_map(src, tgt, fn) -> GMap:
    return GMap(src.gset, tgt.gset, tuple(tgt.locate(*fn(*src.base(k))) for k in range(len(src.gset))))


def _box_orbit(h: str, m: MackeyFunctor) -> MackeyFunctor:
    """``A_{G/h} box M``, i.e. ``J -> M(G/h x G/J)``."""
    key = ("box", h)
    if key in m._cache:
        return m._cache[key]
    grp = m.group
    x = FinGSet(grp, (h,))
    dec = {j: product(x, FinGSet(grp, (j,))) for j in grp.subgroups}
    lv = {j: evaluate(m, dec[j].gset) for j in grp.subgroups}
    res, tr, weyl = {}, {}, {}
    for j, j2 in grp.covering_pairs():
        q = _product_map(dec[j2], dec[j], lambda a, b: (a, (0, grp.coset_rep(b[1], j))))
        res[(j, j2)] = pullback(m, q)
        tr[(j2, j)] = pushforward(m, q)
    for j in grp.subgroups:
        for k, g in enumerate(grp.generators):
            rg = _product_map(dec[j], dec[j], lambda a, b, g=g, j=j: (a, (0, grp.coset_rep(b[1] ^ g, j))))
            weyl[(j, k)] = pullback(m, rg)
    out = MackeyFunctor(grp, lv, res, tr, weyl)
    m._cache[key] = out
    return out


def realize_box_free(s: FinGSet, m: MackeyFunctor) -> MackeyFunctor:
    """``A_S box M``: level ``G/J`` is ``M(S x G/J)``, summed over the orbits of ``S``."""
    if s.group.name != m.group.name:
        raise ValueError("G-set and functor over different groups")
    key = ("boxset", s.orbits)
    if key not in m._cache:
        m._cache[key] = direct_sum(*(_box_orbit(h, m) for h in s.orbits), group=m.group)
    return m._cache[key]


def realize_hom_free(s: FinGSet, m: MackeyFunctor) -> MackeyFunctor:
    """Internal hom out of ``A_S``.

    By Yoneda ``Hom(A_S, M)(G/J) = M(S x G/J)``; free functors are self-dual,
    so the structure maps agree with those of ``A_S box M``.
    """
    return realize_box_free(s, m)


def hom_group(a: MackeyFunctor, m: MackeyFunctor) -> FgAbelianGroup:
    """The group of morphisms ``a -> m``, for ``a`` with free levels.

    A morphism is one matrix per level; naturality against every res, tr and
    Weyl generator is a linear condition, so the answer is a kernel.
    """
    grp = a.group
    if any(o for g in a.levels.values() for o in g.orders):
        raise ValueError("source levels must be free")
    subs = grp.subgroups
    # variables: column-major entries of each F_J : Z^{a_J} -> M(J)
    off, orders = {}, []
    for h in subs:
        off[h] = len(orders)
        orders += list(m.levels[h].orders) * a.levels[h].ngens
    blocks, tgt = [], []

    def condition(left_h, left_mat, right_h, right_mat, cols, rows_h):
        # left_mat @ F_{left_h} - F_{right_h} @ right_mat, valued in M(rows_h)^cols
        row = zeros(m.levels[rows_h].ngens * cols, len(orders))
        lk = np.kron(identity(cols), as_matrix(left_mat, m.levels[rows_h].ngens, m.levels[left_h].ngens))
        rk = np.kron(as_matrix(right_mat, a.levels[right_h].ngens, cols).T, identity(m.levels[rows_h].ngens))
        row[:, off[left_h]:off[left_h] + lk.shape[1]] += lk
        row[:, off[right_h]:off[right_h] + rk.shape[1]] -= rk
        blocks.append(row)
        tgt.extend(list(m.levels[rows_h].orders) * cols)

    for h, j in grp.covering_pairs():
        condition(h, m.res[(h, j)], j, a.res[(h, j)], a.levels[h].ngens, j)
        condition(j, m.tr[(j, h)], h, a.tr[(j, h)], a.levels[j].ngens, h)
    for h in subs:
        for k in range(len(grp.generators)):
            condition(h, m.weyl.get((h, k), identity(m.levels[h].ngens)), h,
                      a.weyl.get((h, k), identity(a.levels[h].ngens)), a.levels[h].ngens, h)
    mat = np.vstack(blocks) if blocks else zeros(0, len(orders))
    f = GroupHom(FgAbelianGroup(tuple(orders)), FgAbelianGroup(tuple(tgt)), mat)
    return group_kernel(f).group


def free_on(s: FinGSet) -> MackeyFunctor:
    """The free functor ``A_S``; its level ``G/J`` is the Burnside group of ``S x G/J``."""
    return realize_box_free(s, zoo("A", s.group.name))


def _span_block(m: MackeyFunctor, e: SpanBasisElement, j: str) -> IntMatrix:
    """Action of one basis span on ``M(G/left x G/j) -> M(G/right x G/j)``."""
    key = ("span", e, j)
    if key in m._cache:
        return m._cache[key]
    grp = m.group
    alpha, beta = basis_as_maps(grp, e)
    orb = FinGSet(grp, (j,))
    u = product(alpha.source, orb)
    s = product(alpha.target, orb)
    t = product(beta.target, orb)
    a1 = _product_map(u, s, lambda x, y: (alpha(x), y))
    b1 = _product_map(u, t, lambda x, y: (beta(x), y))
    out = reduce_rows(matmul(pushforward(m, b1), pullback(m, a1)), evaluate(m, t.gset).orders)
    m._cache[key] = out
    return out


def realize_span_morphism(sp: SpanMatrix, m: MackeyFunctor) -> MackeyMorphism:
    """The morphism ``A_S box M -> A_T box M`` induced by a span matrix."""
    src, tgt = realize_box_free(sp.source, m), realize_box_free(sp.target, m)
    grp = m.group
    comps = {}
    for j in grp.subgroups:
        so = [0]
        for h in sp.source.orbits:
            so.append(so[-1] + _box_orbit(h, m).levels[j].ngens)
        to = [0]
        for h in sp.target.orbits:
            to.append(to[-1] + _box_orbit(h, m).levels[j].ngens)
        out = zeros(to[-1], so[-1])
        for (a, b, e), c in sp.terms:
            blk = scale(c, _span_block(m, e, j))
            out[to[b]:to[b + 1], so[a]:so[a + 1]] = mat_sum(out[to[b]:to[b + 1], so[a]:so[a + 1]], blk)
        comps[j] = reduce_rows(out, tgt.levels[j].orders)
    return MackeyMorphism(src, tgt, comps)


# ---------------------------------------------------------------- change of groups


def _subgroup_names(grp: GroupDatum, h: str) -> dict[str, str]:
    """Ambient subgroup names inside ``h`` -> names in ``h`` as a group."""
    sub = grp.restricted_to(h)
    return {grp.name_of(s): n for n, s in sub.subgroup_table}


def restrict(h: str, m: MackeyFunctor) -> MackeyFunctor:
    """Restriction to the subgroup ``h`` (relabelled as C2 or the trivial group)."""
    grp = m.group
    sub = grp.restricted_to(h)
    if sub is grp:
        return m
    names = _subgroup_names(grp, h)
    back = {v: k for k, v in names.items()}
    lv = {n: m.levels[back[n]] for n in sub.subgroups}
    res, tr, weyl = {}, {}, {}
    for a, b in sub.covering_pairs():
        res[(a, b)] = m.restriction(back[a], back[b])
        tr[(b, a)] = m.transfer(back[b], back[a])
    std = C2 if sub.name == "C2" else sub
    for n in sub.subgroups:
        for k, g in enumerate(sub.generators):
            weyl[(n, k)] = m.action(back[n], g)
    return MackeyFunctor(std, lv, res, tr, weyl)


def restrict_morphism(h: str, f: MackeyMorphism) -> MackeyMorphism:
    """Components of ``f`` on the levels below ``h``, as a morphism of restrictions."""
    names = _subgroup_names(f.source.group, h)
    src, tgt = restrict(h, f.source), restrict(h, f.target)
    return MackeyMorphism(src, tgt, {n: f.components[a] for a, n in names.items()})


def induce(h: str, n: MackeyFunctor, group: GroupDatum = K4) -> MackeyFunctor:
    """Induction from the subgroup ``h``: ``(up N)(G/J) = N(G/J restricted to h)``."""
    sub = group.restricted_to(h)
    if sub is group:
        return n
    if n.group.subgroups != sub.subgroups:
        raise ValueError(f"functor over {n.group.name} cannot be induced from {h}")
    act = lambda g, c, j: group.coset_rep(g ^ c, j)  # noqa: E731
    dec = {j: decompose(sub, group.coset_reps(j), lambda g, c, j=j: act(g, c, j)) for j in group.subgroups}
    lv = {j: evaluate(n, dec[j].gset) for j in group.subgroups}
    res, tr, weyl = {}, {}, {}
    for j, j2 in group.covering_pairs():
        q = GMap.from_points(dec[j2], dec[j], lambda c, j=j: group.coset_rep(c, j))
        res[(j, j2)] = pullback(n, q)
        tr[(j2, j)] = pushforward(n, q)
    for j in group.subgroups:
        for k, g in enumerate(group.generators):
            rg = GMap.from_points(dec[j], dec[j], lambda c, j=j, g=g: group.coset_rep(c ^ g, j))
            weyl[(j, k)] = pullback(n, rg)
    return MackeyFunctor(group, lv, res, tr, weyl)


def inflate(h: str, n: MackeyFunctor, group: GroupDatum = K4) -> MackeyFunctor:
    """Inflation along ``G -> G/h`` for ``|h| = 2``: ``N`` placed on levels ``G/h`` and ``G``."""
    if group.size(h) != 2 or n.group.name != "C2":
        raise ValueError("inflation needs an order-two subgroup and a C2 functor")
    top = group.top
    lv = {top: n.levels["C2"], h: n.levels["e"]}
    res = {(top, h): n.res[("C2", "e")]}
    tr = {(h, top): n.tr[("e", "C2")]}
    weyl = {}
    for k, g in enumerate(group.generators):
        weyl[(h, k)] = identity(lv[h].ngens) if g in group.members(h) else n.weyl[("e", 0)]
    return MackeyFunctor.build(group, lv, res, tr, weyl)


# ---------------------------------------------------------------- the zoo


def _k4(levels, res=None, tr=None, weyl=None) -> MackeyFunctor:
    return MackeyFunctor.build(K4, levels, res, tr, weyl)


def _c2(levels, res=None, tr=None, weyl=None) -> MackeyFunctor:
    return MackeyFunctor.build(C2, levels, res, tr, weyl)


_ORDER2 = ("L", "D", "R")
_SWAP = [[0, 1], [1, 0]]
_NEG = [[-1]]


def _unit(i: int, n: int = 3) -> list[list[int]]:
    return [[1 if r == i else 0] for r in range(n)]


def _each(fn) -> dict:
    return {h: fn(i, h) for i, h in enumerate(_ORDER2)}


def _nontrivial_weyl(m: dict, level: str, matrix) -> dict:
    """Generators outside ``level`` act by ``matrix`` there."""
    for k, g in enumerate(K4.generators):
        if g not in K4.members(level):
            m[(level, k)] = matrix
    return m


def _burnside_k4() -> MackeyFunctor:
    res = {("K", "L"): [[2, 0, 1, 1, 0], [0, 2, 0, 0, 1]],
           ("K", "D"): [[2, 1, 0, 1, 0], [0, 0, 2, 0, 1]],
           ("K", "R"): [[2, 1, 1, 0, 0], [0, 0, 0, 2, 1]]}
    tr = {("L", "K"): [[1, 0], [0, 1], [0, 0], [0, 0], [0, 0]],
          ("D", "K"): [[1, 0], [0, 0], [0, 1], [0, 0], [0, 0]],
          ("R", "K"): [[1, 0], [0, 0], [0, 0], [0, 1], [0, 0]]}
    for h in _ORDER2:
        res[(h, "e")] = [[2, 1]]
        tr[("e", h)] = [[1], [0]]
    return _k4({"K": (0,) * 5, "L": (0, 0), "D": (0, 0), "R": (0, 0), "e": (0,)}, res, tr)


def _constant(res_scale: int, tr_scale: int) -> MackeyFunctor:
    res, tr = {}, {}
    for h, j in K4.covering_pairs():
        res[(h, j)] = [[res_scale]]
        tr[(j, h)] = [[tr_scale]]
    return _k4({h: (0,) for h in K4.subgroups}, res, tr)


def _inflated_sum(top, mid, res_fn, tr_fn, mid_weyl=None) -> MackeyFunctor:
    lv = {"K": top}
    res, tr, weyl = {}, {}, {}
    for i, h in enumerate(_ORDER2):
        lv[h] = mid
        res[("K", h)] = res_fn(i)
        tr[(h, "K")] = tr_fn(i)
        if mid_weyl is not None:
            _nontrivial_weyl(weyl, h, mid_weyl)
    return _k4(lv, res, tr, weyl)


def _row(i, scale=1):
    return [[scale if c == i else 0 for c in range(3)]]


def _k4_zoo() -> dict[str, MackeyFunctor]:
    z = {}
    z["A"] = _burnside_k4()
    z["Z"] = _constant(1, 2)
    z["Z*"] = _constant(2, 1)
    z["phi*F2"] = _inflated_sum((2, 2, 2), (2,), _row, lambda i: zeros(3, 1))
    z["phi*F2*"] = _inflated_sum((2, 2, 2), (2,), lambda i: zeros(1, 3), _unit)
    z["mg"] = _k4({"K": (2, 2), "L": (2,), "D": (2,), "R": (2,)},
                  res={("K", "L"): [[1, 0]], ("K", "D"): [[1, 1]], ("K", "R"): [[0, 1]]})
    z["mg*"] = _k4({"K": (2, 2), "L": (2,), "D": (2,), "R": (2,)},
                   tr={("L", "K"): [[1], [0]], ("D", "K"): [[1], [1]], ("R", "K"): [[0], [1]]})
    z["phi*Z"] = _inflated_sum((0, 0, 0), (0,), _row, lambda i: [[2 * x[0]] for x in _unit(i)])
    z["phi*Z*"] = _inflated_sum((0, 0, 0), (0,), lambda i: _row(i, 2), _unit)
    z["phi*f"] = _inflated_sum((), (0,), lambda i: zeros(1, 0), lambda i: zeros(0, 1), _NEG)
    z["phi*Q"] = _inflated_sum((2, 2, 2), (0,), lambda i: zeros(1, 3), _unit, _NEG)
    z["<Z>"] = _k4({"K": (0,)})
    z["<F2>"] = _k4({"K": (2,)})
    for name, o in (("sum up<Z>", 0), ("sum up<F2>", 2)):
        z[name] = _inflated_sum((o, o, o), (o, o),
                                lambda i: [[1 if c == i else 0 for c in range(3)]] * 2,
                                lambda i: [[1, 1] if r == i else [0, 0] for r in range(3)], _SWAP)
    z["E"] = _k4({"K": (2,), "L": (0,), "D": (0,), "R": (0,)},
                 tr={(h, "K"): [[1]] for h in _ORDER2},
                 weyl=_nontrivial_weyl(_nontrivial_weyl(_nontrivial_weyl({}, "L", _NEG), "D", _NEG), "R", _NEG))
    c2 = _c2_zoo()
    z["sum up Z"] = direct_sum(*(induce(h, c2["Z"]) for h in _ORDER2))
    z["sum up Z*"] = direct_sum(*(induce(h, c2["Z*"]) for h in _ORDER2))
    z["up_e Z"] = induce("e", MackeyFunctor.build(TRIVIAL, {"e": (0,)}))
    z["up_e F2"] = induce("e", MackeyFunctor.build(TRIVIAL, {"e": (2,)}))
    for h in K4.subgroups[:-1]:
        z[f"A_{{K/{h}}}"] = realize_box_free(FinGSet(K4, (h,)), z["A"])
    z["I"] = kernel(_augmentation(z["A"], z["Z"]))[0]
    z["J"] = cokernel(_free_orbit_inclusion(z["Z*"], z["A"]))[0]
    return {k: v.named(k) for k, v in z.items()}


def _c2_zoo() -> dict[str, MackeyFunctor]:
    w = {("e", 0): _NEG}
    z = {
        "A": _c2({"C2": (0, 0), "e": (0,)}, {("C2", "e"): [[2, 1]]}, {("e", "C2"): [[1], [0]]}),
        "Z": _c2({"C2": (0,), "e": (0,)}, {("C2", "e"): [[1]]}, {("e", "C2"): [[2]]}),
        "Z*": _c2({"C2": (0,), "e": (0,)}, {("C2", "e"): [[2]]}, {("e", "C2"): [[1]]}),
        "F2": _c2({"C2": (2,), "e": (2,)}, {("C2", "e"): [[1]]}),
        "F2*": _c2({"C2": (2,), "e": (2,)}, tr={("e", "C2"): [[1]]}),
        "<Z>": _c2({"C2": (0,)}),
        "<F2>": _c2({"C2": (2,)}),
        "f": _c2({"e": (0,)}, weyl=w),
        "Q": _c2({"C2": (2,), "e": (0,)}, tr={("e", "C2"): [[1]]}, weyl=w),
    }
    return {k: v.named(k) for k, v in z.items()}


def _burnside_basis(grp: GroupDatum, h: str) -> list[str]:
    """Stabilizers of the orbits ``H/J`` spanning ``A(H)``, in subgroup order."""
    return [j for j in grp.subgroups if grp.members(j) <= grp.members(h)]


def _augmentation(a: MackeyFunctor, z: MackeyFunctor) -> MackeyMorphism:
    """``A -> Z`` counting points of each finite H-set."""
    grp = a.group
    size = lambda h: len(grp.members(h))
    return MackeyMorphism.build(a, z, {h: [[size(h) // size(j) for j in _burnside_basis(grp, h)]]
                                       for h in grp.subgroups})


def _free_orbit_inclusion(zs: MackeyFunctor, a: MackeyFunctor) -> MackeyMorphism:
    """``Z* -> A`` sending the generator at H to the free H-orbit."""
    grp = a.group
    return MackeyMorphism.build(zs, a, {h: [[1 if j == grp.bottom else 0] for j in _burnside_basis(grp, h)]
                                        for h in grp.subgroups})


def augmentation(group: str = "K4") -> MackeyMorphism:
    return _augmentation(zoo("A", group), zoo("Z", group))


def free_orbit_inclusion(group: str = "K4") -> MackeyMorphism:
    return _free_orbit_inclusion(zoo("Z*", group), zoo("A", group))


def standard_sequences(group: str = "K4") -> dict[str, tuple[MackeyMorphism, MackeyMorphism]]:
    """``I -> A -> Z`` and ``Z* -> A -> J`` with their maps."""
    aug = augmentation(group)
    inc = free_orbit_inclusion(group)
    i_to_a = kernel(aug)[1]
    a_to_j = cokernel(inc)[1]
    return {"I -> A -> Z": (i_to_a, aug), "Z* -> A -> J": (inc, a_to_j)}


def short_exact_failures(f: MackeyMorphism, g: MackeyMorphism) -> list[str]:
    """Levels where ``0 -> X -> Y -> Z -> 0`` fails to be exact."""
    out = []
    for h in f.source.group.subgroups:
        fh, gh = f.hom(h), g.hom(h)
        if not group_kernel(fh).group.is_trivial():
            out.append(f"{h}: first map not injective")
        if not group_cokernel(gh).group.is_trivial():
            out.append(f"{h}: second map not surjective")
        err = exactness_defect(fh, gh)
        if err:
            out.append(f"{h}: {err}")
    return out


_ZOO: dict[str, dict[str, MackeyFunctor]] = {}


def zoo_names(group: str = "K4") -> list[str]:
    return list(_zoo_table(group))


def _zoo_table(group: str) -> dict[str, MackeyFunctor]:
    get_group(group)
    if group not in _ZOO:
        _ZOO[group] = _k4_zoo() if group == "K4" else _c2_zoo()
    return _ZOO[group]


def zoo(name: str, group: str = "K4") -> MackeyFunctor:
    """A named functor from the catalog."""
    table = _zoo_table(group)
    try:
        return table[name]
    except KeyError:
        raise ValueError(f"unknown {group} functor {name!r}; known: {', '.join(table)}") from None


# ---------------------------------------------------------------- serialization


def to_dict(m: MackeyFunctor) -> dict:
    """JSON-ready data; levels ordered as in the group, matrices row-major."""
    grp = m.group
    gens = [grp.element_name(g) for g in grp.generators]
    return {
        "group": grp.name,
        "levels": {h: {"orders": list(m.levels[h].orders),
                       "free_rank": m.levels[h].free_rank,
                       "invariant_factors": m.levels[h].invariant_factors} for h in grp.subgroups},
        "res": {_key(h, j): m.res[(h, j)].tolist() for h, j in grp.covering_pairs()},
        "tr": {_key(j, h): m.tr[(j, h)].tolist() for h, j in grp.covering_pairs()},
        "weyl": {f"{h}:{gens[k]}": m.weyl[(h, k)].tolist()
                 for h in grp.subgroups for k in range(len(gens))},
    }


def from_dict(d: dict) -> MackeyFunctor:
    grp = get_group(d["group"])
    gens = [grp.element_name(g) for g in grp.generators]
    lv = {h: tuple(d["levels"][h]["orders"]) for h in grp.subgroups}
    res = {(h, j): d["res"][_key(h, j)] for h, j in grp.covering_pairs()}
    tr = {(j, h): d["tr"][_key(j, h)] for h, j in grp.covering_pairs()}
    weyl = {(h, k): d["weyl"][f"{h}:{gens[k]}"] for h in grp.subgroups for k in range(len(gens))}
    return MackeyFunctor.build(grp, lv, res, tr, weyl)
