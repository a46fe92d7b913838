"""Finite G-sets for the Klein four group and C2, and the span calculus on them.

Group elements are small ints multiplied by XOR.  For the Klein four group the
encoding is ``e=0, l=1, d=2, r=3`` so the integer order is the fixed element
order ``e < l < d < r`` and ``d = l*r``.  Every group here is abelian of
exponent two, so inverses and conjugations never need tracking.

A finite G-set is a tuple of orbit labels (stabilizer names).  Its elements are
pairs ``(orbit index, coset representative)``, the element ``g*x_i`` of the
orbit with base point ``x_i`` being ``(i, min(gH_i))``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Mapping


@dataclass(frozen=True)
class GroupDatum:
    """An elementary abelian 2-group with named subgroups and chosen generators."""

    name: str
    elements: tuple[int, ...]
    element_names: tuple[str, ...]
    subgroup_table: tuple[tuple[str, frozenset], ...]
    generators: tuple[int, ...]

    @cached_property
    def _by_name(self) -> dict[str, frozenset]:
        return dict(self.subgroup_table)

    @cached_property
    def _by_set(self) -> dict[frozenset, str]:
        return {s: n for n, s in self.subgroup_table}

    @property
    def subgroups(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.subgroup_table)

    @property
    def top(self) -> str:
        return self.subgroups[-1]

    @property
    def bottom(self) -> str:
        return self.subgroups[0]

    @property
    def order(self) -> int:
        return len(self.elements)

    def members(self, h: str) -> frozenset:
        try:
            return self._by_name[h]
        except KeyError:
            raise ValueError(f"{h!r} is not a subgroup of {self.name}") from None

    def size(self, h: str) -> int:
        return len(self.members(h))

    def name_of(self, s: Iterable[int]) -> str:
        return self._by_set[frozenset(s)]

    def le(self, j: str, h: str) -> bool:
        """``j`` is a subgroup of ``h``."""
        return self.members(j) <= self.members(h)

    def meet(self, h: str, j: str) -> str:
        return self.name_of(self.members(h) & self.members(j))

    def join(self, h: str, j: str) -> str:
        return self.name_of(a ^ b for a in self.members(h) for b in self.members(j))

    def covers(self, h: str) -> list[str]:
        """Maximal proper subgroups of ``h`` (all of index two here)."""
        hs = self.members(h)
        return [n for n, s in self.subgroup_table if s < hs and 2 * len(s) == len(hs)]

    def covering_pairs(self) -> list[tuple[str, str]]:
        """``(H, J)`` with ``J`` maximal in ``H``, in subgroup order."""
        return [(h, j) for h in self.subgroups for j in self.covers(h)]

    def chain(self, h: str, j: str) -> list[str]:
        """A descending chain of covers from ``h`` to ``j`` (first choice each step)."""
        if not self.le(j, h):
            raise ValueError(f"{j} is not contained in {h}")
        path = [h]
        while path[-1] != j:
            path.append(next(c for c in self.covers(path[-1]) if self.le(j, c)))
        return path

    def coset_rep(self, g: int, h: str) -> int:
        return min(g ^ x for x in self.members(h))

    def coset_reps(self, h: str) -> list[int]:
        return sorted({self.coset_rep(g, h) for g in self.elements})

    @cached_property
    def _words(self) -> dict[int, tuple[int, ...]]:
        words = {0: ()}
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for k, s in enumerate(self.generators):
                    x = g ^ s
                    if x not in words:
                        words[x] = words[g] + (k,)
                        nxt.append(x)
            frontier = nxt
        return words

    def word(self, g: int) -> tuple[int, ...]:
        """Generator indices whose product is ``g``."""
        return self._words[g]

    def element_name(self, g: int) -> str:
        return self.element_names[self.elements.index(g)]

    def restricted_to(self, h: str) -> "GroupDatum":
        """``h`` as a group in its own right, named like C2 or the trivial group.

        Elements keep their encoding in the ambient group, so sets restricted
        from the ambient group can be acted on directly.
        """
        hs = sorted(self.members(h))
        if len(hs) == 1:
            return TRIVIAL
        if len(hs) == 2:
            g = hs[1]
            return GroupDatum("C2", (0, g), ("e", self.element_name(g)),
                              (("e", frozenset({0})), ("C2", frozenset({0, g}))), (g,))
        if len(hs) == self.order:
            return self
        raise ValueError(f"unsupported subgroup {h}")


K4 = GroupDatum(
    "K4",
    (0, 1, 2, 3),
    ("e", "l", "d", "r"),
    (
        ("e", frozenset({0})),
        ("L", frozenset({0, 1})),
        ("D", frozenset({0, 2})),
        ("R", frozenset({0, 3})),
        ("K", frozenset({0, 1, 2, 3})),
    ),
    (1, 3),
)

C2 = GroupDatum("C2", (0, 1), ("e", "c"), (("e", frozenset({0})), ("C2", frozenset({0, 1}))), (1,))

TRIVIAL = GroupDatum("1", (0,), ("e",), (("e", frozenset({0})),), ())

GROUPS = {"K4": K4, "C2": C2}


def get_group(name: str) -> GroupDatum:
    try:
        return GROUPS[name]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; expected one of {sorted(GROUPS)}") from None


# ---------------------------------------------------------------- G-sets

Element = tuple[int, int]


@dataclass(frozen=True)
class FinGSet:
    """Disjoint union of orbits ``G/H``, listed by stabilizer name."""

    group: GroupDatum
    orbits: tuple[str, ...] = ()

    def __post_init__(self):
        for h in self.orbits:
            self.group.members(h)

    @classmethod
    def orbit(cls, group: GroupDatum, h: str, copies: int = 1) -> "FinGSet":
        return cls(group, (h,) * copies)

    def __len__(self) -> int:
        return len(self.orbits)

    @property
    def size(self) -> int:
        return sum(self.group.order // self.group.size(h) for h in self.orbits)

    def elements(self) -> list[Element]:
        return [(i, a) for i, h in enumerate(self.orbits) for a in self.group.coset_reps(h)]

    def act(self, g: int, x: Element) -> Element:
        i, a = x
        return i, self.group.coset_rep(g ^ a, self.orbits[i])

    def __add__(self, other: "FinGSet") -> "FinGSet":
        _same_group(self, other)
        return FinGSet(self.group, self.orbits + other.orbits)

    def __str__(self) -> str:
        if not self.orbits:
            return "0"
        counts = Counter(self.orbits)
        return " + ".join(f"{c}{self.group.name[0]}/{h}" if c > 1 else f"{self.group.name[0]}/{h}"
                          for h, c in sorted(counts.items(), key=lambda kv: self.group.subgroups.index(kv[0])))


def _same_group(*sets: FinGSet) -> None:
    names = {s.group.name for s in sets}
    if len(names) > 1:
        raise ValueError(f"G-sets over different groups: {sorted(names)}")


@dataclass(frozen=True)
class Decomposition:
    """Orbit decomposition of an explicit G-set.

    ``gset`` lists the orbit types, ``bases`` the chosen base points (the least
    point of each orbit) and ``locate`` sends every point to its element of
    ``gset``.
    """

    gset: FinGSet
    bases: tuple
    locate: Mapping[Hashable, Element]


def decompose(group: GroupDatum, points: Iterable, act: Callable[[int, object], object]) -> Decomposition:
    """Split ``points`` into orbits, ordered by their least point."""
    pts = sorted(set(points))
    seen: dict = {}
    orbits, bases = [], []
    for p in pts:
        if p in seen:
            continue
        k = len(orbits)
        stab = frozenset(g for g in group.elements if act(g, p) == p)
        label = group.name_of(stab)
        for g in group.elements:
            q = act(g, p)
            if q not in seen:
                seen[q] = (k, group.coset_rep(g, label))
        orbits.append(label)
        bases.append(p)
    return Decomposition(FinGSet(group, tuple(orbits)), tuple(bases), seen)


def trivial_decomposition(s: FinGSet) -> Decomposition:
    return Decomposition(s, tuple((i, 0) for i in range(len(s))), {x: x for x in s.elements()})


@lru_cache(maxsize=None)
def _pair_product(group: GroupDatum, h: str, j: str) -> Decomposition:
    pts = [(a, b) for a in group.coset_reps(h) for b in group.coset_reps(j)]
    return decompose(group, pts, lambda g, p: (group.coset_rep(g ^ p[0], h), group.coset_rep(g ^ p[1], j)))


@dataclass(frozen=True)
class ProductDecomposition:
    """Orbit decomposition of ``S x T`` with a certificate for every pair.

    Orbits are listed orbit-pair by orbit-pair: ``offsets[(i, j)]`` is where the
    orbits of ``S_i x T_j`` start.
    """

    left: FinGSet
    right: FinGSet
    gset: FinGSet
    offsets: Mapping[tuple[int, int], int]

    def locate(self, x: Element, y: Element) -> Element:
        """The element of ``gset`` that the pair ``(x, y)`` corresponds to."""
        (i, a), (j, b) = x, y
        k, g = _pair_product(self.left.group, self.left.orbits[i], self.right.orbits[j]).locate[(a, b)]
        return self.offsets[(i, j)] + k, g

    def base(self, k: int) -> tuple[Element, Element]:
        """The pair in ``S x T`` that is the base point of orbit ``k``."""
        i, j = self._owner[k]
        a, b = _pair_product(self.left.group, self.left.orbits[i], self.right.orbits[j]).bases[k - self.offsets[(i, j)]]
        return (i, a), (j, b)

    @cached_property
    def _owner(self) -> list[tuple[int, int]]:
        out = []
        for (i, j), _ in sorted(self.offsets.items(), key=lambda kv: kv[1]):
            n = len(_pair_product(self.left.group, self.left.orbits[i], self.right.orbits[j]).gset)
            out.extend([(i, j)] * n)
        return out


@lru_cache(maxsize=4096)
def product(s: FinGSet, t: FinGSet) -> ProductDecomposition:
    """Orbit decomposition of the cartesian product ``s x t``."""
    _same_group(s, t)
    orbits: list[str] = []
    offsets = {}
    for i, h in enumerate(s.orbits):
        for j, k in enumerate(t.orbits):
            offsets[(i, j)] = len(orbits)
            orbits.extend(_pair_product(s.group, h, k).gset.orbits)
    return ProductDecomposition(s, t, FinGSet(s.group, tuple(orbits)), offsets)


@dataclass(frozen=True)
class GMap:
    """Equivariant map of G-sets, fixed by where each source base point goes.

    ``images[i] == (j, a)`` means base point ``i`` goes to ``a * x_j``.
    """

    source: FinGSet
    target: FinGSet
    images: tuple[Element, ...]

    def __post_init__(self):
        grp = self.source.group
        if len(self.images) != len(self.source):
            raise ValueError("one image per source orbit required")
        for h, (j, _) in zip(self.source.orbits, self.images):
            if not grp.le(h, self.target.orbits[j]):
                raise ValueError(f"no equivariant map {grp.name}/{h} -> {grp.name}/{self.target.orbits[j]}")

    def __call__(self, x: Element) -> Element:
        i, g = x
        j, a = self.images[i]
        return j, self.source.group.coset_rep(g ^ a, self.target.orbits[j])

    @classmethod
    def from_points(cls, src: Decomposition, tgt: Decomposition, fn: Callable) -> "GMap":
        return cls(src.gset, tgt.gset, tuple(tgt.locate[fn(b)] for b in src.bases))


# ---------------------------------------------------------------- spans


@dataclass(frozen=True, order=True)
class SpanBasisElement:
    """The span ``G/left <- G/through -> G/right`` sending ``gP`` to ``(gH, g*twist*J)``.

    ``twist`` is the least representative of its coset of ``left*right``, so the
    pair ``(eH, twist*J)`` names an orbit of ``G/H x G/J``; ``through`` is a
    subgroup of that orbit's stabilizer.
    """

    left: str
    right: str
    through: str
    twist: int


def _basis(group: GroupDatum, h: str, j: str, p: str, t: int) -> SpanBasisElement:
    if not (group.le(p, h) and group.le(p, j)):
        raise ValueError(f"{p} is not contained in {h} and {j}")
    return SpanBasisElement(h, j, p, group.coset_rep(t, group.join(h, j)))


Term = tuple[int, int, SpanBasisElement]


@dataclass(frozen=True)
class SpanMatrix:
    """Integer combination of basis spans from orbits of ``source`` to orbits of ``target``.

    ``terms`` maps ``(source orbit, target orbit, basis span)`` to a nonzero
    coefficient; it is stored sorted so equal matrices compare equal.
    """

    source: FinGSet
    target: FinGSet
    terms: tuple[tuple[Term, int], ...] = ()

    @classmethod
    def build(cls, source: FinGSet, target: FinGSet, terms: Mapping[Term, int] | Iterable[tuple[Term, int]]) -> "SpanMatrix":
        acc: Counter = Counter()
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j, e), c in items:
            if source.orbits[i] != e.left or target.orbits[j] != e.right:
                raise ValueError(f"span {e} does not match orbits {source.orbits[i]} -> {target.orbits[j]}")
            acc[(i, j, e)] += c
        return cls(source, target, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def zero(cls, source: FinGSet, target: FinGSet) -> "SpanMatrix":
        return cls(source, target, ())

    @classmethod
    def identity(cls, s: FinGSet) -> "SpanMatrix":
        return cls.build(s, s, {(i, i, SpanBasisElement(h, h, h, 0)): 1 for i, h in enumerate(s.orbits)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SpanMatrix") -> "SpanMatrix":
        self._check_shape(other)
        return SpanMatrix.build(self.source, self.target, list(self.terms) + list(other.terms))

    def __neg__(self) -> "SpanMatrix":
        return SpanMatrix(self.source, self.target, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: "SpanMatrix") -> "SpanMatrix":
        return self + (-other)

    def __rmul__(self, c: int) -> "SpanMatrix":
        return SpanMatrix.build(self.source, self.target, [(k, c * v) for k, v in self.terms])

    def _check_shape(self, other: "SpanMatrix") -> None:
        if self.source != other.source or self.target != other.target:
            raise ValueError("span matrices have different shapes")

    def transpose(self) -> "SpanMatrix":
        """Swap the legs of every span."""
        return SpanMatrix.build(self.target, self.source,
                                [((j, i, SpanBasisElement(e.right, e.left, e.through, e.twist)), c)
                                 for (i, j, e), c in self.terms])

    def then(self, other: "SpanMatrix") -> "SpanMatrix":
        """``other`` after ``self``."""
        return compose_spans(self, other)


def span_basis(left: FinGSet, right: FinGSet) -> list[SpanMatrix]:
    """One basis span per orbit of ``left x right``, through its stabilizer."""
    _same_group(left, right)
    grp = left.group
    out = []
    for i, h in enumerate(left.orbits):
        for j, k in enumerate(right.orbits):
            p = grp.meet(h, k)
            for t in grp.coset_reps(grp.join(h, k)):
                out.append(SpanMatrix.build(left, right, {(i, j, SpanBasisElement(h, k, p, t)): 1}))
    return out


@lru_cache(maxsize=None)
def compose_basis(group: GroupDatum, a: SpanBasisElement, b: SpanBasisElement) -> tuple[tuple[SpanBasisElement, int], ...]:
    """``b`` after ``a`` as a combination of basis spans, via the fibre product."""
    if a.right != b.left:
        raise ValueError("spans do not compose")
    pts = [(u, v) for u in group.coset_reps(a.through) for v in group.coset_reps(b.through)
           if group.coset_rep(u ^ a.twist, a.right) == group.coset_rep(v, b.left)]
    dec = decompose(group, pts, lambda g, p: (group.coset_rep(g ^ p[0], a.through),
                                              group.coset_rep(g ^ p[1], b.through)))
    acc: Counter = Counter()
    for (u, v), p in zip(dec.bases, dec.gset.orbits):
        acc[_basis(group, a.left, b.right, p, u ^ v ^ b.twist)] += 1
    return tuple(sorted(acc.items()))


def compose_spans(a: SpanMatrix, b: SpanMatrix) -> SpanMatrix:
    """Composite ``S --a--> T --b--> U`` in the Burnside category."""
    if a.target != b.source:
        raise ValueError("middle objects differ")
    by_source: dict[int, list] = {}
    for (j, k, e), c in b.terms:
        by_source.setdefault(j, []).append((k, e, c))
    acc: Counter = Counter()
    for (i, j, e), c in a.terms:
        for k, f, d in by_source.get(j, ()):
            for g, m in compose_basis(a.source.group, e, f):
                acc[(i, k, g)] += c * d * m
    return SpanMatrix.build(a.source, b.target, acc)


@lru_cache(maxsize=None)
def _product_basis(group: GroupDatum, a: SpanBasisElement, b: SpanBasisElement):
    """``a x b`` as basis spans between orbits of the pair products (local indices)."""
    src = _pair_product(group, a.left, b.left)
    tgt = _pair_product(group, a.right, b.right)
    pts = [(u, v) for u in group.coset_reps(a.through) for v in group.coset_reps(b.through)]
    dec = decompose(group, pts, lambda g, p: (group.coset_rep(g ^ p[0], a.through),
                                              group.coset_rep(g ^ p[1], b.through)))
    acc: Counter = Counter()
    for (u, v), p in zip(dec.bases, dec.gset.orbits):
        ks, gs = src.locate[(group.coset_rep(u, a.left), group.coset_rep(v, b.left))]
        kt, gt = tgt.locate[(group.coset_rep(u ^ a.twist, a.right), group.coset_rep(v ^ b.twist, b.right))]
        acc[(ks, kt, _basis(group, src.gset.orbits[ks], tgt.gset.orbits[kt], p, gs ^ gt))] += 1
    return tuple(sorted(acc.items()))


def span_product(a: SpanMatrix, b: SpanMatrix) -> SpanMatrix:
    """Cartesian product ``a x b : S x S' -> T x T'`` of span matrices."""
    group = a.source.group
    src = product(a.source, b.source)
    tgt = product(a.target, b.target)
    acc: Counter = Counter()
    for (i, j, e), c in a.terms:
        for (i2, j2, f), d in b.terms:
            so, to = src.offsets[(i, i2)], tgt.offsets[(j, j2)]
            for (ks, kt, g), m in _product_basis(group, e, f):
                acc[(so + ks, to + kt, g)] += c * d * m
    return SpanMatrix.build(src.gset, tgt.gset, acc)


def span_from_maps(alpha: GMap, beta: GMap) -> SpanMatrix:
    """The span ``S <-alpha- U -beta-> T`` in the basis."""
    if alpha.source != beta.source:
        raise ValueError("legs must share their source")
    group = alpha.source.group
    acc: Counter = Counter()
    for p, (i, a), (j, b) in zip(alpha.source.orbits, alpha.images, beta.images):
        h, k = alpha.target.orbits[i], beta.target.orbits[j]
        acc[(i, j, _basis(group, h, k, p, a ^ b))] += 1
    return SpanMatrix.build(alpha.target, beta.target, acc)


def basis_as_maps(group: GroupDatum, e: SpanBasisElement) -> tuple[GMap, GMap]:
    """Realize a basis span as a pair of equivariant maps out of one orbit."""
    u = FinGSet(group, (e.through,))
    return (GMap(u, FinGSet(group, (e.left,)), ((0, 0),)),
            GMap(u, FinGSet(group, (e.right,)), ((0, e.twist),)))
