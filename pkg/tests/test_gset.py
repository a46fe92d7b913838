from collections import Counter

import pytest
from hypothesis import given, strategies as st

from bredon.gset import (
    C2,
    K4,
    FinGSet,
    SpanBasisElement,
    SpanMatrix,
    basis_as_maps,
    compose_spans,
    get_group,
    product,
    span_basis,
    span_from_maps,
    span_product,
)

from oracles import C2_SUBGROUPS, product_orbits

SUBS = K4.subgroups


def orbit(h, group=K4):
    return FinGSet(group, (h,))


def span(src, tgt, through, twist=0, group=K4):
    return SpanMatrix.build(orbit(src, group), orbit(tgt, group), {(0, 0, SpanBasisElement(src, tgt, through, twist)): 1})


def test_subgroup_lattice():
    assert K4.subgroups == ("e", "L", "D", "R", "K")
    assert K4.members("L") == {0, 1} and K4.members("R") == {0, 3}
    # d = l r
    assert 1 ^ 3 == 2 and K4.element_name(2) == "d"
    assert K4.covers("K") == ["L", "D", "R"]
    assert C2.covers("C2") == ["e"]
    with pytest.raises(ValueError):
        get_group("S3")


def test_products_of_orbits():
    assert product(orbit("L"), orbit("D")).gset.orbits == ("e",)
    assert product(orbit("L"), orbit("L")).gset.orbits == ("L", "L")
    assert product(orbit("e"), orbit("L")).gset.orbits == ("e", "e")
    s = FinGSet(K4, ("e", "R", "K"))
    assert product(orbit("K"), s).gset.orbits == s.orbits


@pytest.mark.parametrize("h", SUBS)
@pytest.mark.parametrize("j", SUBS)
def test_products_match_brute_force(h, j):
    got = product(orbit(h), orbit(j)).gset
    assert Counter(got.orbits) == product_orbits(h, j)
    assert got.size == orbit(h).size * orbit(j).size


def test_c2_products_match_brute_force():
    for h in C2.subgroups:
        for j in C2.subgroups:
            got = product(orbit(h, C2), orbit(j, C2)).gset.orbits
            assert Counter(got) == product_orbits(h, j, C2_SUBGROUPS, (0, 1))


def test_product_locates_every_pair():
    s, t = FinGSet(K4, ("L", "e")), FinGSet(K4, ("D", "R"))
    p = product(s, t)
    for g in K4.elements:
        for x in s.elements():
            for y in t.elements():
                # equivariance of the identification
                assert p.locate(s.act(g, x), t.act(g, y)) == p.gset.act(g, p.locate(x, y))
    assert len({p.locate(x, y) for x in s.elements() for y in t.elements()}) == s.size * t.size


def test_span_bases():
    assert len(span_basis(orbit("K"), orbit("K"))) == 1
    ll = span_basis(orbit("L"), orbit("L"))
    assert sorted(e.twist for b in ll for (_, _, e), _ in b.terms) == [0, 2]
    assert all(e.through == "L" for b in ll for (_, _, e), _ in b.terms)
    (b,) = span_basis(orbit("e"), orbit("K"))
    assert b.terms[0][0][2].through == "e"


def test_restriction_after_transfer_is_norm():
    tr = span("e", "L", "e")
    res = span("L", "e", "e")
    norm = compose_spans(tr, res)
    assert sorted((e.through, e.twist, c) for (_, _, e), c in norm.terms) == [("e", 0, 1), ("e", 1, 1)]


def test_compose_with_identity_and_zero():
    s = span("L", "e", "e")
    assert compose_spans(SpanMatrix.identity(orbit("L")), s) == s
    assert compose_spans(s, SpanMatrix.identity(orbit("e"))) == s
    assert compose_spans(SpanMatrix.zero(orbit("L"), orbit("e")), span("e", "D", "e")).is_zero()


def test_basis_round_trips_through_maps():
    for h in SUBS:
        for j in SUBS:
            for b in span_basis(orbit(h), orbit(j)):
                (_, _, e), _ = b.terms[0]
                assert span_from_maps(*basis_as_maps(K4, e)) == b


def random_span(group=K4):
    subs = group.subgroups

    @st.composite
    def build(draw, src=None, tgt=None):
        src = src or draw(st.lists(st.sampled_from(subs), min_size=1, max_size=2))
        tgt = tgt or draw(st.lists(st.sampled_from(subs), min_size=1, max_size=2))
        s, t = FinGSet(group, tuple(src)), FinGSet(group, tuple(tgt))
        basis = span_basis(s, t)
        coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
        out = SpanMatrix.zero(s, t)
        for c, b in zip(coeffs, basis):
            out = out + c * b
        return out

    return build


orbit_lists = st.lists(st.sampled_from(SUBS), min_size=1, max_size=2)


@given(orbit_lists, orbit_lists, orbit_lists, orbit_lists, st.data())
def test_composition_is_associative(a, b, c, d, data):
    gen = random_span()
    f = data.draw(gen(a, b))
    g = data.draw(gen(b, c))
    h = data.draw(gen(c, d))
    assert compose_spans(compose_spans(f, g), h) == compose_spans(f, compose_spans(g, h))


@given(orbit_lists, orbit_lists, orbit_lists, orbit_lists, st.data())
def test_product_is_functorial(a, b, c, d, data):
    gen = random_span()
    f, g = data.draw(gen(a, b)), data.draw(gen(b, c))
    f2, g2 = data.draw(gen(d, d)), data.draw(gen(d, d))
    left = span_product(compose_spans(f, g), compose_spans(f2, g2))
    right = compose_spans(span_product(f, f2), span_product(g, g2))
    assert left == right


@given(orbit_lists, orbit_lists, st.data())
def test_transpose_is_an_involution(a, b, data):
    f = data.draw(random_span()(a, b))
    assert f.transpose().transpose() == f
