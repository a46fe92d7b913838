import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bredon.gset import C2, K4, FinGSet, SpanBasisElement, SpanMatrix, compose_spans, span_basis
from bredon.mackey import (
    MackeyFunctor,
    cokernel,
    direct_sum,
    free_on,
    from_dict,
    hom_group,
    identity_morphism,
    induce,
    inflate,
    kernel,
    realize_box_free,
    realize_hom_free,
    realize_span_morphism,
    restrict,
    short_exact_failures,
    standard_sequences,
    to_dict,
    validate_axioms,
    zoo,
    zoo_names,
)
from bredon.recognition import fingerprint
from bredon.zlinalg import describe_group, identity, iso_invariants, scale

K4_ZOO = zoo_names("K4")
C2_ZOO = zoo_names("C2")
ALL_ZOO = [("K4", n) for n in K4_ZOO] + [("C2", n) for n in C2_ZOO]


def orbit(h, group=K4):
    return FinGSet(group, (h,))


def ranks(m):
    return {h: describe_group(g) for h, g in m.levels.items()}


# ---------------------------------------------------------------- catalog data


def test_burnside_functor():
    a = zoo("A")
    assert ranks(a) == {"e": "Z", "L": "Z^2", "D": "Z^2", "R": "Z^2", "K": "Z^5"}
    assert a.res[("K", "L")].tolist() == [[2, 0, 1, 1, 0], [0, 2, 0, 0, 1]]


def test_augmentation_ideal():
    i = zoo("I")
    assert i.levels["e"].is_trivial()
    assert describe_group(i.levels["K"]) == "Z^4"
    assert i.transfer("L", "K").tolist() == [[1], [-2], [0], [0]]


def test_free_functor_levels():
    assert ranks(zoo("A_{K/e}")) == {"e": "Z^4", "L": "Z^2", "D": "Z^2", "R": "Z^2", "K": "Z"}
    assert describe_group(zoo("A_{K/e}").levels["L"]) == "Z^2"


def test_unknown_name():
    with pytest.raises(ValueError, match="unknown"):
        zoo("B")


@pytest.mark.parametrize("group,name", ALL_ZOO)
def test_zoo_axioms(group, name):
    rep = validate_axioms(zoo(name, group))
    assert rep.ok, str(rep)


def test_zero_functor_passes():
    assert validate_axioms(MackeyFunctor.zero(K4)).ok
    assert validate_axioms(MackeyFunctor.zero(C2)).ok


def test_negated_transfer_fails_double_coset():
    a = zoo("A")
    tr = dict(a.tr)
    bad = tr[("L", "K")].copy()
    bad[:, 0] *= -1
    tr[("L", "K")] = bad
    rep = validate_axioms(dataclasses.replace(a, tr=tr, _cache={}))
    assert not rep.ok


# ---------------------------------------------------------------- kernels, cokernels, sequences


def test_kernel_of_augmentation_is_I():
    f, g = standard_sequences()["I -> A -> Z"]
    assert fingerprint(f.source) == fingerprint(zoo("I"))
    assert fingerprint(kernel(g)[0]) == fingerprint(zoo("I"))


def test_cokernel_of_free_orbit_is_J():
    f, _ = standard_sequences()["Z* -> A -> J"]
    assert fingerprint(cokernel(f)[0]) == fingerprint(zoo("J"))


def test_cokernel_of_identity():
    assert cokernel(identity_morphism(zoo("A")))[0].is_zero()


@pytest.mark.parametrize("group", ["K4", "C2"])
def test_short_exact_sequences(group):
    for f, g in standard_sequences(group).values():
        assert f.check().ok and g.check().ok
        assert short_exact_failures(f, g) == []


def test_short_exact_detects_failure():
    f, g = standard_sequences()["I -> A -> Z"]
    twice = dataclasses.replace(g, components={h: scale(2, c) for h, c in g.components.items()})
    assert short_exact_failures(f, twice)


@pytest.mark.parametrize("name", ["A", "Z", "mg", "E", "phi*Q"])
def test_kernel_inclusion_composes_to_zero(name):
    m = zoo(name)
    f = realize_span_morphism(SpanMatrix.identity(orbit("L")) + SpanMatrix.build(
        orbit("L"), orbit("L"), {(0, 0, SpanBasisElement("L", "L", "L", 2)): 1}), m)
    k, inc = kernel(f)
    assert inc.then(f).is_zero()
    c, proj = cokernel(f)
    assert f.then(proj).is_zero()


# ---------------------------------------------------------------- free functors


def test_free_on_orbits():
    assert fingerprint(free_on(orbit("K"))) == fingerprint(zoo("A"))
    assert ranks(free_on(orbit("e"))) == {"e": "Z^4", "L": "Z^2", "D": "Z^2", "R": "Z^2", "K": "Z"}
    assert free_on(FinGSet(K4, ())).is_zero()


@pytest.mark.parametrize("name", K4_ZOO)
def test_box_with_unit(name):
    m = zoo(name)
    assert fingerprint(realize_box_free(orbit("K"), m)) == fingerprint(m)


def test_box_free_orbit_count():
    assert describe_group(realize_box_free(orbit("e"), zoo("A")).levels["K"]) == "Z"


@pytest.mark.parametrize("group,name", ALL_ZOO)
def test_box_formula(group, name):
    grp = K4 if group == "K4" else C2
    m = zoo(name, group)
    for h in grp.subgroups[:-1]:
        assert fingerprint(realize_box_free(orbit(h, grp), m)) == fingerprint(induce(h, restrict(h, m), grp))


@pytest.mark.parametrize("group,name", ALL_ZOO)
def test_yoneda(group, name):
    grp = K4 if group == "K4" else C2
    m = zoo(name, group)
    for h in grp.subgroups:
        assert iso_invariants(hom_group(free_on(orbit(h, grp)), m)) == iso_invariants(m.levels[h])


def test_hom_into_top_concentrated():
    assert hom_group(free_on(orbit("e")), zoo("<F2>")).is_trivial()
    assert realize_hom_free(orbit("e"), zoo("<F2>")).is_zero()
    assert fingerprint(realize_hom_free(orbit("K"), zoo("mg"))) == fingerprint(zoo("mg"))


def test_hom_group_rejects_torsion_source():
    with pytest.raises(ValueError):
        hom_group(zoo("<F2>"), zoo("A"))


# ---------------------------------------------------------------- span realization


def test_counit_is_transfer():
    counit = SpanMatrix.build(orbit("L"), orbit("K"), {(0, 0, SpanBasisElement("L", "K", "L", 0)): 1})
    f = realize_span_morphism(counit, zoo("A"))
    assert np.array_equal(f.components["K"], zoo("A").tr[("L", "K")])


def test_identity_span():
    f = realize_span_morphism(SpanMatrix.identity(FinGSet(K4, ("L", "e"))), zoo("mg"))
    for h, c in f.components.items():
        assert np.array_equal(c, identity(c.shape[0]))


def test_one_plus_twist_on_free_L():
    # (1 + r) on A_{K/L}: the Weyl action on A(L) is trivial, so the top map is 2
    s = SpanMatrix.identity(orbit("L")) + SpanMatrix.build(
        orbit("L"), orbit("L"), {(0, 0, SpanBasisElement("L", "L", "L", 2)): 1})
    f = realize_span_morphism(s, zoo("A"))
    assert np.array_equal(f.components["K"], scale(2, identity(2)))


@st.composite
def composable_spans(draw):
    subs = K4.subgroups
    objs = [FinGSet(K4, tuple(draw(st.lists(st.sampled_from(subs), min_size=1, max_size=2)))) for _ in range(3)]
    out = []
    for s, t in zip(objs, objs[1:]):
        basis = span_basis(s, t)
        cs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
        acc = SpanMatrix.zero(s, t)
        for c, b in zip(cs, basis):
            acc = acc + c * b
        out.append(acc)
    return out


@given(composable_spans(), st.sampled_from(["A", "Z", "I", "mg*", "E", "phi*F2", "sum up<Z>"]))
def test_realization_is_functorial(spans, name):
    f, g = spans
    m = zoo(name)
    rf, rg = realize_span_morphism(f, m), realize_span_morphism(g, m)
    rfg = realize_span_morphism(compose_spans(f, g), m)
    assert rf.check().ok
    for h in K4.subgroups:
        assert np.array_equal(rf.then(rg).components[h], rfg.components[h])


# ---------------------------------------------------------------- change of group


def test_restrict_and_induce():
    a = zoo("A")
    assert describe_group(restrict("L", a).levels["e"]) == "Z"
    assert fingerprint(induce("L", restrict("L", a))) == fingerprint(zoo("A_{K/L}"))


def test_inflation():
    f = zoo("f", "C2")
    inf = inflate("L", f)
    assert ranks(inf) == {"e": "0", "L": "Z", "D": "0", "R": "0", "K": "0"}
    total = direct_sum(*(inflate(h, f) for h in ("L", "D", "R")))
    assert fingerprint(total) == fingerprint(zoo("phi*f"))


def test_inflation_rejects_bad_input():
    with pytest.raises(ValueError):
        inflate("e", zoo("f", "C2"))


# ---------------------------------------------------------------- serialization


@pytest.mark.parametrize("group,name", ALL_ZOO)
def test_dict_round_trip(group, name):
    m = zoo(name, group)
    back = from_dict(json.loads(json.dumps(to_dict(m))))
    assert fingerprint(back) == fingerprint(m)
    assert to_dict(back) == to_dict(m)
