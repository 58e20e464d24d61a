"""Rees algebras, chart atlases, strict transforms and the fiber model."""

import dataclasses

import pytest

from stdres.blowup import (
    DegenerateBlowup, EvModel, charts, check_principal, check_transitions, ev_monomorphism_check,
    exceptional_generator, fiber_algebra, pullback_strict, rees, standard_atlas,
    strict_overlap_agreement,
)
from stdres.homological import local_freeness_certificate, torsion_free_quotient
from stdres.modules import ChartRing, ModulePresentation
from stdres.ring import Ideal, PolyRing


@pytest.fixture
def a2():
    return PolyRing("xy")


def _poly(ring, text):
    return ring.parse(text)


def test_rees_of_maximal_ideal(a2):
    x, y = a2.gens()
    r = rees(ChartRing(a2), [x, y])
    amb = r.ideal.ring
    assert r.ideal == Ideal(amb, [_poly(amb, "y*T0 - x*T1")])
    assert r.check_substitution() and r.is_t_homogeneous()


def test_rees_of_fat_point(a2):
    x, y = a2.gens()
    r = rees(ChartRing(a2), [x * x, y])
    amb = r.ideal.ring
    assert r.ideal.contains(_poly(amb, "x^2*T1 - y*T0")) or r.ideal.contains(_poly(amb, "y*T1 - x^2*T0"))
    assert r.check_substitution()


def test_rees_of_principal_is_trivial(a2):
    x, y = a2.gens()
    r = rees(ChartRing(a2), [x * y])
    assert r.defining_polys() == []
    at = charts(r)
    assert len(at) == 1
    assert at.charts[0].ring.poly.names == a2.names
    assert not at.charts[0].ring.relations.gb


def test_degenerate_blowups_rejected(a2):
    with pytest.raises(DegenerateBlowup):
        rees(ChartRing(a2), [a2.one()])
    with pytest.raises(DegenerateBlowup):
        rees(ChartRing(a2), [a2.zero()])


def test_blowup_of_origin_in_plane(a2):
    x, y = a2.gens()
    at = charts(rees(ChartRing(a2), [x, y]))
    assert len(at) == 2
    c0, c1 = at.charts
    assert c0.ring.poly.names == ("x", "u1_1") and not c0.ring.relations.gb
    assert str(c0.parent_images[1]) == "x*u1_1"
    assert c1.ring.poly.names == ("y", "u1_0")
    assert str(c1.parent_images[0]) == "y*u1_0"
    for c in at:
        assert check_principal(c, [x, y])
    assert [str(exceptional_generator(c)) for c in at] == ["x", "y"]
    assert check_transitions(at)


def test_blowup_of_origin_in_space():
    A = PolyRing("xyz")
    x, y, z = A.gens()
    at = charts(rees(ChartRing(A), [x, y, z]))
    assert len(at) == 3
    assert [str(exceptional_generator(c)) for c in at] == ["x", "y", "z"]
    assert all(check_principal(c, [x, y, z]) for c in at)
    assert check_transitions(at)


def test_strict_transform_of_maximal_ideal(a2):
    x, y = a2.gens()
    at = charts(rees(ChartRing(a2), [x, y]))
    I = ModulePresentation.ideal_module([x, y], a2)
    st = pullback_strict(I, at)
    for t in st:
        assert t.oracle_agrees
        assert local_freeness_certificate(t.quotient, 1).passed
    assert strict_overlap_agreement(at, st, 1)


def test_strict_transform_of_free_module(a2):
    x, y = a2.gens()
    at = charts(rees(ChartRing(a2), [x, y]))
    F = ModulePresentation.free(a2, rank=2)
    for t in pullback_strict(F, at):
        assert local_freeness_certificate(t.quotient, 2).passed


def test_point_on_projective_plane_chart():
    R = PolyRing("xyz", homogeneous=True)
    E = ModulePresentation.graded(R, (-1, -1), [(R["y"], -R["x"])])
    chart = standard_atlas(R).charts[2]
    x, y = chart.poly.var("x"), chart.poly.var("y")
    at = charts(rees(chart.ring, [x, y]), parent=chart)
    for c in at:
        pulled = c.pullback(E)
        assert local_freeness_certificate(torsion_free_quotient(pulled), 1).passed


@pytest.mark.parametrize("ring_names,gens", [("xyz", "x y"), ("xyzw", "x y z")])
def test_flatness_identity(ring_names, gens):
    R = PolyRing(ring_names, homogeneous=True)
    fa = fiber_algebra(R, [R[g] for g in gens.split()], smax=5, dmax=6)
    assert fa.flat
    for row in fa.table():
        assert row["assoc"] == row["summands"]


def test_fiber_model_small_pieces():
    R = PolyRing("xyz", homogeneous=True)
    x, y, _ = R.gens()
    fa = fiber_algebra(R, [x, y], smax=2, dmax=3)
    I = Ideal(R, [x, y])
    # dim M_1 in degree 1 = dim (I/I^2)_1 + dim (A/I)_1 = 2 + 1
    assert fa.assoc[1][1] == 3
    # s = 2: (I^2/I^3) + (I/I^2) + (A/I) in degree 2 = 3 + (5 - 3) + 1
    assert fa.assoc[2][2] == 6
    assert I.quotient_dim(2) == 1


def test_ev_monomorphism_and_negative_control():
    R = PolyRing("xyz", homogeneous=True)
    E = ModulePresentation.graded(R, (-1, -1), [(R["y"], -R["x"])])
    model = EvModel(E, (R["x"], R["y"]), 2, 4)
    assert ev_monomorphism_check(model).verdict == "PASS"
    bad = ev_monomorphism_check(dataclasses.replace(model, drop_relation=True))
    assert bad.verdict == "FAIL" and bad.witnesses["kernel"]
    assert ev_monomorphism_check(model, principal=True).verdict == "PASS"
