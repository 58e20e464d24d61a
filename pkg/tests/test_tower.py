"""The resolution tower on the corpus."""

import pytest

from stdres import corpus
from stdres.homological import PreconditionError, local_freeness_certificate
from stdres.modules import free_resolution, homological_dimension_graded, pad_resolution
from stdres.tower import (
    identity_on_chart, plan, resolution_independence_check, run_tower, step_ideals,
)


def _strs(gens):
    return [str(g) for g in gens]


def test_plan_lengths():
    assert plan(corpus.module("p2_free")).length == 0
    assert plan(corpus.module("p2_point")).length == 1
    assert plan(corpus.module("p3_point")).length == 2


def test_plan_rejects_torsion():
    with pytest.raises(PreconditionError):
        plan(corpus.module("pt_p2"))


def test_point_on_plane_step_ideal():
    t = run_tower(corpus.module("p2_point"))
    (step,) = t.steps
    ideals = {cs.chart.label: _strs(cs.ideal) for cs in step.chart_steps}
    assert ideals == {"x=1": ["1"], "y=1": ["1"], "z=1": ["x", "y"]}
    assert _strs(step.homogeneous_ideal.gb) == ["x", "y"]
    z_step = step.chart_steps[2]
    for cert in z_step.certificates:
        assert cert["N_locally_free"].passed
        assert cert["N_locally_free"].witnesses["rank"] == 1
        assert cert["W_prime_locally_free"].passed
        assert cert["W_prime_oracle"].passed


def test_free_module_tower_is_identity():
    t = run_tower(corpus.module("p2_free"))
    assert t.length == 0
    assert all(f.certificate.passed for f in t.final)
    assert len(t.final) == 3
    assert t.rank == 2


def test_point_in_space_first_step():
    t = run_tower(corpus.module("p3_point"))
    s1 = t.steps[0]
    ideals = {cs.chart.label: _strs(cs.ideal) for cs in s1.chart_steps}
    assert ideals["w=1"] == ["x", "y", "z"]
    assert all(ideals[k] == ["1"] for k in ("x=1", "y=1", "z=1"))
    w_step = s1.chart_steps[3]
    assert len(w_step.children) == 3
    for cert in w_step.certificates:
        assert cert["fitt0_invertible"].passed
        assert cert["lemma2"].witnesses["hd"] == 1


@pytest.mark.parametrize("name", corpus.TORSION_FREE)
def test_tower_invariants(name):
    m = corpus.module(name)
    t = run_tower(m)
    assert t.length == homological_dimension_graded(m)
    assert t.passed()
    for f in t.final:
        assert local_freeness_certificate(f.module, t.rank).passed
        # nothing left to do on a final chart
        assert identity_on_chart(f.module)
    for s in t.steps:
        for cs in s.chart_steps:
            if cs.identity:
                assert [k.label for k in cs.children] == [cs.chart.label + "|id"]


def test_tower_is_thread_independent():
    a = step_ideals(corpus.module("p3_point"), threads=1)
    b = step_ideals(corpus.module("p3_point"), threads=4)
    assert [[(l, _strs(g)) for l, g in s] for s in a] == [[(l, _strs(g)) for l, g in s] for s in b]


@pytest.mark.parametrize("name", ["p2_point", "p3_point", "p2_free", "p2_two_points"])
def test_resolution_independence(name):
    v = resolution_independence_check(corpus.module(name))
    assert v.verdict == "PASS", v.witnesses


def test_explicit_padding_by_identity_block():
    m = corpus.module("p2_point")
    padded = pad_resolution(free_resolution(m), 1, -3)
    assert padded.betti() == [3, 2]
    assert resolution_independence_check(m, padded).verdict == "PASS"
