"""Property suites over the whole corpus."""

from hypothesis import given, settings, strategies as st

from stdres import corpus
from stdres.homological import fitting, is_zero_module, torsion_submodule
from stdres.modules import ModulePresentation, module_gb
from stdres.ring import Ideal, groebner

NAMES = sorted(corpus.JOBS)
MODULES = {n: corpus.module(n) for n in NAMES}
SETTINGS = settings(max_examples=40, deadline=None, derandomize=True)


def _entries(m):
    return [p for col in m.columns for p in col if p]


@SETTINGS
@given(st.sampled_from(NAMES), st.randoms(use_true_random=False))
def test_groebner_basis_ignores_generator_order(name, rnd):
    m = MODULES[name]
    gens = _entries(m) or [m.ring.one()]
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert groebner(shuffled, m.ring) == groebner(gens, m.ring)
    cols = list(m.columns)
    rnd.shuffle(cols)
    assert module_gb(m.chart, m.target.degrees, cols)[0] == \
        module_gb(m.chart, m.target.degrees, m.columns)[0]


@SETTINGS
@given(st.sampled_from(NAMES))
def test_torsion_is_idempotent(name):
    m = MODULES[name]
    q = torsion_submodule(m).quotient
    assert is_zero_module(torsion_submodule(q).torsion)


def _pad(m, extra_twist, scalar, pick):
    """Same module, bigger presentation: one extra generator killed by a unit
    relation, plus a redundant scalar multiple of an existing relation."""
    ring = m.ring
    z = ring.zero()
    cols = [tuple(col) + (z,) for col in m.columns]
    if cols:
        cols.append(tuple(scalar * p for p in cols[pick % len(cols)]))
    cols.append(tuple([z] * m.rank0 + [ring.one()]))
    return ModulePresentation.graded(ring, tuple(m.target.twists) + (extra_twist,), cols)


@SETTINGS
@given(st.sampled_from(NAMES), st.integers(-3, 3), st.integers(1, 5), st.integers(0, 10))
def test_fitting_ideals_ignore_presentation(name, twist, scalar, pick):
    m = MODULES[name]
    p = _pad(m, twist, scalar, pick)
    for j in range(m.rank0 + 1):
        assert fitting(p, j).ideal == fitting(m, j).ideal


@SETTINGS
@given(st.sampled_from(NAMES))
def test_fitting_chain(name):
    m = MODULES[name]
    prev = None
    for j in range(m.rank0 + 2):
        cur = fitting(m, j).ideal
        if prev is not None:
            assert all(cur.contains(g) for g in prev.gb)
        prev = cur
    assert prev.is_unit()
