"""Presentations, syzygies, minimal resolutions and Hilbert series."""

import pytest

from stdres import corpus
from stdres.modules import (
    FreeModule, ModulePresentation, free_resolution, hilbert, homological_dimension_graded,
    minimize_resolution, pad_resolution, piece_dim, segment_triples, syzygies,
)
from stdres.homological import generic_rank
from stdres.ring import PolyRing
from stdres.unipoly import UniPoly


@pytest.fixture
def r3():
    return PolyRing("xyz", homogeneous=True)


@pytest.fixture
def r4():
    return PolyRing("xyzw", homogeneous=True)


def test_twist_validation_rejects_wrong_degrees(r3):
    x, y, _ = r3.gens()
    with pytest.raises(ValueError):
        ModulePresentation.graded(r3, (0, 0), [(x, y * y)])


def test_zero_column_rejected(r3):
    z = r3.zero()
    with pytest.raises(ValueError):
        ModulePresentation.graded(r3, (0,), [(z,)])


def test_syzygies_of_row_xy(r3):
    x, y, _ = r3.gens()
    s = syzygies(ModulePresentation.graded(r3, (0,), [(x,), (y,)]))
    assert s.target.twists == (-2,)


def test_syzygies_of_row_xyz(r4):
    x, y, z, _ = r4.gens()
    s = syzygies(ModulePresentation.graded(r4, (0,), [(x,), (y,), (z,)]))
    assert s.target.twists == (-2, -2, -2)


def test_syzygies_of_free_presentation_vanish(r3):
    one, zero = r3.one(), r3.zero()
    m = ModulePresentation.graded(r3, (0, 0), [(one, zero), (zero, one)])
    s = syzygies(m)
    assert s.target.rank == 0


def test_koszul_resolutions(r3, r4):
    r = free_resolution(corpus.module("p2_point"))
    assert r.betti() == [2, 1]
    assert r.twists() == [(-1, -1), (-2,)]
    assert r.check_complex() and r.minimal
    r = free_resolution(corpus.module("p3_point"))
    assert r.betti() == [3, 3, 1]
    assert r.length == 2
    assert free_resolution(corpus.module("p2_free")).length == 0


@pytest.mark.parametrize("name", sorted(corpus.JOBS))
def test_resolution_audit(name):
    m = corpus.module(name)
    r = free_resolution(m)
    assert r.check_complex()
    assert r.euler_rank() == generic_rank(m)
    assert r.length <= m.ring.nvars
    for cols in r.maps:
        for col in cols:
            assert all(p.constant_term() == 0 for p in col)


@pytest.mark.parametrize("name", ["p2_point", "p3_point", "sq_pt", "line_and_pt"])
def test_padded_resolution_minimizes_back(name):
    r = free_resolution(corpus.module(name))
    padded = r
    for spot in range(1, r.length + 1):
        padded = pad_resolution(padded, spot, min(r.modules[spot].twists) - 2)
    assert padded.check_complex()
    assert padded.betti() != r.betti()
    back = minimize_resolution(padded)
    assert back.betti() == r.betti()
    assert sorted(map(sorted, back.twists())) == sorted(map(sorted, r.twists()))


def test_homological_dimension():
    assert homological_dimension_graded(corpus.module("p2_free")) == 0
    assert homological_dimension_graded(corpus.module("p2_point")) == 1
    assert homological_dimension_graded(corpus.module("p3_point")) == 2


def test_segment_triples():
    r = free_resolution(corpus.module("p2_point"))
    (t,) = segment_triples(r)
    assert t.index == 1
    assert t.kernel.target.twists == (-2,) and not t.kernel.columns
    assert t.middle.twists == (-1, -1)
    assert t.quotient.target.twists == (-1, -1)
    assert segment_triples(free_resolution(corpus.module("p2_free"))) == []
    r = free_resolution(corpus.module("p3_point"))
    ts = segment_triples(r)
    assert [t.index for t in ts] == [2, 1]
    # the middle of the second triple is F_0, its kernel is the first syzygy
    assert ts[1].kernel.target == r.modules[1]


def test_hilbert_polynomials(r3):
    x = r3.gens()[0]
    half = UniPoly.interpolate([(0, 1), (1, 3), (2, 6)])
    assert hilbert(ModulePresentation.free(r3, (0,))).polynomial == half
    h = hilbert(ModulePresentation.graded(r3, (0,), [(x,)]))
    assert h.polynomial == UniPoly([1, 1])
    h = hilbert(corpus.module("p2_point"))
    assert h.polynomial == half - UniPoly([1])


@pytest.mark.parametrize("name", sorted(corpus.JOBS))
def test_hilbert_function_matches_piece_counts(name):
    m = corpus.module(name)
    h = hilbert(m)
    for d in range(max(h.stabilization, 0), max(h.stabilization, 0) + 5):
        assert h.polynomial(d) == piece_dim(m, d) == h.function(d)


def test_free_module_dual_twists():
    assert FreeModule(2, (-1, -1)).dual().twists == (1, 1)
