"""Distinguished polarizations and the Hilbert polynomial identities."""

import pytest

from stdres import corpus
from stdres.modules import ModulePresentation
from stdres.polarization import (
    default_exponents, distinguished_polarization, fiber_hilbert_line, sheaf_hilbert_check,
)
from stdres.ring import Ideal, PolyRing
from stdres.tower import run_tower
from stdres.unipoly import UniPoly


def test_identity_tower_polarization():
    spec = distinguished_polarization(run_tower(corpus.module("p2_free")))
    assert spec.identity and spec.base_exponent == 1


def test_point_on_plane_polarization():
    spec = distinguished_polarization(run_tower(corpus.module("p2_point")), (2,))
    gens = {c["chart"]: c["exc_generator"] for c in spec.charts}
    assert gens["z=1|0"] == "x" and gens["z=1|1"] == "y"
    assert gens["x=1|id"] == "1"
    assert all(c["invertible"] and c["L_power"] == 2 for c in spec.charts)


def test_point_in_space_polarization_nests_two_factors():
    t = run_tower(corpus.module("p3_point"))
    assert default_exponents(t) == (2, 3)
    spec = distinguished_polarization(t)
    assert spec.base_exponent == 6 and spec.defaulted
    blown = [c for c in spec.charts if "|id" not in c["chart"].split("|", 1)[1]]
    assert blown and all(c["invertible"] for c in spec.charts)
    # exponent of the first exceptional factor is m_2 = 3, of the second 1
    assert any(c["exc_generator"] == "x^5" for c in blown)


def test_bad_exponents_rejected():
    t = run_tower(corpus.module("p2_point"))
    with pytest.raises(ValueError):
        distinguished_polarization(t, (0,))
    with pytest.raises(ValueError):
        distinguished_polarization(t, (2, 2))


def test_fiber_line_point_on_plane():
    R = PolyRing("xyz", homogeneous=True)
    rep = fiber_hilbert_line(Ideal(R, [R["x"], R["y"]]), 2, 6)
    assert rep.verdict.passed
    for row in rep.rows:
        n = row["n"]
        assert row["fiber"] == row["telescoped"] == (2 * n + 1) * (2 * n + 2) // 2
    assert rep.polynomial_lhs == UniPoly.interpolate([(0, 1), (1, 6), (2, 15)])


def test_fiber_line_unit_ideal_and_space_point():
    R = PolyRing("xyz", homogeneous=True)
    assert fiber_hilbert_line(Ideal(R, [R.one()]), 2, 5).verdict.passed
    S = PolyRing("xyzw", homogeneous=True)
    rep = fiber_hilbert_line(Ideal(S, [S["x"], S["y"], S["z"]]), 2, 6)
    assert rep.verdict.passed
    assert all(r["fiber"] == r["ambient"] for r in rep.rows)


def test_fiber_line_needs_large_m():
    R = PolyRing("xyz", homogeneous=True)
    with pytest.raises(ValueError):
        fiber_hilbert_line(Ideal(R, [R["x"] ** 2, R["y"]]), 2, 3)


def test_sheaf_check_point_on_plane():
    R = PolyRing("xyz", homogeneous=True)
    rep = sheaf_hilbert_check(corpus.module("p2_point"), Ideal(R, [R["x"], R["y"]]), 2, 6)
    assert rep.verdict.passed
    assert rep.verdict.witnesses["label"] == "informational"
    for row in rep.rows[1:]:
        n = row["n"]
        assert row["fiber"] == (2 * n + 1) * (2 * n + 2) // 2 - 1


def test_sheaf_check_free_module_identity():
    R = PolyRing("xyz", homogeneous=True)
    rep = sheaf_hilbert_check(ModulePresentation.free(R, (0,)), Ideal(R, [R.one()]), 1, 5,
                              attested=True)
    assert rep.verdict.passed and rep.verdict.witnesses["label"] == "certificate"


def test_sheaf_check_point_in_space():
    S = PolyRing("xyzw", homogeneous=True)
    rep = sheaf_hilbert_check(corpus.module("p3_point"), Ideal(S, [S["x"], S["y"], S["z"]]), 2, 6)
    assert rep.verdict.passed
    assert all(r["fiber"] == r["module"] for r in rep.rows)


def test_too_few_points_rejected():
    S = PolyRing("xyzw", homogeneous=True)
    with pytest.raises(ValueError, match="nmax"):
        fiber_hilbert_line(Ideal(S, [S["x"], S["y"], S["z"]]), 2, 4)
