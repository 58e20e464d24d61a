"""Exact univariate polynomials used for Hilbert polynomials."""

from fractions import Fraction

from stdres.unipoly import UniPoly, binom


def test_interpolation_reproduces_values():
    p = UniPoly.interpolate([(0, 1), (1, 3), (2, 6)])
    assert [p(n) for n in range(6)] == [binom(n + 2, 2) for n in range(6)]
    assert str(p) == "1/2*n^2 + 3/2*n + 1"
    assert p.degree == 2 and p.is_integer_valued()


def test_compose_linear_and_arithmetic():
    p = UniPoly([1, 1])
    q = p.compose_linear(2)
    assert [q(n) for n in range(4)] == [1, 3, 5, 7]
    assert (p * p)(3) == 16 and (p - p) == UniPoly([0])


def test_falling_factorial_basis():
    p = UniPoly.interpolate([(0, 1), (1, 6), (2, 15)])
    # 1 + 5 n + 2 n (n - 1) = 2 n^2 + 3 n + 1
    assert p.falling_factorial() == (1, 5, 2)
    assert p(Fraction(1, 2)) == Fraction(3)
