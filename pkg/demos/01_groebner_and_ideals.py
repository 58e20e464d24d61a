"""Groebner bases, saturation, elimination and graded piece counts.

Run: python3 demos/01_groebner_and_ideals.py
"""

from stdres.ring import Ideal, PolyRing, graded_piece_dim, groebner


def main():
    # the twisted cubic, parametrised by x: y = x^2, z = x^3
    R = PolyRing("xyz", order="lex")
    x, y, z = R.gens()
    basis = groebner([y - x ** 2, z - x ** 3])
    print("lex basis of the twisted cubic:")
    for g in basis:
        print("   ", g)

    # (x^2, xy) has an embedded point at the origin; saturating removes it
    A = PolyRing("xy")
    a, b = A.gens()
    sat = Ideal(A, [a * a, a * b]).saturate(Ideal(A, [a, b]))
    print("(x^2, x*y) : (x, y)^oo =", sat)

    # the Rees ideal of (x, y) by eliminating the parameter s
    B = PolyRing(["x", "y", "s", "T0", "T1"])
    bx, by, s, t0, t1 = B.gens()
    print("Rees ideal of (x, y):", Ideal(B, [t0 - s * bx, t1 - s * by]).eliminate(["s"]))

    # graded pieces on P^2
    P = PolyRing("xyz", homogeneous=True)
    px, py, _ = P.gens()
    I = Ideal(P, [px, py])
    for d in range(4):
        print(f"degree {d}: dim R_d = {graded_piece_dim(P, d)}, dim I_d = {graded_piece_dim(I, d)}, "
              f"dim (I^2)_d = {graded_piece_dim(I ** 2, d)}")


if __name__ == "__main__":
    main()
