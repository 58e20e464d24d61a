"""Minimal free resolutions, padding and Hilbert polynomials of graded modules.

Run: python3 demos/02_minimal_resolution.py
"""

from stdres import corpus
from stdres.modules import free_resolution, hilbert, minimize_resolution, pad_resolution


def main():
    for name in ("p2_point", "p3_point", "sq_pt"):
        m = corpus.module(name)
        res = free_resolution(m)
        print(f"{name}: betti {res.betti()}, twists {res.twists()}")
        print("   ", res.summary())
        h = hilbert(m)
        print(f"    Hilbert polynomial {h.polynomial}, exact from degree {h.stabilization}")

    # a padded resolution is still a resolution; minimising gives back the Betti table
    res = free_resolution(corpus.module("p3_point"))
    padded = pad_resolution(pad_resolution(res, 1, -3), 2, -4)
    print("padded betti", padded.betti(), "-> minimised", minimize_resolution(padded).betti())


if __name__ == "__main__":
    main()
