"""Ext modules, Fitting ideals, torsion and the two certificates built on them.

Run: python3 demos/03_ext_fitting_torsion.py
"""

from stdres import corpus
from stdres.homological import (
    double_dual_quotient, ext, fitting, lemma2_certificate, local_freeness_certificate,
    torsion_submodule,
)
from stdres.modules import ModulePresentation, hilbert
from stdres.ring import PolyRing


def main():
    I = corpus.module("p2_point")
    e1 = ext(I, 1).presentation
    print("Ext^1((x,y), R):", e1)
    print("Fitt_0 of it:", fitting(e1, 0).ideal)
    print("double dual quotient has Hilbert polynomial", hilbert(double_dual_quotient(I)).polynomial)
    print("locally free of rank 1?", local_freeness_certificate(I, 1).verdict)

    A = PolyRing("xy")
    x, _ = A.gens()
    M = ModulePresentation.ungraded(A, 2, [(x, A.zero())])
    split = torsion_submodule(M)
    print("R/(x) + R: torsion", split.torsion, "quotient", split.quotient)

    print("hd = 1 iff Fitt_0 invertible:")
    for name in corpus.LEMMA2_HD1 + corpus.LEMMA2_HD2:
        v = lemma2_certificate(corpus.module(name))
        print(f"    {name:12s} hd {v.witnesses['hd']}  invertible {v.witnesses['fitt0_invertible']!s:5s}  "
              f"{v.verdict}")


if __name__ == "__main__":
    main()
