"""Blowing up an ideal: Rees algebra, charts, transitions, strict transforms
and the graded zero-fiber model.

Run: python3 demos/04_blowup_charts.py
"""

import dataclasses

from stdres import corpus
from stdres.blowup import (
    EvModel, charts, check_transitions, ev_monomorphism_check, exceptional_generator,
    fiber_algebra, pullback_strict, rees, strict_overlap_agreement,
)
from stdres.homological import local_freeness_certificate
from stdres.modules import ChartRing, ModulePresentation
from stdres.ring import Ideal, PolyRing


def main():
    A = PolyRing("xy")
    x, y = A.gens()
    r = rees(ChartRing(A), [x, y])
    print("Rees ideal:", r.ideal)
    atlas = charts(r)
    for c in atlas:
        print(f"chart {c.label}: {c.ring.describe()}, parent variables -> "
              f"{[str(p) for p in c.parent_images]}, exceptional {exceptional_generator(c)}")
    print("transitions compose to the identity:", check_transitions(atlas))

    I = ModulePresentation.ideal_module([x, y], A)
    st = pullback_strict(I, atlas)
    for c, t in zip(atlas, st):
        print(f"strict transform on {c.label}: {local_freeness_certificate(t.quotient, 1).verdict}")
    print("strict transforms agree on overlaps:", strict_overlap_agreement(atlas, st, 1))

    P = PolyRing("xyz", homogeneous=True)
    fa = fiber_algebra(P, Ideal(P, [P["x"], P["y"]]), smax=3, dmax=4)
    print("fiber algebra flat:", fa.flat)
    for row in fa.table():
        print("   ", row)

    model = EvModel(corpus.module("p2_point"), (P["x"], P["y"]), 2, 4)
    print("ev0:", ev_monomorphism_check(model).verdict)
    bad = ev_monomorphism_check(dataclasses.replace(model, drop_relation=True))
    print("ev0 with a dropped relation:", bad.verdict, bad.witnesses)


if __name__ == "__main__":
    main()
