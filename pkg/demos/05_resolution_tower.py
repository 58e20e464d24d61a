"""The tower of blowups making a torsion-free sheaf locally free.

Run: python3 demos/05_resolution_tower.py
"""

from stdres import corpus
from stdres.tower import resolution_independence_check, run_tower


def show(name):
    t = run_tower(corpus.module(name))
    print(f"{name}: rank {t.rank}, {t.length} step(s)")
    for s in t.steps:
        print(f"  step {s.index} (d_{s.differential}, {s.tag})")
        for cs in s.chart_steps:
            ideal = ", ".join(str(g) for g in cs.ideal)
            kids = ", ".join(k.label for k in cs.children)
            verdicts = sorted({v.verdict for c in cs.certificates for v in c.values()
                               if hasattr(v, "verdict")})
            print(f"    {cs.chart.label:10s} I = ({ideal}) -> {kids}  {'/'.join(verdicts)}")
    bad = [f.chart.label for f in t.final if not f.certificate.passed]
    print(f"  final atlas: {len(t.final)} charts, locally free everywhere: {not bad}")
    print("  independent of the resolution:", resolution_independence_check(corpus.module(name)).verdict)


def main():
    for name in ("p2_point", "p2_two_points", "p3_point"):
        show(name)


if __name__ == "__main__":
    main()
