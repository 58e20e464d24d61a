"""Distinguished polarization and the Hilbert polynomial identities.

Run: python3 demos/06_polarization_hilbert.py
"""

from stdres import corpus
from stdres.polarization import distinguished_polarization, fiber_hilbert_line, sheaf_hilbert_check
from stdres.tower import run_tower


def table(rep):
    keys = [k for k in rep.rows[0] if k != "n"]
    print("    n  " + "  ".join(f"{k:>10s}" for k in keys))
    for row in rep.rows:
        print(f"   {row['n']:2d}  " + "  ".join(f"{row[k]:10d}" for k in keys))
    print(f"    {rep.polynomial_lhs}  vs  {rep.polynomial_rhs}: {rep.verdict.verdict}")


def main():
    for name in ("p2_point", "p3_point"):
        m = corpus.module(name)
        t = run_tower(m)
        spec = distinguished_polarization(t)
        print(f"{name}: exponents {spec.exponents}, L^{spec.base_exponent}")
        for c in spec.charts:
            print(f"    {c['chart']:14s} Exc generated by {c['exc_generator']}")
        I1 = t.steps[0].homogeneous_ideal
        m_exp = spec.exponents[0]
        print("  chi(L~^n):")
        table(fiber_hilbert_line(I1, m_exp, 6))
        print("  chi(E~ (x) L~^n) (informational):")
        table(sheaf_hilbert_check(m, I1, m_exp, 6))


if __name__ == "__main__":
    main()
