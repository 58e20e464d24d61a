"""Univariate polynomials with rational coefficients (Hilbert polynomials)."""

from fractions import Fraction
from math import comb


class UniPoly:
    """c_0 + c_1 n + ... ; coefficients are Fractions, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def binomial(cls, shift, k):
        """The polynomial n -> C(n + shift, k)."""
        out = cls([1])
        for j in range(k):
            out = out * cls([shift - j, 1])
        return out * Fraction(1, _fact(k))

    @classmethod
    def interpolate(cls, points):
        """Lagrange interpolation through (x, y) pairs, exactly."""
        out = cls()
        for i, (xi, yi) in enumerate(points):
            term = cls([yi])
            for j, (xj, _) in enumerate(points):
                if j != i:
                    term = term * cls([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
            out = out + term
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, n):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def __add__(self, o):
        o = o if isinstance(o, UniPoly) else UniPoly([o])
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-o if isinstance(o, UniPoly) else UniPoly([-Fraction(o)]))

    def __mul__(self, o):
        if not isinstance(o, UniPoly):
            return UniPoly([c * o for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def compose_linear(self, a, b=0):
        """n -> self(a*n + b)."""
        out = UniPoly()
        lin = UniPoly([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __eq__(self, o):
        if isinstance(o, UniPoly):
            return self.coeffs == o.coeffs
        return self.coeffs == UniPoly([o]).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def falling_factorial(self):
        """Coefficients b_k with self(n) = sum_k b_k * n(n-1)...(n-k+1)."""
        # Newton forward differences at 0: b_k = Delta^k p(0) / k!
        d = self.degree
        if d < 0:
            return ()
        vals = [self(i) for i in range(d + 1)]
        out = []
        for k in range(d + 1):
            out.append(vals[0] / _fact(k))
            vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
        return tuple(out)

    def is_integer_valued(self):
        return all(c.denominator == 1 for c in (self(i) for i in range(self.degree + 2)))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            mag = abs(c)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else f"{mag}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"UniPoly({str(self)!r})"


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def binom(n, k):
    return comb(n, k) if 0 <= k <= n else 0
