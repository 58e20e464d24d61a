"""Exact row reduction over the rationals (small dense matrices)."""

from fractions import Fraction


def rref(rows, ncols):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


class Subspace:
    """Span of vectors in Q^n, kept in reduced echelon form."""

    def __init__(self, n, vectors=()):
        self.n = n
        self.rows, self.pivots = rref(list(vectors), n) if vectors else ([], [])

    @property
    def dim(self):
        return len(self.rows)

    def residue(self, v):
        v = [Fraction(x) for x in v]
        for row, c in zip(self.rows, self.pivots):
            if v[c] != 0:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v):
        return not any(self.residue(v))

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)


def nullspace(rows, ncols):
    """Basis of {x : rows * x = 0}."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        out.append(x)
    return out
