"""Buchberger's algorithm for submodules of free modules over a polynomial ring.

Vectors are plain dicts ``{(component, exponents): coefficient}``; an ideal is
the rank-one case with every component equal to 0.  The term order is passed
in as a key function on ``(component, exponents)`` whose natural tuple order
is the module order (larger key = larger term).

Coefficients live in a field object (see :mod:`stdres.field`).  Nothing here
knows about variable names or gradings.
"""


def leading(vec, key):
    return max(vec, key=key)


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _shift(vec, mono, coeff, field):
    out = {}
    for (c, e), v in vec.items():
        out[(c, tuple(x + y for x, y in zip(e, mono)))] = field.mul(v, coeff)
    return out


def axpy(target, vec, mono, coeff, field):
    """target += coeff * mono * vec, in place; zero entries are dropped."""
    for (c, e), v in vec.items():
        t = (c, tuple(x + y for x, y in zip(e, mono)))
        s = field.add(target.get(t, field.zero), field.mul(v, coeff))
        if s == field.zero:
            target.pop(t, None)
        else:
            target[t] = s


def monic(vec, key, field):
    if not vec:
        return vec
    lc = vec[leading(vec, key)]
    if lc == field.one:
        return dict(vec)
    inv = field.inv(lc)
    return {t: field.mul(v, inv) for t, v in vec.items()}


class _Basis:
    """Leading-term index over a list of monic vectors."""

    def __init__(self, key):
        self.key = key
        self.polys = []
        self.lts = []

    def add(self, vec):
        self.polys.append(vec)
        self.lts.append(leading(vec, self.key))

    def find_divisor(self, term, skip=None):
        c, e = term
        for i, (c2, e2) in enumerate(self.lts):
            if i != skip and c2 == c and divides(e2, e):
                return i
        return None


def reduce(vec, basis, key, field, full=True, stop=None):
    """Normal form of ``vec`` w.r.t. ``basis`` (a list of vectors).

    With ``full=False`` only leading terms are reduced.  ``stop`` is an
    optional predicate on the current remainder: reduction halts (returning
    the partially reduced vector) as soon as it holds.
    """
    idx = basis if isinstance(basis, _Basis) else _make_index(basis, key)
    p = dict(vec)
    r = {}
    while p:
        if stop is not None and stop(p):
            r.update(p)
            return r
        t = leading(p, key)
        i = idx.find_divisor(t)
        if i is None:
            if not full:
                r.update(p)
                return r
            r[t] = p.pop(t)
            continue
        g = idx.polys[i]
        gt = idx.lts[i]
        mono = tuple(x - y for x, y in zip(t[1], gt[1]))
        coeff = field.neg(field.div(p[t], g[gt]))
        axpy(p, g, mono, coeff, field)
    return r


def _make_index(basis, key):
    idx = _Basis(key)
    for g in basis:
        if g:
            idx.add(g)
    return idx


def _spoly(f, g, ft, gt, field):
    m = lcm(ft[1], gt[1])
    mf = tuple(x - y for x, y in zip(m, ft[1]))
    mg = tuple(x - y for x, y in zip(m, gt[1]))
    out = _shift(f, mf, field.inv(f[ft]), field)
    axpy(out, g, mg, field.neg(field.inv(g[gt])), field)
    return out


def groebner(gens, key, field, product_criterion=True):
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first) and
    pruned with the Gebauer-Möller update, which realises Buchberger's chain
    criterion.  The coprime-leading-monomial criterion is only sound for
    ideals, so callers working with rank > 1 must pass
    ``product_criterion=False``.  The output is sorted by leading term,
    largest first, and every element is monic.
    """
    basis = _Basis(key)
    pairs = []  # entries (lcm_term, i, j)

    def update(h):
        nonlocal pairs
        hi = len(basis.polys)
        ht = leading(h, key)
        basis.add(h)
        new = []
        for i in range(hi):
            if basis.polys[i] is None:
                continue
            it = basis.lts[i]
            if it[0] != ht[0]:
                continue
            new.append(((it[0], lcm(it[1], ht[1])), i, hi))
        # chain criterion on old pairs
        kept = []
        for t, i, j in pairs:
            if divides(ht[1], t[1]) and ht[0] == t[0]:
                li = lcm(basis.lts[i][1], ht[1])
                lj = lcm(basis.lts[j][1], ht[1])
                if li != t[1] and lj != t[1]:
                    continue
            kept.append((t, i, j))
        # Gebauer-Möller on the new pairs: drop pairs whose lcm is properly
        # divisible by another new lcm, keep one per repeated lcm
        new.sort(key=lambda p: (key(p[0]), p[1]))
        survivors = []
        for p in new:
            redundant = False
            for q in new:
                if q is p:
                    continue
                if divides(q[0][1], p[0][1]) and q[0][1] != p[0][1]:
                    redundant = True
                    break
            if not redundant:
                survivors.append(p)
        by_lcm = {}
        for p in survivors:
            by_lcm.setdefault(p[0], []).append(p)
        chosen = []
        for t, group in by_lcm.items():
            if product_criterion:
                coprime = [
                    p for p in group
                    if lcm(basis.lts[p[1]][1], ht[1])
                    == tuple(x + y for x, y in zip(basis.lts[p[1]][1], ht[1]))
                ]
                if coprime:
                    continue
            chosen.append(group[0])
        pairs = kept + chosen

    for g in gens:
        g = reduce(g, basis, key, field)
        if g:
            update(monic(g, key, field))

    while pairs:
        pairs.sort(key=lambda p: (key(p[0]), -p[1], -p[2]), reverse=True)
        t, i, j = pairs.pop()
        f, g = basis.polys[i], basis.polys[j]
        s = _spoly(f, g, basis.lts[i], basis.lts[j], field)
        h = reduce(s, basis, key, field)
        if h:
            update(monic(h, key, field))

    return interreduce(basis.polys, key, field)


def interreduce(polys, key, field):
    """Minimalise then fully tail-reduce; returns the reduced basis."""
    polys = [monic(p, key, field) for p in polys if p]
    lts = [leading(p, key) for p in polys]
    keep = []
    for i, (c, e) in enumerate(lts):
        dominated = False
        for j, (c2, e2) in enumerate(lts):
            if j == i or c2 != c or not divides(e2, e):
                continue
            if e2 != e or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(i)
    minimal = [polys[i] for i in keep]
    out = []
    for k, p in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(monic(reduce(p, others, key, field), key, field))
    out.sort(key=lambda p: key(leading(p, key)), reverse=True)
    return out
