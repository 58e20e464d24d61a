"""Exact multivariate polynomial rings, polynomials and ideals.

Ideal arithmetic is driven by reduced Gröbner bases computed in
:mod:`stdres.gb`.  Every value here is immutable once built; an Ideal caches
its Gröbner basis lazily, which does not change its value.
"""

from fractions import Fraction
from functools import cached_property
from itertools import count

from . import gb
from .field import QQ

_fresh = count()


class RingMismatch(ValueError):
    pass


class TermOrder:
    """A monomial order, exposed as a sort key on exponent vectors.

    ``grevlex`` compares weighted degree, then total degree, then reverse
    lexicographically (the total-degree tier keeps weight-0 variables above 1).
    ``block`` compares the grevlex keys of successive variable blocks, which
    makes it an elimination order for the first block.
    """

    def __init__(self, kind="grevlex", blocks=None):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {kind!r}")
        if kind == "block" and not blocks:
            raise ValueError("block order needs variable blocks")
        self.kind = kind
        self.blocks = tuple(tuple(b) for b in blocks) if blocks else None

    def keyfunc(self, weights):
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            def key(e):
                return (sum(w * x for w, x in zip(weights, e)), sum(e),
                        tuple(-x for x in reversed(e)))
            return key
        blocks = self.blocks

        def key(e):
            out = []
            for b in blocks:
                sub = [e[i] for i in b]
                out.append((sum(weights[i] * e[i] for i in b), sum(sub),
                            tuple(-x for x in reversed(sub))))
            return tuple(out)
        return key

    def __eq__(self, other):
        return isinstance(other, TermOrder) and (self.kind, self.blocks) == (other.kind, other.blocks)

    def __hash__(self):
        return hash((self.kind, self.blocks))

    def __repr__(self):
        if self.kind == "block":
            return f"TermOrder('block', {self.blocks})"
        return f"TermOrder({self.kind!r})"


class PolyRing:
    """k[x_1..x_n] with a grading (non-negative weights) and a term order."""

    def __init__(self, names, order="grevlex", weights=None, field=QQ, homogeneous=False):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        for nm in names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_"):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self.nvars = len(names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w < 0 or int(w) != w for w in self.weights):
            raise ValueError("weights must be non-negative integers, one per variable")
        self.order = order if isinstance(order, TermOrder) else TermOrder(order)
        self.field = field
        self.homogeneous = homogeneous
        self._key = self.order.keyfunc(self.weights)
        self._index = {nm: i for i, nm in enumerate(names)}

    # -- identity -----------------------------------------------------------
    def _sig(self):
        return (self.names, self.weights, self.order, self.field)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}]"

    # -- construction -------------------------------------------------------
    def key(self, e):
        return self._key(e)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self!r}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return tuple(self.var(n) for n in self.names)

    def __getitem__(self, name):
        return self.var(name)

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): self.field(coeff)})

    def coerce(self, x):
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.change_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def parse(self, text):
        from .dsl import parse_polynomial
        return parse_polynomial(text, self)

    def with_order(self, order):
        return PolyRing(self.names, order, self.weights, self.field, self.homogeneous)

    def with_weights(self, weights):
        return PolyRing(self.names, self.order, weights, self.field, self.homogeneous)

    def extend(self, names, weights=None, order=None):
        """Ring with extra variables appended (default order: grevlex)."""
        names = tuple(names)
        w = tuple(weights) if weights is not None else (1,) * len(names)
        return PolyRing(self.names + names, order or "grevlex", self.weights + w,
                        self.field)

    def subring(self, names):
        idx = [self.index(n) for n in names]
        return PolyRing(names, "grevlex", [self.weights[i] for i in idx], self.field,
                        self.homogeneous)

    def fresh_name(self, stem="_t"):
        while True:
            nm = f"{stem}{next(_fresh)}"
            if nm not in self._index:
                return nm

    def ideal(self, *gens):
        if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
            gens = gens[0]
        return Ideal(self, [self.coerce(g) for g in gens])

    def monomials_of_degree(self, d, bounds=None):
        """Exponent vectors of weighted degree ``d``.

        Weight-0 variables need an exponent bound in ``bounds`` (a dict from
        variable index to max exponent), otherwise the set is infinite.
        """
        w = self.weights
        for i, wi in enumerate(w):
            if wi == 0 and (bounds is None or i not in bounds):
                raise ValueError(f"degree piece is infinite: variable {self.names[i]} has weight 0")
        out = []
        n = self.nvars

        def rec(i, left, acc):
            if i == n:
                if left == 0:
                    out.append(tuple(acc))
                return
            if w[i] == 0:
                top = bounds[i]
            else:
                top = left // w[i]
            if bounds is not None and i in bounds:
                top = min(top, bounds[i])
            for a in range(top + 1):
                acc.append(a)
                rec(i + 1, left - a * w[i], acc)
                acc.pop()
        if d >= 0:
            rec(0, d, [])
        return out


class Polynomial:
    """Sparse polynomial: ``{exponent tuple: nonzero coefficient}``."""

    __slots__ = ("ring", "_t", "__weakref__")

    def __init__(self, ring, terms):
        self.ring = ring
        self._t = terms

    # -- accessors ----------------------------------------------------------
    @property
    def coeffs(self):
        return self._t

    def terms(self):
        """(coefficient, exponents) pairs, strictly descending in the term order."""
        key = self.ring.key
        return [(self._t[e], e) for e in sorted(self._t, key=key, reverse=True)]

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def lm(self):
        return max(self._t, key=self.ring.key)

    def lc(self):
        return self._t[self.lm()]

    def lt(self):
        e = self.lm()
        return Polynomial(self.ring, {e: self._t[e]})

    def is_constant(self):
        return all(not any(e) for e in self._t)

    def constant_term(self):
        return self._t.get((0,) * self.ring.nvars, self.ring.field.zero)

    def degree(self):
        """Max weighted degree (-1 for zero)."""
        w = self.ring.weights
        return max((sum(a * b for a, b in zip(w, e)) for e in self._t), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self._t), default=-1)

    def is_homogeneous(self):
        w = self.ring.weights
        return len({sum(a * b for a, b in zip(w, e)) for e in self._t}) <= 1

    def variables(self):
        used = set()
        for e in self._t:
            used.update(i for i, a in enumerate(e) if a)
        return {self.ring.names[i] for i in used}

    def monic(self):
        if not self._t:
            return self
        inv = self.ring.field.inv(self.lc())
        return self * inv

    # -- arithmetic ---------------------------------------------------------
    def _other(self, o):
        if isinstance(o, Polynomial):
            if o.ring != self.ring:
                raise RingMismatch(f"{o.ring!r} vs {self.ring!r}")
            return o
        return self.ring.constant(o)

    def __add__(self, o):
        o = self._other(o)
        f = self.ring.field
        t = dict(self._t)
        for e, c in o._t.items():
            s = f.add(t.get(e, f.zero), c)
            if s == f.zero:
                t.pop(e, None)
            else:
                t[e] = s
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self._t.items()})

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        f = self.ring.field
        t = {}
        for e1, c1 in self._t.items():
            for e2, c2 in o._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(t.get(e, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    t.pop(e, None)
                else:
                    t[e] = s
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, Polynomial):
            return self.ring == o.ring and self._t == o._t
        try:
            return self._t == self.ring.constant(o)._t
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    # -- maps ---------------------------------------------------------------
    def substitute(self, mapping, target=None):
        """Ring map: variables named in ``mapping`` go to the given polynomials,
        other variables go to the same-named variable of ``target``."""
        target = target or self.ring
        images = []
        for nm in self.ring.names:
            if nm in mapping:
                images.append(target.coerce(mapping[nm]))
            else:
                images.append(target.var(nm))
        return self.map_to(images, target)

    def map_to(self, images, target):
        """Image under x_i -> images[i] in ``target``."""
        out = target.zero()
        cache = {}
        f = target.field
        for e, c in self._t.items():
            term = target.constant(f(c) if f is not self.ring.field else c)
            for i, a in enumerate(e):
                if a:
                    k = (i, a)
                    if k not in cache:
                        cache[k] = images[i] ** a
                    term = term * cache[k]
            out = out + term
        return out

    def change_ring(self, ring):
        """Re-express in ``ring`` by matching variable names."""
        idx = [ring.index(n) if n in ring._index else None for n in self.ring.names]
        t = {}
        for e, c in self._t.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.names[i]} not in {ring!r}")
                    ne[idx[i]] = a
            t[tuple(ne)] = ring.field(c) if ring.field is not self.ring.field else c
        return Polynomial(ring, t)

    def vec(self, comp=0):
        return {(comp, e): c for e, c in self._t.items()}

    # -- text ---------------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for c, e in self.terms():
            mono = "*".join(
                nm if a == 1 else f"{nm}^{a}"
                for nm, a in zip(self.ring.names, e) if a
            )
            neg = c < 0 if isinstance(c, Fraction) else False
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = f"{mag}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def from_vec(ring, vec, comp=0):
    return Polynomial(ring, {e: c for (k, e), c in vec.items() if k == comp})


def divide_exact(p, q):
    """p / q, raising ValueError when q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    f = ring.field
    key = ring.key
    rem = dict(p._t)
    quo = {}
    qlm = q.lm()
    qlc = q._t[qlm]
    while rem:
        t = max(rem, key=key)
        if not gb.divides(qlm, t):
            raise ValueError(f"{q} does not divide {p}")
        m = tuple(a - b for a, b in zip(t, qlm))
        c = f.div(rem[t], qlc)
        quo[m] = c
        for e, v in q._t.items():
            e2 = tuple(a + b for a, b in zip(e, m))
            s = f.add(rem.get(e2, f.zero), f.neg(f.mul(v, c)))
            if s == f.zero:
                rem.pop(e2, None)
            else:
                rem[e2] = s
    return Polynomial(ring, quo)


def _ring_key(ring):
    key = ring.key
    return lambda t: key(t[1])


def groebner(generators, ring=None):
    """Reduced Gröbner basis (tuple of monic Polynomials) of the generators."""
    gens = list(generators)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"generator {g} lives in {g.ring!r}, expected {ring!r}")
    vecs = [g.vec() for g in gens if g]
    basis = gb.groebner(vecs, _ring_key(ring), ring.field)
    return tuple(from_vec(ring, v) for v in basis)


class Ideal:
    """Ideal of a PolyRing given by generators; the reduced GB is cached."""

    def __init__(self, ring, gens, saturated=False):
        gens = [ring.coerce(g) for g in gens]
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"generator {g} not in {ring!r}")
        self.ring = ring
        self.gens = tuple(g for g in gens if g)
        self.saturated = saturated
        if ring.homogeneous:
            for g in self.gens:
                if not g.is_homogeneous():
                    raise ValueError(f"inhomogeneous generator {g} in homogeneous ring")

    @cached_property
    def gb(self):
        return groebner(self.gens, self.ring)

    def groebner_basis(self):
        return self.gb

    @cached_property
    def _index(self):
        return gb._make_index([g.vec() for g in self.gb], _ring_key(self.ring))

    def normal_form(self, p):
        p = self.ring.coerce(p)
        r = gb.reduce(p.vec(), self._index, _ring_key(self.ring), self.ring.field)
        return from_vec(self.ring, r)

    def contains(self, p):
        return self.normal_form(p).is_zero()

    __contains__ = contains

    def is_unit(self):
        return any(g.is_constant() for g in self.gb)

    def is_zero(self):
        return not self.gb

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gb)

    def leading_monomials(self):
        return [g.lm() for g in self.gb]

    def issubset(self, other):
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, self.gb))

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gb))})" if self.gb else "Ideal(0)"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gb) + ")" if self.gb else "(0)"

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")

    def __add__(self, other):
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.gb for g in other.gb])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"ideal power needs k >= 0, got {k}")
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(k):
            out = Ideal(self.ring, [f * g for f in out.gb for g in self.gb])
        return out

    def intersect(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        t = self.ring.fresh_name()
        big = self.ring.extend([t], weights=[0])
        n = self.ring.nvars
        big = big.with_order(TermOrder("block", [[n], list(range(n))]))
        tv = big.var(t)
        gens = [tv * g.change_ring(big) for g in self.gens]
        gens += [(1 - tv) * g.change_ring(big) for g in other.gens]
        basis = groebner(gens, big)
        keep = [g for g in basis if t not in g.variables()]
        return Ideal(self.ring, [g.change_ring(self.ring) for g in keep])

    def quotient(self, other):
        """self : other."""
        self._check(other)
        out = Ideal(self.ring, [self.ring.one()])
        for g in other.gb:
            inter = self.intersect(Ideal(self.ring, [g]))
            part = Ideal(self.ring, [divide_exact(h, g) for h in inter.gb])
            out = out.intersect(part)
        return out

    def saturate(self, other):
        """self : other^infinity, as a stabilised chain of quotients."""
        cur = self
        while True:
            nxt = cur.quotient(other)
            if nxt == cur:
                return Ideal(self.ring, cur.gb, saturated=True)
            cur = nxt

    def eliminate(self, drop):
        drop = list(drop)
        for d in drop:
            if d not in self.ring._index:
                raise ValueError(f"cannot eliminate {d!r}: not a variable of {self.ring!r}")
        keep = [n for n in self.ring.names if n not in drop]
        di = [self.ring.index(n) for n in drop]
        ki = [self.ring.index(n) for n in keep]
        elim = self.ring.with_order(TermOrder("block", [di, ki]))
        basis = groebner([g.change_ring(elim) for g in self.gens], elim)
        sub = self.ring.subring(keep)
        return Ideal(sub, [g.change_ring(sub) for g in basis if not set(drop) & g.variables()])

    def change_ring(self, ring):
        return Ideal(ring, [g.change_ring(ring) for g in self.gens])

    def map(self, images, target):
        return Ideal(target, [g.map_to(images, target) for g in self.gens])

    # -- graded pieces ------------------------------------------------------
    def _require_homogeneous(self):
        if not self.is_homogeneous():
            raise ValueError(f"graded piece dimension needs a homogeneous ideal, got {self}")

    def _bounds(self):
        """Exponent caps for weight-0 variables from pure powers in the GB."""
        bounds = {}
        for i, w in enumerate(self.ring.weights):
            if w:
                continue
            caps = [e[i] for e in self.leading_monomials()
                    if e[i] and all(a == 0 for j, a in enumerate(e) if j != i)]
            if caps:
                bounds[i] = min(caps) - 1
        return bounds

    def quotient_dim(self, d):
        """dim (R/I)_d by counting standard monomials."""
        self._require_homogeneous()
        if self.is_unit():
            return 0
        lms = self.leading_monomials()
        return sum(1 for e in self.ring.monomials_of_degree(d, self._bounds())
                   if not any(gb.divides(m, e) for m in lms))


def ideal_ops(a, b=None, kind="sum", k=None):
    """Sum, product, power, intersection, quotient or saturation of ideals."""
    if kind == "power":
        if k is None or k < 0:
            raise ValueError(f"power needs k >= 0, got {k}")
        return a ** k
    if b is None:
        raise ValueError(f"{kind} needs a second ideal")
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    ops = {
        "sum": lambda: a + b,
        "product": lambda: a * b,
        "intersection": lambda: a.intersect(b),
        "quotient": lambda: a.quotient(b),
        "saturation": lambda: a.saturate(b),
    }
    if kind not in ops:
        raise ValueError(f"unknown ideal operation {kind!r}")
    return ops[kind]()


def eliminate(a, drop):
    return a.eliminate(drop)


def graded_piece_dim(obj, d, quotient=False):
    """Dimension of a degree-``d`` graded piece.

    ``obj`` is a PolyRing (the ring itself) or an Ideal; for an ideal the
    ideal's piece is returned, or the quotient ring's piece when
    ``quotient=True``.
    """
    if d < 0:
        return 0
    if isinstance(obj, PolyRing):
        return len(obj.monomials_of_degree(d))
    if isinstance(obj, Ideal):
        q = obj.quotient_dim(d)
        if quotient:
            return q
        return len(obj.ring.monomials_of_degree(d)) - q
    raise TypeError(f"cannot take graded pieces of {type(obj).__name__}")
