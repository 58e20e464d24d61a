"""Finitely presented modules, syzygies, free resolutions and Hilbert series.

A module is ``coker(F1 -> F0)`` over a :class:`ChartRing` (a polynomial ring
modulo an ideal, possibly zero).  Matrices are column lists: each column is a
tuple of polynomials, one per basis element of the target.

Twists follow the usual sheaf convention: ``R(d)`` has its generator in
degree ``-d``, so a basis vector with twist ``t`` has degree ``-t`` and entry
``(i, j)`` of a graded matrix has degree ``t_i - s_j`` (row twist minus column
twist).  Presentations over a non-graded chart carry ``twists=None``.
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import gb
from .ring import Ideal, PolyRing, Polynomial, RingMismatch
from .unipoly import UniPoly, binom


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

class ChartRing:
    """``poly / relations``.  ``integral`` records that the quotient is a domain
    (the caller vouches for it; chart constructions know it by design)."""

    def __init__(self, poly, relations=(), integral=True, label=""):
        if isinstance(relations, Ideal):
            relations = relations.gens
        self.poly = poly
        self.relations = Ideal(poly, list(relations))
        self.integral = integral
        self.label = label

    @classmethod
    def of(cls, ring):
        if isinstance(ring, ChartRing):
            return ring
        if isinstance(ring, PolyRing):
            return cls(ring)
        raise TypeError(f"expected a ring, got {type(ring).__name__}")

    @property
    def graded(self):
        return self.poly.homogeneous

    @property
    def field(self):
        return self.poly.field

    def reduce(self, p):
        if self.relations.is_zero():
            return p
        return self.relations.normal_form(p)

    def is_zero(self, p):
        return self.reduce(p).is_zero()

    def ideal(self, gens):
        """Ideal of the ambient polynomial ring: gens + relations."""
        return Ideal(self.poly, list(gens) + list(self.relations.gens))

    def _sig(self):
        return (self.poly, self.relations.gb)

    def __eq__(self, other):
        return isinstance(other, ChartRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        rel = f"/{self.relations}" if not self.relations.is_zero() else ""
        return f"{self.poly!r}{rel}"

    def describe(self):
        names = ",".join(self.poly.names)
        rels = ", ".join(str(g) for g in self.relations.gb)
        return f"QQ[{names}]" + (f"/({rels})" if rels else "")


# ---------------------------------------------------------------------------
# free modules and presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeModule:
    rank: int
    twists: tuple = None  # None when ungraded

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if self.twists is not None:
            object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))
            if len(self.twists) != self.rank:
                raise ValueError(f"rank {self.rank} but {len(self.twists)} twists")

    @property
    def degrees(self):
        """Generator degrees (negated twists); zeros when ungraded."""
        if self.twists is None:
            return (0,) * self.rank
        return tuple(-t for t in self.twists)

    def dual(self):
        return FreeModule(self.rank, None if self.twists is None else tuple(-t for t in self.twists))

    def __str__(self):
        if self.rank == 0:
            return "0"
        if self.twists is None:
            return f"R^{self.rank}"
        parts = []
        for t in sorted(set(self.twists), reverse=True):
            k = self.twists.count(t)
            parts.append(f"R({t})" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts)


def _col_degree(col, degs):
    """Degree of a homogeneous column whose target basis has degrees ``degs``."""
    for p, d in zip(col, degs):
        if p:
            return p.degree() + d
    return None


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    """coker(columns: source -> target) over ``chart``.

    ``embedding`` optionally records images of the target basis in some
    ambient free module (used for submodules such as syzygy modules).
    """

    chart: ChartRing
    target: FreeModule
    columns: tuple
    source: FreeModule
    allow_zero: bool = False
    embedding: tuple = dc_field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "chart", ChartRing.of(self.chart))
        cols = tuple(tuple(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        ring = self.chart.poly
        if self.source.rank != len(cols):
            raise ValueError("source rank does not match the number of columns")
        for j, col in enumerate(cols):
            if len(col) != self.target.rank:
                raise ValueError(f"column {j} has {len(col)} entries, expected {self.target.rank}")
            for p in col:
                if p.ring != ring:
                    raise RingMismatch(f"entry {p} not in {ring!r}")
            if not self.allow_zero and all(not p for p in col):
                raise ValueError(f"column {j} is identically zero")
        if self.is_graded:
            if not ring.homogeneous:
                raise ValueError("twists given over a non-graded ring")
            if self.source.twists is None:
                raise ValueError("graded target with ungraded source")
            for j, col in enumerate(cols):
                for i, p in enumerate(col):
                    if p and (not p.is_homogeneous()
                              or p.degree() != self.target.twists[i] - self.source.twists[j]):
                        raise ValueError(
                            f"entry ({i},{j}) = {p} is not homogeneous of degree "
                            f"{self.target.twists[i] - self.source.twists[j]}")

    # -- constructors -------------------------------------------------------
    @classmethod
    def graded_from(cls, ring, twists, columns, allow_zero=False):
        """Graded presentation; column twists are inferred from the entries."""
        chart = ChartRing.of(ring)
        ring = chart.poly
        twists = tuple(twists)
        cols = [tuple(ring.coerce(p) for p in c) for c in columns]
        src = []
        for j, col in enumerate(cols):
            d = _col_degree(col, tuple(-t for t in twists))
            if d is None:
                if not allow_zero:
                    raise ValueError(f"relation {j + 1} is identically zero")
                d = 0
            src.append(-d)
        return cls(chart, FreeModule(len(twists), twists), tuple(cols),
                   FreeModule(len(cols), tuple(src)), allow_zero)

    @classmethod
    def ungraded(cls, chart, rank, columns, allow_zero=False):
        chart = ChartRing.of(chart)
        cols = [tuple(chart.poly.coerce(p) for p in c) for c in columns]
        return cls(chart, FreeModule(rank), tuple(cols), FreeModule(len(cols)), allow_zero)

    @classmethod
    def free(cls, ring, twists=None, rank=None):
        chart = ChartRing.of(ring)
        if twists is None:
            return cls(chart, FreeModule(rank), (), FreeModule(0))
        return cls(chart, FreeModule(len(twists), tuple(twists)), (), FreeModule(0, ()))

    @classmethod
    def quotient_ring(cls, ring, gens, twist=0):
        """R/(gens)(twist) as a cyclic module."""
        chart = ChartRing.of(ring)
        gens = [chart.poly.coerce(g) for g in gens]
        if chart.graded:
            return cls.graded_from(chart, (twist,), [(g,) for g in gens])
        return cls.ungraded(chart, 1, [(g,) for g in gens])

    @classmethod
    def ideal_module(cls, ideal_or_gens, ring=None):
        """An ideal as a module: generators modulo their syzygies."""
        gens = list(ideal_or_gens.gens if isinstance(ideal_or_gens, Ideal) else ideal_or_gens)
        chart = ChartRing.of(ring if ring is not None else gens[0].ring)
        cols = [(g,) for g in gens]
        src = FreeModule(1, (0,) if chart.graded else None)
        return submodule_presentation(chart, cols, src)

    # -- basic data ---------------------------------------------------------
    @property
    def ring(self):
        return self.chart.poly

    @property
    def rank0(self):
        return self.target.rank

    @property
    def is_graded(self):
        return self.target.twists is not None

    def entry(self, i, j):
        return self.columns[j][i]

    def rows(self):
        return [tuple(col[i] for col in self.columns) for i in range(self.rank0)]

    def transpose_columns(self):
        """Columns of the transposed matrix (its i-th column is row i)."""
        return self.rows()

    def is_free(self):
        return all(self.chart.is_zero(p) for col in self.columns for p in col)

    def with_columns(self, columns, source=None, allow_zero=None):
        cols = tuple(tuple(c) for c in columns)
        if source is None:
            if self.is_graded:
                degs = self.target.degrees
                src = []
                for c in cols:
                    d = _col_degree(c, degs)
                    src.append(0 if d is None else -d)
                source = FreeModule(len(cols), tuple(src))
            else:
                source = FreeModule(len(cols))
        return ModulePresentation(self.chart, self.target, cols, source,
                                  self.allow_zero if allow_zero is None else allow_zero)

    def direct_sum(self, other):
        if self.chart != other.chart:
            raise RingMismatch("direct sum over different rings")
        z = self.ring.zero()
        r1, r2 = self.rank0, other.rank0
        cols = [tuple(c) + (z,) * r2 for c in self.columns]
        cols += [(z,) * r1 + tuple(c) for c in other.columns]
        tw = None
        stw = None
        if self.is_graded and other.is_graded:
            tw = self.target.twists + other.target.twists
            stw = self.source.twists + other.source.twists
        return ModulePresentation(self.chart, FreeModule(r1 + r2, tw), tuple(cols),
                                  FreeModule(len(cols), stw), self.allow_zero or other.allow_zero)

    def map(self, images, chart):
        """Base change along the ring map x_i -> images[i] into ``chart``.

        The result is ungraded unless the target ring is graded and the
        images keep the twists consistent (then twists are kept)."""
        chart = ChartRing.of(chart)
        cols = []
        for col in self.columns:
            cols.append(tuple(chart.reduce(p.map_to(images, chart.poly)) for p in col))
        keep = [c for c in cols if any(c)]
        return ModulePresentation.ungraded(chart, self.rank0, keep)

    def reduced(self):
        """Entries reduced modulo the chart relations; zero columns dropped."""
        cols = [tuple(self.chart.reduce(p) for p in c) for c in self.columns]
        cols = [c for c in cols if any(c)]
        if self.is_graded:
            return ModulePresentation.graded_from(self.chart, self.target.twists, cols)
        return ModulePresentation.ungraded(self.chart, self.rank0, cols)

    def __str__(self):
        head = f"coker({self.source} -> {self.target}) over {self.chart.describe()}"
        if not self.columns:
            return head
        body = "; ".join("(" + ", ".join(str(p) for p in c) + ")" for c in self.columns)
        return f"{head}: {body}"


# the input parser spells it ModulePresentation.graded(ring, twists, columns)
ModulePresentation.graded = ModulePresentation.graded_from


# ---------------------------------------------------------------------------
# vectors and module Gröbner bases
# ---------------------------------------------------------------------------

def to_vec(col, offset=0):
    v = {}
    for i, p in enumerate(col):
        for e, c in p.coeffs.items():
            v[(i + offset, e)] = c
    return v


def from_vec(ring, v, lo, hi):
    parts = [{} for _ in range(hi - lo)]
    for (c, e), x in v.items():
        if lo <= c < hi:
            parts[c - lo][e] = x
    return tuple(Polynomial(ring, d) for d in parts)


def module_key(ring, degs, blocks=None):
    """Term-over-position order with degree shifts; ``blocks`` (one int per
    component) are compared first, which turns it into an elimination order."""
    rk = ring.key
    w = ring.weights

    def key(t):
        c, e = t
        return (blocks[c] if blocks else 0,
                sum(a * b for a, b in zip(w, e)) + degs[c], rk(e), -c)
    return key


def _relation_vecs(chart, comps):
    out = []
    for g in chart.relations.gb:
        for c in comps:
            out.append(g.vec(c))
    return out


def module_gb(chart, degs, columns, with_relations=True):
    """Reduced GB (as vectors) of span(columns) + J*F over ``chart``."""
    ring = chart.poly
    key = module_key(ring, degs)
    vecs = [to_vec(c) for c in columns]
    if with_relations:
        vecs += _relation_vecs(chart, range(len(degs)))
    basis = gb.groebner([v for v in vecs if v], key, ring.field, product_criterion=len(degs) == 1)
    return basis, key


class _Augmented:
    """GB of the vectors (c_j, e_j) in F0 + F1 with the F0 block on top.

    Elements whose F0 part vanishes generate the syzygies of the columns, and
    reducing (a, 0) until its F0 part vanishes expresses ``a`` in terms of the
    columns.
    """

    def __init__(self, chart, degs0, columns, degs1):
        ring = chart.poly
        self.chart = chart
        self.r0 = len(degs0)
        self.n = len(columns)
        degs = tuple(degs0) + tuple(degs1)
        blocks = (1,) * self.r0 + (0,) * self.n
        self.key = module_key(ring, degs, blocks)
        vecs = []
        for j, c in enumerate(columns):
            v = to_vec(c)
            v[(self.r0 + j, (0,) * ring.nvars)] = ring.field.one
            vecs.append(v)
        vecs += _relation_vecs(chart, range(self.r0))
        self.basis = gb.groebner(vecs, self.key, ring.field, product_criterion=False)
        self.index = gb._make_index(self.basis, self.key)

    def syzygies(self):
        ring = self.chart.poly
        out = []
        for v in self.basis:
            lt = gb.leading(v, self.key)
            if lt[0] >= self.r0:
                col = tuple(self.chart.reduce(p) for p in from_vec(ring, v, self.r0, self.r0 + self.n))
                if any(col):
                    out.append(col)
        return out

    def lift(self, target):
        """Coefficients a with sum_j a_j c_j = target mod J, or None."""
        ring = self.chart.poly
        r0 = self.r0

        def done(p):
            return all(c >= r0 for c, _ in p)
        rem = gb.reduce(to_vec(target), self.index, self.key, ring.field, full=False, stop=done)
        if not done(rem):
            return None
        coeffs = from_vec(ring, rem, r0, r0 + self.n)
        return tuple(self.chart.reduce(-p) for p in coeffs)


def _degs(free):
    return free.degrees


def kernel(m):
    """Generators of ker(source -> target) of the presentation matrix, as
    columns in the source, together with their twists (None if ungraded)."""
    if not m.columns:
        return [], ([] if m.is_graded else None)
    aug = _Augmented(m.chart, _degs(m.target), m.columns, _degs(m.source))
    gens = aug.syzygies()
    return _prune(m.chart, m.source, gens)


def _sort_key(chart, free, col):
    degs = free.degrees
    d = _col_degree(col, degs) if free.twists is not None else 0
    ring = chart.poly
    key = module_key(ring, degs)
    v = to_vec(col)
    return (d, key(gb.leading(v, key)) if v else ())


def _prune(chart, free, gens):
    """Greedy generating subset, in increasing degree: a generator is kept only
    if it is not in the span of those kept before it.  For graded input this
    is a minimal generating set."""
    gens = sorted(gens, key=lambda c: _sort_key(chart, free, c))
    kept = []
    basis = []
    key = module_key(chart.poly, free.degrees)
    rel = _relation_vecs(chart, range(free.rank))
    for g in gens:
        v = to_vec(g)
        if basis and not gb.reduce(v, basis, key, chart.field):
            continue
        if not basis and rel and not gb.reduce(v, gb.groebner(rel, key, chart.field, False), key, chart.field):
            continue
        kept.append(g)
        basis = gb.groebner([to_vec(k) for k in kept] + rel, key, chart.field,
                            product_criterion=free.rank == 1)
    twists = None
    if free.twists is not None:
        twists = [-_col_degree(g, free.degrees) for g in kept]
    return kept, twists


def lift(m, targets):
    """Express each target vector as a combination of the columns of ``m``.

    Returns a list of coefficient tuples; raises ValueError if some target is
    not in the image.
    """
    aug = _Augmented(m.chart, _degs(m.target), m.columns, _degs(m.source))
    out = []
    for t in targets:
        a = aug.lift(t)
        if a is None:
            raise ValueError("vector is not in the image of the matrix")
        out.append(a)
    return out


def in_image(m, vec):
    """Is ``vec`` (a column over the target) in the image of the matrix mod J?"""
    basis, key = module_gb(m.chart, m.target.degrees, m.columns)
    return not gb.reduce(to_vec(vec), basis, key, m.chart.field)


def apply(columns, coeffs, ring, rank):
    """sum_j coeffs[j] * columns[j]."""
    out = [ring.zero()] * rank
    for a, col in zip(coeffs, columns):
        if not a:
            continue
        for i, p in enumerate(col):
            if p:
                out[i] = out[i] + a * p
    return tuple(out)


def submodule_presentation(chart, gens, ambient):
    """The submodule of ``ambient`` spanned by ``gens`` (columns), presented as
    coker of the syzygies of the generators; ``embedding`` keeps the gens."""
    chart = ChartRing.of(chart)
    gens = [tuple(chart.reduce(p) for p in g) for g in gens]
    gens = [g for g in gens if any(g)]
    gens, twists = _prune(chart, ambient, gens)
    if not gens:
        target = FreeModule(0, () if ambient.twists is not None else None)
        return ModulePresentation(chart, target, (), FreeModule(0, target.twists), embedding=())
    target = FreeModule(len(gens), tuple(twists) if twists is not None else None)
    src0 = FreeModule(ambient.rank, ambient.twists)
    mat = ModulePresentation(chart, src0, tuple(gens), target)
    syz, stw = kernel(mat)
    source = FreeModule(len(syz), tuple(stw) if stw is not None else None)
    return ModulePresentation(chart, target, tuple(syz), source, embedding=tuple(gens))


def syzygies(m):
    """Presentation of ker(F1 -> F0) for the presentation matrix of ``m``."""
    return submodule_presentation(m.chart, _identity_columns(m.source, m.ring), m.source) \
        if not m.columns else _syz(m)


def _syz(m):
    gens, _ = kernel(m)
    return submodule_presentation(m.chart, gens, m.source)


def _identity_columns(free, ring):
    z, one = ring.zero(), ring.one()
    return [tuple(one if i == j else z for i in range(free.rank)) for j in range(free.rank)]


# ---------------------------------------------------------------------------
# cancellation of unit entries
# ---------------------------------------------------------------------------

def _unit_entry(chart, cols):
    for j, col in enumerate(cols):
        for i, p in enumerate(col):
            if p and p.is_constant():
                return i, j
    return None


def cancel_complex(chart, modules, maps):
    """Split off trivial summands R -> R (unit entries) from a complex.

    ``modules`` are the free modules F_0..F_L, ``maps[k-1]`` the columns of
    d_k: F_k -> F_{k-1}.  Returns new (modules, maps) with no constant entries
    left.  Cancelling entry (r, c) of d_i replaces d_i by its Schur
    complement, drops column r of d_{i-1} and row c of d_{i+1}.
    """
    ranks = [F.rank for F in modules]
    twists = [None if F.twists is None else list(F.twists) for F in modules]
    maps = [[list(c) for c in d] for d in maps]
    f = chart.field
    while True:
        hit = None
        for k, d in enumerate(maps):
            u = _unit_entry(chart, d)
            if u is not None:
                hit = (k, u)
                break
        if hit is None:
            break
        k, (r, c) = hit
        d = maps[k]
        pc = d[c]
        inv = f.inv(pc[r].constant_term())
        new = []
        for j, col in enumerate(d):
            if j == c:
                continue
            a = col[r]
            if a:
                fac = a * inv
                col = [chart.reduce(x - fac * y) for x, y in zip(col, pc)]
            new.append([x for i, x in enumerate(col) if i != r])
        maps[k] = new
        if k > 0:
            maps[k - 1] = [col for j, col in enumerate(maps[k - 1]) if j != r]
        if k + 1 < len(maps):
            maps[k + 1] = [[x for i, x in enumerate(col) if i != c] for col in maps[k + 1]]
        ranks[k] -= 1
        ranks[k + 1] -= 1
        for t, idx in ((twists[k], r), (twists[k + 1], c)):
            if t is not None:
                del t[idx]
    out = [FreeModule(n, None if t is None else tuple(t)) for n, t in zip(ranks, twists)]
    return out, [tuple(tuple(c) for c in d) for d in maps]


def minimize_presentation(m):
    """Drop redundant generators (unit entries) and redundant relations."""
    mods, maps = cancel_complex(m.chart, [m.target, m.source], [m.columns])
    target = mods[0]
    gens = [tuple(m.chart.reduce(p) for p in c) for c in maps[0]]
    gens = [c for c in gens if any(c)]
    gens, stw = _prune(m.chart, target, gens)
    return ModulePresentation(m.chart, target, tuple(gens),
                              FreeModule(len(gens), None if stw is None else tuple(stw)))


# ---------------------------------------------------------------------------
# free resolutions
# ---------------------------------------------------------------------------

@dataclass
class FreeResolutionData:
    """F_L -> ... -> F_1 -> F_0 (-> M).  ``maps[i-1]`` holds d_i as columns."""

    chart: ChartRing
    modules: list       # FreeModule F_0 .. F_L
    maps: list          # d_1 .. d_L
    minimal: bool = False
    complete: bool = True  # False when truncated at a length bound

    @property
    def length(self):
        return len(self.maps)

    def betti(self):
        return [F.rank for F in self.modules]

    def twists(self):
        return [F.twists for F in self.modules]

    def differential(self, i):
        """d_i as a ModulePresentation matrix F_i -> F_{i-1}."""
        return ModulePresentation(self.chart, self.modules[i - 1], self.maps[i - 1],
                                  self.modules[i], allow_zero=True)

    def check_complex(self):
        ring = self.chart.poly
        for i in range(1, self.length):
            d, e = self.maps[i - 1], self.maps[i]
            r = self.modules[i - 1].rank
            for col in e:
                img = apply(d, col, ring, r)
                if any(not self.chart.is_zero(p) for p in img):
                    return False
        return True

    def has_constant_entries(self):
        return any(p and p.is_constant() for d in self.maps for col in d for p in col)

    def euler_rank(self):
        return sum((-1) ** i * F.rank for i, F in enumerate(self.modules))

    def presentation(self):
        """The presented module coker(d_1)."""
        if not self.maps:
            return ModulePresentation(self.chart, self.modules[0], (), self.modules[1]
                                      if len(self.modules) > 1 else FreeModule(0, () if self.modules[0].twists is not None else None))
        return ModulePresentation(self.chart, self.modules[0], self.maps[0], self.modules[1],
                                  allow_zero=True)

    def summary(self):
        parts = [str(F) for F in self.modules]
        return " <- ".join(parts)


def free_resolution(m, minimize=True, max_length=None):
    """Free resolution of coker(m).

    Graded input: with ``minimize`` the result is the minimal resolution
    (built step by step: unit cancellation, then minimal kernel generators).
    Ungraded input: a resolution by greedy generating sets, truncated after
    ``max_length`` maps (default: number of variables + 1), which is enough
    to read off the projective dimension over a regular ring.
    """
    chart = m.chart
    nv = chart.poly.nvars
    limit = max_length if max_length is not None else nv + 1
    cur = minimize_presentation(m) if minimize else m
    modules = [cur.target]
    maps = []
    complete = True
    if cur.columns:
        modules.append(cur.source)
        maps.append(cur.columns)
    while maps:
        if len(maps) >= limit:
            # one more kernel tells whether the resolution really stops here
            gens, _ = kernel(ModulePresentation(chart, modules[-2], maps[-1], modules[-1]))
            complete = not gens
            break
        d = ModulePresentation(chart, modules[-2], maps[-1], modules[-1])
        gens, tw = kernel(d)
        if not gens:
            break
        src = FreeModule(len(gens), None if tw is None else tuple(tw))
        modules.append(src)
        maps.append(tuple(gens))
    if not maps:
        modules.append(FreeModule(0, () if modules[0].twists is not None else None))
        modules = modules[:1]
    return FreeResolutionData(chart, modules, maps, minimal=minimize and chart.graded,
                              complete=complete)


def pad_resolution(res, spot, twist):
    """Direct sum with the trivial complex R(twist) --1--> R(twist) placed in
    homological degrees ``spot`` and ``spot - 1`` (spot >= 1)."""
    if spot < 1:
        raise ValueError("padding spot must be >= 1")
    ring = res.chart.poly
    z, one = ring.zero(), ring.one()
    modules = list(res.modules)
    maps = [list(d) for d in res.maps]
    while len(modules) <= spot:
        modules.append(FreeModule(0, () if modules[0].twists is not None else None))
        maps.append([])

    def grow(F):
        tw = None if F.twists is None else F.twists + (twist,)
        return FreeModule(F.rank + 1, tw)
    lo, hi = spot - 1, spot
    rank_lo = modules[lo].rank
    # d_spot: old columns get a zero in the new row, plus the identity column
    d = [tuple(c) + (z,) for c in maps[spot - 1]]
    d.append((z,) * rank_lo + (one,))
    maps[spot - 1] = d
    # d_{spot-1}: new column maps to zero
    if spot - 1 >= 1:
        rk = modules[lo - 1].rank
        maps[spot - 2] = list(maps[spot - 2]) + [(z,) * rk]
    # d_{spot+1}: new zero row
    if spot < len(maps):
        maps[spot] = [tuple(c) + (z,) for c in maps[spot]]
    modules[lo] = grow(modules[lo])
    modules[hi] = grow(modules[hi])
    return FreeResolutionData(res.chart, modules, [tuple(d) for d in maps], minimal=False)


def minimize_resolution(res):
    """Cancel every unit entry; drops trailing zero modules."""
    modules, maps = cancel_complex(res.chart, res.modules, res.maps)
    maps = list(maps)
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()
        maps.pop()
    return FreeResolutionData(res.chart, modules, maps, minimal=res.chart.graded,
                              complete=res.complete)


def homological_dimension_graded(m):
    """Length of the minimal graded free resolution."""
    if not m.is_graded:
        raise ValueError("graded homological dimension needs a graded presentation")
    return free_resolution(m, minimize=True).length


@dataclass
class SegmentTriple:
    """0 -> W_i -> F_{i-1} -> W_{i-1} -> 0 cut from a resolution."""

    index: int
    kernel: ModulePresentation   # W_i = coker(d_{i+1}) (free when i = L)
    middle: FreeModule           # F_{i-1}
    quotient: ModulePresentation  # W_{i-1} = coker(d_i)
    map: tuple                   # d_i, mapping W_i's generators into F_{i-1}


def segment_triples(res):
    """Triples for i = L, L-1, ..., 1 (the order the tower consumes them)."""
    out = []
    L = res.length
    for i in range(L, 0, -1):
        out.append(SegmentTriple(i, w_module(res, i), res.modules[i - 1], w_module(res, i - 1),
                                 res.maps[i - 1]))
    return out


def w_module(res, i):
    """W_i = image of d_i, presented as coker(d_{i+1}) on F_i."""
    F = res.modules[i]
    if i < res.length:
        return ModulePresentation(res.chart, F, res.maps[i], res.modules[i + 1], allow_zero=True)
    return ModulePresentation(res.chart, F, (), FreeModule(0, () if F.twists is not None else None))


# ---------------------------------------------------------------------------
# Hilbert series
# ---------------------------------------------------------------------------

def _leading_monomials(m):
    """Per component, the minimal leading exponents of im(m) + J*F0."""
    basis, key = module_gb(m.chart, m.target.degrees, m.columns)
    per = [[] for _ in range(m.rank0)]
    for v in basis:
        c, e = gb.leading(v, key)
        per[c].append(e)
    return per


@lru_cache(maxsize=None)
def _hn(gens):
    """Numerator of the Hilbert series of k[x]/(monomials), as {deg: coeff}."""
    gens = _minimalize(gens)
    if not gens:
        return ((0, 1),)
    m = gens[-1]
    rest = gens[:-1]
    a = dict(_hn(rest))
    colon = tuple(tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest)
    b = _hn(colon)
    d = sum(m)
    for k, v in b:
        a[k + d] = a.get(k + d, 0) - v
    return tuple(sorted((k, v) for k, v in a.items() if v))


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(gb.divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


@dataclass
class HilbertData:
    numerator: dict          # {degree: coefficient}, over (1 - T)^nvars
    nvars: int
    reduced_numerator: dict  # after cancelling (1 - T) factors
    dimension: int           # Krull dimension of the module
    polynomial: UniPoly
    stabilization: int

    def function(self, d):
        D = self.dimension
        if D == 0:
            return self.reduced_numerator.get(d, 0)
        return sum(a * binom(d - k + D - 1, D - 1) for k, a in self.reduced_numerator.items())

    def series_str(self):
        terms = sorted(self.numerator.items())
        num = " + ".join(f"{v}*T^{k}" for k, v in terms) or "0"
        return f"({num}) / (1 - T)^{self.nvars}"


def hilbert(m):
    """Hilbert series and polynomial of a graded module (standard grading)."""
    if not m.is_graded:
        raise ValueError("Hilbert series need a graded presentation")
    ring = m.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("Hilbert series are implemented for the standard grading only")
    per = _leading_monomials(m)
    num = {}
    for deg, lms in zip(m.target.degrees, per):
        for k, v in _hn(tuple(lms)):
            num[k + deg] = num.get(k + deg, 0) + v
    num = {k: v for k, v in num.items() if v}
    n = ring.nvars
    red = dict(num)
    D = n
    while D > 0 and red and sum(red.values()) == 0:
        red = _divide_one_minus_t(red)
        D -= 1
    if not red:
        D = 0
    poly = UniPoly()
    if D > 0:
        for k, a in red.items():
            poly = poly + UniPoly.binomial(D - 1 - k, D - 1) * a
    data = HilbertData(num, n, red, D, poly, 0)
    if red:
        s = max(red) - D + 1
        lower = min(red) - D
        while s - 1 >= lower and data.function(s - 1) == poly(s - 1):
            s -= 1
        data.stabilization = s
    return data


def _divide_one_minus_t(num):
    """num / (1 - T) for a Laurent polynomial with num(1) = 0."""
    lo, hi = min(num), max(num)
    out = {}
    acc = 0
    for k in range(lo, hi):
        acc += num.get(k, 0)
        if acc:
            out[k] = acc
    return out


def piece_dim(m, d):
    """dim_k of the degree-d piece of coker(m), by counting standard monomials."""
    if not m.is_graded:
        raise ValueError("graded pieces need a graded presentation")
    per = _leading_monomials(m)
    total = 0
    for deg, lms in zip(m.target.degrees, per):
        for e in m.ring.monomials_of_degree(d - deg):
            if not any(gb.divides(a, e) for a in lms):
                total += 1
    return total
