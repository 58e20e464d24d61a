"""Blowups as Rees algebras and chart atlases; strict transforms; the
zero-fiber algebra model and the ev0 comparison map.

A chart is an affine ring ``poly / relations`` together with the images of
the homogeneous coordinates of the original projective space (so any graded
presentation pulls back by substitution) and the images of its parent
chart's variables.
"""

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations_with_replacement

from . import gb
from .homological import (
    Verdict, fitting, same_submodule, torsion_by_saturation, torsion_submodule,
)
from .linalg import Subspace, nullspace
from .modules import ChartRing, ModulePresentation, module_gb, to_vec
from .ring import Ideal, PolyRing


class DegenerateBlowup(ValueError):
    """Blowing up the unit or the zero ideal (the morphism is the identity)."""


# ---------------------------------------------------------------------------
# charts and atlases
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Chart:
    ring: ChartRing
    images: tuple            # homogeneous coordinates -> polys of ring.poly
    label: str
    level: int = 0
    index: int = 0           # generator index inside its atlas
    parent: "Chart" = None
    parent_images: tuple = None  # parent ring variables -> polys of ring.poly
    exceptional: tuple = ()      # exceptional generators of earlier levels, pulled forward
    center: tuple = None         # generators (on the parent) of the ideal blown up to make it

    @property
    def poly(self):
        return self.ring.poly

    def pull(self, p, from_parent=False):
        imgs = self.parent_images if from_parent else self.images
        return self.ring.reduce(p.map_to(imgs, self.poly))

    def pullback(self, m, from_parent=False):
        """Base change of a presentation to this chart."""
        imgs = self.parent_images if from_parent else self.images
        return m.map(imgs, self.ring)

    def describe(self):
        return {"label": self.label, "ring": self.ring.describe(),
                "coordinates": [str(p) for p in self.images]}


def standard_atlas(ring):
    """The affine charts x_k = 1 of Proj of a standard graded polynomial ring."""
    if not ring.homogeneous:
        raise ValueError("standard atlas needs a homogeneous coordinate ring")
    charts = []
    for k, nm in enumerate(ring.names):
        names = [n for n in ring.names if n != nm]
        poly = PolyRing(names)
        imgs = tuple(poly.one() if n == nm else poly.var(n) for n in ring.names)
        charts.append(Chart(ChartRing(poly, label=f"{nm}=1"), imgs, f"{nm}=1", 0, k))
    return ChartAtlas(charts, level=0)


@dataclass(eq=False)
class ChartAtlas:
    charts: list
    level: int = 0
    base: Chart = None
    transitions: dict = dc_field(default_factory=dict)  # (a, b) -> {var: (num, den)}

    def __post_init__(self):
        if not self.charts:
            raise ValueError("an atlas needs at least one chart")

    def __len__(self):
        return len(self.charts)

    def __iter__(self):
        return iter(self.charts)


# ---------------------------------------------------------------------------
# Rees algebras
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ReesPresentation:
    base: ChartRing
    generators: tuple        # f_0..f_k (reduced GB of I in the chart ring)
    ambient: PolyRing        # base variables + T_0..T_k
    tnames: tuple
    ideal: Ideal             # defining ideal in ``ambient`` (contains the base relations)

    def check_substitution(self):
        """T_j -> f_j kills every generator (mod the base relations)."""
        A = self.base.poly
        imgs = [A.var(n) for n in A.names] + list(self.generators)
        for g in self.ideal.gens:
            if not self.base.is_zero(g.map_to(imgs, A)):
                return False
        return True

    def is_t_homogeneous(self):
        A = self.base.poly
        nb = A.nvars
        for g in self.ideal.gb:
            if len({sum(e[nb:]) for e in g.coeffs}) > 1:
                return False
        return True

    def defining_polys(self):
        """Generators not coming from the base relations."""
        return [g for g in self.ideal.gb if any(any(e[self.base.poly.nvars:]) for e in g.coeffs)]


def ideal_generators(chart, gens):
    """Reduced GB of (gens) in the chart ring, minus elements of the relations."""
    ideal = chart.ideal(gens)
    return tuple(chart.reduce(g) for g in ideal.gb if not chart.is_zero(g))


def rees(chart, gens, tstem="T"):
    """Rees algebra of the ideal (gens) of ``chart`` by eliminating s from
    (T_j - s f_j) + relations."""
    chart = ChartRing.of(chart)
    f = ideal_generators(chart, gens)
    if not f:
        raise DegenerateBlowup("cannot blow up the zero ideal")
    if chart.ideal(f).is_unit():
        raise DegenerateBlowup("blowing up the unit ideal is the identity")
    A = chart.poly
    tn = []
    for j in range(len(f)):
        nm = f"{tstem}{j}"
        while nm in A.names:
            nm = "_" + nm
        tn.append(nm)
    s = A.fresh_name("_s")
    big = A.extend([s] + tn, weights=[0] + [1] * len(tn))
    sv = big.var(s)
    gens_ = [big.var(t) - sv * fj.change_ring(big) for t, fj in zip(tn, f)]
    gens_ += [g.change_ring(big) for g in chart.relations.gens]
    elim = Ideal(big, gens_).eliminate([s])
    return ReesPresentation(chart, f, elim.ring, tuple(tn), elim)


def _linear_var(g, candidates):
    """If g = c*v - h with v in candidates, c constant, v not in h: (v, h)."""
    ring = g.ring
    for v in candidates:
        i = ring.index(v)
        unit = tuple(1 if k == i else 0 for k in range(ring.nvars))
        if unit not in g.coeffs:
            continue
        if any(e[i] for e in g.coeffs if e != unit):
            continue
        c = g.coeffs[unit]
        h = -(g - ring.monomial(unit, c)) * ring.field.inv(c)
        return v, h
    return None


def _simplify(poly, relations, keep):
    """Eliminate variables (outside ``keep``) that some relation expresses
    linearly through the others.

    Returns (new ring, remaining relations, {old name: image in new ring})."""
    subst = {n: poly.var(n) for n in poly.names}
    rels = list(relations)
    while True:
        basis = Ideal(poly, rels).gb
        hit = None
        for g in basis:
            cand = [n for n in poly.names if n not in keep and n in g.variables()]
            hit = _linear_var(g, cand)
            if hit:
                break
        if hit is None:
            return poly, list(basis), subst
        v, h = hit
        new = PolyRing([n for n in poly.names if n != v])
        img = [h.change_ring(new) if n == v else new.var(n) for n in poly.names]
        rels = [r for r in (r.map_to(img, new) for r in basis) if r]
        subst = {k: q.map_to(img, new) for k, q in subst.items()}
        poly = new


def charts(r, parent=None, level=1):
    """One chart per generator f_j: the Rees ideal dehomogenised at T_j = 1,
    with base variables expressed through the others eliminated."""
    A = r.base.poly
    k = len(r.generators)
    parent = parent or Chart(r.base, tuple(A.var(n) for n in A.names), "base")
    out = []
    for j in range(k):
        unames = [f"u{level}_{i}" for i in range(k) if i != j]
        poly = PolyRing(list(A.names) + unames)
        imgs = []
        for n in r.ambient.names:
            if n in A.names:
                imgs.append(poly.var(n))
            else:
                i = r.tnames.index(n)
                imgs.append(poly.one() if i == j else poly.var(f"u{level}_{i}"))
        rels = [g.map_to(imgs, poly) for g in r.ideal.gens]
        rels = [g for g in rels if g]
        new_poly, new_rels, subst = _simplify(poly, rels, set(unames))
        to_new = [subst[n] for n in poly.names]
        chart_ring = ChartRing(new_poly, new_rels, integral=r.base.integral,
                               label=f"{parent.label}|{j}")
        base_imgs = tuple(chart_ring.reduce(poly.var(n).map_to(to_new, new_poly)) for n in A.names)
        images = tuple(chart_ring.reduce(p.map_to(base_imgs, new_poly)) for p in parent.images)
        exc = tuple(chart_ring.reduce(e.map_to(base_imgs, new_poly)) for e in parent.exceptional)
        fj = chart_ring.reduce(r.generators[j].map_to(base_imgs, new_poly))
        out.append(Chart(chart_ring, images, f"{parent.label}|{j}", level, j, parent,
                         base_imgs, exc + (fj,)))
    atlas = ChartAtlas(out, level, parent)
    atlas.transitions = _transitions(atlas, r, level)
    return atlas


def _transitions(atlas, r, level):
    out = {}
    A = r.base.poly
    for a in atlas.charts:
        for b in atlas.charts:
            if a is b:
                continue
            one = b.poly.one()
            mp = {}
            for n in a.poly.names:
                if n in A.names:
                    mp[n] = (b.parent_images[A.index(n)], one)
                else:
                    i = int(n.split("_")[-1])
                    num = one if i == b.index else b.poly.var(f"u{level}_{i}")
                    mp[n] = (num, b.poly.var(f"u{level}_{a.index}"))
            out[(a.index, b.index)] = mp
    return out


def exceptional_generator(chart):
    return chart.exceptional[-1] if chart.exceptional else chart.poly.one()


def eval_fraction(p, images, ring):
    """p evaluated at fractions images[name] = (num, den): returns (N, D)."""
    src = p.ring
    tops = [max((e[i] for e in p.coeffs), default=0) for i in range(src.nvars)]
    D = ring.one()
    for i, n in enumerate(src.names):
        if tops[i]:
            D = D * images[n][1] ** tops[i]
    N = ring.zero()
    for e, c in p.coeffs.items():
        term = ring.constant(c)
        for i, n in enumerate(src.names):
            num, den = images[n]
            if e[i]:
                term = term * num ** e[i]
            if tops[i] - e[i]:
                term = term * den ** (tops[i] - e[i])
        N = N + term
    return N, D


def check_transitions(atlas):
    """a -> b -> a is the identity on a's coordinates (as fractions mod relations)."""
    for (a, b), mp in atlas.transitions.items():
        back = atlas.transitions[(b, a)]
        ca = atlas.charts[a]
        for n in ca.poly.names:
            num, den = mp[n]
            n1, d1 = eval_fraction(num, back, ca.poly)
            n2, d2 = eval_fraction(den, back, ca.poly)
            # n/1 == (n1/d1) / (n2/d2)
            lhs = ca.poly.var(n) * d1 * n2
            rhs = n1 * d2
            if not ca.ring.is_zero(lhs - rhs):
                return False
    return True


def check_principal(chart, gens_on_parent):
    """I * O_chart = (f_j) with f_j nonzero (a nonzerodivisor: the ring is a domain)."""
    f = exceptional_generator(chart)
    if chart.ring.is_zero(f):
        return False
    pulled = [chart.pull(g, from_parent=True) for g in gens_on_parent]
    return chart.ring.ideal(pulled) == chart.ring.ideal([f])


def transport_ideal(atlas, a, b, gens):
    """Ideal generated on chart b by the transition images of gens (chart a),
    saturated by the transition denominator."""
    mp = atlas.transitions[(a, b)]
    cb = atlas.charts[b]
    out = [eval_fraction(g, mp, cb.poly)[0] for g in gens]
    den = cb.poly.var(f"u{atlas.level}_{a}")
    return cb.ring.ideal(out).saturate(cb.ring.ideal([den]))


def overlap_agreement(atlas, per_chart):
    """Per-chart ideals (lists of generators) agree on overlaps after
    saturating by the transition denominator."""
    for (a, b) in atlas.transitions:
        cb = atlas.charts[b]
        den = cb.poly.var(f"u{atlas.level}_{a}")
        moved = transport_ideal(atlas, a, b, per_chart[a])
        own = cb.ring.ideal(per_chart[b]).saturate(cb.ring.ideal([den]))
        if moved != own:
            return False
    return True


# ---------------------------------------------------------------------------
# strict transforms
# ---------------------------------------------------------------------------

@dataclass
class StrictTransform:
    chart: Chart
    pulled: ModulePresentation
    quotient: ModulePresentation
    torsion: ModulePresentation
    oracle_agrees: bool


def pullback_strict(m, atlas, from_parent=True):
    """sigma^* M / torsion on every chart of the atlas.

    The torsion is computed as ker(M -> M**) and cross-checked against the
    saturation oracle (im : g^infinity) for g in the generic Fitting ideal."""
    out = []
    for c in atlas.charts:
        pulled = c.pullback(m, from_parent=from_parent)
        split = torsion_submodule(pulled)
        sat = torsion_by_saturation(pulled)
        agree = same_submodule(pulled, split.quotient.columns, sat.quotient.columns)
        out.append(StrictTransform(c, pulled, split.quotient, split.torsion, agree))
    return out


def strict_overlap_agreement(atlas, transforms, r):
    """Fitt_r of the strict transforms agree on overlaps."""
    per = [fitting(t.quotient, r).generators() or [t.chart.poly.zero()] for t in transforms]
    per = [[g for g in gens if g] for gens in per]
    return overlap_agreement(atlas, per)


# ---------------------------------------------------------------------------
# zero-fiber algebra
# ---------------------------------------------------------------------------

def with_parameter(ring, stem="t"):
    """A[t] with t of weight 0 (the internal grading ignores t)."""
    name = stem
    while name in ring.names:
        name = "_" + name
    big = PolyRing(list(ring.names) + [name], weights=list(ring.weights) + [0],
                   homogeneous=True)
    return big, name


@dataclass
class FiberAlgebraModel:
    """Graded data of J = I*A[t] + (t) over A[t], t of weight 0.

    ``assoc[s][d]``  = dim (J^s / J^{s+1})_d   (associated-graded form)
    ``summand[s][d]`` = sum_q dim (I^{s-q} / I^{s-q+1})_d
    ``tfiber[s][d]`` = dim (J^s / t J^s)_d     (Rees(J) modulo t)
    """

    ring: PolyRing
    ideal: Ideal
    big: PolyRing
    tname: str
    smax: int
    dmax: int
    assoc: list
    summand: list
    tfiber: list

    @property
    def flat(self):
        return self.assoc == self.summand

    @cached_property
    def rees(self):
        """Rees presentation of J over A[t] (computed on demand)."""
        t = self.big.var(self.tname)
        gens = [g.change_ring(self.big) for g in self.ideal.gb] + [t]
        ungraded = PolyRing(self.big.names, weights=self.big.weights)
        return rees(ChartRing(ungraded), [g.change_ring(ungraded) for g in gens])

    def table(self):
        rows = []
        for s in range(self.smax + 1):
            rows.append({"s": s, "assoc": self.assoc[s], "summands": self.summand[s],
                         "t_fiber": self.tfiber[s]})
        return rows


def _quot_dims(ideal, dmax):
    return [ideal.quotient_dim(d) for d in range(dmax + 1)]


def fiber_algebra(ring, ideal, smax=5, dmax=6):
    """Dimension tables of the zero-fiber algebra for the ideal I of A."""
    if isinstance(ideal, (list, tuple)):
        ideal = Ideal(ring, list(ideal))
    if ideal.is_zero() or ideal.is_unit():
        raise DegenerateBlowup("fiber algebra needs a proper nonzero ideal")
    big, tn = with_parameter(ring)
    t = big.var(tn)
    J = Ideal(big, [g.change_ring(big) for g in ideal.gb] + [t])
    Jp = [Ideal(big, [big.one()])]
    for _ in range(smax + 1):
        Jp.append(Jp[-1] * J)
    Ip = [Ideal(ring, [ring.one()])]
    for _ in range(smax + 1):
        Ip.append(Ip[-1] * ideal)
    jq = [_quot_dims(Jk, dmax) for Jk in Jp]        # dim (A[t]/J^k)_d
    iq = [_quot_dims(Ik, dmax) for Ik in Ip]        # dim (A/I^k)_d
    tj = [_quot_dims(Ideal(big, [t * g for g in Jk.gb]), dmax) for Jk in Jp[:smax + 1]]
    assoc, summand, tfiber = [], [], []
    for s in range(smax + 1):
        assoc.append([jq[s + 1][d] - jq[s][d] for d in range(dmax + 1)])
        summand.append([sum(iq[s - q + 1][d] - iq[s - q][d] for q in range(s + 1))
                        for d in range(dmax + 1)])
        tfiber.append([tj[s][d] - jq[s][d] for d in range(dmax + 1)])
    return FiberAlgebraModel(ring, ideal, big, tn, smax, dmax, assoc, summand, tfiber)


# ---------------------------------------------------------------------------
# ev0 on the graded model
# ---------------------------------------------------------------------------

class _Coords:
    """Coordinates on E_d (standard monomials of a graded presentation)."""

    def __init__(self, m):
        self.m = m
        self.basis, self.key = module_gb(m.chart, m.target.degrees, m.columns)
        self.lms = [gb.leading(v, self.key) for v in self.basis]
        self._index = {}
        self._spans = {}

    def index(self, d):
        if d not in self._index:
            ring = self.m.ring
            std = []
            for c, deg in enumerate(self.m.target.degrees):
                for e in ring.monomials_of_degree(d - deg):
                    if not any(c2 == c and gb.divides(e2, e) for c2, e2 in self.lms):
                        std.append((c, e))
            std.sort(key=self.key, reverse=True)
            self._index[d] = {t: i for i, t in enumerate(std)}
        return self._index[d]

    def vector(self, vec, d):
        idx = self.index(d)
        nf = gb.reduce(vec, self.basis, self.key, self.m.chart.field)
        out = [0] * len(idx)
        for t, c in nf.items():
            out[idx[t]] = c
        return out


def _products(gens, k):
    ring = gens[0].ring if gens else None
    out = []
    for combo in combinations_with_replacement(range(len(gens)), k):
        p = ring.one()
        for i in combo:
            p = p * gens[i]
        out.append(p)
    return out


def _span_in_degree(coords, polys, d):
    """Vectors of p * mono * e_i, p in polys, landing in degree d."""
    m = coords.m
    ring = m.ring
    vecs = []
    for p in polys:
        key = (tuple(sorted(p.coeffs.items())), d)
        if key in coords._spans:
            vecs += coords._spans[key]
            continue
        start = len(vecs)
        for i, deg in enumerate(m.target.degrees):
            for e in ring.monomials_of_degree(d - p.degree() - deg):
                col = tuple((p * ring.monomial(e)) if k == i else ring.zero()
                            for k in range(m.rank0))
                vecs.append(coords.vector(to_vec(col), d))
        coords._spans[key] = vecs[start:]
    return vecs


@dataclass
class EvModel:
    """E over A with the ideal I; J^s E[t] truncated to t-degrees <= s."""

    module: ModulePresentation
    ideal_gens: tuple
    smax: int = 3
    dmax: int = 5
    drop_relation: bool = False  # negative control: drop one generator of J^{s+1}


def ev_kernel_witness(model, s, d, coords=None):
    """Kernel of ev0 on V_s/V_{s+1} in internal degree d (None if zero)."""
    coords = coords or _Coords(model.module)
    n = len(coords.index(d))
    if n == 0:
        return None
    gens = list(model.ideal_gens)
    blocks = s + 1
    width = n * blocks

    def place(vec, q):
        out = [0] * width
        out[q * n:(q + 1) * n] = vec
        return out

    def v_space(level, drop=False):
        rows = []
        jg = [(q, P) for q in range(level + 1) for P in _products(gens, level - q)]
        if drop:
            pure = [g for g in jg if g[0] == 0]
            jg = [g for g in jg if g is not pure[-1]]
        for q, P in jg:
            span = _span_in_degree(coords, [P], d)
            for shift in range(blocks - q):
                rows += [place(v, q + shift) for v in span]
        return Subspace(width, rows)

    Vs = v_space(s)
    Vs1 = v_space(s + 1, drop=model.drop_relation)
    T = []
    for q in range(blocks):
        S = _span_in_degree(coords, _products(gens, s - q + 1), d)
        T += [place(v, q) for v in S]
    a, b = Vs.rows, Subspace(width, T).rows
    if not a or not b:
        return None
    # V_{s+1} lies in both Vs and T, so the kernel is inside it iff the
    # dimensions of Vs /\ T and V_{s+1} agree
    meet = len(a) + len(b) - Subspace(width, a + b).dim
    if meet == Vs1.dim:
        return None
    # find an explicit witness in the nullspace of [Vs; -T]
    mat = [[a[i][c] if i < len(a) else -b[i - len(a)][c] for i in range(len(a) + len(b))]
           for c in range(width)]
    for z in nullspace(mat, len(a) + len(b)):
        v = [sum(z[i] * a[i][c] for i in range(len(a))) for c in range(width)]
        if any(v) and not Vs1.contains(v):
            return _describe(coords, v, d, n)
    return None


def _describe(coords, v, d, n):
    idx = coords.index(d)
    names = coords.m.ring.names
    rev = {i: t for t, i in idx.items()}
    parts = []
    for k, c in enumerate(v):
        if c:
            q, i = divmod(k, n)
            comp, e = rev[i]
            mono = "*".join(f"{nm}^{a}" if a > 1 else nm for nm, a in zip(names, e) if a) or "1"
            parts.append(f"({c})*{mono}*e{comp}*t^{q}")
    return " + ".join(parts)


def ev_monomorphism_check(model, principal=False):
    """PASS iff ev0 is injective on every V_s/V_{s+1} in the tested degrees."""
    if model is None:
        return Verdict("ev0_monomorphism", "N/A", witnesses={"reason": "no additional-component model"})
    if principal:
        return Verdict("ev0_monomorphism", "PASS",
                       witnesses={"reason": "principal centre: trivial additional component"})
    coords = _Coords(model.module)
    checked = 0
    for s in range(model.smax + 1):
        for d in range(model.dmax + 1):
            w = ev_kernel_witness(model, s, d, coords)
            checked += 1
            if w is not None:
                return Verdict("ev0_monomorphism", "FAIL",
                               witnesses={"s": s, "degree": d, "kernel": w})
    return Verdict("ev0_monomorphism", "PASS",
                   witnesses={"pieces_checked": checked, "smax": model.smax, "dmax": model.dmax})
