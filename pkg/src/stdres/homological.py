"""Duals, Ext(-, R), Fitting ideals, torsion, and the certificate predicates."""

import hashlib
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import gb
from .modules import (
    FreeModule, ModulePresentation, _Augmented, _prune, apply, free_resolution,
    homological_dimension_graded, kernel, module_gb, submodule_presentation, to_vec,
)
from .ring import Ideal


class PreconditionError(ValueError):
    """Input outside the domain of an operation (no verdict is produced)."""


class DecomposeFirst(PreconditionError):
    def __init__(self, what="torsion"):
        super().__init__(f"{what} needs an integral chart ring: decompose first")


@dataclass
class Verdict:
    name: str
    verdict: str                 # PASS, FAIL, N/A
    input_hash: str = ""
    witnesses: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "PASS"

    def as_dict(self):
        return {"name": self.name, "verdict": self.verdict, "input_hash": self.input_hash,
                "witnesses": self.witnesses}


def input_hash(m):
    return hashlib.sha256(str(m).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# matrix helpers
# ---------------------------------------------------------------------------

def transpose(chart, columns, target, source):
    """The transposed matrix source* <- target*, as a ModulePresentation matrix."""
    rows = [tuple(col[i] for col in columns) for i in range(target.rank)]
    return ModulePresentation(chart, source.dual(), tuple(rows), target.dual(), allow_zero=True)


def _identity(free, ring):
    z, one = ring.zero(), ring.one()
    return [tuple(one if i == j else z for i in range(free.rank)) for j in range(free.rank)]


def kernel_gens(mat):
    """Kernel generators of a matrix presentation, with twists."""
    if mat.target.rank == 0:
        return _prune(mat.chart, mat.source, _identity(mat.source, mat.ring))
    return kernel(mat)


def subquotient(chart, z_gens, b_vecs, ambient):
    """span(z_gens) / span(b_vecs) inside ``ambient`` (b must lie in span z)."""
    sub = submodule_presentation(chart, z_gens, ambient)
    gens = sub.embedding
    if not gens:
        return sub
    aug = _Augmented(chart, ambient.degrees, gens, sub.target.degrees)
    cols = list(sub.columns)
    for b in b_vecs:
        if not any(not chart.is_zero(p) for p in b):
            continue
        a = aug.lift(b)
        if a is None:
            raise ValueError("subquotient: relation not contained in the submodule")
        if any(a):
            cols.append(a)
    out = sub.with_columns(cols)
    return ModulePresentation(chart, out.target, out.columns, out.source, embedding=gens)


def is_zero_module(m):
    """coker(m) = 0 iff every basis vector lies in the image."""
    if m.rank0 == 0:
        return True
    basis, key = module_gb(m.chart, m.target.degrees, m.columns)
    z = m.ring.zero()
    for i in range(m.rank0):
        e = tuple(m.ring.one() if k == i else z for k in range(m.rank0))
        if gb.reduce(to_vec(e), basis, key, m.chart.field):
            return False
    return True


# ---------------------------------------------------------------------------
# dual and Ext
# ---------------------------------------------------------------------------

def dual(m):
    """Hom(M, R) = ker(matrix^T), presented by its generators in F0*.

    ``embedding`` of the result lists the generators as vectors of F0*."""
    t = transpose(m.chart, m.columns, m.target, m.source)
    gens, _ = kernel_gens(t)
    return submodule_presentation(m.chart, gens, m.target.dual())


@dataclass
class ExtModule:
    presentation: ModulePresentation
    index: int
    source: ModulePresentation

    def is_zero(self):
        return is_zero_module(self.presentation)


def ext(m, i, res=None):
    """Ext^i(M, R) as the i-th cohomology of the dualised resolution.

    The resolution defaults to the minimal one (graded) or a truncated greedy
    one (charts); any resolution of M gives an isomorphic answer."""
    if i < 0:
        raise ValueError("Ext index must be >= 0")
    if res is None:
        res = free_resolution(m, minimize=m.is_graded, max_length=i + 1)
    chart = m.chart
    graded = res.modules[0].twists is not None
    if i > res.length:
        F = FreeModule(0, () if graded else None)
        return ExtModule(ModulePresentation(chart, F, (), F), i, m)
    Fi = res.modules[i]
    if i + 1 <= res.length:
        t = transpose(chart, res.maps[i], res.modules[i], res.modules[i + 1])
        z, _ = kernel_gens(t)
    else:
        z = _identity(Fi, chart.poly)
    b = []
    if i >= 1:
        b = [tuple(col[r] for col in res.maps[i - 1]) for r in range(res.modules[i - 1].rank)]
    pres = subquotient(chart, z, b, Fi.dual())
    return ExtModule(pres, i, m)


# ---------------------------------------------------------------------------
# Fitting ideals
# ---------------------------------------------------------------------------

def _det(mat, ring):
    """Determinant by expansion along rows, memoised on used-column sets."""
    k = len(mat)
    memo = {}

    def rec(row, used):
        if row == k:
            return ring.one()
        if used in memo:
            return memo[used]
        acc = ring.zero()
        sign = 1
        for c in range(k):
            if used >> c & 1:
                continue
            a = mat[row][c]
            if a:
                sub = rec(row + 1, used | (1 << c))
                if sub:
                    acc = acc + a * sub if sign > 0 else acc - a * sub
            sign = -sign
        memo[used] = acc
        return acc
    return rec(0, 0)


def minors(rows, k, chart):
    """All nonzero k x k minors (reduced mod the chart relations), deduplicated."""
    ring = chart.poly
    if k <= 0:
        return [ring.one()]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if k > nrows or k > ncols:
        return []
    out = []
    seen = set()
    for rs in combinations(range(nrows), k):
        for cs in combinations(range(ncols), k):
            sub = [[rows[r][c] for c in cs] for r in rs]
            d = chart.reduce(_det(sub, ring))
            if d and d not in seen:
                seen.add(d)
                out.append(d)
    return out


@dataclass
class FittingIdeal:
    ideal: Ideal        # includes the chart relations
    index: int
    source: ModulePresentation = None

    def is_unit(self):
        return self.ideal.is_unit()

    def is_zero(self):
        """Zero in the chart ring (i.e. contained in the chart relations)."""
        chart = self.source.chart
        return all(chart.is_zero(g) for g in self.ideal.gens)

    def generators(self):
        """Reduced GB, with generators lying in the relations removed."""
        chart = self.source.chart
        return [g for g in self.ideal.gb if not chart.is_zero(g)]


def fitting(m, j):
    """Fitt_j(M): ideal of (r0 - j)-minors of the presentation matrix."""
    if j < 0:
        raise ValueError("Fitting index must be >= 0")
    chart = m.chart
    k = m.rank0 - j
    if k <= 0:
        return FittingIdeal(Ideal(chart.poly, [chart.poly.one()]), j, m)
    gens = minors(m.rows(), k, chart)
    return FittingIdeal(chart.ideal(gens), j, m)


def generic_rank(m):
    """Smallest j with Fitt_j(M) nonzero: the rank at the generic point."""
    for j in range(m.rank0 + 1):
        if not fitting(m, j).is_zero():
            return j
    return m.rank0


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

@dataclass
class TorsionSplit:
    torsion: ModulePresentation    # ker(M -> M**) presented by its generators in F0
    quotient: ModulePresentation   # M / torsion, a presentation on F0


def torsion_submodule(m):
    """Torsion of M over an integral chart as ker(M -> M**)."""
    if not m.chart.integral:
        raise DecomposeFirst()
    d = dual(m)
    ks = d.embedding or ()
    if ks:
        G = d.target  # twists of the generators of M*
        mat = transpose(m.chart, ks, m.target.dual(), G)
        u, _ = kernel_gens(mat)
    else:
        u = _identity(m.target, m.ring)
    return _split(m, u)


def _split(m, u):
    chart = m.chart
    u = [tuple(chart.reduce(p) for p in c) for c in u]
    u = [c for c in u if any(c)]
    tors = subquotient(chart, u, m.columns, m.target)
    quot = _presentation_on(m, u)
    return TorsionSplit(tors, quot)


def _presentation_on(m, cols):
    pruned, tw = _prune(m.chart, m.target, list(cols))
    src = FreeModule(len(pruned), None if tw is None else tuple(tw))
    return ModulePresentation(m.chart, m.target, tuple(pruned), src)


def torsion_free_quotient(m):
    return torsion_submodule(m).quotient


def module_quotient(m, cols, g):
    """{v in F0 : g v in span(cols)} as generators."""
    chart = m.chart
    ring = chart.poly
    r = m.rank0
    z = ring.zero()
    big = [tuple(g if k == i else z for k in range(r)) for i in range(r)] + list(cols)
    free = FreeModule(len(big), None if m.target.twists is None else
                      tuple(list(m.target.twists[i] - g.degree() for i in range(r))
                            + [_twist_of(c, m.target) for c in cols]))
    mat = ModulePresentation(chart, m.target, tuple(big), free, allow_zero=True)
    syz, _ = kernel(mat)
    return [tuple(c[:r]) for c in syz if any(c[:r])]


def _twist_of(col, free):
    for p, t in zip(col, free.twists):
        if p:
            return t - p.degree()
    return 0


def same_submodule(m, a, b):
    """Do the column lists a and b span the same submodule of F0 (mod J)?"""
    ba, _ = module_gb(m.chart, m.target.degrees, a)
    bb, _ = module_gb(m.chart, m.target.degrees, b)
    return ba == bb


def torsion_by_saturation(m, g=None):
    """Independent torsion oracle: (im : g^infinity)/im for g with M_g free."""
    if not m.chart.integral:
        raise DecomposeFirst()
    if g is None:
        r = generic_rank(m)
        fit = fitting(m, r)
        gens = fit.generators()
        if not gens:
            raise ValueError("no nonzero element in the generic Fitting ideal")
        g = gens[-1]
    cur = list(m.columns)
    while True:
        nxt = module_quotient(m, cur, g)
        nxt = [tuple(m.chart.reduce(p) for p in c) for c in nxt]
        nxt = [c for c in nxt if any(c)]
        if same_submodule(m, cur, nxt):
            break
        cur = nxt
    return _split(m, cur)


# ---------------------------------------------------------------------------
# double dual
# ---------------------------------------------------------------------------

def double_dual_quotient(m):
    """kappa = M**/M for torsion-free M (image of M in M** via F0 -> G*)."""
    chart = m.chart
    d = dual(m)
    ks = d.embedding or ()
    G = d.target
    if not ks:
        F = FreeModule(0, () if m.is_graded else None)
        return ModulePresentation(chart, F, (), F)
    st = transpose(chart, d.columns, G, d.source)
    if d.columns:
        z, _ = kernel_gens(st)
    else:
        z = _identity(G.dual(), chart.poly)
    img = [tuple(k[i] for k in ks) for i in range(m.rank0)]  # F0 basis -> G*
    return subquotient(chart, z, img, G.dual())


def finite_length(m):
    """dim_k of coker(m) when finite (None otherwise); works without grading."""
    basis, key = module_gb(m.chart, m.target.degrees, m.columns)
    nv = m.ring.nvars
    per = [[] for _ in range(m.rank0)]
    for v in basis:
        c, e = gb.leading(v, key)
        per[c].append(e)
    total = 0
    for lms in per:
        caps = []
        for i in range(nv):
            pure = [e[i] for e in lms if e[i] and all(a == 0 for j, a in enumerate(e) if j != i)]
            if not pure:
                return None
            caps.append(min(pure))
        total += _count_standard(lms, caps)
    return total


def _count_standard(lms, caps):
    count = 0

    def rec(i, acc):
        nonlocal count
        if i == len(caps):
            if not any(gb.divides(a, acc) for a in lms):
                count += 1
            return
        for k in range(caps[i]):
            rec(i + 1, acc + (k,))
    rec(0, ())
    return count


# ---------------------------------------------------------------------------
# homological dimension and certificates
# ---------------------------------------------------------------------------

def projective_dimension(m):
    """hd of M.  Graded: minimal resolution length.  Charts: the largest i
    with Ext^i(M, R) nonzero (resolution truncated past the number of
    variables, so non-minimal generating sets cannot stall it)."""
    if m.is_graded:
        return homological_dimension_graded(m)
    nv = m.ring.nvars
    res = free_resolution(m, minimize=False, max_length=nv + 1)
    top = 0
    for i in range(min(res.length, nv) + 1):
        if not ext(m, i, res).is_zero():
            top = i
    return top


homological_dimension = projective_dimension


def is_invertible_ideal(chart, gens):
    """Locally principal and nonzero in an integral ring: Fitt_1 of the ideal
    as a module is the unit ideal and some generator is nonzero."""
    gens = [g for g in (chart.reduce(p) for p in gens) if g]
    if not gens:
        return False
    if not chart.integral:
        raise DecomposeFirst("invertibility test")
    im = ModulePresentation.ideal_module(gens, chart)
    return fitting(im, 1).is_unit()


def lemma2_certificate(m):
    """Checks (hd = 1) iff (Fitt_0 invertible), each side computed separately."""
    h = input_hash(m)
    fit0 = fitting(m, 0)
    if fit0.is_unit():
        raise PreconditionError("zero module: Fitt_0 is the unit ideal")
    if fit0.is_zero():
        raise PreconditionError("support of codimension 0: Fitt_0 vanishes")
    gens = fit0.generators()
    inv = is_invertible_ideal(m.chart, gens)
    hd = projective_dimension(m)
    ok = (hd == 1) == inv
    return Verdict("lemma2", "PASS" if ok else "FAIL", h, {
        "fitt0": [str(g) for g in gens],
        "fitt0_invertible": inv,
        "hd": hd,
    })


def local_freeness_certificate(m, r):
    """PASS iff Fitt_r = (1) and Fitt_{r-1} = 0."""
    if r < 0:
        raise ValueError("rank must be >= 0")
    top = fitting(m, r)
    below_zero = True if r == 0 else fitting(m, r - 1).is_zero()
    ok = top.is_unit() and below_zero
    w = {"rank": r, "fitt_r_unit": top.is_unit(), "fitt_r_minus_1_zero": below_zero}
    if not top.is_unit():
        w["fitt_r"] = [str(g) for g in top.generators()]
    return Verdict("local_freeness", "PASS" if ok else "FAIL", input_hash(m), w)


__all__ = [
    "PreconditionError", "DecomposeFirst", "Verdict", "dual", "ext", "ExtModule",
    "fitting", "FittingIdeal", "generic_rank", "torsion_submodule", "torsion_by_saturation",
    "torsion_free_quotient", "double_dual_quotient", "projective_dimension",
    "homological_dimension", "lemma2_certificate", "local_freeness_certificate",
    "is_invertible_ideal", "is_zero_module", "finite_length", "subquotient", "transpose",
    "apply",
]
