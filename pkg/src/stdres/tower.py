"""The tower of blowups that turns a torsion-free sheaf into a locally free one.

For a minimal resolution 0 -> F_L -> ... -> F_0 -> E -> 0 cut into triples
0 -> W_k -> F_{k-1} -> W_{k-1} -> 0, step i (i = 1..L) works with
D = d_{L-i+1} pulled back to the current atlas, so M = coker(D) is the pull
back of W_{L-i}.  The step ideal is Fitt_0 Ext^1(M); blowing it up makes the
image N of D^T locally free, and W' = sigma^* W_{L-i} / torsion.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .blowup import (
    Chart, ChartAtlas, DegenerateBlowup, EvModel, charts, check_principal, check_transitions,
    exceptional_generator, ideal_generators, rees, standard_atlas,
)
from .homological import (
    PreconditionError, Verdict, ext, fitting, generic_rank, is_zero_module,
    lemma2_certificate, local_freeness_certificate, projective_dimension, same_submodule,
    torsion_by_saturation, torsion_submodule,
)
from .homological import kernel_gens, transpose
from .modules import (
    FreeModule, FreeResolutionData, ModulePresentation, free_resolution, pad_resolution,
    segment_triples, submodule_presentation,
)


class CertificateFailure(RuntimeError):
    """A certificate failed inside the pipeline; carries the witness."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# plan
# ---------------------------------------------------------------------------

@dataclass
class Plan:
    module: ModulePresentation
    resolution: FreeResolutionData
    triples: list
    rank: int

    @property
    def length(self):
        return self.resolution.length


def plan(m, resolution=None):
    """Minimal resolution and segment triples of a torsion-free graded module."""
    if not m.is_graded:
        raise PreconditionError("the input module must be graded")
    if is_zero_module(m):
        raise PreconditionError("the input module is zero")
    tors = torsion_submodule(m).torsion
    if not is_zero_module(tors):
        raise PreconditionError("the input module has torsion")
    res = resolution or free_resolution(m, minimize=True)
    return Plan(m, res, segment_triples(res), generic_rank(m))


# ---------------------------------------------------------------------------
# steps
# ---------------------------------------------------------------------------

@dataclass
class ChartStep:
    """What happens over one chart of the current atlas during a step."""

    chart: Chart
    ideal: tuple              # generators of I_i on this chart (reduced GB)
    identity: bool
    children: list            # charts of the new atlas lying over this one
    certificates: list = dc_field(default_factory=list)   # one dict per child
    h_module: ModulePresentation = None                   # H = im(D^T) on the old chart


@dataclass
class ResolutionStep:
    index: int
    differential: int         # k with D = d_k
    chart_steps: list
    atlas: ChartAtlas         # the new atlas
    homogeneous_ideal: object = None   # I_1 on the coordinate ring (step 1 only)
    fiber_model: EvModel = None

    @property
    def tag(self):
        return "identity" if all(cs.identity for cs in self.chart_steps) else "blowup"

    @property
    def principal(self):
        return all(cs.identity or len(cs.ideal) == 1 for cs in self.chart_steps)

    def verdicts(self):
        out = []
        for cs in self.chart_steps:
            for cert in cs.certificates:
                out.extend(v for v in cert.values() if isinstance(v, Verdict))
        return out

    def passed(self):
        return all(v.verdict in ("PASS", "N/A") for v in self.verdicts())


@dataclass
class FinalChart:
    chart: Chart
    module: ModulePresentation     # E-hat on the chart
    certificate: Verdict


@dataclass
class ResolutionTower:
    module: ModulePresentation
    plan: Plan
    steps: list
    final: list                    # FinalChart per chart of the last atlas
    rank: int

    @property
    def length(self):
        return len(self.steps)

    def final_atlas(self):
        return [f.chart for f in self.final]

    def passed(self):
        return all(s.passed() for s in self.steps) and all(f.certificate.passed for f in self.final)


def _pmap(fn, items, threads):
    items = list(items)
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def step_ideal(w, chart):
    """I = Fitt_0 Ext^1(w) on a chart (unit when the Ext vanishes).

    Returns (generators, Ext^1 presentation)."""
    e1 = ext(w, 1)
    fit = fitting(e1.presentation, 0)
    if fit.is_unit():
        return (chart.poly.one(),), e1
    return ideal_generators(chart.ring, fit.generators()), e1


def _identity_child(c, level):
    ring = c.ring
    return Chart(ring, c.images, f"{c.label}|id", level, 0, c,
                 tuple(ring.poly.var(n) for n in ring.poly.names),
                 c.exceptional + (ring.poly.one(),))


def _rank_of_matrix(d):
    """Generic rank of the matrix d (rank F_target - rank coker)."""
    return d.rank0 - generic_rank(d)


def _child_certificates(child, d_graded, e1_pres, nrank, wrank, old_ideal):
    """Certificates on one new chart after the blowup."""
    out = {}
    pulled_ext = child.pullback(e1_pres, from_parent=True)
    if is_zero_module(pulled_ext):
        out["lemma2"] = Verdict("lemma2", "N/A", witnesses={"reason": "Ext^1 vanishes on this chart"})
        out["fitt0_invertible"] = Verdict("fitt0_invertible", "N/A",
                                          witnesses={"reason": "Ext^1 vanishes on this chart"})
    else:
        lem = lemma2_certificate(pulled_ext)
        inv = lem.witnesses["fitt0_invertible"]
        hd = lem.witnesses["hd"]
        out["fitt0_invertible"] = Verdict("fitt0_invertible", "PASS" if inv else "FAIL",
                                          lem.input_hash, {"fitt0": lem.witnesses["fitt0"]})
        # the step needs both sides true, not just the equivalence
        ok = lem.passed and inv and hd == 1
        out["lemma2"] = Verdict("lemma2", "PASS" if ok else "FAIL", lem.input_hash, lem.witnesses)
    if old_ideal is not None:
        principal = check_principal(child, old_ideal)
        out["exceptional_principal"] = Verdict(
            "exceptional_principal", "PASS" if principal else "FAIL",
            witnesses={"generator": str(exceptional_generator(child))})
    D = child.pullback(d_graded)
    rows = D.rows()
    nfree = FreeModule(D.source.rank)
    if any(any(p for p in r) for r in rows):
        N = submodule_presentation(child.ring, rows, nfree)
    else:
        N = ModulePresentation(child.ring, FreeModule(0), (), FreeModule(0))
    out["N_locally_free"] = local_freeness_certificate(N, nrank)
    out["N_locally_free"].name = "N_locally_free"
    wdual, _ = kernel_gens(transpose(child.ring, D.columns, D.target, D.source))
    split = torsion_submodule(D)
    sat = torsion_by_saturation(D)
    agree = same_submodule(D, split.quotient.columns, sat.quotient.columns)
    out["W_prime_oracle"] = Verdict("W_prime_oracle", "PASS" if agree else "FAIL",
                                    witnesses={"torsion_generators": split.torsion.rank0})
    wl = local_freeness_certificate(split.quotient, wrank)
    wl.name = "W_prime_locally_free"
    out["W_prime_locally_free"] = wl
    out["_W_prime"] = split.quotient
    out["_N"] = N
    out["_W_dual_rank"] = len(wdual)
    return out


def run_step(charts_now, d_graded, i, level, threads=1, certify=True):
    """One step of the tower over every chart of the current atlas."""
    nrank = _rank_of_matrix(d_graded)
    wrank = generic_rank(d_graded)

    def over_chart(c):
        D = c.pullback(d_graded)
        gens, e1 = step_ideal(D, c)
        unit = len(gens) == 1 and gens[0].is_constant()
        if unit:
            kids = [_identity_child(c, level)]
            old = None
        else:
            r = rees(c.ring, gens, tstem=f"T{level}_")
            atlas = charts(r, parent=c, level=level)
            if certify and not check_transitions(atlas):
                raise CertificateFailure("chart transitions do not compose to the identity",
                                         {"chart": c.label})
            kids = atlas.charts
            old = gens
        for kid in kids:
            kid.center = tuple(gens)
        cs = ChartStep(c, tuple(gens), unit, kids)
        if certify:
            H = None
            rows = D.rows()
            if any(any(p for p in rw) for rw in rows):
                H = submodule_presentation(c.ring, rows, FreeModule(D.source.rank))
            cs.h_module = H
            cs.certificates = [_child_certificates(k, d_graded, e1.presentation, nrank, wrank, old)
                               for k in kids]
        return cs

    steps = _pmap(over_chart, charts_now, threads)
    new = [k for cs in steps for k in cs.children]
    return ResolutionStep(i, None, steps, ChartAtlas(new, level))


def run_tower(m, threads=1, resolution=None, certify=True, abort=True, ev_model=True):
    """Drive the tower over all segment triples; return the full record."""
    p = plan(m, resolution)
    ring = m.ring
    atlas = standard_atlas(ring)
    charts_now = list(atlas.charts)
    L = p.length
    steps = []
    for i in range(1, L + 1):
        k = L - i + 1
        d = p.resolution.differential(k)
        step = run_step(charts_now, d, i, level=i, threads=threads, certify=certify)
        step.differential = k
        if i == 1:
            w = ModulePresentation(m.chart, d.target, d.columns, d.source, allow_zero=True)
            e1 = ext(w, 1).presentation
            fit = fitting(e1, 0)
            irr = ring.ideal(*ring.gens())
            hom = fit.ideal.saturate(irr) if not fit.is_unit() else fit.ideal
            step.homogeneous_ideal = hom
            if ev_model and not hom.is_unit():
                step.fiber_model = EvModel(m, tuple(hom.gb))
        if certify and abort and not step.passed():
            bad = [(cs.chart.label, [str(g) for g in cs.ideal], v.as_dict())
                   for cs in step.chart_steps for cert in cs.certificates
                   for v in cert.values() if isinstance(v, Verdict) and v.verdict == "FAIL"]
            raise CertificateFailure(f"certificate failed at step {i}", bad[0])
        steps.append(step)
        charts_now = step.atlas.charts
    r = p.rank
    final = []
    if certify:
        def fin(c):
            pulled = c.pullback(m)
            q = torsion_submodule(pulled).quotient
            return FinalChart(c, q, local_freeness_certificate(q, r))
        final = _pmap(fin, charts_now, threads)
        if abort:
            for f in final:
                if not f.certificate.passed:
                    raise CertificateFailure("final sheaf is not locally free",
                                             {"chart": f.chart.label, **f.certificate.as_dict()})
    else:
        final = [FinalChart(c, None, Verdict("local_freeness", "N/A")) for c in charts_now]
    return ResolutionTower(m, p, steps, final, r)


def step_ideals(m, resolution=None, threads=1):
    """Per step, per chart: the step ideal (no certificates)."""
    t = run_tower(m, threads=threads, resolution=resolution, certify=False, ev_model=False)
    return [[(cs.chart.label, cs.ideal) for cs in s.chart_steps] for s in t.steps]


def default_padding(res):
    """Pad every spot 1..L with R(t) where t is one below the lowest twist there."""
    out = res
    for spot in range(1, max(res.length, 1) + 1):
        F = out.modules[spot] if spot < len(out.modules) else None
        tw = min(F.twists) - 1 if F is not None and F.twists else -1
        out = pad_resolution(out, spot, tw)
    return out


def resolution_independence_check(m, padded=None, threads=1):
    """Step ideals from the minimal and from a padded resolution agree chartwise."""
    p = plan(m)
    padded = padded or default_padding(p.resolution)
    a = step_ideals(m, p.resolution, threads)
    b = step_ideals(m, padded, threads)
    mism = []
    for i in range(max(len(a), len(b))):
        sa = a[i] if i < len(a) else None
        sb = b[i] if i < len(b) else None
        if sa is None or sb is None:
            rest = sa or sb
            for label, gens in rest:
                if not (len(gens) == 1 and gens[0].is_constant()):
                    mism.append({"step": i + 1, "chart": label, "reason": "extra non-unit step"})
            continue
        if len(sa) != len(sb):
            mism.append({"step": i + 1, "reason": "atlas sizes differ"})
            continue
        for (la, ga), (lb, gb_) in zip(sa, sb):
            if la != lb or [str(g) for g in ga] != [str(g) for g in gb_]:
                mism.append({"step": i + 1, "chart": la,
                             "minimal": [str(g) for g in ga], "padded": [str(g) for g in gb_]})
    wit = {"minimal_betti": p.resolution.betti(), "padded_betti": padded.betti(),
           "steps_compared": max(len(a), len(b)),
           "ideals": [[{"chart": lab, "ideal": [str(g) for g in gens]} for lab, gens in s] for s in a]}
    if mism:
        wit["mismatches"] = mism
    return Verdict("resolution_independence", "FAIL" if mism else "PASS", witnesses=wit)


def identity_on_chart(module):
    """A chart-level module needs no blowup iff it is projective (hd 0)."""
    return projective_dimension(module) == 0
