"""Command line front end.

    stdres resolve job.txt
    stdres certify lemma2|locfree|independence job.txt
    stdres hilbert job.txt --m 2 --nmax 6
    stdres fitting job.txt --index 0

Exit status: 0 every certificate passed, 1 some certificate failed,
2 the input was rejected (parse error, precondition, scope), 3 internal error.
"""

import argparse
import hashlib
import json
import sys
import time

from .blowup import DegenerateBlowup, ev_monomorphism_check
from .dsl import ParseError, parse
from .homological import (
    DecomposeFirst, PreconditionError, Verdict, fitting, generic_rank,
    lemma2_certificate, local_freeness_certificate,
)
from .modules import hilbert
from .polarization import (
    PolarizationError, distinguished_polarization, fiber_hilbert_line, poly_report,
    sheaf_hilbert_check,
)
from .ring import Ideal
from .blowup import standard_atlas
from .tower import CertificateFailure, resolution_independence_check, run_tower

SCHEMA = "stdres-report/1"

EXIT_OK, EXIT_FAIL, EXIT_REJECT, EXIT_INTERNAL = 0, 1, 2, 3


class Rejected(Exception):
    """Input outside the scope of a command (exit status 2)."""


class _Clock:
    def __init__(self):
        self.phases = []

    def run(self, name, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.phases.append((name, round(time.perf_counter() - t0, 4)))


# ---------------------------------------------------------------------------
# report pieces
# ---------------------------------------------------------------------------

def _verdicts(doc):
    """Every verdict string found anywhere in a report document."""
    out = []
    if isinstance(doc, dict):
        if "verdict" in doc and isinstance(doc["verdict"], str):
            out.append(doc["verdict"])
        for v in doc.values():
            out.extend(_verdicts(v))
    elif isinstance(doc, list):
        for v in doc:
            out.extend(_verdicts(v))
    return out


def _public(cert):
    return {k: v.as_dict() for k, v in sorted(cert.items()) if isinstance(v, Verdict)}


def tower_report(tower, ev=None):
    res = tower.plan.resolution
    steps = []
    for s in tower.steps:
        charts = []
        for cs in s.chart_steps:
            charts.append({
                "chart": cs.chart.label,
                "ideal": [str(g) for g in cs.ideal],
                "identity": cs.identity,
                "children": [k.label for k in cs.children],
                "certificates": [_public(c) for c in cs.certificates],
            })
        entry = {"index": s.index, "differential": s.differential, "tag": s.tag, "charts": charts}
        if s.homogeneous_ideal is not None:
            entry["homogeneous_ideal"] = [str(g) for g in s.homogeneous_ideal.gb]
        if s.index == 1 and ev is not None:
            entry["ev0"] = ev.as_dict()
        steps.append(entry)
    final = [{"chart": f.chart.label, "ring": f.chart.ring.describe(),
              "exceptional": [str(g) for g in f.chart.exceptional],
              "certificate": f.certificate.as_dict()} for f in tower.final]
    return {
        "resolution": {"betti": res.betti(), "twists": [list(t) for t in res.twists()]},
        "rank": tower.rank,
        "length": tower.length,
        "steps": steps,
        "final": final,
    }


def polarization_report(tower, exps=None):
    spec = distinguished_polarization(tower, exps)
    return {"exponents": list(spec.exponents), "base_exponent": spec.base_exponent,
            "defaulted": spec.defaulted, "charts": spec.charts,
            "ampleness": "assumed, not verified"}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_resolve(job, opts, clock):
    m = job.module
    tower = clock.run("tower", run_tower, m, threads=opts.threads)
    ev = None
    if tower.steps:
        s1 = tower.steps[0]
        ev = clock.run("ev0", ev_monomorphism_check, s1.fiber_model, principal=s1.principal)
    doc = {"tower": tower_report(tower, ev)}
    exps = None
    if opts.exponents:
        try:
            exps = tuple(int(c) for c in opts.exponents.split(","))
        except ValueError:
            raise Rejected(f"bad --exponents {opts.exponents!r}") from None
    try:
        doc["polarization"] = clock.run("polarization", polarization_report, tower, exps)
    except ValueError as exc:
        raise Rejected(str(exc)) from None
    return doc


def cmd_certify(job, opts, clock):
    m = job.module
    kind = opts.kind
    if kind == "lemma2":
        v = clock.run("lemma2", lemma2_certificate, m)
        return {"certificate": v.as_dict()}
    if kind == "locfree":
        r = generic_rank(m)
        charts = []
        for c in standard_atlas(m.ring):
            v = clock.run(f"locfree {c.label}", local_freeness_certificate, c.pullback(m), r)
            charts.append({"chart": c.label, "certificate": v.as_dict()})
        return {"rank": r, "charts": charts}
    if kind == "independence":
        v = clock.run("independence", resolution_independence_check, m, threads=opts.threads)
        return {"certificate": v.as_dict()}
    raise Rejected(f"unknown certificate {kind!r}")


def cmd_hilbert(job, opts, clock):
    m = job.module
    if opts.m is None or opts.m < 1:
        raise Rejected("--m must be a positive integer")
    if opts.nmax is None or opts.nmax < 0:
        raise Rejected("--nmax must be a non-negative integer")
    if opts.degree_bound is not None and opts.m * opts.nmax > opts.degree_bound:
        raise Rejected(f"m * nmax = {opts.m * opts.nmax} exceeds --degree-bound {opts.degree_bound}")
    tower = clock.run("tower", run_tower, m, threads=opts.threads, certify=False, ev_model=False)
    ring = m.ring
    I1 = tower.steps[0].homogeneous_ideal if tower.steps else Ideal(ring, [ring.one()])
    h = hilbert(m)
    attested = str(job.options.get("attested", "no")) == "yes"
    try:
        line = clock.run("fiber line", fiber_hilbert_line, I1, opts.m, opts.nmax)
        sheaf = clock.run("sheaf check", sheaf_hilbert_check, m, I1, opts.m, opts.nmax, attested)
    except ValueError as exc:
        raise Rejected(str(exc)) from None
    return {
        "module_hilbert": {"polynomial": poly_report(h.polynomial), "stabilization": h.stabilization},
        "step_ideal": [str(g) for g in I1.gb],
        "chi_L": line.as_dict(),
        "chi_E": sheaf.as_dict(),
    }


def cmd_fitting(job, opts, clock):
    m = job.module
    j = opts.index
    if j is None or j < 0:
        raise Rejected("--index must be a non-negative integer")
    f = clock.run("fitting", fitting, m, j)
    return {"index": j, "generators": [str(g) for g in f.generators()],
            "unit": f.is_unit(), "zero": f.is_zero()}


COMMANDS = {"resolve": cmd_resolve, "certify": cmd_certify,
            "hilbert": cmd_hilbert, "fitting": cmd_fitting}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True, default=str)


def _text(doc, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{doc}")
    return lines


def render(stable, volatile, fmt, with_volatile=True):
    digest = hashlib.sha256(_dump(stable).encode()).hexdigest()
    if fmt == "json":
        out = _dump(stable) + "\n"
        if with_volatile:
            out += _dump({"volatile": volatile, "stable_sha256": digest}) + "\n"
        return out
    out = "\n".join(_text(stable)) + "\n"
    if with_volatile:
        out += "--- volatile ---\n" + "\n".join(_text(volatile)) + f"\nstable_sha256: {digest}\n"
    return out


def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--threads", type=int, default=d(1))
    parser.add_argument("--degree-bound", type=int, default=d(None))
    parser.add_argument("--stable", action="store_true", default=d(False),
                        help="omit the volatile footer (timings)")


def build_parser():
    p = argparse.ArgumentParser(prog="stdres", description=__doc__.splitlines()[0])
    _global_flags(p, suppress=False)
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("resolve", parents=[common])
    r.add_argument("file")
    r.add_argument("--exponents", help="per-step exponents m_1,...,m_L (default: degree + 1)")
    c = sub.add_parser("certify", parents=[common])
    c.add_argument("kind", choices=("lemma2", "locfree", "independence"))
    c.add_argument("file")
    h = sub.add_parser("hilbert", parents=[common])
    h.add_argument("file")
    h.add_argument("--m", type=int, required=True)
    h.add_argument("--nmax", type=int, required=True)
    f = sub.add_parser("fitting", parents=[common])
    f.add_argument("file")
    f.add_argument("--index", type=int, required=True)
    return p


def execute(opts, text):
    """Run one job; returns (exit status, stable document, volatile footer)."""
    clock = _Clock()
    stable = {"schema": SCHEMA, "command": opts.command}
    try:
        job = clock.run("parse", parse, text)
        job.command = opts.command
        job.args = (opts.kind,) if opts.command == "certify" else ()
        stable["input"] = job.to_text()
        body = COMMANDS[opts.command](job, opts, clock)
        stable["result"] = body
        verdicts = _verdicts(body)
        status = EXIT_FAIL if "FAIL" in verdicts else EXIT_OK
        stable["status"] = "PASS" if status == EXIT_OK else "FAIL"
    except ParseError as exc:
        stable["error"] = {"kind": "parse", "message": exc.message, "line": exc.line, "column": exc.col}
        status = EXIT_REJECT
    except (PreconditionError, DecomposeFirst, DegenerateBlowup, Rejected) as exc:
        stable["error"] = {"kind": "rejected", "message": str(exc)}
        status = EXIT_REJECT
    except (CertificateFailure, PolarizationError) as exc:
        stable["error"] = {"kind": "certificate", "message": str(exc), "witness": exc.witness}
        status = EXIT_FAIL
    except Exception as exc:  # noqa: BLE001  (reported, not swallowed)
        stable["error"] = {"kind": "internal", "type": type(exc).__name__, "message": str(exc)}
        status = EXIT_INTERNAL
    if "error" in stable:
        stable["status"] = "REJECTED" if status == EXIT_REJECT else (
            "FAIL" if status == EXIT_FAIL else "ERROR")
    stable["exit_status"] = status
    volatile = {"timings_seconds": dict(clock.phases), "threads": opts.threads}
    return status, stable, volatile


def main(argv=None):
    opts = build_parser().parse_args(argv)
    try:
        with open(opts.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {opts.file}: {exc}", file=sys.stderr)
        return EXIT_REJECT
    status, stable, volatile = execute(opts, text)
    sys.stdout.write(render(stable, volatile, opts.format, with_volatile=not opts.stable))
    return status


if __name__ == "__main__":
    sys.exit(main())
