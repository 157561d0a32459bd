"""Command-line workbench.

Every command produces one output document; ``--json`` prints it as JSON,
otherwise a short human-readable summary is printed.  Exit codes: 0 on
success, 2 when a hypothesis or input check fails (the document carries the
error payload), 1 on internal errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import corpus
from .curves import YES, PlaneCurve, curve_profile
from .errors import ConicBundleError
from .parser import parse_poly

SCHEMA_VERSION = "1.0"
COMMANDS = ("analyze", "normalize", "construct", "verify", "classify", "residue", "demo-corpus")

log = logging.getLogger("conicbundle")


class UsageError(ConicBundleError):
    code = "usage_error"
    hypothesis = True


# ---------------------------------------------------------------------------
# inputs


def read_curve(spec: str) -> tuple[PlaneCurve, dict]:
    """A curve from a file path, a corpus name, or an inline expression.

    Non-homogeneous input is read as an affine polynomial in ``v, w`` and
    homogenized with ``z``.
    """
    path = Path(spec)
    source = "expression"
    if path.is_file():
        text = path.read_text().strip()
        source = "file"
    else:
        try:
            text = corpus.curve_by_name(spec).text
            source = "corpus"
        except KeyError:
            text = spec
    p = parse_poly(text, corpus.CURVE_VARS)
    if p.is_zero():
        raise UsageError("the curve polynomial is zero")
    C = PlaneCurve(p) if p.is_homogeneous() else PlaneCurve.from_affine(p.with_vars(("v", "w", "z")), "z")
    return C, {"curve": spec, "source": source, "polynomial": C.F.to_str()}


def _asserted(args):
    out = []
    if getattr(args, "assert_nonneg", False):
        out.append("nonnegative_f")
    if getattr(args, "assert_real_branch", False):
        out.append("real_branch")
    return out


def _apply_assertions(profile, asserted):
    """Record asserted flags next to the verified ones."""
    status = {}
    for flag in ("real_branch", "nonnegative_f"):
        value = getattr(profile, flag)
        if value == YES:
            status[flag] = "verified"
        elif flag in asserted:
            status[flag] = "asserted"
            setattr(profile, flag, YES)
        else:
            status[flag] = value
    return status


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args):
    C, inputs = read_curve(args.curve)
    prof = curve_profile(C)
    return inputs, {"kind": "profile", "profile": prof.to_dict()}, []


def cmd_normalize(args):
    from .normal_forms import normal_form_of

    C, inputs = read_curve(args.curve)
    nf, Cs = normal_form_of(C)
    return inputs, {"kind": "normal_form", "normal_form": nf.to_dict(), "standardized": Cs.F.to_str()}, []


def _construct(args):
    from .rationality import construct_case_a
    from .rationality.pipeline import construct_conic_case, construct_for_curve

    if args.section:
        q, c, g = (parse_poly(t, ("w",)) for t in args.section)
        m = construct_case_a(q, c, g, verify=False)
        return {"section": list(args.section)}, "a", m, {}
    C, inputs = read_curve(args.curve)
    family = {"eq2a": "Eq2a", "eq2b": "Eq2b"}.get((args.family or "").lower())
    if C.degree == 2:
        out = construct_conic_case(C, family or "Eq2a", verify=False)
        return inputs, out.case, out.map, {"family": out.family}
    prof = curve_profile(C)
    hyp = _apply_assertions(prof, _asserted(args))
    out = construct_for_curve(C, family=family, profile=prof, verify=False)
    extra = {"family": out.family, "hypotheses": hyp, "change": out.change.to_dict()}
    if out.normal_form is not None:
        extra["normal_form"] = out.normal_form.to_dict()
    return inputs, out.case, out.map, extra


def cmd_construct(args):
    from .rationality.maps import verified

    inputs, case, m, extra = _construct(args)
    verified(m)
    result = {"kind": "construction", "case": case, "map": m.to_dict(), **extra}
    return inputs, result, ["quartic-rationality"]


def cmd_verify(args):
    from .rationality import verify_parametrization

    inputs, case, m, extra = _construct(args)
    t = time.perf_counter()
    v = verify_parametrization(m)
    m.verified = v
    result = {
        "kind": "verification",
        "case": case,
        "verification": v.to_dict(),
        "degree": m.max_degree(),
        "seconds": round(time.perf_counter() - t, 4),
        **extra,
    }
    return inputs, result, []


def cmd_classify(args):
    from .obstructions import classify

    family = args.family
    curve = None
    inputs = {"family": family, "degree": args.degree}
    profile = None
    if args.curve:
        curve, cin = read_curve(args.curve)
        inputs.update(cin)
    if args.r is not None:
        inputs["r"] = args.r
    verdict = classify(family, args.degree, profile=profile, curve=curve, r=args.r,
                       asserted=_asserted(args), conjectural=args.conjectural_mode)
    return inputs, {"kind": "verdict", "verdict": verdict.to_dict()}, list(verdict.citations)


def cmd_residue(args):
    from .residues import build_certificate

    cert = build_certificate(args.m, args.e)
    inputs = {"m": args.m, "e": args.e}
    return inputs, {"kind": "certificate", "certificate": cert.to_dict()}, [t for t in cert.trusted_facts]


def cmd_demo_corpus(args):
    from .obstructions import classify
    from .rationality import construct_case_a
    from .rationality.constructions import elem2_parametrize
    from .residues import build_certificate

    rows = []
    ok = True

    def record(name, kind, status, expected, seconds):
        nonlocal ok
        good = status == expected
        ok = ok and good
        rows.append({"name": name, "kind": kind, "status": status, "expected": expected,
                     "ok": good, "seconds": round(seconds, 4)})

    for entry in corpus.CURVES:
        t = time.perf_counter()
        C = entry.curve()
        try:
            v = classify(entry.family, C.degree, curve=C)
            status = v.status
        except ConicBundleError as e:
            status = e.code
        record(entry.name, "curve", status, "Rational", time.perf_counter() - t)
    for tr in corpus.TRIPLES:
        t = time.perf_counter()
        try:
            status = construct_case_a(*tr.polys()).verified.status
        except ConicBundleError as e:
            status = e.code
        record(tr.name, "triple", status, "Pass", time.perf_counter() - t)
    t = time.perf_counter()
    b = corpus.BRAUER_INPUT
    try:
        elem2_parametrize(parse_poly(b["q1"], (b["var"],)), q2=parse_poly(b["q2"], (b["var"],)), var=b["var"])
        status = "map"
    except ConicBundleError as e:
        status = e.code
    record("brauer-rejection", "elem2", status, "hypothesis_violated", time.perf_counter() - t)
    for m, e in corpus.RESIDUE_PARAMETERS:
        t = time.perf_counter()
        cert = build_certificate(m, e)
        record(f"residue-m{m}-e{e}", "certificate", cert.conclusion, "NotStablyRationalOverPuiseux",
               time.perf_counter() - t)
    for d in corpus.ADJOINT_DEGREES:
        if d <= 4:
            continue
        t = time.perf_counter()
        v = classify("Eq2b", d)
        record(f"classify-eq2b-d{d}", "verdict", v.status, "NotRational" if d >= 12 else "Open",
               time.perf_counter() - t)
    result = {"kind": "corpus", "rows": rows, "all_ok": ok}
    if not ok:
        raise _CorpusFailure(result)
    return {}, result, []


class _CorpusFailure(Exception):
    def __init__(self, result):
        super().__init__("some corpus entries did not match expectations")
        self.result = result


HANDLERS = {
    "analyze": cmd_analyze,
    "normalize": cmd_normalize,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "residue": cmd_residue,
    "demo-corpus": cmd_demo_corpus,
}


# ---------------------------------------------------------------------------
# argument parsing and the document


def build_parser():
    p = argparse.ArgumentParser(prog="conicbundle", description=__doc__.splitlines()[0])
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print the output document as JSON")
        sp.add_argument("--assert-nonneg", action="store_true", help="vouch that f is nonnegative")
        sp.add_argument("--assert-real-branch", action="store_true", help="vouch for a real branch")
        sp.add_argument("--conjectural-mode", action="store_true",
                        help="add the conjectural outcome for degrees 6 to 10")
        return sp

    for name in ("analyze", "normalize"):
        common(sub.add_parser(name)).add_argument("--curve", required=True)
    for name in ("construct", "verify"):
        sp = common(sub.add_parser(name))
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--curve")
        g.add_argument("--section", nargs=3, metavar=("Q", "C", "G"),
                       help="case a coefficients q(w), c(w), g(w)")
        sp.add_argument("--family", choices=["eq2a", "eq2b"])
    sp = common(sub.add_parser("classify"))
    sp.add_argument("--family", required=True, choices=["eq1", "eq2a", "eq2b"])
    sp.add_argument("--degree", required=True, type=int)
    sp.add_argument("--curve")
    sp.add_argument("--r", type=int, default=None, help="number of nodes (checked against genus 0)")
    sp = common(sub.add_parser("residue"))
    sp.add_argument("--m", required=True, type=int)
    sp.add_argument("--e", required=True, type=int)
    common(sub.add_parser("demo-corpus"))
    return p


def _flags(args):
    return {
        k: getattr(args, k)
        for k in ("assert_nonneg", "assert_real_branch", "conjectural_mode")
        if getattr(args, k, False)
    }


def run(argv):
    """Parse ``argv``, run the command and return ``(exit_code, document, parsed_args)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING))
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "inputs": {}, "result": None,
           "citations": [], "timing": {}}
    t = time.perf_counter()
    code = 0
    try:
        if args.command == "residue" and (args.m < 1 or args.e < 0):
            raise UsageError("need m >= 1 and e >= 0", m=args.m, e=args.e)
        inputs, result, cites = HANDLERS[args.command](args)
        doc["inputs"] = inputs
        doc["result"] = result
        doc["citations"] = cites
    except _CorpusFailure as e:
        doc["result"] = e.result
        doc["error"] = {"code": "corpus_mismatch", "message": str(e)}
        code = 1
    except ConicBundleError as e:
        doc["error"] = e.to_dict()
        code = 2
    except Exception as e:  # noqa: BLE001 - report and map to the internal-error exit code
        log.exception("internal error")
        doc["error"] = {"code": "internal_error", "message": f"{type(e).__name__}: {e}"}
        code = 1
    doc["inputs"].update(_flags(args))
    doc["timing"] = {"seconds": round(time.perf_counter() - t, 4)}
    doc["exit_code"] = code
    return code, doc, args


def _summary(doc):
    lines = [f"{doc['command']}: exit {doc['exit_code']}"]
    if "error" in doc:
        lines.append(f"  error {doc['error']['code']}: {doc['error'].get('message', '')}")
    res = doc.get("result") or {}
    kind = res.get("kind")
    if kind == "profile":
        p = res["profile"]
        lines.append(f"  degree {p['degree']}, {len(p['nodes'])} singular points, genus {p['genus']}")
        for k, v in p["flags"].items():
            lines.append(f"  {k}: {v}")
    elif kind == "normal_form":
        nf = res["normal_form"]
        lines.append(f"  {nf['variant']}: {nf['template']}  (scale {nf['scale']})")
    elif kind in ("construction", "verification"):
        if "map" in res:
            lines.append(f"  case {res['case']}, verified {res['map']['verified']['status']}")
            for k, v in res["map"]["forward"].items():
                lines.append(f"  {k} = {v}")
        else:
            lines.append(f"  case {res['case']}, {res['verification']['status']} in {res['seconds']}s")
    elif kind == "verdict":
        v = res["verdict"]
        lines.append(f"  {v['family']} degree {v['degree']}: {v['status']}  [{', '.join(v['citations'])}]")
        for n in v["notes"]:
            lines.append(f"  - {n}")
        cert = v.get("certificate") or {}
        if "adjoint" in cert:
            lines.append(f"  4K + Delta = {cert['adjoint']['text']}")
    elif kind == "certificate":
        c = res["certificate"]
        lines.append(f"  m={c['m']} e={c['e']}: valuation {c['valuation']}, residue {c['residue']}, "
                     f"{c['conclusion']}")
    elif kind == "corpus":
        for r in res["rows"]:
            mark = "ok " if r["ok"] else "BAD"
            lines.append(f"  {mark} {r['name']:<22} {r['status']}")
    return "\n".join(lines)


def main(argv=None):
    code, doc, args = run(sys.argv[1:] if argv is None else argv)
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2))
    else:
        print(_summary(doc))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
