"""Analysis reports as JSON-compatible trees, plus their text rendering.

Rationals are stored as strings (``"-5/2"``) so the document is exact. A
report carries the line coefficients and the classes of each system, which is
enough to rebuild everything and re-verify embedded certificates on load.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Dict, List, Optional

from .admissibility import (AdmCertificate, Admissible, LocalSystem, Move, NotAdmissible, NotCovered,
                            ResidueVector, ZoneCheck, classify, decide_admissible, verify_certificate)
from .graphs import maximal_graphs, zone_of
from .incidence import Arrangement, build_incidence, check_condition_c

SCHEMA = "lineadmit-report/1"


class ReportError(ValueError):
    pass


def _q(v: Fraction) -> str:
    return str(Fraction(v))


def certificate_to_dict(cert: AdmCertificate) -> dict:
    return {
        "strategy": cert.strategy,
        "h0": cert.h0,
        "residues": [_q(r) for r in cert.rv.residues],
        "h0_max": _q(cert.h0_max),
        "trace": [{"kind": m.kind, "source": m.source, "target": m.target,
                   "amount": _q(m.amount), "point": m.point} for m in cert.trace],
        "checkpoints": [{"lines": list(c.lines), "zone": list(c.zone), "zone_sum": _q(c.zone_sum)}
                        for c in cert.checkpoints],
    }


def certificate_from_dict(d: dict) -> AdmCertificate:
    return AdmCertificate(
        rv=ResidueVector(tuple(Fraction(r) for r in d["residues"])),
        h0=d["h0"],
        trace=tuple(Move(m["kind"], m["source"], m["target"], Fraction(m["amount"]), m["point"])
                    for m in d["trace"]),
        strategy=d["strategy"],
        checkpoints=tuple(ZoneCheck(tuple(c["lines"]), tuple(c["zone"]), Fraction(c["zone_sum"]))
                          for c in d["checkpoints"]),
        h0_max=Fraction(d["h0_max"]),
    )


def verdict_to_dict(result, labels) -> dict:
    if isinstance(result, Admissible):
        return {"verdict": "admissible", "strategy": result.strategy,
                "certificate": certificate_to_dict(result.certificate)}
    if isinstance(result, NotAdmissible):
        return {"verdict": "not-admissible", "reason": "obstruction", "transcript": list(result.transcript)}
    assert isinstance(result, NotCovered)
    return {"verdict": "not-covered", "reason": result.reason}


def analysis_report(arr: Arrangement, systems: Optional[Dict[str, LocalSystem]] = None,
                    h0: Optional[int] = None, bound: int = 3) -> dict:
    inc = build_incidence(arr)
    labels = arr.labels
    cc = check_condition_c(inc)
    strat = classify(inc, None, h0)
    mult = Counter(p.multiplicity for p in inc.m_points)
    graphs = maximal_graphs(inc)

    doc = {
        "schema": SCHEMA,
        "name": arr.name,
        "lines": [{"label": lab, "coeffs": list(l.coeffs)} for lab, l in zip(labels, arr.lines)],
        "incidence": {
            "n_multiple_points": len(inc.m_points),
            "multiplicities": {str(k): mult[k] for k in sorted(mult)},
            "points": [{"coords": list(p.point.coords), "lines": [labels[h] for h in p.incident]}
                       for p in inc.m_points],
        },
        "condition_c": {
            "holds": cc.holds,
            "witness": None if cc.holds else {"point": inc.point_name(cc.point),
                                              "lines": [labels[h] for h in cc.lines]},
        },
        "cycles": [[labels[h] for h in c.lines] for c in strat.cycles],
        "graphs": [{"kind": g.kind, "members": [labels[h] for h in sorted(g.members)],
                    "zone": [labels[h] for h in sorted(zone_of(inc, g).members)]} for g in graphs],
        "strategy": {"applicable": strat.applicable, "h0": labels[strat.h0]},
        "systems": {},
    }
    for name, ls in (systems or {}).items():
        entry = {"classes": [_q(c) for c in ls.classes]}
        entry.update(verdict_to_dict(decide_admissible(inc, ls, h0, bound), labels))
        doc["systems"][name] = entry
    return doc


def load_report(doc: dict) -> dict:
    """Rebuild the arrangement from a report and re-verify every certificate."""
    if doc.get("schema") != SCHEMA:
        raise ReportError(f"unknown schema {doc.get('schema')!r}")
    arr = Arrangement.from_coeffs([l["coeffs"] for l in doc["lines"]], doc["name"],
                                  [l["label"] for l in doc["lines"]])
    inc = build_incidence(arr)
    for name, entry in doc["systems"].items():
        if entry["verdict"] != "admissible":
            continue
        ls = LocalSystem(tuple(Fraction(c) for c in entry["classes"]))
        verdict = verify_certificate(inc, ls, certificate_from_dict(entry["certificate"]))
        if not verdict:
            raise ReportError(f"certificate for system {name!r} fails: "
                              + ", ".join(map(str, verdict.violations)))
    return doc


def summary_line(doc: dict) -> str:
    return (f"|M| = {doc['incidence']['n_multiple_points']}, "
            f"condition (C): {'yes' if doc['condition_c']['holds'] else 'no'}, "
            f"cycles: {len(doc['cycles'])}, strategy: {doc['strategy']['applicable']}")


def verdict_line(entry: dict) -> str:
    if entry["verdict"] == "admissible":
        return f"ADMISSIBLE ({entry['strategy']})"
    if entry["verdict"] == "not-admissible":
        return "NOT ADMISSIBLE (obstruction)"
    return f"NOT COVERED ({entry['reason']})"


def render_text(doc: dict, verbose: bool = True) -> str:
    out: List[str] = [f"{doc['name'] or 'arrangement'}: {len(doc['lines'])} lines", summary_line(doc)]
    if not verbose:
        return "\n".join(out)
    mult = ", ".join(f"{n} of multiplicity {k}" for k, n in doc["incidence"]["multiplicities"].items())
    out.append(f"multiple points: {mult or 'none'}")
    for p in doc["incidence"]["points"]:
        out.append(f"  [{':'.join(map(str, p['coords']))}] on {' '.join(p['lines'])}")
    if doc["condition_c"]["witness"]:
        w = doc["condition_c"]["witness"]
        out.append(f"condition (C) fails at {w['point']}: adjacent points on {' '.join(w['lines'])}")
    for c in doc["cycles"]:
        out.append("cycle: " + " - ".join(c))
    for g in doc["graphs"]:
        if g["kind"] == "regular":
            out.append(f"graph {{{' '.join(g['members'])}}} zone {{{' '.join(g['zone'])}}}")
    out.append(f"base line: {doc['strategy']['h0']}")
    labels = [l["label"] for l in doc["lines"]]
    for name, entry in doc["systems"].items():
        out.append(f"system {name}: {verdict_line(entry)}")
        if entry["verdict"] == "admissible":
            res = entry["certificate"]["residues"]
            out.append("  residues: " + ", ".join(f"{lab}={r}" for lab, r in zip(labels, res)))
        elif entry["verdict"] == "not-admissible":
            out.extend("  " + t for t in entry["transcript"])
    return "\n".join(out)
