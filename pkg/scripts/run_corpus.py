#!/usr/bin/env python3
"""Run the rationality pipeline on the named corpus and print one row per input.

    python3 scripts/run_corpus.py
    python3 scripts/run_corpus.py --names lemniscate f1-basic --json-out corpus.json
"""

import json
import sys
import time
from dataclasses import dataclass

from _config import describe, parse_config

from conicbundle.corpus import TRIPLES, acceptance_curves, curve_by_name
from conicbundle.rationality.constructions import construct_case_a
from conicbundle.rationality.pipeline import construct_for_curve


@dataclass
class CorpusConfig:
    """Which corpus entries to run and where to write the rows."""

    names: tuple = ()  # empty means every quartic in the corpus
    triples: bool = True
    json_out: str = ""


def main(argv=None):
    cfg = parse_config(CorpusConfig, argv=argv)
    print(f"# {describe(cfg)}")
    entries = [curve_by_name(n) for n in cfg.names] if cfg.names else acceptance_curves()
    rows = []
    for entry in entries:
        t = time.perf_counter()
        out = construct_for_curve(entry.curve())
        rows.append({"name": entry.name, "case": out.case, "status": out.map.verified.status,
                     "max_degree": out.map.max_degree(), "seconds": round(time.perf_counter() - t, 3)})
    if cfg.triples:
        for tr in TRIPLES:
            t = time.perf_counter()
            m = construct_case_a(*tr.polys())
            rows.append({"name": tr.name, "case": "a", "status": m.verified.status,
                         "max_degree": m.max_degree(), "seconds": round(time.perf_counter() - t, 3)})
    print(f"{'name':<18} {'case':<5} {'status':<7} {'deg':>4} {'sec':>7}")
    for r in rows:
        print(f"{r['name']:<18} {r['case']:<5} {r['status']:<7} {r['max_degree']:>4} {r['seconds']:>7.3f}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["status"] == "Pass" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
