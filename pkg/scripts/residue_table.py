#!/usr/bin/env python3
"""Tabulate residue certificates over a grid of (m, e).

    python3 scripts/residue_table.py --m-max 5 --e-max 2
"""

import sys
import time
from dataclasses import dataclass

from _config import describe, parse_config

from conicbundle.residues import build_certificate


@dataclass
class ResidueGrid:
    """Grid bounds for the residue certificates (inclusive)."""

    m_max: int = 5
    e_max: int = 2


def main(argv=None):
    cfg = parse_config(ResidueGrid, argv=argv)
    print(f"# {describe(cfg)}")
    print(f"{'m':>2} {'e':>2} {'scaling':<8} {'val':>4} {'residue':<10} conclusion")
    ok = True
    t = time.perf_counter()
    for m in range(1, cfg.m_max + 1):
        for e in range(cfg.e_max + 1):
            c = build_certificate(m, e)
            res = ",".join(c.residue) if isinstance(c.residue, tuple) else c.residue
            print(f"{m:>2} {e:>2} {c.scaling_check.status:<8} {c.valuation:>4} {res:<10} {c.conclusion}")
            ok &= c.valuation == 2 * m - 1 and c.scaling_check.passed
    print(f"# {time.perf_counter() - t:.2f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
