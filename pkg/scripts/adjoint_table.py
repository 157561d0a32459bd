#!/usr/bin/env python3
"""Adjoint classes and verdicts for rational nodal curves of even degree.

    python3 scripts/adjoint_table.py --d-max 20 --conjectural
"""

import sys
from dataclasses import dataclass

from _config import describe, parse_config

from conicbundle.obstructions import SurfaceModel, adjoint_class, classify


@dataclass
class AdjointConfig:
    """Degree range (even values only) and whether to show the conjectural class."""

    d_min: int = 6
    d_max: int = 40
    family: str = "Eq2a"
    conjectural: bool = False


def main(argv=None):
    cfg = parse_config(AdjointConfig, argv=argv)
    print(f"# {describe(cfg)}")
    print(f"{'d':>3} {'r':>4} {'4K+Delta':<14} {'eff':<5} verdict")
    for d in range(max(cfg.d_min, 6) + (cfg.d_min % 2), cfg.d_max + 1, 2):
        model = SurfaceModel.rational_nodal(d)
        cls, eff = adjoint_class(model)
        v = classify(cfg.family, d, conjectural=cfg.conjectural)
        extra = ""
        if cfg.conjectural and v.certificate and "conjectural_class" in v.certificate:
            extra = f"  2K+Delta={v.certificate['conjectural_class'].to_compact()}"
        print(f"{d:>3} {model.r:>4} {cls.to_compact():<14} {str(eff):<5} {v.status}{extra}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
