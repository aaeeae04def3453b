"""Run the verification grid (or a subset of it) and print one line per family."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from asmdpp.suite import GRID, Budget, run_verify_grid


@dataclass
class GridConfig:
    budget: float = 600.0
    only: list = field(default_factory=list)
    as_json: bool = False

    def __post_init__(self):
        unknown = [name for name in self.only if name not in GRID]
        if unknown:
            raise ValueError(f"unknown grid families {unknown}; choose from {sorted(GRID)}")


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("families", nargs="*", help=f"subset of {', '.join(GRID)}")
    p.add_argument("--budget-sec", type=float, default=600.0)
    p.add_argument("--json", action="store_true")
    ns = p.parse_args(argv)
    cfg = GridConfig(ns.budget_sec, ns.families, ns.json)
    results = run_verify_grid(Budget(cfg.budget), cfg.only or None)
    for r in results:
        if cfg.as_json:
            print(json.dumps(r.to_json(), sort_keys=True))
        else:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<16} {r.checked:>5} sijections  {r.seconds:6.2f}s")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
