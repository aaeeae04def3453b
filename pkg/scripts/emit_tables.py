"""Write correspondence tables for a list of (problem, n, i, x) cases into a directory."""

from __future__ import annotations

import argparse
import pathlib
from dataclasses import dataclass

from asmdpp.asm_dpp import table_lines

DEFAULT_CASES = (("main", 3, 2, 0), ("asmdpp", 4, 2, 0))


@dataclass
class TableConfig:
    out_dir: pathlib.Path
    fmt: str = "text"
    impl: str = "fallback"


def case_name(problem, n, i, x, fmt) -> str:
    return f"{problem}_n{n}_i{i}_x{x}.{'jsonl' if fmt == 'json' else 'txt'}"


def parse_case(text: str) -> tuple:
    problem, n, i, x = text.split(",")
    return problem, int(n), int(i), int(x)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("out_dir", type=pathlib.Path)
    p.add_argument("--case", action="append", type=parse_case,
                   help="problem,n,i,x (repeatable); default main,3,2,0 and asmdpp,4,2,0")
    p.add_argument("--format", choices=("text", "json"), default="text")
    ns = p.parse_args(argv)
    cfg = TableConfig(ns.out_dir, ns.format)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for problem, n, i, x in ns.case or DEFAULT_CASES:
        lines = table_lines(problem, n, i, x, cfg.impl, cfg.fmt)
        path = cfg.out_dir / case_name(problem, n, i, x, cfg.fmt)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"{path}: {len(lines)} lines")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
