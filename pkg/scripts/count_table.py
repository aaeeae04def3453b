"""Print |ASM_n|, |ASM_{n,i}|, |DPP_n| and |DPP_{n,i}| side by side for a range of n."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from asmdpp.asm_dpp import asm_formula, asm_refined_formula, enumerate_asm_i, enumerate_dpp_i


@dataclass
class CountConfig:
    max_n: int = 4
    formula_n: int = 6

    def __post_init__(self):
        if self.max_n < 1 or self.formula_n < 1:
            raise ValueError("n limits must be at least 1")


def rows(cfg: CountConfig) -> list:
    out = []
    for n in range(1, cfg.formula_n + 1):
        refined = [asm_refined_formula(n, i) for i in range(1, n + 1)]
        line = f"n={n}  formula {asm_formula(n):>6}  refined {refined}"
        if n <= cfg.max_n:
            asm = [len(enumerate_asm_i(n, i)) for i in range(1, n + 1)]
            dpp = [len(enumerate_dpp_i(n, i)) for i in range(1, n + 1)]
            status = "ok" if asm == dpp == refined else "MISMATCH"
            line += f"  ASM {asm}  DPP {dpp}  {status}"
        out.append(line)
    return out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=4, help="largest n to enumerate")
    p.add_argument("--formula-n", type=int, default=6, help="largest n for the product formulas")
    ns = p.parse_args(argv)
    lines = rows(CountConfig(ns.max_n, ns.formula_n))
    print("\n".join(lines))
    return 0 if all("MISMATCH" not in line for line in lines) else 1


if __name__ == "__main__":
    raise SystemExit(main())
