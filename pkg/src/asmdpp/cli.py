"""Command line: counts, correspondence tables, verification and the self test.

Exit codes: 0 = pass, 1 = verification failure (or budget exhausted
mid-run), 2 = usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass

from . import asm_dpp as ad
from . import suite
from .patterns import IMPLEMENTATIONS
from .sijection import Sijection, SijectionError, verify
from .subsets import b_set

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("counts", "table", "verify", "selftest")
PROBLEMS = ("main", "asmdpp")
VERIFY_TARGETS = tuple(suite.GRID) + ("grid", "main", "asmdpp", "asm_recurrence", "from_det", "lgv", "corrupted")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 3
    i: int = 1
    x: int = 0
    impl: str = "fallback"
    format: str = "text"
    budget: float = 900.0
    problem: str | None = None
    target: str | None = None
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n < 1:
            raise UsageError("n must be at least 1")
        if not 1 <= self.i <= self.n:
            raise UsageError(f"need 1 <= i <= n, got i={self.i}, n={self.n}")
        if self.impl not in IMPLEMENTATIONS:
            raise UsageError(f"unknown implementation {self.impl!r}")
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if not self.budget > 0 or math.isnan(self.budget):
            raise suite.BudgetExceeded(f"budget error: time budget must be positive, got {self.budget:g}s")


# ---------------------------------------------------------------- commands

def _vec(v) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


def cmd_counts(cfg: RunConfig) -> tuple[int, list]:
    n = cfg.n
    asm = len(ad.enumerate_asm(n))
    asm_i = [len(ad.enumerate_asm_i(n, i)) for i in range(1, n + 1)]
    dpp = len(ad.enumerate_dpp(n))
    dpp_i = [len(ad.enumerate_dpp_i(n, i)) for i in range(1, n + 1)]
    b = math.comb(3 * n - 2, 2 * n - 1)
    b_i = [b_set(n, i).size for i in range(1, n + 1)]
    checks = {
        "asm_formula": asm == ad.asm_formula(n),
        "asm_refined_formula": asm_i == [ad.asm_refined_formula(n, i) for i in range(1, n + 1)],
        "asm_equals_dpp": asm == dpp and asm_i == dpp_i,
        "b_total": sum(b_i) == b,
    }
    ok = all(checks.values())
    if cfg.format == "json":
        doc = {"n": n, "asm": asm, "asm_i": asm_i, "dpp": dpp, "dpp_i": dpp_i, "b": b, "b_i": b_i,
               "checks": checks, "ok": ok}
        return (EXIT_OK if ok else EXIT_FAIL), [json.dumps(doc, sort_keys=True)]
    lines = [
        f"|ASM_{n}| = {asm}",
        f"|ASM_{n},i| = {_vec(asm_i)}",
        f"|DPP_{n}| = {dpp}",
        f"|DPP_{n},i| = {_vec(dpp_i)}",
        f"|B_{n}| = {b}",
        f"|B_{n},i| = {_vec(b_i)}",
    ]
    lines += [f"check {k}: {'pass' if v else 'FAIL'}" for k, v in checks.items()]
    return (EXIT_OK if ok else EXIT_FAIL), lines


def cmd_table(cfg: RunConfig) -> tuple[int, list]:
    if cfg.problem not in PROBLEMS:
        raise UsageError(f"table needs a problem in {PROBLEMS}")
    lines = ad.table_lines(cfg.problem, cfg.n, cfg.i, cfg.x, cfg.impl, cfg.format)
    return EXIT_OK, lines


def corrupted_sijection() -> Sijection:
    """The identity on C([3],1), with one point sent to the wrong partner."""
    from .signed import KSubsets

    S = KSubsets(3, 1)

    def fn(x):
        side, e = x
        if e == ("i", (2,)):
            return ("R" if side == "L" else "L", ("i", (3,)))
        return ("R" if side == "L" else "L", e)

    return Sijection(S, S, fn, "corrupted")


def _bijection_report(b) -> suite.CheckResult:
    ok = ad.check_bijection(b)
    rep = verify(b.sij)
    return suite.CheckResult(b.name, ok and rep.ok, rep.checked, 0.0,
                             "" if ok else "not a bijection", rep.counterexample)


def _verify_one(name: str, sij: Sijection) -> suite.CheckResult:
    rep = verify(sij)
    return suite.CheckResult(name, rep.ok, rep.checked, 0.0, "", rep.counterexample)


def cmd_verify(cfg: RunConfig) -> tuple[int, list]:
    budget = suite.Budget(cfg.budget)
    t = cfg.target or "grid"
    n, i, x, impl = cfg.n, cfg.i, cfg.x, cfg.impl
    if t not in VERIFY_TARGETS:
        raise UsageError(f"unknown verify target {t!r}; choose from {', '.join(VERIFY_TARGETS)}")
    if t == "grid":
        results = suite.run_verify_grid(budget)
    elif t in suite.GRID:
        results = suite.run_verify_grid(budget, only=[t])
    elif t == "main":
        results = [_bijection_report(ad.main_bijection(n, i, x, impl))]
    elif t == "asmdpp":
        results = [_bijection_report(ad.asm_to_dpp(n, i, x, impl))]
    elif t == "asm_recurrence":
        results = [_verify_one(f"asm_recurrence({n},{i})", ad.asm_recurrence(n, i, x, impl))]
    elif t == "from_det":
        if n < 2:
            raise UsageError("from_det needs n >= 2")
        results = [_verify_one(f"from_det({n})", ad.from_det(n))]
    elif t == "lgv":
        if n < 2:
            raise UsageError("lgv needs n >= 2")
        results = [_verify_one(f"lgv({n})", ad.lgv_dpp_sij(n))]
    else:
        results = [_verify_one("corrupted", corrupted_sijection())]
    budget.check()
    return _report(cfg, results)


def cmd_selftest(cfg: RunConfig) -> tuple[int, list]:
    return _report(cfg, suite.acceptance(suite.Budget(cfg.budget)))


def _report(cfg: RunConfig, results: list) -> tuple[int, list]:
    ok = all(r.ok for r in results)
    if cfg.format == "json":
        doc = {"ok": ok, "results": [r.to_json() for r in results]}
        return (EXIT_OK if ok else EXIT_FAIL), [json.dumps(doc, sort_keys=True)]
    lines = []
    for r in results:
        line = f"{'PASS' if r.ok else 'FAIL'}  {r.name}  ({r.checked} checked, {r.seconds:.2f}s)"
        if r.detail:
            line += f"  {r.detail}"
        lines.append(line)
        if r.counterexample:
            lines.append("  counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    lines.append("all passed" if ok else "verification FAILED")
    return (EXIT_OK if ok else EXIT_FAIL), lines


HANDLERS = {"counts": cmd_counts, "table": cmd_table, "verify": cmd_verify, "selftest": cmd_selftest}


# ---------------------------------------------------------------- argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--i", type=int, default=1)
    common.add_argument("--x", type=int, default=0)
    common.add_argument("--impl", choices=IMPLEMENTATIONS, default="fallback")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget-sec", type=float, default=900.0, dest="budget")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="asmdpp", description="Signed sets and sijections for ASMs and DPPs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("counts", parents=[common], help="|ASM|, |DPP| and |B| with formula checks")
    t = sub.add_parser("table", parents=[common], help="full correspondence table")
    t.add_argument("problem", choices=PROBLEMS)
    v = sub.add_parser("verify", parents=[common], help="verify sijections")
    v.add_argument("target", nargs="?", default="grid", choices=VERIFY_TARGETS)
    sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING)
    return RunConfig(command=ns.command, n=ns.n, i=ns.i, x=ns.x, impl=ns.impl, format=ns.format,
                     budget=ns.budget, problem=getattr(ns, "problem", None),
                     target=getattr(ns, "target", None), out=ns.out)


def run(cfg: RunConfig) -> tuple[int, list]:
    log.debug("config %s", asdict(cfg))
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        code, lines = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except suite.BudgetExceeded as exc:
        msg = str(exc)
        print(msg if msg.startswith("budget error") else f"budget error: {msg}", file=sys.stderr)
        # a non-positive budget is a usage error; running out mid-run is a failure
        return EXIT_USAGE if "must be positive" in msg else EXIT_FAIL
    except NotImplementedError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SijectionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = "\n".join(lines) + ("\n" if lines else "")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
