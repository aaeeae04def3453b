"""Time the main constructions from a cold start (caches cleared per case)."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from asmdpp import asm_dpp, patterns, rotation
from asmdpp.asm_dpp import asm_recurrence, asm_to_dpp, check_bijection, from_det, lgv_dpp_sij, main_bijection
from asmdpp.sijection import verify


@dataclass
class TimingConfig:
    n_main: int = 3
    n_asmdpp: int = 4
    cold: bool = True


def _clear_caches():
    for mod in (asm_dpp, patterns, rotation):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def cases(cfg: TimingConfig):
    for i in range(1, cfg.n_main + 1):
        yield f"main_bijection({cfg.n_main},{i})", lambda i=i: check_bijection(main_bijection(cfg.n_main, i))
    for i in range(1, cfg.n_asmdpp + 1):
        yield f"asm_to_dpp({cfg.n_asmdpp},{i})", lambda i=i: check_bijection(asm_to_dpp(cfg.n_asmdpp, i))
    yield "asm_recurrence(4,1)", lambda: verify(asm_recurrence(4, 1)).ok
    yield "from_det(4)", lambda: verify(from_det(4)).ok
    yield "lgv(4)", lambda: verify(lgv_dpp_sij(4)).ok


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-main", type=int, default=3)
    p.add_argument("--n-asmdpp", type=int, default=4)
    p.add_argument("--warm", action="store_true", help="keep caches between cases")
    ns = p.parse_args(argv)
    cfg = TimingConfig(ns.n_main, ns.n_asmdpp, not ns.warm)
    ok_all = True
    for name, fn in cases(cfg):
        if cfg.cold:
            _clear_caches()
        t0 = time.perf_counter()
        ok = fn()
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:<24} {time.perf_counter() - t0:7.2f}s")
    return 0 if ok_all else 1


if __name__ == "__main__":
    raise SystemExit(main())
