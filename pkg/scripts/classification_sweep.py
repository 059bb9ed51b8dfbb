"""Sweep random gadget matrices and tabulate gadget class against the weight tests, per column count."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

import numpy as np

from spidernest.bitmat import BitMatrix
from spidernest.phasepoly import GateClass, classify, from_rows
from spidernest.triortho import (degree_check, is_semi_triorthogonal, is_triorthogonal, random_semi_triorthogonal,
                                 random_triorthogonal)


@dataclass
class SweepConfig:
    max_vars: int = 8
    trials: int = 300
    max_rows: int = 64
    seed: int = 0


def sample(rng, n, cfg):
    kind = rng.integers(0, 3)
    if kind == 1 and n:
        return random_semi_triorthogonal(rng, n, duplicate_pairs=int(rng.integers(0, 3)))
    if kind == 2 and n:
        return random_triorthogonal(rng, n)
    rows = rng.integers(0, 1 << n, size=int(rng.integers(0, cfg.max_rows + 1)))
    return BitMatrix([int(r) for r in rows], n)


def main(cfg: SweepConfig):
    rng = np.random.default_rng(cfg.seed)
    print(f"{'n':>3} {'identity':>9} {'clifford':>9} {'non-cliff':>9} {'mismatch':>9} {'sec':>6}")
    for n in range(cfg.max_vars + 1):
        t0 = time.perf_counter()
        counts = Counter()
        mismatches = 0
        for _ in range(cfg.trials):
            m = sample(rng, n, cfg)
            cls = classify(from_rows(m))
            counts[cls] += 1
            semi = is_semi_triorthogonal(m)
            mismatches += (cls is GateClass.IDENTITY) != is_triorthogonal(m)
            mismatches += (cls is not GateClass.NON_CLIFFORD) != semi
            mismatches += degree_check(m)[1] != semi
        print(f"{n:>3} {counts[GateClass.IDENTITY]:>9} {counts[GateClass.CLIFFORD]:>9} "
              f"{counts[GateClass.NON_CLIFFORD]:>9} {mismatches:>9} {time.perf_counter() - t0:>6.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    main(SweepConfig(**vars(ap.parse_args())))
