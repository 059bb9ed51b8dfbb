"""Compare phase-folding equivalence with basis-state simulation on random CNOT+T circuit pairs."""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from spidernest.circuits import (brute_force_equivalent, circuits_equivalent, perturb, random_circuit,
                                 rewrite_equivalent)


@dataclass
class SweepConfig:
    pairs: int = 2000
    max_qubits: int = 6
    max_gates: int = 40
    seed: int = 0


def main(cfg: SweepConfig):
    rng = np.random.default_rng(cfg.seed)
    fold_time = sim_time = 0.0
    disagreements = equivalent = 0
    for i in range(cfg.pairs):
        n = int(rng.integers(1, cfg.max_qubits + 1))
        c1 = random_circuit(rng, n, int(rng.integers(0, cfg.max_gates + 1)), ("cnot", "t", "tdg", "s", "z", "ccz"))
        c2 = rewrite_equivalent(rng, c1) if i % 2 == 0 else perturb(rng, c1)
        t0 = time.perf_counter()
        a = circuits_equivalent(c1, c2)
        t1 = time.perf_counter()
        b = brute_force_equivalent(c1, c2)
        t2 = time.perf_counter()
        fold_time += t1 - t0
        sim_time += t2 - t1
        equivalent += a
        disagreements += a != b
    print(f"{cfg.pairs} pairs, {equivalent} equivalent, {disagreements} disagreements")
    print(f"phase folding {fold_time:.3f}s, basis simulation {sim_time:.3f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    main(SweepConfig(**vars(ap.parse_args())))
