"""List the transversal diagonal gate generators of a CSS code and check each against the brute-force oracle."""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from spidernest.css import (colour_code_8, format_transversal_op, oracle_transversal, parse_code, reed_muller_15,
                            transversal_generators)
from spidernest.phasepoly import classify

BUILTIN = {"rm15": reed_muller_15, "cube8": colour_code_8}


@dataclass
class SearchConfig:
    code: str = "rm15"
    oracle: bool = True


def load(name: str):
    if name in BUILTIN:
        return BUILTIN[name]()
    return parse_code(Path(name).read_text())


def main(cfg: SearchConfig):
    code = load(cfg.code)
    t0 = time.perf_counter()
    gens = transversal_generators(code)
    elapsed = time.perf_counter() - t0
    print(f"n={code.n} k={code.k} r={code.r}: {len(gens)} generators in {elapsed:.3f}s")
    for h, p in gens:
        ok = oracle_transversal(code, h, p) if cfg.oracle else None
        logical = classify(h.phase_polynomial()).value
        print(f"  p={format_transversal_op(p)}  logical={dict(h.coeffs) or '{}'} ({logical})  oracle={ok}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--code", default=SearchConfig.code, help="rm15, cube8 or a code file")
    ap.add_argument("--no-oracle", dest="oracle", action="store_false")
    main(SearchConfig(**vars(ap.parse_args())))
