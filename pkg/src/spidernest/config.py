"""Size limits shared by the brute-force oracles and dense transforms."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ORACLE_CAP_ENV = "SPIDERNEST_ORACLE_CAP"


@dataclass(frozen=True)
class Limits:
    # max qubits for 2^n phase tables (about 2^n bytes each)
    oracle_cap: int = 24
    # max variables for the dense Moebius transform of indicator polynomials
    dense_indicator_cap: int = 24
    # max 2^r stabiliser combinations enumerated per logical word
    codeword_cap: int = 1 << 16
    # max rows of the Z8 system built for transversal-gate searches
    nhat_cap: int = 4096

    def __post_init__(self):
        for name in ("oracle_cap", "dense_indicator_cap", "codeword_cap", "nhat_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_LIMITS = Limits()


def limits_from_env(base: Limits = DEFAULT_LIMITS) -> Limits:
    raw = os.environ.get(ORACLE_CAP_ENV)
    if raw is None:
        return base
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ORACLE_CAP_ENV} must be an integer, got {raw!r}") from None
    return replace(base, oracle_cap=cap)
