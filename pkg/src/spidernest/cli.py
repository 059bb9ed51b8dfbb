"""Batch command-line interface.

Exit codes: 0 the checked property holds, 1 it does not, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import bitmat, circuits, css, nests, phasepoly, triortho, zring
from .bitmat import BitMatrix, bitstring
from .config import ORACLE_CAP_ENV, Limits, limits_from_env
from .phasepoly import format_subset

log = logging.getLogger("spidernest")

INPUT_ERRORS = (OSError, UnicodeDecodeError, bitmat.BitMatrixError, zring.ZRingError,
                phasepoly.PhasePolyError, triortho.TriorthoError, nests.NestError,
                css.CodeError, circuits.CircuitError)


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    oracle_cap: int = 20
    verbosity: int = 0
    fmt: str = "human"

    def __post_init__(self):
        if self.oracle_cap <= 0:
            raise UsageError("oracle cap must be positive")
        if self.fmt not in ("human", "machine"):
            raise UsageError(f"unknown output format {self.fmt!r}")


class Out:
    """Prints facts either as prose or as stable ``key=value`` lines."""

    def __init__(self, cfg: CliConfig, stream=None):
        self.cfg = cfg
        self.stream = stream or sys.stdout

    def fact(self, key: str, value, human: str | None = None) -> None:
        if isinstance(value, bool):
            value = str(value).lower()
        if self.cfg.fmt == "machine":
            print(f"{key}={value}", file=self.stream)
        else:
            print(human if human is not None else f"{key}: {value}", file=self.stream)

    def text(self, body: str) -> None:
        print(body.rstrip("\n"), file=self.stream)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _matrix(path: str) -> BitMatrix:
    return bitmat.parse_matrix(_read(path))


def cmd_check_triortho(args, cfg: CliConfig, out: Out) -> int:
    m = _matrix(args.matrix)
    tri = triortho.is_triorthogonal(m)
    semi = triortho.is_semi_triorthogonal(m)
    status = "triorthogonal" if tri else "semi-triorthogonal" if semi else "neither"
    out.fact("status", status, status)
    cls = phasepoly.classify(phasepoly.from_rows(m))
    out.fact("class", cls.value, f"gadget class: {cls.value}")
    if m.ncols <= cfg.oracle_cap:
        table = phasepoly.oracle_phases(phasepoly.from_rows(m), cap=cfg.oracle_cap)
        ocls = phasepoly.classify_table(table)
        out.fact("oracle_class", ocls.value, f"oracle class: {ocls.value} (2^{m.ncols} states)")
        if ocls is not cls:
            log.error("oracle disagrees with the monomial classification")
            return 1
    else:
        out.fact("oracle_class", "skipped", f"oracle skipped: {m.ncols} columns exceeds cap {cfg.oracle_cap}")
    if not tri and cfg.verbosity:
        for s, w in triortho.triorthogonality_defects(m):
            out.fact("defect", f"{format_subset(s)}:{w}", f"  {format_subset(s)} has weight {w}")
    return 0 if tri else 1


def cmd_indicator(args, cfg: CliConfig, out: Out) -> int:
    m = _matrix(args.matrix)
    literal = triortho.indicator_polynomial(m)
    p = triortho.gadget_indicator(m)
    deg, semi_by_degree = triortho.degree_check(m)
    semi = triortho.is_semi_triorthogonal(m)
    out.fact("indicator", str(literal), f"P_M = {literal}")
    out.fact("gadget_indicator", str(p), f"P_M with even row count = {p}")
    out.fact("degree", deg, f"degree {deg} on {m.ncols} variables")
    out.fact("degree_bound_holds", semi_by_degree, f"degree <= n-4: {semi_by_degree}")
    out.fact("semi_triorthogonal", semi, f"semi-triorthogonal: {semi}")
    consistent = semi == semi_by_degree
    out.fact("consistent", consistent, "degree test agrees" if consistent else "degree test DISAGREES")
    return 0 if consistent else 1


def cmd_gen_nest(args, cfg: CliConfig, out: Out) -> int:
    bits = args.monomial
    if set(bits) - {"0", "1"} or len(bits) != args.vars:
        raise UsageError(f"--monomial must be a {args.vars}-bit string")
    mask = bitmat.pack([int(ch) for ch in bits])
    out.text(bitmat.format_matrix(nests.monomial_nest(mask, args.vars)))
    return 0


def cmd_prove_identity(args, cfg: CliConfig, out: Out) -> int:
    if args.verify:
        cert = nests.parse_certificate(_read(args.verify))
        if args.matrix and _matrix(args.matrix).nonzero_rows() != cert.target:
            out.fact("certificate", "target-mismatch", "certificate target differs from the matrix")
            return 1
        ok = nests.verify_certificate(cert, oracle_vars=min(nests.CERT_ORACLE_VARS, cfg.oracle_cap))
        out.fact("certificate", "valid" if ok else "invalid", "certificate valid" if ok else "certificate INVALID")
        return 0 if ok else 1
    if not args.matrix:
        raise UsageError("prove-identity needs a matrix or --verify <cert>")
    m = _matrix(args.matrix)
    if not triortho.is_triorthogonal(m):
        out.fact("status", "not-triorthogonal", "matrix is not triorthogonal; its gadgets are not the identity")
        return 1
    cert = nests.decompose_identity(m)
    out.text(nests.format_certificate(cert))
    return 0


def cmd_rm_dual(args, cfg: CliConfig, out: Out) -> int:
    ok = triortho.rm_dual_verify(args.r, args.m)
    d1 = triortho.rm_dimension(args.r, args.m)
    d2 = triortho.rm_dimension(args.m - args.r - 1, args.m)
    out.fact("dim", f"{d1}+{d2}={d1 + d2}", f"dim RM({args.r},{args.m}) + dim RM({args.m - args.r - 1},{args.m}) = {d1 + d2}")
    out.fact("dual", ok, f"RM({args.r},{args.m})^perp == RM({args.m - args.r - 1},{args.m}): {ok}")
    return 0 if ok else 1


def _describe_pair(h: css.LogicalGate, p: css.TransversalOp) -> str:
    gadgets = ",".join(f"{bitstring(s, h.k)}:{c}" for s, c in h.coeffs.items()) or "identity"
    return f"h={gadgets} p={css.format_transversal_op(p)}"


def cmd_css_transversal(args, cfg: CliConfig, out: Out) -> int:
    code = css.parse_code(_read(args.code))
    out.fact("code", f"n={code.n},k={code.k},r={code.r}", f"CSS code with n={code.n}, k={code.k}, r={code.r}")
    h = css.parse_logical_gate(_read(args.h), code.k) if args.h else None
    p = css.parse_transversal_op(_read(args.p), code.n) if args.p else None
    if h is not None and p is not None:
        ok = css.check_transversal(code, h, p)
        out.fact("transversal", ok, f"{_describe_pair(h, p)} triorthogonal: {ok}")
        if code.k + code.r <= cfg.oracle_cap:
            agree = css.oracle_transversal(code, h, p, cap=cfg.oracle_cap) == ok
            out.fact("oracle_agrees", agree, f"brute-force oracle agrees: {agree}")
            if not agree:
                return 1
        return 0 if ok else 1
    if h is not None or p is not None:
        sol = css.solve_transversal(code, h if h is not None else p)
        if sol is None:
            out.fact("solution", "none", "no transversal completion exists")
            return 1
        out.fact("solution", _describe_pair(*sol), _describe_pair(*sol))
        return 0
    gens = css.transversal_generators(code)
    out.fact("generators", len(gens), f"{len(gens)} generators of the transversal D3 group:")
    for i, (gh, gp) in enumerate(gens):
        out.fact(f"generator.{i}", _describe_pair(gh, gp), f"  [{i}] {_describe_pair(gh, gp)}")
    return 0


def cmd_circ_equiv(args, cfg: CliConfig, out: Out) -> int:
    c1 = circuits.parse_circuit(_read(args.circ1))
    c2 = circuits.parse_circuit(_read(args.circ2))
    ok = circuits.circuits_equivalent(c1, c2)
    out.fact("equivalent", ok, "equivalent up to global phase" if ok else "not equivalent")
    return 0 if ok else 1


def cmd_simulate(args, cfg: CliConfig, out: Out) -> int:
    pp = phasepoly.parse_gadgets(_read(args.gadgets))
    table = phasepoly.oracle_phases(pp, cap=cfg.oracle_cap)
    for x, ph in enumerate(table):
        out.fact(bitstring(x, pp.num_vars), int(ph), f"{bitstring(x, pp.num_vars)} {int(ph)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spidernest", description=__doc__.splitlines()[0])
    ap.add_argument("--format", dest="fmt", choices=("human", "machine"), default="human")
    ap.add_argument("--oracle-cap", type=int, default=None,
                    help=f"max qubits for brute-force checks (env {ORACLE_CAP_ENV}, default 20)")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-triortho", help="triorthogonality and gadget class of a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check_triortho)

    p = sub.add_parser("indicator", help="indicator polynomial and degree test")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_indicator)

    p = sub.add_parser("gen-nest", help="emit the nest matrix of a monomial")
    p.add_argument("--monomial", required=True, help="bitstring of the variables in the monomial")
    p.add_argument("--vars", type=int, required=True)
    p.set_defaults(func=cmd_gen_nest)

    p = sub.add_parser("prove-identity", help="emit or verify a spider-nest certificate")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--verify", metavar="CERT")
    p.set_defaults(func=cmd_prove_identity)

    p = sub.add_parser("rm-dual", help="verify RM(r,m)^perp = RM(m-r-1,m)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_rm_dual)

    p = sub.add_parser("css-transversal", help="check, solve or enumerate transversal D3 gates")
    p.add_argument("code")
    p.add_argument("--h", metavar="GATEFILE")
    p.add_argument("--p", metavar="OPFILE")
    p.add_argument("--all", action="store_true", help="list generators (default with neither --h nor --p)")
    p.set_defaults(func=cmd_css_transversal)

    p = sub.add_parser("circ-equiv", help="CNOT+T circuit equivalence up to global phase")
    p.add_argument("circ1")
    p.add_argument("circ2")
    p.set_defaults(func=cmd_circ_equiv)

    p = sub.add_parser("simulate", help="phase table of a gadget list")
    p.add_argument("gadgets")
    p.set_defaults(func=cmd_simulate)
    return ap


def run(argv: list[str] | None = None, stdout=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cap = args.oracle_cap
        if cap is None:
            cap = limits_from_env(Limits(oracle_cap=20)).oracle_cap
        cfg = CliConfig(oracle_cap=cap, verbosity=args.verbose, fmt=args.fmt)
        return args.func(args, cfg, Out(cfg, stdout))
    except (UsageError, ValueError, *INPUT_ERRORS) as e:
        print(f"spidernest {args.command}: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
