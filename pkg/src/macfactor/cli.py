"""Command-line front end.

Fillings are typed top row first, rows separated by ``;`` and entries by
``,``, the way tableaux are drawn: ``--filling "6,2;2,4,8;4,4,1,3"``.

Exit status: 0 when a computation succeeds or a check is verified, 1 when
a check finds a counterexample, 2 for bad input or a refused budget.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import Sequence

from . import bijections as bij
from . import combinatorics as cc
from ._batch import DEFAULT_MAX_STATES, BudgetExceeded
from .engine import (
    ShapeSpec,
    check_conjugation_symmetry,
    check_factorization,
    check_unit_specialization,
    macdonald_polynomial,
    specialize_expansion,
)
from .polynomials import SymmetryError, symmetry_canonicalize
from .report import Verdict


class InputError(ValueError):
    pass


def _int(token: str, what: str) -> int:
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        raise InputError(f"{what} {token!r} is not an integer") from None


def parse_shape(text: str) -> cc.Partition:
    """``"4,3,2"`` -> ``(4, 3, 2)``; the empty string is the empty partition."""
    if not text.strip():
        return ()
    parts = [_int(tok, "shape part") for tok in text.split(",")]
    if any(p < 1 for p in parts):
        raise InputError(f"shape parts must be positive: {text}")
    if any(y > x for x, y in zip(parts, parts[1:])):
        raise InputError(f"shape parts must be weakly decreasing: {text}")
    return tuple(parts)


def parse_filling(shape: cc.Partition | None, text: str) -> cc.Filling:
    """Parse top-down rows. With ``shape`` given, row lengths must match it."""
    rows = [[_int(tok, "entry") for tok in row.split(",")] for row in text.split(";")] if text.strip() else []
    if shape is not None:
        if len(rows) != len(shape):
            raise InputError(f"filling has {len(rows)} rows, shape has {len(shape)}")
        for n, (row, width) in enumerate(zip(rows, reversed(shape)), start=1):
            if len(row) != width:
                raise InputError(f"row length mismatch: row {n} from the top has {len(row)} entries, expected {width}")
    if any(x < 1 for row in rows for x in row):
        raise InputError("filling entries must be positive")
    try:
        return cc.Filling.from_top_down(rows)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def render_filling(T: cc.Filling) -> str:
    return str(T)


def _comma(xs) -> str:
    return ",".join(map(str, xs))


def _cells(cs) -> str:
    return " ".join(f"({i},{j})" for i, j in sorted(cs)) or "-"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # single line, exit 2
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--format", choices=("human", "machine-lines"), default="human")
    common.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES,
                        help="refuse to enumerate more fillings than this")

    parser = _Parser(prog="macfactor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tail_args(p: argparse.ArgumentParser, n_default: int | None = None) -> None:
        p.add_argument("--mu-prime", required=True, help="body partition, e.g. 2,2")
        p.add_argument("--n", type=int, default=n_default, required=n_default is None, help="tail width")
        p.add_argument("--l", type=int, required=True, help="tail height, also the root-of-unity order")

    p = sub.add_parser("compute", parents=[common], help="monomial expansion of H~_mu")
    p.add_argument("--shape", required=True)
    p.add_argument("--vars", type=int, help="number of variables (default |shape|)")
    p.add_argument("--l", type=int, help="specialize t at a primitive l-th root of unity")

    p = sub.add_parser("stats", parents=[common], help="statistics of one filling")
    p.add_argument("--shape")
    p.add_argument("--filling", required=True)

    for name, text in (("tau", "apply the involution tau"), ("split", "apply the splitting map pi*")):
        p = sub.add_parser(name, parents=[common], help=text)
        tail_args(p)
        p.add_argument("--filling", required=True)

    p = sub.add_parser("verify-factorization", parents=[common], help="check the root-of-unity factorization")
    tail_args(p)
    p.add_argument("--vars", type=int, help="number of variables (default |mu|, fewer is a partial check)")

    for name, text in (("verify-bijection", "inv/maj transport by tau and pi*"),
                       ("verify-involution", "tau o tau = id")):
        p = sub.add_parser(name, parents=[common], help=text)
        tail_args(p)
        p.add_argument("--vars", type=int, help="alphabet size (default min(|mu|, 6))")

    p = sub.add_parser("verify-lemmas", parents=[common], help="two-row lemmas; key lemma with --mu-prime")
    p.add_argument("--max-entry", type=int, default=6)
    p.add_argument("--mu-prime", help="also replay tau on (mu', 2^l)")
    p.add_argument("--l", type=int)
    p.add_argument("--vars", type=int, help="alphabet size for the key lemma (default min(|mu|, 5))")

    p = sub.add_parser("verify-symmetry", parents=[common], help="q<->t conjugation symmetry and q=t=1 check")
    p.add_argument("--shape", required=True)
    p.add_argument("--vars", type=int)
    return parser


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def kv(self, key: str, value: object) -> None:
        self.lines.append(f"{key}={value}" if self.fmt == "machine-lines" else f"{key} = {value}")

    def verdict(self, v: Verdict) -> None:
        self.lines += v.machine_lines() if self.fmt == "machine-lines" else v.human_lines()


def _tail_shape(args, n: int | None = None) -> bij.TailShape:
    try:
        return bij.TailShape(parse_shape(args.mu_prime), args.n if n is None else n, args.l)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _cmd_compute(args, out: Output) -> int:
    shape = parse_shape(args.shape)
    m = args.vars if args.vars is not None else max(sum(shape), 1)
    if m < 1:
        raise InputError("--vars must be positive")
    H = macdonald_polynomial(shape, m, workers=args.workers, max_states=args.max_states)
    if args.l is not None:
        if args.l < 1:
            raise InputError("--l must be positive")
        H = specialize_expansion(H, args.l)
    out.kv("shape", _comma(shape))
    out.kv("vars", m)
    if args.l is not None:
        out.kv("l", args.l)
    if m < sum(shape):
        out.kv("partial", "true")
    try:
        table = symmetry_canonicalize(H)
    except SymmetryError as exc:
        out.lines.append(f"FAILED {exc}")
        return 1
    for lam in sorted(table):
        if out.fmt == "machine-lines":
            out.lines.append(f"m[{_comma(lam)}]={table[lam]}")
        else:
            out.lines.append(f"{_comma(lam)} : {table[lam]}")
    return 0


def _cmd_stats(args, out: Output) -> int:
    shape = parse_shape(args.shape) if args.shape is not None else None
    T = parse_filling(shape, args.filling)
    shape = T.shape
    out.kv("filling", render_filling(T))
    out.kv("shape", _comma(shape))
    out.kv("maj", cc.maj(T))
    out.kv("inv", cc.inv(T, check=True))
    out.kv("descents", _cells(cc.descents(T)))
    out.kv("inversions", cc.inversion_count(T))
    for i in range(len(shape), 0, -1):
        same, below = cc.inv_sets(T, i)
        row = {"Inv_same": len(same), "Inv_below": len(below)}
        if i >= 2:
            row.update(maj=cc.maj_rows(T, i), arm=cc.arm_rows(T, i), inv=cc.inv_rows(T, i))
        if out.fmt == "machine-lines":
            out.lines += [f"row.{i}.{k}={v}" for k, v in row.items()]
        else:
            out.lines.append(f"row {i}: " + " ".join(f"{k}={v}" for k, v in row.items()))
    return 0


def _cmd_tau(args, out: Output) -> int:
    ts = _tail_shape(args)
    T = parse_filling(ts.mu, args.filling)
    trace = bij.tau_trace(T, ts)
    U = trace[-1]
    S = bij.pi_star(T, ts)
    sm, si = bij.stats_of_split(S)
    for n, F in enumerate(trace[1:], start=1):
        out.kv(f"step.{n}", render_filling(F))
    out.kv("tau", render_filling(U))
    out.kv("tau.maj", cc.maj(U))
    out.kv("tau.inv", cc.inv(U))
    out.kv("split.maj", sm)
    out.kv("split.inv", si)
    out.kv("maj_congruent_mod_l", str((cc.maj(U) - sm) % ts.l == 0).lower())
    out.kv("inv_equal", str(cc.inv(U) == si).lower())
    return 0


def _cmd_split(args, out: Output) -> int:
    ts = _tail_shape(args)
    T = parse_filling(ts.mu, args.filling)
    S = bij.pi_star(T, ts)
    for name, F in (("body", S.body), ("tail", S.tail)):
        out.kv(name, render_filling(F))
        out.kv(f"{name}.maj", cc.maj(F))
        out.kv(f"{name}.inv", cc.inv(F))
    sm, si = bij.stats_of_split(S)
    out.kv("split.maj", sm)
    out.kv("split.inv", si)
    return 0


def _cmd_verify_factorization(args, out: Output) -> int:
    try:
        spec = ShapeSpec(parse_shape(args.mu_prime), args.n, args.l)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.l < 1:
        raise InputError("--l must be at least 1")
    if args.vars is not None and args.vars < 1:
        raise InputError("--vars must be positive")
    v = check_factorization(spec, args.vars, workers=args.workers, max_states=args.max_states)
    out.verdict(v)
    return 0 if v.ok else 1


def _cmd_verify_bijection(args, out: Output) -> int:
    ts = _tail_shape(args)
    m = args.vars if args.vars is not None else min(sum(ts.mu), 6)
    v = bij.verify_theorem(ts, m, workers=args.workers, max_states=args.max_states)
    out.verdict(v)
    return 0 if v.ok else 1


def _cmd_verify_involution(args, out: Output) -> int:
    ts = _tail_shape(args)
    if ts.n != 2:
        raise InputError("tau is the identity for n = 1; use --n 2")
    m = args.vars if args.vars is not None else min(sum(ts.mu), 6)
    v = bij.verify_involution(ts, m, workers=args.workers, max_states=args.max_states)
    out.verdict(v)
    return 0 if v.ok else 1


def _cmd_verify_lemmas(args, out: Output) -> int:
    if args.max_entry < 2:
        raise InputError("--max-entry must be at least 2")
    verdicts = [bij.verify_lemmas(args.max_entry)]
    if args.mu_prime is not None:
        if args.l is None:
            raise InputError("--l is required with --mu-prime")
        ts = _tail_shape(args, n=2)
        m = args.vars if args.vars is not None else min(sum(ts.mu), 5)
        verdicts.append(bij.verify_key_lemma(ts, m, workers=args.workers, max_states=args.max_states))
    for v in verdicts:
        out.verdict(v)
    return 0 if all(v.ok for v in verdicts) else 1


def _cmd_verify_symmetry(args, out: Output) -> int:
    shape = parse_shape(args.shape)
    kw = dict(workers=args.workers, max_states=args.max_states)
    verdicts = [check_conjugation_symmetry(shape, args.vars, **kw),
                check_unit_specialization(shape, args.vars, **kw)]
    for v in verdicts:
        out.verdict(v)
    return 0 if all(v.ok for v in verdicts) else 1


COMMANDS = {
    "compute": _cmd_compute,
    "stats": _cmd_stats,
    "tau": _cmd_tau,
    "split": _cmd_split,
    "verify-factorization": _cmd_verify_factorization,
    "verify-bijection": _cmd_verify_bijection,
    "verify-involution": _cmd_verify_involution,
    "verify-lemmas": _cmd_verify_lemmas,
    "verify-symmetry": _cmd_verify_symmetry,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.workers < 1:
        stderr.write("error: --workers must be at least 1\n")
        return 2
    out = Output(args.format)
    try:
        code = COMMANDS[args.command](args, out)
    except BudgetExceeded as exc:
        stderr.write(f"error: budget: {exc}\n")
        return 2
    except (InputError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    stdout.write("".join(line + "\n" for line in out.lines))
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
