"""Command line entry point: `osckit <command> [args] [--format text|json|dot]`.

Exit codes: 0 success, 1 negative verdict or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .classify import GroupRep, commensurability_field, commensurable, enumerate_classes, iso
from .cycles import ReductionError, cycle_of, decompose_trace, reduce_to_cycle
from .lattice import LatticeParams, lattice_generators
from .mat import format_mat, in_BT, parse_mat
from .quad import spectral_of_trace
from .selftest import run_selftest
from .symmetry import VerificationError, symmetry_data


class UsageError(Exception):
    pass


def _trace(text: str) -> int:
    T = int(text)
    if T < 3:
        raise argparse.ArgumentTypeError(f"trace must be > 2, got {T}")
    return T


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _matrix(text: str):
    try:
        B = parse_mat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not in_BT(B):
        raise argparse.ArgumentTypeError(f"{text} needs det 1 and trace > 2")
    return B


def _residue(text: str):
    try:
        return io.parse_residue(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rset(text: str) -> list[int]:
    out = set()
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out.update(range(int(lo), int(hi) + 1))
        elif part:
            out.add(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("r values must be positive")
    return sorted(out)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "dot"), default=None)

    p = argparse.ArgumentParser(prog="osckit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cycles", parents=[fmt], help="cycle decomposition of trace T")
    s.add_argument("T", type=_trace)

    s = sub.add_parser("classify", parents=[fmt], help="isomorphism classes for (T, r)")
    s.add_argument("T", type=_trace)
    s.add_argument("r", type=_positive)

    s = sub.add_parser("table", parents=[fmt], help="classification table for T = 3..tmax")
    s.add_argument("--tmax", type=_trace, default=7)
    s.add_argument("--rset", type=_rset, default=list(range(1, 25)))

    for name in ("iso", "commensurable"):
        s = sub.add_parser(name, parents=[fmt], help=f"{name} test for two groups (r B l)")
        for i in (1, 2):
            s.add_argument(f"r{i}", type=_positive)
            s.add_argument(f"B{i}", type=_matrix)
            s.add_argument(f"l{i}", type=_residue)

    s = sub.add_parser("symmetry", parents=[fmt], help="symmetry and reversing symmetry data")
    s.add_argument("B", type=_matrix)

    s = sub.add_parser("reduce", parents=[fmt], help="conjugate B into its reduced cycle")
    s.add_argument("B", type=_matrix)

    s = sub.add_parser("lattice-gens", parents=[fmt], help="lattice generators for Osc^r(B, l)")
    s.add_argument("r", type=_positive)
    s.add_argument("B", type=_matrix)
    s.add_argument("l", type=_residue)

    sub.add_parser("selftest", parents=[fmt], help="run the invariant checks")
    return p


def _emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        sys.stdout.write(io.dumps(obj) + "\n")
    else:
        sys.stdout.write(text if text is not None else io.kv_text(obj))


def run(args) -> int:
    fmt = args.format
    cmd = args.command
    if fmt == "dot" and cmd != "cycles":
        raise UsageError("--format dot is only available for 'cycles'")

    if cmd == "cycles":
        cycles = decompose_trace(args.T)
        fmt = fmt or "text"
        if fmt == "dot":
            sys.stdout.write(io.cycles_to_dot(args.T, cycles))
        else:
            _emit(io.cycles_to_json(args.T, cycles), fmt, io.cycles_to_text(args.T, cycles))
        return 0

    if cmd == "classify":
        cl = enumerate_classes(args.T, args.r)
        _emit(cl.to_json(), fmt or "text", io.classlist_to_text(cl))
        return 0

    if cmd == "table":
        data = io.table_data(args.tmax, args.rset)
        _emit({"tables": data}, fmt or "text", io.table_to_text(data))
        return 0

    if cmd in ("iso", "commensurable"):
        g1 = GroupRep(args.r1, args.B1, args.l1)
        g2 = GroupRep(args.r2, args.B2, args.l2)
        if cmd == "iso":
            ok, w = iso(g1, g2)
            obj = {"isomorphic": ok, "witness": w.to_json() if w else None}
        else:
            ok, w = commensurable(g1, g2)
            d1, d2 = commensurability_field(g1.T), commensurability_field(g2.T)
            obj = {
                "commensurable": ok,
                "field_d": d1 if ok else None,
                "fields": [d1, d2],
                "witness": {"m": w[0], "n": w[1]} if w else None,
            }
        _emit(obj, fmt or "json")
        return 0 if ok else 1

    if cmd == "symmetry":
        _emit(symmetry_data(args.B).to_json(), fmt or "json")
        return 0

    if cmd == "reduce":
        rep, C = reduce_to_cycle(args.B)
        z = cycle_of(rep)
        obj = {
            "input": format_mat(args.B),
            "representative": format_mat(rep),
            "conjugator": format_mat(C),
            "cycle": [format_mat(b) for b in z.elements],
        }
        _emit(obj, fmt or "json")
        return 0

    if cmd == "lattice-gens":
        rep = GroupRep(args.r, args.B, args.l)
        p = LatticeParams.from_rep(rep)
        names = ("gamma", "alpha", "beta", "delta")
        obj = {
            "params": p.to_json(),
            "spectral": spectral_of_trace(rep.T).to_json(),
            "generators": {n: g.to_json() for n, g in zip(names, lattice_generators(p))},
        }
        _emit(obj, fmt or "json")
        return 0

    if cmd == "selftest":
        results = run_selftest()
        failed = [r for r in results if not r[1]]
        if fmt == "json":
            obj = [{"check": n, "ok": ok, "detail": d, "seconds": round(t, 3)} for n, ok, d, t in results]
            sys.stdout.write(io.dumps(obj) + "\n")
        else:
            for n, ok, d, t in results:
                sys.stdout.write(f"{'PASS' if ok else 'FAIL'}  {n:<24} {t:6.2f}s  {d}\n")
        return 1 if failed else 0

    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (VerificationError, ReductionError) as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
