"""Command-line front end.

Exit statuses: 0 = Hamiltonian or undecided, 2 = proven non-Hamiltonian,
1 = bad input or a failed reproduction claim.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .core import FaultFileError, FaultSet, HypercubeError, format_faults, parse_faults
from .cycles import Kind
from .enumeration import CheckpointError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NON_HAMILTONIAN = 2


def _load(path: str, n: Optional[int]) -> FaultSet:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    f = parse_faults(text)
    if n is not None and n != f.n:
        raise FaultFileError(f"--n {n} disagrees with the file header n={f.n}")
    return f


def _emit(args, obj, text: str) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# --- subcommands --------------------------------------------------------------

def cmd_check(args) -> int:
    from .heuristic import NO_HC, run_heuristic
    from .solver import find_hamiltonian
    from .traps import detect_traps

    f = _load(args.file, args.n)
    reports = detect_traps(f.n, f, generic_max_T=args.generic_max_t)
    outcome = run_heuristic(f.n, f)
    verdict = None
    if args.exact:
        verdict = find_hamiltonian(f.n, f)
    proven = bool(reports) or outcome.verdict == NO_HC or (verdict is not None and not verdict.hamiltonian)
    obj = {
        "n": f.n,
        "faults": [list(e) for e in f.edges],
        "traps": [r.to_json() for r in reports],
        "heuristic": outcome.to_json(),
    }
    if verdict is not None:
        obj["exact"] = {"hamiltonian": verdict.hamiltonian,
                        "cycle": list(verdict.cycle.vertices) if verdict.cycle else None}
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(f"Q_{f.n} with {len(f)} faulty edges")
        for r in reports:
            print(f"trap {r.kind.value} side={r.side} T={list(r.T)}")
        print(f"heuristic: {outcome.verdict}")
        print("trace: " + json.dumps([s.to_json() for s in outcome.trace]))
        if verdict is not None:
            print("exact: " + ("Hamiltonian" if verdict.hamiltonian else "non-Hamiltonian"))
    return EXIT_NON_HAMILTONIAN if proven else EXIT_OK


def cmd_solve(args) -> int:
    from .solver import find_hamiltonian

    f = _load(args.file, args.n)
    v = find_hamiltonian(f.n, f)
    obj = {"n": f.n, "hamiltonian": v.hamiltonian,
           "cycle": list(v.cycle.vertices) if v.cycle else None, "nodes": v.nodes}
    _emit(args, obj, str(v.cycle) if v.hamiltonian else "non-Hamiltonian")
    return EXIT_OK if v.hamiltonian else EXIT_NON_HAMILTONIAN


def cmd_canon(args) -> int:
    from .symmetry import canonical_form

    f = _load(args.file, args.n)
    cf = canonical_form(f)
    if args.format == "json":
        print(json.dumps({"n": f.n, "edges": [list(e) for e in cf.rep.edges],
                          "witness": {"perm": list(cf.witness.perm), "xor": cf.witness.xor}},
                         indent=2, sort_keys=True))
    else:
        sys.stdout.write(format_faults(cf.rep))
    return EXIT_OK


def cmd_traps(args) -> int:
    from .traps import detect_traps, generate_trap

    if args.traps_cmd == "detect":
        f = _load(args.file, args.n)
        reports = detect_traps(f.n, f, generic_max_T=args.generic_max_t)
        _emit(args, [r.to_json() for r in reports],
              "\n".join(f"{r.kind.value} side={r.side} T={list(r.T)} boundary={[tuple(e) for e in r.boundary]}"
                        for r in reports) or "no traps")
        return EXIT_NON_HAMILTONIAN if reports else EXIT_OK
    if args.traps_cmd == "generate":
        if args.kind in {"T", "S", "R"}:
            from .catalog import preset
            f = preset(args.kind)
        else:
            f = generate_trap(Kind(args.kind), args.n, args.side)
        if args.format == "json":
            print(json.dumps({"n": f.n, "edges": [list(e) for e in f.edges]}, indent=2))
        else:
            sys.stdout.write(format_faults(f))
        return EXIT_OK
    # catalog
    from .catalog import TRAP_TABLE

    rows = []
    ns = range(3, 8)
    for kind, row in TRAP_TABLE.items():
        cells = []
        for n in ns:
            size = row.size(n)
            if size is None:
                cells.append("-")
            elif not row.minimal(n, 0) or not row.minimal(n, 1):
                note = "nm" if not row.minimal(n, 0) and not row.minimal(n, 1) else \
                       ("nm0" if not row.minimal(n, 0) else "nm1")
                cells.append(f"{size}({note})")
            else:
                cells.append(str(size))
        rows.append({"kind": kind.value, "formula": row.formula,
                     "sizes": {n: row.size(n) for n in ns}, "cells": cells})
    text = [f"{'kind':8} {'|F|':7} " + " ".join(f"n={n:<7}" for n in ns)]
    for r in rows:
        text.append(f"{r['kind']:8} {r['formula']:7} " + " ".join(f"{c:9}" for c in r["cells"]))
    text.append("nm = generated trap is not minimal (nm0 / nm1: only that side)")
    _emit(args, [{k: v for k, v in r.items() if k != "cells"} for r in rows], "\n".join(text))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import ClassifyOptions, classify_all

    opts = ClassifyOptions(minimality=args.minimality, heuristic_all=args.heuristic_all, jobs=args.jobs,
                           out=args.out, checkpoint=args.checkpoint)
    s = classify_all(args.n, args.k, opts, max_classes=args.max_classes)
    if args.format == "json":
        print(s.dumps())
    else:
        print(f"Q_{s.n}, k={s.k}: {s.total} classes" + ("" if s.complete else " (partial)"))
        for cat, c in s.counts.items():
            print(f"  {cat:12} {c}")
        if s.trapped_by_kind:
            print("  trapped by first kind: " + ", ".join(f"{k}={v}" for k, v in s.trapped_by_kind.items()))
        for rep in s.undetected:
            print("  undetected: " + " ".join(f"({u},{v})" for u, v in rep))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .claims import run_tier

    if args.format != "json":
        print(f"tier {args.tier}, sampling seed {args.seed}", flush=True)
    results = run_tier(args.tier, jobs=args.jobs, seed=args.seed,
                       report=None if args.format == "json" else (lambda r: print(r.line(), flush=True)))
    if args.format == "json":
        print(json.dumps({"tier": args.tier, "seed": args.seed, "claims": [r.to_json() for r in results]},
                         indent=2))
    else:
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} claims passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_ERROR


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    p = argparse.ArgumentParser(prog="hypertrap", description="Hamiltonicity of faulty hypercubes")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("file", help="fault-set file ('-' for stdin)")
        sp.add_argument("--n", type=int, help="expected dimension (must match the file header)")
        return sp

    sp = with_file(sub.add_parser("check", parents=[common], help="trap scan and heuristic"))
    sp.add_argument("--exact", action="store_true", help="also run the exact solver")
    sp.add_argument("--generic-max-t", type=int, default=None, help="also search DHW sets up to this size")
    sp.set_defaults(func=cmd_check)

    sp = with_file(sub.add_parser("solve", parents=[common], help="exact Hamiltonian cycle search"))
    sp.set_defaults(func=cmd_solve)

    sp = with_file(sub.add_parser("canon", parents=[common], help="canonical representative of the isomorphism class"))
    sp.set_defaults(func=cmd_canon)

    tp = sub.add_parser("traps", help="trap detection, generation and the size catalog")
    tsub = tp.add_subparsers(dest="traps_cmd", required=True)
    sp = with_file(tsub.add_parser("detect", parents=[common]))
    sp.add_argument("--generic-max-t", type=int, default=None)
    sp = tsub.add_parser("generate", parents=[common])
    sp.add_argument("kind", choices=[k.value for k in Kind if k is not Kind.GenericDHW] + ["T", "S", "R"],
                    help="trap kind, or T/S/R for the ten-fault Q_5 presets")
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--side", type=int, choices=(0, 1), default=0)
    tsub.add_parser("catalog", parents=[common])
    tp.set_defaults(func=cmd_traps)

    sp = sub.add_parser("enumerate", parents=[common], help="classify all isomorphism classes of k-fault sets")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--minimality", action="store_true")
    sp.add_argument("--heuristic-all", action="store_true", help="run the heuristic on Hamiltonian classes too")
    sp.add_argument("--checkpoint")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="JSONL record stream")
    sp.add_argument("--max-classes", type=int, default=None, help="stop after this many new classes")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify-paper", parents=[common], help="recompute the reference results (acceptance checks)")
    sp.add_argument("--tier", choices=("quick", "full", "extended"), default="quick")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0, help="seed for the sampled claims")
    sp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FaultFileError, HypercubeError, CheckpointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
