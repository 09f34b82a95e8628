"""Command-line front end.

Every command prints a JSON document on stdout (``--pretty`` switches to a
short human-readable table).  Exit codes: 0 success, 1 bad input or failed
check, 2 unsatisfiable at the requested ansatz length, 3 budget exhausted
without any circuit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .code import BUILTIN_CODES, CodeError, StabilizerCode, builtin, check, load_code, logical_tableau
from .compile import (DEFAULT_BUDGET, UNSAT, CompileError, CompileResult, baseline_compile,
                      compile, compile_deepening, compile_many, connectivity)
from .ft import GadgetCircuit, GuardSearchError, check_fault_tolerance, find_gadget, is_sound
from .gauge import freedom_count, freedom_count_factored
from .gf2 import BitMatrix
from .pauli import GateSequence, flatten
from .sat import BACKENDS
from .verify import implements_target

EXIT_OK, EXIT_INPUT, EXIT_UNSAT, EXIT_EXHAUSTED = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# File helpers
# ---------------------------------------------------------------------------
def read_matrix(text: str) -> BitMatrix:
    """Parse rows of 0/1 entries (whitespace between entries optional)."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].replace(" ", "").replace(",", "").strip()
        if not line:
            continue
        if set(line) - {"0", "1"}:
            raise InputError(f"matrix row {raw!r} must contain only 0 and 1")
        rows.append([int(ch) for ch in line])
    if not rows or len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows must be nonempty and of equal length")
    return BitMatrix.from_array(rows)


def write_matrix(m: BitMatrix) -> str:
    return str(m) + "\n"


def resolve_code(ref: str) -> StabilizerCode:
    """A builtin name or a JSON code file; validated either way."""
    try:
        code = builtin(ref) if ref in BUILTIN_CODES else load_code(ref)
        return check(code)
    except CodeError as exc:
        raise InputError(f"invalid code {ref!r}: {exc}") from None
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read code {ref!r}: {exc}") from None


def resolve_target(ref: str, k: int):
    path = Path(ref)
    try:
        if "@" not in ref and path.is_file():
            return logical_tableau(read_matrix(path.read_text()), k)
        return logical_tableau(ref, k)
    except (ValueError, IndexError) as exc:
        raise InputError(f"bad target {ref!r}: {exc}") from None


def read_circuit(path: str, n: int | None = None) -> GateSequence:
    try:
        seq = GateSequence.from_text(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read circuit {path!r}: {exc}") from None
    except ValueError as exc:
        raise InputError(f"bad circuit {path!r}: {exc}") from None
    if n is not None:
        if seq.n > n:
            raise InputError(f"circuit touches qubit {seq.n} but only {n} are available")
        seq = GateSequence(n, seq.gates)
    return seq


def resolve_connectivity(ref: str, n: int):
    try:
        return connectivity(ref, n)
    except (OSError, ValueError) as exc:
        raise InputError(f"bad connectivity {ref!r}: {exc}") from None


def emit(doc, pretty: bool) -> None:
    if not pretty:
        print(json.dumps(doc, indent=2))
        return
    width = max((len(str(k)) for k in doc), default=0)
    for key, value in doc.items():
        if isinstance(value, str) and "\n" in value:
            print(f"{key}:")
            print(value.rstrip("\n"))
        else:
            print(f"{str(key).ljust(width)}  {value}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------
def _write_compile_outputs(res: CompileResult, out: str | None, gauge_out: str | None,
                           summary_out: str | None, code: StabilizerCode, want) -> dict:
    text = flatten(res.circuit).to_text()
    doc = res.summary()
    if out:
        Path(out).write_text(text)
        # re-verify from the file alone
        rep = implements_target(read_circuit(out, code.n), code, want, strict_signs=True)
        doc["verified_from_file"] = rep.ok
        if not rep.ok:
            raise InputError(f"written circuit failed verification: {rep.failures}")
        doc["circuit"] = out
    else:
        doc["circuit_text"] = text
    if gauge_out:
        Path(gauge_out).write_text(write_matrix(res.gauge.f_prime))
        doc["gauge"] = gauge_out
    if summary_out:
        Path(summary_out).write_text(json.dumps(res.summary(), indent=2) + "\n")
    return doc


def cmd_compile(args) -> int:
    code = resolve_code(args.code)
    con = resolve_connectivity(args.con, code.n)
    if args.budget is not None and args.budget <= 0:
        raise InputError("budget must be positive")
    if args.l is not None and args.l < 0:
        raise InputError("l must be nonnegative")
    targets = args.target
    if len(targets) > 1:
        if args.emit_cnf or args.gauge_out or args.summary_out or args.deepening:
            raise InputError("multiple targets support only --out-dir")
        if args.l is None:
            raise InputError("multiple targets need --l")
        wants = [resolve_target(t, code.k) for t in targets]
        jobs = [dict(code=code, target=w, l=args.l, con=con, budget=args.budget, seed=args.seed,
                     backend=args.backend)
                for w in wants]
        results = compile_many(jobs, args.jobs)
        out_dir = Path(args.out_dir) if args.out_dir else None
        if out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
        docs, worst = [], EXIT_OK
        for i, (t, w, r) in enumerate(zip(targets, wants, results)):
            if isinstance(r, CompileError):
                docs.append({"target": t, "status": r.status})
                worst = max(worst, EXIT_UNSAT if r.status == UNSAT else EXIT_EXHAUSTED)
                continue
            out = str(out_dir / f"circuit_{i + 1}.txt") if out_dir else None
            doc = _write_compile_outputs(r, out, None, None, code, w)
            doc["target"] = t
            docs.append(doc)
        emit({"results": docs}, False)
        return worst
    want = resolve_target(targets[0], code.k)
    try:
        if args.deepening:
            res = compile_deepening(code, want, args.l_max, con, args.budget, args.seed,
                                        backend=args.backend)
        else:
            if args.l is None:
                raise InputError("give --l or --deepening with --l-max")
            res = compile(code, want, args.l, con, args.budget, args.seed, emit_cnf=args.emit_cnf,
                              backend=args.backend)
    except CompileError as exc:
        emit({"status": exc.status, "message": str(exc)}, args.pretty)
        return EXIT_UNSAT if exc.status == UNSAT else EXIT_EXHAUSTED
    doc = _write_compile_outputs(res, args.out, args.gauge_out, args.summary_out, code, want)
    emit(doc, args.pretty)
    return EXIT_OK


def cmd_verify(args) -> int:
    code = resolve_code(args.code)
    want = resolve_target(args.target, code.k)
    seq = read_circuit(args.circuit, code.n)
    if not seq.is_unitary():
        raise InputError("verify expects a unitary circuit (no resets or measurements)")
    rep = implements_target(seq, code, want, strict_signs=args.strict_signs)
    emit(rep.to_dict(), args.pretty)
    return EXIT_OK if rep.ok else EXIT_INPUT


def cmd_gauge_count(args) -> int:
    if not 0 <= args.k <= args.n:
        raise InputError("need 0 <= k <= n")
    if args.factored:
        a, b, c = freedom_count_factored(args.n, args.k)
        emit({"count": str(a * b * c), "factors": [str(a), str(b), str(c)]}, args.pretty)
    else:
        print(freedom_count(args.n, args.k))
    return EXIT_OK


def _gadget_from_file(path: str, code: StabilizerCode) -> GadgetCircuit:
    seq = read_circuit(path)
    if seq.n < code.n:
        seq = GateSequence(code.n, seq.gates)
    return GadgetCircuit(code.n, seq.n - code.n, seq)


def cmd_ft_check(args) -> int:
    code = resolve_code(args.code)
    rep = check_fault_tolerance(_gadget_from_file(args.circuit, code), code)
    doc = rep.to_dict()
    if args.pretty:
        doc = {k: v for k, v in doc.items() if k != "undetectable"} | {"undetectable": len(rep.undetectable)}
    emit(doc, args.pretty)
    return EXIT_OK if rep.verdict else EXIT_INPUT


def cmd_ft_flag(args) -> int:
    code = resolve_code(args.code)
    seq = read_circuit(args.circuit, code.n)
    if not seq.is_unitary():
        raise InputError("ft-flag expects the bare unitary circuit")
    try:
        gad = find_gadget(seq, code, single_flag=args.single_flag)
    except GuardSearchError as exc:
        emit({"verdict": False, "message": str(exc)}, args.pretty)
        return EXIT_INPUT
    rep = check_fault_tolerance(gad, code)
    doc = {
        "verdict": rep.verdict,
        "sound": is_sound(gad, seq),
        "flag_qubits": gad.flag_qubits,
        "two_flags": gad.two_flags,
        "guards": [{"pauli": str(g.pauli), "start": g.start, "end": g.end, "flag": g.flag}
                   for g in gad.guards],
        "total_faults": rep.total_faults,
    }
    text = gad.ops.to_text()
    if args.out:
        Path(args.out).write_text(text)
        doc["circuit"] = args.out
    else:
        doc["circuit_text"] = text
    emit(doc, args.pretty)
    return EXIT_OK if rep.verdict else EXIT_INPUT


def cmd_baseline(args) -> int:
    seq = read_circuit(args.circuit, args.n)
    if not seq.is_unitary():
        raise InputError("baseline expects a unitary circuit")
    con = resolve_connectivity(args.con, seq.n)
    if not con.is_connected():
        raise InputError("connectivity graph must be connected")
    circ = baseline_compile(seq, con)
    text = flatten(circ).to_text()
    doc = {"cz_count": circ.cz_count, "length": circ.length}
    if args.out:
        Path(args.out).write_text(text)
        doc["circuit"] = args.out
    else:
        doc["circuit_text"] = text
    emit(doc, args.pretty)
    return EXIT_OK


def cmd_list(args) -> int:
    if args.pretty:
        for name in sorted(BUILTIN_CODES):
            c = builtin(name)
            print(f"{name}  [[{c.n},{c.k}]]")
    else:
        for name in sorted(BUILTIN_CODES):
            print(name)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcsynth", description="Hardware-tailored logical Clifford synthesis.")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    # also accept --pretty after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output instead of JSON")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", parents=[common], help="synthesize a minimum-CZ circuit for a logical gate")
    c.add_argument("--code", required=True, help="builtin name or JSON code file")
    c.add_argument("--target", required=True, action="append",
                   help="gate word such as H@1 or CX@2,1, or a 2k x 2k matrix file; repeatable")
    c.add_argument("--con", required=True, help="ring, line, star, complete, cube8, grid:RxC, or an edge file")
    c.add_argument("--l", type=int, help="number of CZ layers")
    c.add_argument("--deepening", action="store_true", help="try l = 0..l-max and keep the best")
    c.add_argument("--l-max", type=int, default=3)
    c.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds (per length when deepening)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--backend", default="auto", choices=BACKENDS,
                   help="SAT solver: builtin CDCL, a PySAT solver, or auto (PySAT when installed)")
    c.add_argument("--out", help="circuit file")
    c.add_argument("--out-dir", help="directory for circuit files when several targets are given")
    c.add_argument("--gauge-out", help="file for the reduced freedom matrix")
    c.add_argument("--summary-out", help="file for the JSON summary")
    c.add_argument("--emit-cnf", help="write the DIMACS instance here")
    c.add_argument("--jobs", type=int, default=1, help="parallel workers for several targets")
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", parents=[common], help="check a circuit file against a logical target")
    v.add_argument("--code", required=True)
    v.add_argument("--circuit", required=True)
    v.add_argument("--target", required=True)
    v.add_argument("--strict-signs", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gauge-count", parents=[common], help="size of the freedom group for n physical, k logical qubits")
    g.add_argument("n", type=int)
    g.add_argument("k", type=int)
    g.add_argument("--factored", action="store_true")
    g.set_defaults(func=cmd_gauge_count)

    f = sub.add_parser("ft-check", parents=[common], help="exhaustive single-fault check of a (gadgeted) circuit")
    f.add_argument("--code", required=True)
    f.add_argument("--circuit", required=True, help="qubits beyond the code's n are flags")
    f.set_defaults(func=cmd_ft_check)

    fl = sub.add_parser("ft-flag", parents=[common], help="add flag gadgets until the circuit passes ft-check")
    fl.add_argument("--code", required=True)
    fl.add_argument("--circuit", required=True)
    fl.add_argument("--single-flag", action="store_true", help="never use a second flag per guard")
    fl.add_argument("--out")
    fl.set_defaults(func=cmd_ft_flag)

    b = sub.add_parser("baseline", parents=[common], help="route a circuit onto a connectivity graph with swaps")
    b.add_argument("--circuit", required=True)
    b.add_argument("--con", required=True)
    b.add_argument("--n", type=int, help="qubit count (default: highest qubit in the file)")
    b.add_argument("--out")
    b.set_defaults(func=cmd_baseline)

    ls = sub.add_parser("list-codes", parents=[common], help="names of the builtin codes")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
