"""DIMACS CNF/WCNF reading and writing, and solver model parsing."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence, TextIO


def format_cnf(nvars: int, clauses: Sequence[Sequence[int]],
               comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {nvars} {len(clauses)}")
    lines += [" ".join(map(str, c)) + " 0" for c in clauses]
    return "\n".join(lines) + "\n"


def write_cnf(path: str | Path, nvars: int, clauses: Sequence[Sequence[int]],
              comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_cnf(nvars, clauses, comments))


def format_wcnf(nvars: int, hard: Sequence[Sequence[int]],
                soft: Sequence[tuple[int, Sequence[int]]],
                comments: Sequence[str] = ()) -> str:
    """Classic weighted format with an explicit ``top`` weight for hard clauses."""
    top = sum(w for w, _ in soft) + 1
    lines = [f"c {c}" for c in comments]
    lines.append(f"p wcnf {nvars} {len(hard) + len(soft)} {top}")
    lines += [f"{top} " + " ".join(map(str, c)) + " 0" for c in hard]
    lines += [f"{w} " + " ".join(map(str, c)) + " 0" for w, c in soft]
    return "\n".join(lines) + "\n"


def write_wcnf(path: str | Path, nvars: int, hard, soft, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(format_wcnf(nvars, hard, soft, comments))


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        yield lineno, line


def parse_cnf(text: str | TextIO) -> tuple[int, list[list[int]]]:
    """Parse DIMACS CNF; clauses may span lines.  Returns ``(nvars, clauses)``."""
    if not isinstance(text, str):
        text = text.read()
    nvars = nclauses = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for lineno, line in _tokens(text):
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            nvars, nclauses = int(parts[2]), int(parts[3])
            continue
        if nvars is None:
            raise ValueError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                if abs(lit) > nvars:
                    raise ValueError(f"line {lineno}: literal {lit} exceeds {nvars} variables")
                cur.append(lit)
    if cur:
        clauses.append(cur)
    if nvars is None:
        raise ValueError("missing problem line")
    if len(clauses) != nclauses:
        raise ValueError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return nvars, clauses


def parse_wcnf(text: str) -> tuple[int, list[list[int]], list[tuple[int, list[int]]]]:
    """Parse classic WCNF.  Returns ``(nvars, hard, soft)``."""
    nvars = top = None
    hard: list[list[int]] = []
    soft: list[tuple[int, list[int]]] = []
    for lineno, line in _tokens(text):
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 5 or parts[1] != "wcnf":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            nvars, top = int(parts[2]), int(parts[4])
            continue
        if parts[-1] != "0":
            raise ValueError(f"line {lineno}: clause must end in 0")
        w = int(parts[0])
        lits = [int(t) for t in parts[1:-1]]
        if w >= top:
            hard.append(lits)
        else:
            soft.append((w, lits))
    if nvars is None:
        raise ValueError("missing problem line")
    return nvars, hard, soft


def parse_model(text: str) -> tuple[str, dict[int, bool]]:
    """Read ``s`` and ``v`` lines of a solver's output.

    Returns the status word (``SATISFIABLE``, ``UNSATISFIABLE``, ``OPTIMUM``,
    ``UNKNOWN``) and a map from variable to truth value.
    """
    status = "UNKNOWN"
    vlines: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            status = line[2:].strip().replace(" ", "_")
            if status == "OPTIMUM_FOUND":
                status = "OPTIMUM"
        elif line.startswith("v "):
            vlines.append(line[2:].split())
    model: dict[int, bool] = {}
    # MaxSAT-evaluation style: one bit string instead of signed literals
    bitstring = bool(vlines) and all(
        len(b) == 1 and len(b[0]) > 1 and set(b[0]) <= {"0", "1"} for b in vlines
    )
    if bitstring:
        bits = "".join(b[0] for b in vlines)
        return status, {i: ch == "1" for i, ch in enumerate(bits, start=1)}
    for body in vlines:
        for tok in body:
            lit = int(tok)
            if lit:
                model[abs(lit)] = lit > 0
    return status, model
