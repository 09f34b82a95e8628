"""Solver selection: the built-in CDCL solver or a compiled PySAT solver.

Both sides expose the same small interface (``ensure_vars``, ``add_clauses``,
``solve``, ``model``, ``value``, ``stats``), so the cost search in
``compile.minimize`` does not care which one runs.
"""
from __future__ import annotations

import time
from typing import Iterable, Sequence

from .solver import Solver

BUILTIN = "builtin"
DEFAULT_EXTERNAL = "cadical153"
BACKENDS = (BUILTIN, "auto", "cadical195", "cadical153", "glucose4", "maplechrono", "minisat22")


def pysat_available() -> bool:
    try:
        import pysat.solvers  # noqa: F401
    except ImportError:
        return False
    return True


class ExternalSolver:
    """Adapter over a PySAT solver.

    Time limits are enforced by solving in conflict-budgeted chunks and
    checking the clock between chunks; the solver keeps its learnt clauses
    across chunks and across calls.
    """

    def __init__(self, name: str = DEFAULT_EXTERNAL, seed: int = 0, chunk: int = 20000):
        from pysat.solvers import Solver as PySolver

        self.name = name
        self.seed = seed
        self.chunk = chunk
        self._solver = PySolver(name=name)
        self.nvars = 0
        self.num_original = 0
        self.ok = True
        self.model: list[bool] = []
        self.calls = 0

    def ensure_vars(self, n: int) -> None:
        self.nvars = max(self.nvars, n)

    def add_clause(self, lits: Iterable[int]) -> bool:
        c = list(lits)
        if not c:
            self.ok = False
            return False
        self.ensure_vars(max(abs(x) for x in c))
        self._solver.add_clause(c)
        self.num_original += 1
        return self.ok

    def add_clauses(self, clauses: Iterable[Sequence[int]]) -> bool:
        for c in clauses:
            self.add_clause(c)
        return self.ok

    def solve(self, assumptions: Sequence[int] = (), time_limit: float | None = None,
              conflict_limit: int | None = None) -> bool | None:
        if not self.ok:
            return False
        self.calls += 1
        deadline = None if time_limit is None else time.monotonic() + time_limit
        spent = 0
        while True:
            step = self.chunk
            if conflict_limit is not None:
                step = min(step, conflict_limit - spent)
                if step <= 0:
                    return None
            if deadline is None and conflict_limit is None:
                r = self._solver.solve(assumptions=list(assumptions))
            else:
                self._solver.conf_budget(step)
                r = self._solver.solve_limited(assumptions=list(assumptions))
            spent += step
            if r is not None:
                break
            if deadline is not None and time.monotonic() >= deadline:
                return None
        if r:
            raw = self._solver.get_model() or []
            model = [False] * self.nvars
            for lit in raw:
                if abs(lit) <= self.nvars:
                    model[abs(lit) - 1] = lit > 0
            self.model = model
        return bool(r)

    def value(self, lit: int) -> bool:
        v = self.model[abs(lit) - 1]
        return v if lit > 0 else not v

    def stats(self) -> dict:
        return {"backend": self.name, "vars": self.nvars, "clauses": self.num_original,
                "calls": self.calls}


def make_solver(backend: str = "auto", seed: int = 0):
    """``builtin``, a PySAT solver name, or ``auto`` (PySAT when installed)."""
    if backend == "auto":
        backend = DEFAULT_EXTERNAL if pysat_available() else BUILTIN
    if backend == BUILTIN:
        return Solver(seed=seed)
    if backend not in BACKENDS:
        raise ValueError(f"unknown solver backend {backend!r}; choose from {BACKENDS}")
    if not pysat_available():
        raise ValueError(f"backend {backend!r} needs the python-sat package")
    return ExternalSolver(backend, seed)
