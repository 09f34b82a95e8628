"""A conflict-driven clause-learning SAT solver.

Literals use the DIMACS convention externally (``v`` or ``-v`` with ``v >= 1``)
and ``2 * (v - 1) + sign`` internally.  The solver supports incremental clause
addition, solving under assumptions, and wall-clock or conflict budgets.

Main ingredients: two watched literals with a separate binary-clause path,
first-UIP learning with local minimization, VSIDS activities on a lazy heap,
phase saving, Luby restarts, and LBD-based learnt clause deletion.
"""
from __future__ import annotations

import heapq
import random
import time
from typing import Iterable, Sequence

SAT, UNSAT, UNKNOWN = True, False, None


def luby(i: int) -> int:
    """The ``i``-th element (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        if i >= 1 << (k - 1):
            i -= (1 << (k - 1)) - 1
        k -= 1
        while (1 << k) - 1 < i:
            k += 1


def to_internal(lit: int) -> int:
    if lit == 0:
        raise ValueError("0 is not a literal")
    return 2 * (abs(lit) - 1) + (lit < 0)


def to_external(lit: int) -> int:
    v = (lit >> 1) + 1
    return -v if lit & 1 else v


class Solver:
    """Incremental CDCL solver.

    Args:
        seed: Seed for the occasional random decision; fixes tie-breaking.
        random_freq: Probability of a random branching variable.
        restart_base: Conflicts per Luby unit.
    """

    def __init__(self, seed: int = 0, random_freq: float = 0.0, restart_base: int = 100):
        self.nvars = 0
        self.val: list[int] = []  # per literal: 1 true, -1 false, 0 free
        self.level: list[int] = []
        self.reason: list[list[int] | None] = []
        self.watches: list[list[list[int]]] = []
        self.bin_watches: list[list[tuple[int, list[int]]]] = []
        self.activity: list[float] = []
        self.polarity: list[int] = []
        self.seen: bytearray = bytearray()
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.heap: list[tuple[float, int]] = []
        self.var_inc = 1.0
        self.var_decay = 0.95
        self.learnts: list[list[int]] = []
        self.lbd: dict[int, int] = {}
        self.num_original = 0
        self.ok = True
        self.model: list[bool] = []
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self.rng = random.Random(seed)
        self.random_freq = random_freq
        self.restart_base = restart_base
        self.max_learnts = 4000

    # -- variables and clauses ----------------------------------------------------
    def new_var(self) -> int:
        v = self.nvars
        self.nvars += 1
        self.val += [0, 0]
        self.level.append(0)
        self.reason.append(None)
        self.watches += [[], []]
        self.bin_watches += [[], []]
        self.activity.append(0.0)
        self.polarity.append(1)  # prefer false first
        self.seen.append(0)
        heapq.heappush(self.heap, (0.0, v))
        return v + 1

    def ensure_vars(self, n: int) -> None:
        while self.nvars < n:
            self.new_var()

    def add_clause(self, lits: Iterable[int]) -> bool:
        """Add a clause of DIMACS literals; returns False once the formula is UNSAT."""
        if not self.ok:
            return False
        if self.trail_lim:
            self._cancel_until(0)
        val = self.val
        clause: list[int] = []
        present = set()
        for ext in lits:
            lit = to_internal(ext)
            if (lit >> 1) >= self.nvars:
                self.ensure_vars((lit >> 1) + 1)
                val = self.val
            if lit ^ 1 in present or val[lit] == 1:
                return True
            if lit in present or val[lit] == -1:
                continue
            present.add(lit)
            clause.append(lit)
        self.num_original += 1
        if not clause:
            self.ok = False
            return False
        if len(clause) == 1:
            self._enqueue(clause[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self._attach(clause)
        return True

    def add_clauses(self, clauses: Iterable[Sequence[int]]) -> bool:
        for c in clauses:
            if not self.add_clause(c):
                return False
        return True

    def _attach(self, c: list[int]) -> None:
        if len(c) == 2:
            a, b = c
            self.bin_watches[a].append((b, [b, a]))
            self.bin_watches[b].append((a, c))
        else:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)

    # -- assignment ---------------------------------------------------------------
    def _enqueue(self, lit: int, reason: list[int] | None) -> None:
        self.val[lit] = 1
        self.val[lit ^ 1] = -1
        v = lit >> 1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        trail, val, reason, polarity = self.trail, self.val, self.reason, self.polarity
        heap, act = self.heap, self.activity
        stop = self.trail_lim[lvl]
        for i in range(len(trail) - 1, stop - 1, -1):
            lit = trail[i]
            v = lit >> 1
            val[lit] = 0
            val[lit ^ 1] = 0
            reason[v] = None
            polarity[v] = lit & 1
            heapq.heappush(heap, (-act[v], v))
        del trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = min(self.qhead, stop)
        if len(heap) > 4 * self.nvars + 1000:
            self.heap = [(-act[v], v) for v in range(self.nvars) if val[2 * v] == 0]
            heapq.heapify(self.heap)

    def _propagate(self) -> list[int] | None:
        val = self.val
        trail = self.trail
        watches = self.watches
        bin_watches = self.bin_watches
        level = self.level
        reason = self.reason
        dl = len(self.trail_lim)
        qhead = self.qhead
        confl = None
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            false_lit = p ^ 1
            for other, c in bin_watches[false_lit]:
                vo = val[other]
                if vo == 1:
                    continue
                if vo == -1:
                    confl = c
                    break
                val[other] = 1
                val[other ^ 1] = -1
                v = other >> 1
                level[v] = dl
                reason[v] = c
                trail.append(other)
            if confl is not None:
                break
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if val[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == -1:
                        confl = c
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                    else:
                        val[first] = 1
                        val[first ^ 1] = -1
                        v = first >> 1
                        level[v] = dl
                        reason[v] = c
                        trail.append(first)
            del ws[j:]
            if confl is not None:
                break
        self.propagations += qhead - self.qhead
        self.qhead = qhead if confl is None else len(trail)
        return confl

    # -- conflict analysis ----------------------------------------------------------
    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for i in range(self.nvars):
                act[i] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-act[i], i) for i in range(self.nvars) if self.val[2 * i] == 0]
            heapq.heapify(self.heap)
        elif self.val[2 * v] == 0:
            heapq.heappush(self.heap, (-act[v], v))

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        seen = self.seen
        level = self.level
        reason = self.reason
        trail = self.trail
        dl = len(self.trail_lim)
        learnt = [0]
        path = 0
        p = -1
        idx = len(trail) - 1
        while True:
            for q in confl if p < 0 else confl[1:]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    self._bump(v)
                    seen[v] = 1
                    if level[v] >= dl:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            confl = reason[p >> 1]
            seen[p >> 1] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1
        # local minimization: drop literals implied by other learnt literals
        keep = [learnt[0]]
        for q in learnt[1:]:
            r = reason[q >> 1]
            if r is None:
                keep.append(q)
                continue
            for x in r[1:]:
                vx = x >> 1
                if not seen[vx] and level[vx] > 0:
                    keep.append(q)
                    break
        for q in learnt[1:]:
            seen[q >> 1] = 0
        learnt = keep
        if len(learnt) == 1:
            return learnt, 0
        best = 1
        for i in range(2, len(learnt)):
            if level[learnt[i] >> 1] > level[learnt[best] >> 1]:
                best = i
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    def _reduce_db(self) -> None:
        reason, val = self.reason, self.val
        lbd = self.lbd

        def locked(c):
            return reason[c[0] >> 1] is c and val[c[0]] == 1

        cands = [c for c in self.learnts if lbd[id(c)] > 2 and not locked(c)]
        cands.sort(key=lambda c: lbd[id(c)], reverse=True)
        drop = {id(c) for c in cands[: len(cands) // 2]}
        if not drop:
            return
        self.learnts = [c for c in self.learnts if id(c) not in drop]
        for i in drop:
            del lbd[i]
        for ws in self.watches:
            if ws:
                ws[:] = [c for c in ws if id(c) not in drop]

    # -- search -------------------------------------------------------------------
    def _pick_branch(self) -> int:
        val = self.val
        if self.random_freq and self.rng.random() < self.random_freq:
            v = self.rng.randrange(self.nvars)
            if val[2 * v] == 0:
                return 2 * v + self.polarity[v]
        heap = self.heap
        act = self.activity
        while heap:
            a, v = heapq.heappop(heap)
            if val[2 * v] == 0 and -a == act[v]:
                return 2 * v + self.polarity[v]
        for v in range(self.nvars):
            if val[2 * v] == 0:
                return 2 * v + self.polarity[v]
        return -1

    def solve(self, assumptions: Sequence[int] = (), time_limit: float | None = None,
              conflict_limit: int | None = None) -> bool | None:
        """Return True (SAT), False (UNSAT under the assumptions) or None (budget)."""
        if not self.ok:
            return False
        assumps = [to_internal(a) for a in assumptions]
        for a in assumps:
            self.ensure_vars((a >> 1) + 1)
        self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return False
        deadline = None if time_limit is None else time.monotonic() + time_limit
        start_conflicts = self.conflicts
        restarts = 0
        next_restart = self.conflicts + luby(1) * self.restart_base
        val = self.val
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, bt = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    if len(learnt) > 2:
                        self.learnts.append(learnt)
                        self.lbd[id(learnt)] = len({self.level[q >> 1] for q in learnt})
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= self.var_decay
                if self.conflicts % 64 == 0:
                    if deadline is not None and time.monotonic() > deadline:
                        self._cancel_until(0)
                        return None
                if conflict_limit is not None and self.conflicts - start_conflicts >= conflict_limit:
                    self._cancel_until(0)
                    return None
                continue
            if self.conflicts >= next_restart:
                restarts += 1
                next_restart = self.conflicts + luby(restarts + 1) * self.restart_base
                self._cancel_until(0)
                continue
            if len(self.learnts) >= self.max_learnts + len(self.trail):
                self._reduce_db()
                self.max_learnts = int(self.max_learnts * 1.1)
            nxt = -1
            while len(self.trail_lim) < len(assumps):
                p = assumps[len(self.trail_lim)]
                if val[p] == 1:
                    self.trail_lim.append(len(self.trail))
                elif val[p] == -1:
                    self._cancel_until(0)
                    return False
                else:
                    nxt = p
                    break
            if nxt < 0:
                nxt = self._pick_branch()
                if nxt < 0:
                    self.model = [val[2 * v] == 1 for v in range(self.nvars)]
                    self._cancel_until(0)
                    return True
                self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(nxt, None)

    def value(self, lit: int) -> bool:
        """Truth value of a DIMACS literal in the last model."""
        v = self.model[abs(lit) - 1]
        return v if lit > 0 else not v

    def stats(self) -> dict[str, int]:
        return {
            "vars": self.nvars,
            "clauses": self.num_original,
            "learnts": len(self.learnts),
            "conflicts": self.conflicts,
            "decisions": self.decisions,
            "propagations": self.propagations,
        }
