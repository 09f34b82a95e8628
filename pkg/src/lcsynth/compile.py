"""Hardware-tailored synthesis of logical Clifford circuits.

The circuit ansatz alternates single-qubit Clifford layers (SCLs) and CZ
layers (CZLs): ``A = B_{l+1} G_l ... G_1 B_1``.  A circuit implements the
logical gate ``C`` on a code with reduced encoding ``E'`` exactly when
``A E' = E' F'`` for some ``F'`` whose top ``2k`` rows are ``[C | 0]``.  This
module turns that condition into CNF (one auxiliary bit matrix per layer),
minimizes the number of CZ gates with a totalizer, and decodes models back
into verified circuits.  It also provides a routing baseline that needs no
solver.
"""
from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Sequence

from .code import StabilizerCode, check, logical_tableau
from .gauge import ReducedFreedom
from .gf2 import BitMatrix, BitVector, solve
from .pauli import (IDENTITY_SCL, CliffordTableau, GateSequence, LayeredCircuit, PauliOp, SymplecticMap,
                    adjacency, circuit_symplectic, pauli_frame_fix, scl_compose, symplectic_of, tableau_of)
from .sat import CNF, Solver, Totalizer, format_cnf, format_wcnf, make_solver
from .verify import implements_target

OPTIMAL = "optimal"
FEASIBLE = "feasible-budget-exhausted"
UNSAT = "unsat-at-this-length"
EXHAUSTED = "budget-exhausted"

DEFAULT_BUDGET = 600.0


class CompileError(RuntimeError):
    """Raised when no circuit is produced; ``status`` is UNSAT or EXHAUSTED."""

    def __init__(self, status: str, message: str = ""):
        super().__init__(message or status)
        self.status = status


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ConnectivityGraph:
    n: int
    edges: BitMatrix
    name: str = ""

    def __post_init__(self):
        g = self.edges
        if g.shape != (self.n, self.n):
            raise ValueError("adjacency matrix has the wrong size")
        if g.transpose() != g:
            raise ValueError("adjacency matrix must be symmetric")
        if any(g[i, i] for i in range(self.n)):
            raise ValueError("adjacency matrix must have a zero diagonal")

    @classmethod
    def from_edges(cls, n: int, edges, name: str = "") -> "ConnectivityGraph":
        return cls(n, adjacency(n, edges), name)

    def edge_list(self) -> list[tuple[int, int]]:
        g = self.edges
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if g[i, j]]

    def neighbors(self, q: int) -> list[int]:
        return [j for j in range(self.n) if self.edges[q, j]]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.edges[i, j])

    def shortest_path(self, a: int, b: int) -> list[int]:
        prev = {a: a}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            if u == b:
                break
            for w in self.neighbors(u):
                if w not in prev:
                    prev[w] = u
                    queue.append(w)
        if b not in prev:
            raise ValueError(f"qubits {a + 1} and {b + 1} are not connected")
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        return path[::-1]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def to_text(self) -> str:
        return "".join(f"{i + 1} {j + 1}\n" for i, j in self.edge_list())


def star(n: int) -> ConnectivityGraph:
    return ConnectivityGraph.from_edges(n, [(0, j) for j in range(1, n)], f"star({n})")


def line(n: int) -> ConnectivityGraph:
    return ConnectivityGraph.from_edges(n, [(j, j + 1) for j in range(n - 1)], f"line({n})")


def ring(n: int) -> ConnectivityGraph:
    edges = [(j, j + 1) for j in range(n - 1)]
    if n > 2:
        edges.append((0, n - 1))
    return ConnectivityGraph.from_edges(n, edges, f"ring({n})")


def grid(rows: int, cols: int) -> ConnectivityGraph:
    """Row-major grid: qubit ``r * cols + c`` sits at row ``r``, column ``c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.append((q, q + 1))
            if r + 1 < rows:
                edges.append((q, q + cols))
    return ConnectivityGraph.from_edges(rows * cols, edges, f"grid({rows},{cols})")


def cube8() -> ConnectivityGraph:
    """Edges of the 3-cube; qubit ``v`` sits at the vertex with bits of ``v``."""
    edges = [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)]
    return ConnectivityGraph.from_edges(8, edges, "cube8")


def complete(n: int) -> ConnectivityGraph:
    return ConnectivityGraph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)], f"complete({n})")


def parse_edges(text: str, n: int | None = None) -> ConnectivityGraph:
    """Edge list with one ``u v`` pair per line, 1-indexed; ``#`` starts a comment."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line_ = raw.split("#", 1)[0].strip()
        if not line_:
            continue
        parts = line_.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = int(parts[0]) - 1, int(parts[1]) - 1
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: qubits are 1-indexed")
        edges.append((u, v))
    top = max((max(e) for e in edges), default=-1) + 1
    n = top if n is None else n
    if top > n:
        raise ValueError(f"edge list mentions qubit {top} but n={n}")
    return ConnectivityGraph.from_edges(n, edges, "file")


def connectivity(spec: str, n: int) -> ConnectivityGraph:
    """Resolve ``ring``, ``line``, ``star``, ``complete``, ``cube8``, ``grid:RxC`` or a file."""
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name in ("ring", "line", "star", "complete"):
        size = int(arg) if arg else n
        g = {"ring": ring, "line": line, "star": star, "complete": complete}[name](size)
    elif name == "cube8":
        g = cube8()
    elif name == "grid":
        r, c = (int(t) for t in arg.lower().split("x"))
        g = grid(r, c)
    else:
        g = parse_edges(Path(spec).read_text(), n)
    if g.n != n:
        raise ValueError(f"connectivity {spec!r} has {g.n} qubits, code has n={n}")
    return g


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------
# forbidden (a, b, c, d) assignments of a single-qubit symplectic 2x2 matrix
_SINGULAR = [bits for bits in product((0, 1), repeat=4) if (bits[0] & bits[3]) ^ (bits[1] & bits[2]) == 0]


@dataclass
class SatInstance:
    cnf: CNF
    n: int
    k: int
    length: int
    target: BitMatrix
    e_prime: BitMatrix
    con: ConnectivityGraph
    scl_vars: list[list[tuple[int, int, int, int]]]
    czl_vars: list[dict[tuple[int, int], int]]
    f_vars: list[list[int]]
    cost_lits: list[int]

    def primary_literals(self, circuit: LayeredCircuit, gauge: ReducedFreedom) -> list[int]:
        """Unit literals fixing every SCL, CZL and F' variable to a decoded assignment."""
        lits = []
        for layer_vars, layer in zip(self.scl_vars, circuit.scls):
            for vs, entry in zip(layer_vars, layer):
                lits += [v if b else -v for v, b in zip(vs, entry)]
        for layer_vars, gamma in zip(self.czl_vars, circuit.czls):
            lits += [v if gamma[i, j] else -v for (i, j), v in layer_vars.items()]
        for r, row in enumerate(self.f_vars):
            for j, v in enumerate(row):
                lits.append(v if gauge.f_prime[2 * self.k + r, j] else -v)
        return lits

    def to_dimacs(self) -> str:
        comments = [f"logical Clifford synthesis n={self.n} k={self.k} l={self.length}",
                    f"cost literals (CZ edges): {' '.join(map(str, self.cost_lits))}"]
        return format_cnf(self.cnf.nvars, self.cnf.clauses, comments)

    def to_wcnf(self) -> str:
        soft = [(1, [-v]) for v in self.cost_lits]
        comments = [f"logical Clifford synthesis n={self.n} k={self.k} l={self.length}"]
        return format_wcnf(self.cnf.nvars, self.cnf.clauses, soft, comments)


def _apply_scl(cnf: CNF, m: list[list], scl: list[tuple[int, int, int, int]], n: int) -> list[list]:
    out = [row[:] for row in m]
    for q, (a, b, c, d) in enumerate(scl):
        for j, (x, z) in enumerate(zip(m[q], m[n + q])):
            out[q][j] = cnf.xor([cnf.and2(a, x), cnf.and2(b, z)])
            out[n + q][j] = cnf.xor([cnf.and2(c, x), cnf.and2(d, z)])
    return out


def _apply_czl(cnf: CNF, m: list[list], czl: dict[tuple[int, int], int], n: int) -> list[list]:
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), g in czl.items():
        nbrs[i].append((j, g))
        nbrs[j].append((i, g))
    out = [row[:] for row in m]
    for i in range(n):
        if not nbrs[i]:
            continue
        for col in range(len(m[0])):
            terms = [m[n + i][col]] + [cnf.and2(g, m[j][col]) for j, g in nbrs[i]]
            out[n + i][col] = cnf.xor(terms)
    return out


def encode(e_prime: BitMatrix, target_c: BitMatrix, l: int, con: ConnectivityGraph) -> SatInstance:
    """Encode ``B_{l+1} G_l ... B_1 E' = E' F'_C`` with ``Gamma_i <= Gamma_con`` as CNF."""
    n = e_prime.nrows // 2
    m = e_prime.ncols
    k = m - n
    if target_c.shape != (2 * k, 2 * k):
        raise ValueError(f"target must be {2 * k}x{2 * k} for k={k}")
    if con.n != n:
        raise ValueError("connectivity graph size differs from the code")
    if l < 0:
        raise ValueError("ansatz length must be non-negative")
    cnf = CNF()
    scl_vars = [[tuple(cnf.new_var(f"b{t}.{q}.{e}") for e in "abcd") for q in range(n)]
                for t in range(l + 1)]
    czl_vars = [{(i, j): cnf.new_var(f"g{t}.{i}.{j}") for i, j in con.edge_list()}
                for t in range(l)]
    f_vars = [[cnf.new_var(f"f{r}.{j}") for j in range(m)] for r in range(n - k)]
    for layer in scl_vars:
        for vs in layer:
            for bits in _SINGULAR:
                cnf.add([-v if b else v for v, b in zip(vs, bits)])

    mat: list[list] = [[bool(e_prime[r, c]) for c in range(m)] for r in range(2 * n)]
    for t in range(l):
        mat = _apply_scl(cnf, mat, scl_vars[t], n)
        mat = _apply_czl(cnf, mat, czl_vars[t], n)

    def rhs_terms(row: int, col: int) -> list:
        terms: list = []
        if col < 2 * k:
            acc = 0
            for i in range(2 * k):
                acc ^= e_prime[row, i] & target_c[i, col]
            terms.append(bool(acc))
        for r in range(n - k):
            if e_prime[row, 2 * k + r]:
                terms.append(f_vars[r][col])
        return terms

    for q, (a, b, c, d) in enumerate(scl_vars[l]):
        for col in range(m):
            x, z = mat[q][col], mat[n + q][col]
            cnf.xor_equal([cnf.and2(a, x), cnf.and2(b, z)] + rhs_terms(q, col))
            cnf.xor_equal([cnf.and2(c, x), cnf.and2(d, z)] + rhs_terms(n + q, col))
    cost = [v for layer in czl_vars for v in layer.values()]
    return SatInstance(cnf, n, k, l, target_c, e_prime, con, scl_vars, czl_vars, f_vars, cost)


def decode(inst: SatInstance, value) -> tuple[LayeredCircuit, ReducedFreedom]:
    """Build the circuit and gauge from a model; ``value(var) -> bool``."""
    n, k = inst.n, inst.k
    scls = [[tuple(int(value(v)) for v in vs) for vs in layer] for layer in inst.scl_vars]
    czls = []
    for layer in inst.czl_vars:
        czls.append(adjacency(n, [e for e, v in layer.items() if value(v)]))
    f = BitMatrix.zeros(n + k, n + k)
    for i in range(2 * k):
        for j in range(2 * k):
            f[i, j] = inst.target[i, j]
    for r, row in enumerate(inst.f_vars):
        for j, v in enumerate(row):
            f[2 * k + r, j] = int(value(v))
    return LayeredCircuit(n, scls, czls), ReducedFreedom(n, k, f)


# ---------------------------------------------------------------------------
# Cost minimization
# ---------------------------------------------------------------------------
@dataclass
class MinimizeResult:
    status: str
    model: list[bool] | None = None
    cost: int | None = None
    trace: list[tuple[int | None, str, float]] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def value(self, var: int) -> bool:
        return self.model[var - 1]


def _cost_of(model: list[bool], lits: Sequence[int]) -> int:
    return sum(1 for v in lits if model[v - 1])


def minimize(inst: SatInstance, budget: float | None = DEFAULT_BUDGET, seed: int = 0,
             solver: Solver | None = None, backend: str = "auto") -> MinimizeResult:
    """Find a model with the fewest true cost literals.

    Solves once without a bound, then descends linearly: each step assumes
    "at most ``cost - 1``" through a totalizer built on the first cost.  The
    result is ``optimal`` when the last bound is refuted, and
    ``feasible-budget-exhausted`` when time runs out with a model in hand.
    """
    start = time.monotonic()
    if budget is not None and budget <= 0:
        return MinimizeResult(EXHAUSTED)
    solver = solver or make_solver(backend, seed)
    solver.ensure_vars(inst.cnf.nvars)
    added = len(inst.cnf.clauses)
    if not solver.add_clauses(inst.cnf.clauses):
        return MinimizeResult(UNSAT, trace=[(None, "unsat", 0.0)], stats=solver.stats())

    def remaining():
        return None if budget is None else max(0.0, budget - (time.monotonic() - start))

    r = solver.solve(time_limit=remaining())
    trace = [(None, {True: "sat", False: "unsat", None: "timeout"}[r], time.monotonic() - start)]
    if r is None:
        return MinimizeResult(EXHAUSTED, trace=trace, stats=solver.stats())
    if r is False:
        return MinimizeResult(UNSAT, trace=trace, stats=solver.stats())
    best = list(solver.model)
    cost = _cost_of(best, inst.cost_lits)
    if cost == 0:
        return MinimizeResult(OPTIMAL, best, 0, trace, solver.stats())
    tot = Totalizer(inst.cnf, inst.cost_lits, cost)
    solver.ensure_vars(inst.cnf.nvars)
    solver.add_clauses(inst.cnf.clauses[added:])
    status = FEASIBLE
    while cost > 0:
        left = remaining()
        if left is not None and left <= 0:
            break
        r = solver.solve(assumptions=tot.at_most(cost - 1), time_limit=left)
        trace.append((cost - 1, {True: "sat", False: "unsat", None: "timeout"}[r],
                      time.monotonic() - start))
        if r is None:
            break
        if r is False:
            status = OPTIMAL
            break
        best = list(solver.model)
        cost = _cost_of(best, inst.cost_lits)
    else:
        status = OPTIMAL
    return MinimizeResult(status, best, cost, trace, solver.stats())


# ---------------------------------------------------------------------------
# End-to-end compilation
# ---------------------------------------------------------------------------
@dataclass
class CompileResult:
    circuit: LayeredCircuit
    gauge: ReducedFreedom
    cz_count: int
    status: str
    length: int
    wall_time: float = 0.0
    trace: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "cz_count": self.cz_count,
            "status": self.status,
            "length": self.length,
            "wall_time": round(self.wall_time, 3),
            "bounds": [[b, outcome, round(t, 3)] for b, outcome, t in self.trace],
        }


def compile(code: StabilizerCode, target, l: int, con: ConnectivityGraph,
            budget: float | None = DEFAULT_BUDGET, seed: int = 0,
            emit_cnf: str | Path | None = None, backend: str = "auto") -> CompileResult:
    """Synthesize a minimum-CZ circuit of ansatz length ``l`` for ``target``.

    Args:
        code: A valid stabilizer code.
        target: Logical Clifford as a k-qubit tableau, symplectic matrix, or
            gate string such as ``"CX@2,1"``.
        l: Number of CZ layers.
        con: Hardware connectivity.
        budget: Wall-clock seconds for the whole cost search.
        seed: Solver seed.
        emit_cnf: Optional path for a DIMACS copy of the instance.
        backend: ``builtin`` (the bundled CDCL solver), a PySAT solver name,
            or ``auto`` (PySAT's CaDiCaL when installed).

    Raises:
        CompileError: with status ``unsat-at-this-length`` or
            ``budget-exhausted`` when no circuit is found.
    """
    t0 = time.monotonic()
    check(code)
    want = logical_tableau(target, code.k)
    c_mat = want.symplectic.mat
    inst = encode(code.generator_matrix(), c_mat, l, con)
    if emit_cnf is not None:
        Path(emit_cnf).write_text(inst.to_dimacs())
    res = minimize(inst, budget, seed, backend=backend)
    if res.model is None:
        raise CompileError(res.status, f"{res.status} at l={l}")
    circuit, gauge = decode(inst, res.value)
    pauli_frame_fix(circuit, code, want)
    report = implements_target(circuit, code, want, strict_signs=True)
    if not report.ok:
        raise AssertionError(f"decoded circuit failed verification: {report.failures}")
    if report.gauge.f_prime != gauge.f_prime:
        raise AssertionError("decoded gauge disagrees with the extracted gauge")
    return CompileResult(circuit, gauge, circuit.cz_count, res.status, l,
                         time.monotonic() - t0, res.trace, res.stats)


def compile_deepening(code: StabilizerCode, target, l_max: int, con: ConnectivityGraph,
                      budget: float | None = DEFAULT_BUDGET, seed: int = 0,
                      backend: str = "auto") -> CompileResult:
    """Try ``l = 0..l_max`` (``budget`` seconds each) and keep the cheapest circuit."""
    best: CompileResult | None = None
    last = EXHAUSTED
    for l in range(l_max + 1):
        try:
            res = compile(code, target, l, con, budget, seed, backend=backend)
        except CompileError as exc:
            last = exc.status
            continue
        if best is None or res.cz_count < best.cz_count:
            best = res
        if best.cz_count == 0 and best.status == OPTIMAL:
            break
    if best is None:
        raise CompileError(last, f"no circuit for l <= {l_max}")
    return best


def _run_job(job: dict):
    try:
        return compile(**job)
    except CompileError as exc:
        return exc


def compile_many(jobs: Sequence[dict], n_jobs: int = 1) -> list:
    """Run independent ``compile`` calls; failures come back as CompileError values."""
    if n_jobs <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_run_job, jobs))


# ---------------------------------------------------------------------------
# Routing baseline
# ---------------------------------------------------------------------------
def _reduce_to_identity(s: BitMatrix, n: int) -> list[tuple[str, tuple[int, ...]]]:
    """Gates ``g_1, g_2, ...`` with ``... g_2 g_1 S = I`` (symplectic level).

    Every gate used is a symplectic involution, so ``S`` is realized by
    applying the same gates in reverse order.
    """
    m = s.copy()
    gates: list[tuple[str, tuple[int, ...]]] = []

    def apply(name, *qs):
        gates.append((name, qs))
        rows = m.rows
        if name == "H":
            (q,) = qs
            rows[q], rows[n + q] = rows[n + q], rows[q]
        elif name == "S":  # z += x
            (q,) = qs
            rows[n + q] ^= rows[q]
        elif name == "SQRT_X":  # x += z
            (q,) = qs
            rows[q] ^= rows[n + q]
        elif name == "CX":  # x_t += x_c, z_c += z_t
            c, t = qs
            rows[t] ^= rows[c]
            rows[n + c] ^= rows[n + t]
        else:
            raise ValueError(name)

    for i in range(n):
        # make the image of X_i an X-type operator, then X_i itself
        for q in range(i, n):
            x, z = m[q, i], m[n + q, i]
            if z and not x:
                apply("H", q)
            elif z and x:
                apply("S", q)
        if not m[i, i]:
            q = next(q for q in range(i + 1, n) if m[q, i])
            apply("CX", q, i)
        for q in range(i + 1, n):
            if m[q, i]:
                apply("CX", i, q)
        # now the image of Z_i: fix qubit i, then clear the rest
        if m[i, n + i]:
            apply("SQRT_X", i)
        for q in range(i + 1, n):
            x, z = m[q, n + i], m[n + q, n + i]
            if x and z:
                apply("S", q)
            if x:
                apply("H", q)
        for q in range(i + 1, n):
            if m[n + q, n + i]:
                apply("CX", q, i)
    if m != BitMatrix.identity(2 * n):
        raise AssertionError("symplectic reduction did not reach the identity")
    return gates


_ONE_Q_SCL = {"H": (0, 1, 1, 0), "S": (1, 0, 1, 1), "SQRT_X": (1, 1, 0, 1)}


class _LayerPacker:
    """Greedy ASAP packing of one-qubit symplectics and CZs into SCL/CZL layers."""

    def __init__(self, n: int):
        self.n = n
        self.scls: list[list[tuple[int, int, int, int]]] = [[IDENTITY_SCL] * n]
        self.czls: list[set[tuple[int, int]]] = []
        self.last = [0] * n  # index of the SCL after the qubit's latest CZ

    def one(self, name: str, q: int) -> None:
        layer = self.scls[self.last[q]]
        layer[q] = scl_compose(_ONE_Q_SCL[name], layer[q])

    def cz(self, a: int, b: int) -> None:
        def earliest(q):
            idle = self.scls[self.last[q]][q] == IDENTITY_SCL
            return max(1, self.last[q] if idle else self.last[q] + 1)

        g = max(earliest(a), earliest(b))
        while len(self.czls) < g:
            self.czls.append(set())
            self.scls.append([IDENTITY_SCL] * self.n)
        self.czls[g - 1] ^= {(min(a, b), max(a, b))}
        self.last[a] = self.last[b] = g

    def circuit(self) -> LayeredCircuit:
        # cancelled CZ pairs can leave empty layers; merge the SCLs around them
        scls = [list(self.scls[0])]
        czls = []
        for cz, scl in zip(self.czls, self.scls[1:]):
            if cz:
                czls.append(adjacency(self.n, sorted(cz)))
                scls.append(list(scl))
            else:
                scls[-1] = [scl_compose(a, b) for a, b in zip(scl, scls[-1])]
        return LayeredCircuit(self.n, scls, czls)


def baseline_compile(unitary, con: ConnectivityGraph) -> LayeredCircuit:
    """Hardware-respecting circuit for a Clifford via SWAP routing.

    The map is decomposed into H, S, SQRT_X and CX gates; every CX becomes
    ``H_t CZ H_t``, and CX gates between non-neighbours are routed by swapping
    the control along a shortest path and back.  No optimality is claimed.
    When ``unitary`` carries signs (a circuit or tableau), a final Pauli frame
    reproduces them exactly.
    """
    signed = isinstance(unitary, (LayeredCircuit, GateSequence, CliffordTableau))
    s = unitary if isinstance(unitary, BitMatrix) else symplectic_of(unitary).mat
    n = s.nrows // 2
    if con.n != n:
        raise ValueError("connectivity graph size differs from the map")
    if not con.is_connected():
        raise ValueError("connectivity graph must be connected")
    sym = SymplecticMap(n, s)
    packer = _LayerPacker(n)

    def cx(c, t):
        packer.one("H", t)
        packer.cz(c, t)
        packer.one("H", t)

    def swap(a, b):
        cx(a, b)
        cx(b, a)
        cx(a, b)

    for name, qs in reversed(_reduce_to_identity(sym.mat, n)):
        if name != "CX":
            packer.one(name, qs[0])
            continue
        c, t = qs
        path = con.shortest_path(c, t)
        hops = list(zip(path[:-2], path[1:-1]))
        for a, b in hops:
            swap(a, b)
        cx(path[-2], t)
        for a, b in reversed(hops):
            swap(a, b)
    circ = packer.circuit()
    if circuit_symplectic(circ) != sym:
        raise AssertionError("baseline circuit does not reproduce the input map")
    if signed:
        circ.pauli_frame = _sign_frame(tableau_of(circ), tableau_of(unitary))
        if tableau_of(circ) != tableau_of(unitary):
            raise AssertionError("baseline frame does not reproduce the signs")
    return circ


def _sign_frame(have: CliffordTableau, want: CliffordTableau) -> PauliOp:
    """Pauli ``F`` with ``F have(P) F = want(P)`` for every generator ``P``."""
    n = have.n
    rows, rhs = [], 0
    for j, (h, w) in enumerate(zip(have.images, want.images)):
        # F anticommutes with the image exactly where the signs differ
        rows.append(h.z | (h.x << n))
        if h.phase != w.phase:
            rhs |= 1 << j
    sol, _ = solve(BitMatrix(2 * n, 2 * n, rows), BitVector(2 * n, rhs))
    return PauliOp.from_binary(n, sol.bits)
