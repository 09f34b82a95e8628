"""Flag gadgets and exhaustive single-fault checking for distance-2 codes.

A guard Pauli ``P`` protects a circuit segment ``U`` as follows: a flag qubit
starts in ``|+>``, a controlled-``Q`` with ``Q = U^dag P U`` acts before the
segment and a controlled-``P`` after it, and the flag is measured in the X
basis.  Without faults the two controlled operations cancel, so the flag
reads 0.  A fault inside the segment whose propagated error anticommutes with
``P`` kicks a phase onto the flag and flips its outcome.

Fault model (one fault at a time): three Paulis on every incoming data qubit,
after every single-qubit gate and reset, and before every measurement; fifteen
two-qubit Paulis after every two-qubit gate.  A fault is detectable when a
flag flips, the final data error has a nonzero syndrome, or the final error
is a stabilizer element.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .code import StabilizerCode
from .gf2 import BitMatrix, BitVector, solve
from .pauli import (NON_UNITARY, CliffordTableau, Gate, GateSequence, LayeredCircuit, PauliOp,
                    conjugate_by_gate, flatten, tableau_of)

SINGLE_PAULIS = ("X", "Y", "Z")


def backpropagate(circuit, p: PauliOp) -> PauliOp:
    """``Q = U^dag P U`` including its sign."""
    return tableau_of(circuit).inverse().conjugate(p)


def as_sequence(circuit) -> GateSequence:
    if isinstance(circuit, LayeredCircuit):
        return flatten(circuit)
    if isinstance(circuit, GateSequence):
        return circuit
    raise TypeError(f"expected a circuit, got {type(circuit).__name__}")


# ---------------------------------------------------------------------------
# Gadget construction
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Guard:
    """Guard Pauli ``pauli`` around gates ``[start, end)`` of the bare sequence.

    ``None`` bounds mean the whole circuit.  Guards sharing ``flag`` must
    cover disjoint, ordered segments; the flag is then reused without reset.
    """

    pauli: PauliOp
    start: int | None = None
    end: int | None = None
    flag: int | None = None


@dataclass
class GadgetCircuit:
    data_qubits: int
    flag_qubits: int
    ops: GateSequence
    guard_paulis: list[tuple[PauliOp, PauliOp]] = field(default_factory=list)
    guards: list[Guard] = field(default_factory=list)
    two_flags: bool = False
    order: tuple[int, ...] | None = None

    @property
    def n_total(self) -> int:
        return self.data_qubits + self.flag_qubits

    @classmethod
    def bare(cls, circuit) -> "GadgetCircuit":
        seq = as_sequence(circuit)
        return cls(seq.n, 0, GateSequence(seq.n, list(seq.gates)))

    def measurements(self) -> list[int]:
        return [i for i, g in enumerate(self.ops.gates) if g.name in ("MX", "MZ")]


def controlled_pauli(p: PauliOp, control: int, order: Sequence[int] | None = None) -> list[Gate]:
    """Controlled-``p`` from ``control`` as CX/CY/CZ gates (plus Z on the control for a ``-`` sign)."""
    letters = p.letters()
    qubits = order if order is not None else range(p.n)
    gates = []
    for q in qubits:
        ch = letters[q]
        if ch != "I":
            gates.append(Gate("C" + ch, (control, q)))
    if p.sign < 0:
        gates.append(Gate("Z", (control,)))
    return gates


def _guard_span(g: Guard, length: int) -> tuple[int, int]:
    start = 0 if g.start is None else g.start
    end = length if g.end is None else g.end
    if not 0 <= start <= end <= length:
        raise ValueError(f"guard segment [{start}, {end}) outside the circuit")
    return start, end


def build_flag_gadget(circuit, code: StabilizerCode | None, guards: Sequence, two_flags: bool = False,
                      order: Sequence[int] | None = None) -> GadgetCircuit:
    """Wrap ``circuit`` with one flag gadget per guard.

    Args:
        circuit: Bare unitary circuit on the data qubits.
        code: The code (only used for a size check; may be None).
        guards: ``PauliOp`` (whole-circuit guard with its own flag) or ``Guard``.
        two_flags: Add a second flag per guard, entangled by CZs, to catch
            hook errors on the first flag.
        order: Data-qubit order for the controlled-Pauli decompositions.
    """
    seq = as_sequence(circuit)
    n = seq.n
    if code is not None and code.n != n:
        raise ValueError("circuit and code sizes differ")
    if not seq.is_unitary():
        raise ValueError("the bare circuit must be unitary")
    length = len(seq.gates)
    norm: list[Guard] = []
    next_flag = 0
    for g in guards:
        if isinstance(g, PauliOp):
            g = Guard(g)
        if g.pauli.n != n:
            raise ValueError("guard Pauli has the wrong size")
        if g.flag is None:
            g = Guard(g.pauli, g.start, g.end, next_flag)
        next_flag = max(next_flag, g.flag + 1)
        norm.append(g)
    per_guard = 2 if two_flags else 1
    flag_qubits = next_flag * per_guard
    total = n + flag_qubits

    def flags_of(g: Guard) -> tuple[int, ...]:
        return tuple(n + g.flag * per_guard + j for j in range(per_guard))

    spans = [_guard_span(g, length) for g in norm]
    by_flag: dict[int, list[int]] = {}
    for i, g in enumerate(norm):
        by_flag.setdefault(g.flag, []).append(i)
    for idxs in by_flag.values():
        idxs.sort(key=lambda i: spans[i])
        for a, b in zip(idxs, idxs[1:]):
            if spans[a][1] > spans[b][0]:
                raise ValueError("guards sharing a flag must cover disjoint segments")

    pairs = []
    opens: dict[int, list[Gate]] = {}
    closes: dict[int, list[Gate]] = {}
    first_use = {flag: min(idxs, key=lambda i: spans[i]) for flag, idxs in by_flag.items()}
    for i, g in enumerate(norm):
        start, end = spans[i]
        seg = GateSequence(n, seq.gates[start:end])
        q = backpropagate(seg, g.pauli)
        pairs.append((g.pauli, q))
        fl = flags_of(g)
        pre: list[Gate] = []
        if first_use[g.flag] == i:
            pre += [Gate("RP", (f,)) for f in fl]
        if two_flags:
            pre.append(Gate("CZ", fl))
        pre += [Gate(x.name, x.qubits) for x in controlled_pauli(q.embed(total), fl[0], order)]
        post = [Gate(x.name, x.qubits) for x in controlled_pauli(g.pauli.embed(total), fl[0], order)]
        if two_flags:
            post.append(Gate("CZ", fl))
        post += [Gate("MX", (f,)) for f in fl]
        opens.setdefault(start, []).append((i, pre))
        closes.setdefault(end, []).append((i, post))

    out = GateSequence(total)
    for pos in range(length + 1):
        # close guards before opening new ones; nested guards close in reverse order
        for _, post in sorted(closes.get(pos, []), key=lambda t: -t[0]):
            out.gates.extend(post)
        for _, pre in sorted(opens.get(pos, []), key=lambda t: t[0]):
            out.gates.extend(pre)
        if pos < length:
            out.gates.append(seq.gates[pos])
    return GadgetCircuit(n, flag_qubits, out, pairs, norm, two_flags,
                         None if order is None else tuple(order))


def unitary_part(g: GadgetCircuit) -> GateSequence:
    return GateSequence(g.n_total, [x for x in g.ops.gates if x.name not in NON_UNITARY])


def is_sound(g: GadgetCircuit, bare) -> bool:
    """Fault-free soundness: the gadget acts as ``U`` on data and identity on flags.

    Flags enter in ``|+>``; a unitary part equal to ``U (x) I`` leaves them
    there, so every X-basis flag measurement reads 0.
    """
    t = unitary_part(g).tableau()
    u = tableau_of(as_sequence(bare))
    n, total = g.data_qubits, g.n_total
    want = CliffordTableau(total, [p.embed(total) for p in u.images[:n]]
                           + [PauliOp(total, 1 << j, 0) for j in range(n, total)]
                           + [p.embed(total) for p in u.images[n:]]
                           + [PauliOp(total, 0, 1 << j) for j in range(n, total)])
    return t == want


# ---------------------------------------------------------------------------
# Fault enumeration
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FaultLocation:
    kind: str  # "incoming", "gate", "reset", "measure"
    index: int  # op index; faults act after it, or before it for measurements
    qubits: tuple[int, ...]

    @property
    def start(self) -> int:
        """First op through which the fault propagates."""
        if self.kind == "incoming":
            return 0
        if self.kind == "measure":
            return self.index
        return self.index + 1

    def faults(self) -> list[str]:
        if len(self.qubits) == 1:
            return list(SINGLE_PAULIS)
        return ["".join(p) for p in itertools.product("IXYZ", repeat=2) if p != ("I", "I")]


def fault_locations(g: GadgetCircuit) -> list[FaultLocation]:
    locs = [FaultLocation("incoming", -1, (q,)) for q in range(g.data_qubits)]
    for i, op in enumerate(g.ops.gates):
        if op.name == "TICK":
            continue
        if op.name in ("MX", "MZ"):
            locs.append(FaultLocation("measure", i, op.qubits))
        elif op.name in ("RP", "R0"):
            locs.append(FaultLocation("reset", i, op.qubits))
        else:
            locs.append(FaultLocation("gate", i, op.qubits))
    return locs


def _propagate_bits(ops: Sequence[Gate], start: int, err: PauliOp, meas_index: dict[int, int]) -> tuple[PauliOp, int]:
    flips = 0
    x, z, total = err.x, err.z, err.n
    for i in range(start, len(ops)):
        op = ops[i]
        name = op.name
        if name == "TICK":
            continue
        if name in ("MX", "MZ", "RP", "R0"):
            bit = 1 << op.qubits[0]
            if name == "MX":
                if z & bit:
                    flips ^= 1 << meas_index[i]
                x &= ~bit
            elif name == "MZ":
                if x & bit:
                    flips ^= 1 << meas_index[i]
                z &= ~bit
            else:
                x &= ~bit
                z &= ~bit
            continue
        if not ((x | z) & sum(1 << q for q in op.qubits)):
            continue
        p = conjugate_by_gate(PauliOp(total, x, z), name, op.qubits)
        x, z = p.x, p.z
    return PauliOp(total, x, z), flips


def _fault_pauli(total: int, qubits: tuple[int, ...], fault: str) -> PauliOp:
    x = z = 0
    for q, ch in zip(qubits, fault):
        if ch in "XY":
            x |= 1 << q
        if ch in "ZY":
            z |= 1 << q
    return PauliOp.from_binary(total, x | (z << total))


def propagate_fault(g: GadgetCircuit, location: FaultLocation, fault: str) -> tuple[PauliOp, int]:
    """Final data error (phase dropped) and the bitmask of flipped measurements."""
    meas = {i: j for j, i in enumerate(g.measurements())}
    err = _fault_pauli(g.n_total, location.qubits, fault)
    final, flips = _propagate_bits(g.ops.gates, location.start, err, meas)
    return final.restrict(range(g.data_qubits)), flips


def is_detectable(err: PauliOp, flag_flips: int, code: StabilizerCode) -> bool:
    if flag_flips:
        return True
    if code.syndrome(err):
        return True
    return code.in_stabilizer_group(err, up_to_sign=True)


@dataclass
class FaultReport:
    total_locations: int
    total_faults: int
    undetectable: list[tuple[FaultLocation, str, PauliOp]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.undetectable

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "total_locations": self.total_locations,
            "total_faults": self.total_faults,
            "undetectable": [
                {"kind": loc.kind, "op_index": loc.index, "qubits": [q + 1 for q in loc.qubits],
                 "fault": f, "error": err.letters()}
                for loc, f, err in self.undetectable
            ],
        }


def check_fault_tolerance(g, code: StabilizerCode) -> FaultReport:
    """Enumerate every single fault, propagate it, and classify it.

    Propagation is linear, so each location propagates its basis Paulis once
    and the 3 or 15 faults are XOR combinations of those.
    """
    if not isinstance(g, GadgetCircuit):
        g = GadgetCircuit.bare(g)
    meas = {i: j for j, i in enumerate(g.measurements())}
    total, n = g.n_total, g.data_qubits
    ops = g.ops.gates
    report = FaultReport(0, 0)
    cache: dict[int, bool] = {}
    for loc in fault_locations(g):
        report.total_locations += 1
        basis = {}
        for q in loc.qubits:
            for letter, (bx, bz) in (("X", (1, 0)), ("Z", (0, 1))):
                e = PauliOp(total, bx << q, bz << q)
                basis[(q, letter)] = _propagate_bits(ops, loc.start, e, meas)
        for fault in loc.faults():
            report.total_faults += 1
            x = z = flips = 0
            for q, ch in zip(loc.qubits, fault):
                for letter in ("X", "Z"):
                    if (letter == "X" and ch in "XY") or (letter == "Z" and ch in "ZY"):
                        p, f = basis[(q, letter)]
                        x ^= p.x
                        z ^= p.z
                        flips ^= f
            if flips:
                continue
            mask = (1 << n) - 1
            err = PauliOp(n, x & mask, z & mask)
            key = err.binary
            if key not in cache:
                cache[key] = is_detectable(err, 0, code)
            if not cache[key]:
                report.undetectable.append((loc, fault, err))
    return report


# ---------------------------------------------------------------------------
# Guard search
# ---------------------------------------------------------------------------
def _pairing_row(p: PauliOp) -> int:
    n = p.n
    return p.z | (p.x << n)


def _anticommuting_exists(errors: list[PauliOp], n: int) -> bool:
    rows = [_pairing_row(e) for e in errors]
    sol, _ = solve(BitMatrix(len(rows), 2 * n, rows), BitVector(len(rows), (1 << len(rows)) - 1))
    return sol is not None


def _low_weight_solutions(errors: list[PauliOp], n: int, limit: int = 8,
                          max_enum: int = 14) -> list[PauliOp]:
    """Paulis anticommuting with every error, lowest weight first."""
    if not errors:
        return []
    rows = [_pairing_row(e) for e in errors]
    a = BitMatrix(len(rows), 2 * n, rows)
    sol, null = solve(a, BitVector(len(rows), (1 << len(rows)) - 1))
    if sol is None:
        return []

    def weight(v: int) -> int:
        return ((v | (v >> n)) & ((1 << n) - 1)).bit_count()

    cands = set()
    if len(null) <= max_enum:
        for bits in itertools.product((0, 1), repeat=len(null)):
            v = sol.bits
            for b, nv in zip(bits, null):
                if b:
                    v ^= nv.bits
            cands.add(v)
    else:
        v = sol.bits
        improved = True
        while improved:
            improved = False
            for nv in null:
                if weight(v ^ nv.bits) < weight(v):
                    v ^= nv.bits
                    improved = True
        cands.add(v)
        rng = random.Random(0)
        for _ in range(4096):
            w = v
            for nv in null:
                if rng.random() < 0.5:
                    w ^= nv.bits
            cands.add(w)
    best = sorted(cands, key=lambda v: (weight(v), v))[:limit]
    return [PauliOp.from_binary(n, v) for v in best]


def _orders(n: int, count: int, seed: int = 0) -> list[tuple[int, ...] | None]:
    out: list[tuple[int, ...] | None] = [None, tuple(range(n - 1, -1, -1))]
    rng = random.Random(seed)
    while len(out) < count:
        perm = list(range(n))
        rng.shuffle(perm)
        out.append(tuple(perm))
    return out[:count]


def _layer_boundaries(seq: GateSequence) -> list[int]:
    cuts = [i for i, g in enumerate(seq.gates) if g.name == "TICK"]
    return sorted(set([0] + cuts + [len(seq.gates)]))


def _segment_errors(seq: GateSequence, undetectable, start: int, end: int) -> list[PauliOp]:
    """End-of-segment errors of the bare circuit's undetectable faults inside ``[start, end)``."""
    rest_inv = GateSequence(seq.n, seq.gates[end:]).tableau().inverse()
    errs = {}
    for loc, _, err in undetectable:
        inside = start == 0 if loc.kind == "incoming" else start <= loc.index < end
        if inside:
            e = rest_inv.conjugate(err)
            errs[e.binary] = PauliOp.from_binary(seq.n, e.binary)
    return list(errs.values())


class GuardSearchError(RuntimeError):
    pass


def _try(seq, code, guards, two_flags, orders):
    if not guards:
        return None
    for order in orders:
        gad = build_flag_gadget(seq, code, guards, two_flags, order)
        if check_fault_tolerance(gad, code).verdict:
            return gad
    return None


def greedy_guards(errors: list[PauliOp], n: int) -> list[PauliOp]:
    """Guards that together anticommute with every error.

    Each round keeps the largest prefix-greedy subset of the remaining errors
    that one Pauli can anticommute with simultaneously, picks a low-weight
    solution, and drops every error it covers.
    """
    remaining = list(errors)
    guards = []
    while remaining:
        chosen: list[PauliOp] = []
        for e in remaining:
            if _anticommuting_exists(chosen + [e], n):
                chosen.append(e)
        p = _low_weight_solutions(chosen, n, 1)[0]
        guards.append(p)
        remaining = [e for e in remaining if e.commutes(p)]
    return guards


def _segmentations(cuts: list[int], limit: int) -> list[list[int]]:
    """Subsets of the inner layer boundaries, fewest segments first."""
    inner = cuts[1:-1]
    out = []
    for r in range(len(inner) + 1):
        for chosen in itertools.combinations(inner, r):
            out.append([cuts[0], *chosen, cuts[-1]])
            if len(out) >= limit:
                return out
    return out


def _segmented_guards(seq: GateSequence, code: StabilizerCode, undetectable,
                      limit: int = 64) -> list[list[Guard]]:
    """Guard lists sharing flag 0, one guard per segment that needs one."""
    out = []
    for bounds in _segmentations(_layer_boundaries(seq), limit):
        guards = []
        for start, end in zip(bounds, bounds[1:]):
            errs = _segment_errors(seq, undetectable, start, end)
            if not errs:
                continue
            sols = sorted(_low_weight_solutions(errs, seq.n, 16),
                          key=lambda p: (not code.syndrome(p), p.weight))
            if not sols:
                break
            guards.append(Guard(sols[0], start, end, 0))
        else:
            if len(guards) > 1:
                out.append(guards)
    return out


def find_gadget(circuit, code: StabilizerCode, single_flag: bool = True, max_orders: int = 8,
                max_candidates: int = 6, seed: int = 0) -> GadgetCircuit:
    """Search for guards making ``circuit`` fault tolerant; returns the gadget.

    Attempts, in order: one whole-circuit guard (several low-weight guards
    and controlled-Pauli orders); consecutive segments split at layer
    boundaries, each guarded in turn by one reused flag (fewest segments
    first); greedily chosen whole-circuit guards with a flag each.  Every attempt is tried with one flag per guard, and also with two
    unless ``single_flag``.  The exhaustive fault check is the arbiter.

    Raises:
        GuardSearchError: if no attempt passes.
    """
    seq = as_sequence(circuit)
    n = seq.n
    bare = GadgetCircuit.bare(seq)
    report = check_fault_tolerance(bare, code)
    if report.verdict:
        return bare
    orders = _orders(n, max_orders, seed)
    modes = [False] if single_flag else [False, True]
    errors = list({e.binary: e for _, _, e in report.undetectable}.values())
    # a guard that is itself an undetectable error makes its own hook errors undetectable
    cands = sorted(_low_weight_solutions(errors, n, 8 * max_candidates),
                   key=lambda p: (not code.syndrome(p), p.weight))
    attempts: list[list] = [[p] for p in cands[:max_candidates]]
    attempts += _segmented_guards(seq, code, report.undetectable)
    attempts.append(greedy_guards(errors, n))
    for two in modes:
        for guards in attempts:
            gad = _try(seq, code, guards, two, orders)
            if gad is not None:
                return gad
    raise GuardSearchError("no guard set found within the search bound")
def find_guards(circuit, code: StabilizerCode, single_flag: bool = True, **kwargs) -> list[Guard]:
    """Guards of :func:`find_gadget`; empty when the bare circuit is already fault tolerant."""
    return find_gadget(circuit, code, single_flag, **kwargs).guards
