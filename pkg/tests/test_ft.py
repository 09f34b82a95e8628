import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dense import gate_unitary, identify_pauli, pauli_matrix, sequence_unitary
from randcodes import random_clifford
from lcsynth.code import builtin
from lcsynth.compile import compile, cube8, ring
from lcsynth.ft import (GadgetCircuit, Guard, backpropagate, build_flag_gadget, check_fault_tolerance,
                        controlled_pauli, fault_locations, find_gadget, find_guards, is_sound,
                        propagate_fault, unitary_part)
from lcsynth.pauli import Gate, GateSequence, PauliOp

C832 = builtin("color-8-3-2")
ICE = builtin("iceberg-4-2-2")


@pytest.fixture(scope="module")
def h1():
    return compile(C832, "H@1", 3, cube8(), budget=120).circuit


def expected_fault_count(g: GadgetCircuit) -> int:
    ops = g.ops.ops()
    two = sum(1 for o in ops if len(o.qubits) == 2)
    return 3 * (g.data_qubits + len(ops) - two) + 15 * two


# -- construction --------------------------------------------------------------
def test_controlled_pauli_decomposition():
    gates = controlled_pauli(PauliOp.from_string("-XIZY"), 4)
    assert [(g.name, g.qubits) for g in gates] == [("CX", (4, 0)), ("CZ", (4, 2)), ("CY", (4, 3)), ("Z", (4,))]
    assert [g.qubits[1] for g in controlled_pauli(PauliOp.from_string("XXIX"), 4, order=[3, 1, 0, 2])] == [3, 1, 0]


def test_backpropagate_single_hadamard():
    seq = GateSequence(1, [Gate("H", (0,))])
    assert str(backpropagate(seq, PauliOp.from_string("Z"))) == "+X"
    seq = GateSequence(1, [Gate("S", (0,))])
    assert str(backpropagate(seq, PauliOp.from_string("X"))) == "-Y"


def test_gadget_layout_single_guard():
    seq = GateSequence(1, [Gate("H", (0,))])
    g = build_flag_gadget(seq, None, [PauliOp.from_string("Z")])
    assert [str(x) for x in g.ops] == ["RP 2", "CX 2 1", "H 1", "CZ 2 1", "MX 2"]
    assert g.flag_qubits == 1 and is_sound(g, seq)


def test_shared_flag_segments_are_measured_without_reset():
    seq = GateSequence(2, [Gate("H", (0,)), Gate("CX", (0, 1)), Gate("S", (1,))])
    g = build_flag_gadget(seq, None, [Guard(PauliOp.from_string("ZI"), 0, 1, 0),
                                      Guard(PauliOp.from_string("IZ"), 1, 3, 0)])
    names = [x.name for x in g.ops]
    assert names.count("RP") == 1 and names.count("MX") == 2
    assert g.flag_qubits == 1 and is_sound(g, seq)
    with pytest.raises(ValueError):
        build_flag_gadget(seq, None, [Guard(PauliOp.from_string("ZI"), 0, 2, 0),
                                      Guard(PauliOp.from_string("IZ"), 1, 3, 0)])


# -- fault propagation -----------------------------------------------------------
def test_kickback_flips_flag():
    seq = GateSequence(1, [Gate("H", (0,))])
    g = build_flag_gadget(seq, None, [PauliOp.from_string("Z")])
    after_h = next(loc for loc in fault_locations(g) if loc.kind == "gate" and loc.index == 2)
    err, flips = propagate_fault(g, after_h, "X")
    assert flips == 1 and err.letters() == "X"
    err, flips = propagate_fault(g, after_h, "Z")
    assert flips == 0 and err.letters() == "Z"


def test_fault_after_last_gate_propagates_to_itself():
    seq = GateSequence(2, [Gate("CX", (0, 1)), Gate("H", (1,))])
    g = GadgetCircuit.bare(seq)
    last = fault_locations(g)[-1]
    assert last.qubits == (1,)
    for f in "XYZ":
        err, flips = propagate_fault(g, last, f)
        assert flips == 0 and err.letters() == "I" + f


def test_hook_error_caught_by_second_flag():
    seq = GateSequence(2, [Gate("CX", (0, 1))])
    g = build_flag_gadget(seq, None, [PauliOp.from_string("ZZ")], two_flags=True)
    f1 = g.data_qubits
    assert [x.name for x in g.ops][:4] == ["RP", "RP", "CZ", "CZ"]
    first = next(loc for loc in fault_locations(g) if loc.index == 3)
    assert first.qubits[0] == f1
    fault = "X" + "I" * (len(first.qubits) - 1)
    _, flips = propagate_fault(g, first, fault)
    meas = g.measurements()
    second_flag_meas = [j for j, i in enumerate(meas) if g.ops.gates[i].qubits[0] == f1 + 1]
    assert flips >> second_flag_meas[0] & 1
    assert is_sound(g, seq)


def test_fault_count_formula(h1):
    for g in (GadgetCircuit.bare(h1), build_flag_gadget(h1, C832, [PauliOp.from_string("XIXIIIXI")]),
              build_flag_gadget(h1, C832, [PauliOp.from_string("XIXIIIXI")], two_flags=True)):
        rep = check_fault_tolerance(g, C832)
        assert rep.total_faults == expected_fault_count(g)
        assert rep.total_locations == len(fault_locations(g))


def test_propagation_matches_dense_simulation():
    rng = random.Random(5)
    seq = random_clifford(rng, 3, 6)
    guard = PauliOp.from_string("-ZXY")
    g = build_flag_gadget(seq, None, [guard])
    n, total = g.data_qubits, g.n_total
    ops = g.ops.gates
    unitary_idx = [i for i, o in enumerate(ops) if o.name not in ("RP", "MX", "TICK")]
    full = sequence_unitary(unitary_part(g))
    checked = 0
    for loc in fault_locations(g):
        if loc.kind != "gate":
            continue
        after = np.eye(2 ** total, dtype=complex)
        for i in unitary_idx:
            if i > loc.index:
                after = gate_unitary(ops[i].name, ops[i].qubits, total) @ after
        for fault in loc.faults():
            e = PauliOp(total)
            for q, ch in zip(loc.qubits, fault):
                if ch != "I":
                    e = e * PauliOp.from_sparse(total, {q: ch})
            # faulty = after * E * before, so V = after E after^dag
            v = after @ pauli_matrix(e) @ after.conj().T
            p = identify_pauli(v, total)
            err, flips = propagate_fault(g, loc, fault)
            assert err.letters() == p.restrict(range(n)).letters()
            assert bool(flips) == bool((p.z >> n) & 1)
            checked += 1
    assert checked > 50
    assert np.allclose(full @ full.conj().T, np.eye(2 ** total))


# -- soundness -----------------------------------------------------------------------
@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 30), st.integers(1, 3), st.booleans())
def test_random_guards_are_sound(seed, n, two):
    rng = random.Random(seed)
    seq = random_clifford(rng, n, 5)
    guards = []
    for _ in range(rng.randint(1, 2)):
        p = PauliOp.from_binary(n, rng.randrange(1, 4 ** n))
        guards.append(-p if rng.random() < 0.5 else p)
    g = build_flag_gadget(seq, None, guards, two_flags=two)
    assert is_sound(g, seq)


def test_soundness_matches_dense():
    rng = random.Random(2)
    seq = random_clifford(rng, 2, 5)
    g = build_flag_gadget(seq, None, [PauliOp.from_string("-XZ")])
    u = sequence_unitary(unitary_part(g))
    want = np.kron(sequence_unitary(seq), np.eye(2))
    # equal up to a global phase
    idx = np.unravel_index(np.argmax(abs(want)), want.shape)
    assert np.allclose(u, want * (u[idx] / want[idx]))


def test_broken_gadget_is_unsound():
    seq = GateSequence(1, [Gate("H", (0,))])
    g = build_flag_gadget(seq, None, [PauliOp.from_string("Z")])
    g.ops.gates[1] = Gate("CZ", g.ops.gates[1].qubits)
    assert not is_sound(g, seq)


# -- guard search and verdicts -----------------------------------------------------
def test_bare_hadamard_is_not_fault_tolerant(h1):
    rep = check_fault_tolerance(h1, C832)
    assert not rep.verdict and rep.undetectable
    d = rep.to_dict()
    assert d["verdict"] is False and len(d["undetectable"]) == len(rep.undetectable)


def test_single_flag_gadget_for_hadamard(h1):
    g = find_gadget(h1, C832, single_flag=True)
    assert len(g.guards) == 1 and g.flag_qubits == 1 and not g.two_flags
    assert is_sound(g, h1)
    assert check_fault_tolerance(g, C832).verdict


def test_hadamard_pair_reuses_one_flag():
    c = compile(C832, "H@1 H@2", 3, cube8(), budget=120).circuit
    g = find_gadget(c, C832, single_flag=True)
    assert g.flag_qubits == 1 and len(g.guards) == 2
    assert len({x.flag for x in g.guards}) == 1
    assert is_sound(g, c) and check_fault_tolerance(g, C832).verdict


def test_single_qubit_layer_needs_no_guards():
    seq = GateSequence(4, [Gate("H", (q,)) for q in range(4)])
    assert check_fault_tolerance(seq, ICE).verdict
    assert find_guards(seq, ICE) == []


def test_iceberg_two_flag_fallback():
    c = compile(ICE, "CX@1,2", 3, ring(4), budget=60).circuit
    g = find_gadget(c, ICE, single_flag=False)
    assert is_sound(g, c) and check_fault_tolerance(g, ICE).verdict


def test_mutations_flip_verdict(h1):
    g = find_gadget(h1, C832, single_flag=True)
    no_meas = GadgetCircuit(g.data_qubits, g.flag_qubits,
                            GateSequence(g.n_total, [x for x in g.ops if x.name != "MX"]))
    assert not check_fault_tolerance(no_meas, C832).verdict
    wrong = build_flag_gadget(h1, C832, [PauliOp.from_string("ZZZZZZZZ")])
    assert is_sound(wrong, h1)
    assert not check_fault_tolerance(wrong, C832).verdict
