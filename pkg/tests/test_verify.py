import random

import numpy as np
import pytest

from dense import pauli_matrix, sequence_unitary
from lcsynth.code import builtin, logical_gate
from lcsynth.compile import compile, ring
from lcsynth.pauli import Gate, GateSequence, flatten
from lcsynth.verify import extract_gauge, implements_target, is_logical_operator, logical_action

ICE = builtin("iceberg-4-2-2")
TARGETS = ["H@1", "S@2", "CX@1,2", "H@1 H@2"]


def dense_implements(seq, code, target):
    """Sign-exact check on the code space with dense matrices."""
    u = sequence_unitary(seq)
    dim = 2 ** code.n
    proj = np.eye(dim, dtype=complex)
    for s in code.stabilizers:
        proj = proj @ (np.eye(dim) + pauli_matrix(s)) / 2
    if not np.allclose(u @ proj @ u.conj().T, proj):
        return False
    want = logical_gate(target, code.k)
    gens = code.logical_x + code.logical_z
    for i, g in enumerate(gens):
        img = want.images[i]
        lhs = u @ pauli_matrix(g) @ u.conj().T @ proj
        rhs = pauli_matrix(code.lift(img)) @ proj
        if not np.allclose(lhs, rhs):
            return False
    return True


@pytest.fixture(scope="module")
def compiled():
    return {t: flatten(compile(ICE, t, 3, ring(4), budget=120).circuit) for t in TARGETS}


def test_compiled_circuits_pass_both_checks(compiled):
    for t, seq in compiled.items():
        assert implements_target(seq, ICE, t, strict_signs=True).ok
        assert dense_implements(seq, ICE, t)


def test_sign_errors_are_named(compiled):
    seq = compiled["H@1"]
    bad = GateSequence(4, list(seq.gates))
    bad.append("Z", 0)  # anticommutes with the XXXX stabilizer
    rep = implements_target(bad, ICE, "H@1", strict_signs=True)
    assert not rep.ok and any(f.startswith("stabilizer-sign") or f.startswith("logical-sign")
                              for f in rep.failures)
    assert not dense_implements(bad, ICE, "H@1")
    loose = implements_target(bad, ICE, "H@1")
    assert loose.ok and not loose.sign_correct


def test_wrong_target_is_named(compiled):
    rep = implements_target(compiled["H@1"], ICE, "S@1")
    assert rep.is_logical and any(f.startswith("logical-action") for f in rep.failures)


def test_non_logical_operator_is_named():
    seq = GateSequence(4)
    seq.append("H", 0)
    ok, bad = is_logical_operator(seq, ICE)
    assert not ok and bad == [0, 1]
    rep = implements_target(seq, ICE, "H@1")
    assert rep.failures == ["stabilizer-not-preserved:S1", "stabilizer-not-preserved:S2"]
    with pytest.raises(ValueError):
        logical_action(seq, ICE)


def test_signs_unavailable_for_bare_symplectic(compiled):
    s = compiled["S@2"].tableau().symplectic
    assert implements_target(s, ICE, "S@2").ok
    assert implements_target(s, ICE, "S@2", strict_signs=True).failures == ["signs-unavailable"]


def test_qubit_count_mismatch():
    rep = implements_target(GateSequence(3), ICE, "H@1")
    assert rep.failures and rep.failures[0].startswith("qubit-count")


def test_gauge_extraction_matches_compiler():
    res = compile(ICE, "CX@1,2", 3, ring(4), budget=120)
    g = extract_gauge(res.circuit, ICE, logical_gate("CX@1,2", 2).symplectic.mat)
    assert g.f_prime == res.gauge.f_prime


def test_single_gate_mutations_agree_with_dense(compiled):
    rng = random.Random(3)
    names = ["H", "S", "X", "Z", "SQRT_X"]
    for t, seq in compiled.items():
        for _ in range(8):
            gates = list(seq.gates)
            idx = rng.randrange(len(gates))
            gates.insert(idx, Gate(rng.choice(names), (rng.randrange(4),)))
            mut = GateSequence(4, gates)
            assert implements_target(mut, ICE, t, strict_signs=True).ok == dense_implements(mut, ICE, t)


def test_logical_identity_is_accepted():
    seq = GateSequence(4)
    for q in range(4):
        seq.append("X", q)  # XXXX is a stabilizer
    assert implements_target(seq, ICE, "H@1 H@1", strict_signs=True).ok
    assert implements_target(seq, ICE, logical_gate("S@1 S@1 S@1 S@1", 2), strict_signs=True).ok
