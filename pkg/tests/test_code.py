import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from randcodes import random_code
from lcsynth.code import (BUILTIN_CODES, CodeError, StabilizerCode, build_encoding, builtin, check,
                          load_code, logical_gate, logical_tableau, reduce_encoding, save_code, validate)
from lcsynth.gf2 import is_symplectic
from lcsynth.pauli import CliffordTableau, PauliOp


def low_weight_paulis(n, w):
    for qs in itertools.combinations(range(n), w):
        for letters in itertools.product("XYZ", repeat=w):
            s = ["I"] * n
            for q, ch in zip(qs, letters):
                s[q] = ch
            yield PauliOp.from_string("".join(s))


def is_undetectable_logical(code, p):
    return code.syndrome(p) == 0 and not code.in_stabilizer_group(p)


@pytest.mark.parametrize("name", sorted(BUILTIN_CODES))
def test_builtins_validate(name):
    code = builtin(name)
    assert validate(code) == []
    e = build_encoding(code)
    assert is_symplectic(e, code.n)


def test_builtin_parameters():
    params = {name: (builtin(name).n, builtin(name).k) for name in BUILTIN_CODES}
    assert params == {"iceberg-4-2-2": (4, 2), "color-8-3-2": (8, 3), "twisted-toric-12-2-3": (12, 2)}


@pytest.mark.parametrize("name,d", [("iceberg-4-2-2", 2), ("color-8-3-2", 2), ("twisted-toric-12-2-3", 3)])
def test_builtin_distances(name, d):
    code = builtin(name)
    for w in range(1, d):
        assert not any(is_undetectable_logical(code, p) for p in low_weight_paulis(code.n, w))
    if code.n <= 8:
        assert any(is_undetectable_logical(code, p) for p in low_weight_paulis(code.n, d))


def test_twisted_toric_first_logical_x_has_weight_three():
    code = builtin("twisted-toric-12-2-3")
    # weight-3 logical from the chosen representatives
    assert code.logical_x[0].weight == 3
    assert is_undetectable_logical(code, code.logical_x[0])


def test_validate_reports_anticommuting_stabilizers():
    code = StabilizerCode.from_strings(["XI", "ZI"], [], [])
    msgs = validate(code)
    assert any("anticommute" in m for m in msgs)
    with pytest.raises(CodeError):
        check(code)


def test_validate_reports_commuting_logical_pair():
    code = StabilizerCode.from_strings(["ZZ"], ["ZI"], ["ZI"])
    assert any("commute" in m for m in validate(code))


def test_validate_reports_dependence():
    code = StabilizerCode.from_strings(["ZZI", "IZZ", "ZIZ"], [], [])
    assert any("dependent" in m for m in validate(code))


def test_encoding_columns_and_reduction():
    code = builtin("iceberg-4-2-2")
    e = build_encoding(code)
    n, k = code.n, code.k
    for i in range(k):
        assert e.column(i) == code.logical_x[i].vector()
        assert e.column(n + i) == code.logical_z[i].vector()
    for j in range(n - k):
        assert e.column(n + k + j) == code.stabilizers[j].vector()
    assert reduce_encoding(e, k) == code.generator_matrix()


def test_decompose_recovers_phase_and_stabilizers():
    code = builtin("iceberg-4-2-2")
    p = code.logical_x[0] * code.stabilizers[1] * code.logical_z[1]
    lg, idx = code.decompose(p)
    assert idx == [1]
    assert code.lift(lg) * code.stabilizer_product(idx) == p
    assert code.decompose(PauliOp.from_string("ZIII")) is None
    assert code.in_stabilizer_group(-code.stabilizers[0])
    assert not code.in_stabilizer_group(-code.stabilizers[0], up_to_sign=False)


def test_code_file_round_trip(tmp_path):
    code = builtin("color-8-3-2")
    path = tmp_path / "c.json"
    save_code(code, path)
    again = load_code(path)
    assert again.to_dict() == code.to_dict()
    data = json.loads(path.read_text())
    data["k"] = 2
    path.write_text(json.dumps(data))
    with pytest.raises(CodeError):
        load_code(path)


def test_logical_gate_words():
    h = logical_gate("H@1", 1)
    assert h.conjugate(PauliOp.from_string("X")) == PauliOp.from_string("Z")
    cx = logical_gate("CX@2,1", 2)
    assert cx.conjugate(PauliOp.from_string("IX")) == PauliOp.from_string("XX")
    swap = logical_gate("SWAP@1,2", 2)
    assert swap.conjugate(PauliOp.from_string("XI")) == PauliOp.from_string("IX")
    assert logical_tableau(h.symplectic.mat, 1).symplectic == h.symplectic
    with pytest.raises(ValueError):
        logical_gate("H", 1)
    with pytest.raises(ValueError):
        logical_tableau(CliffordTableau.identity(2), 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))),
       st.randoms(use_true_random=False))
def test_random_codes_have_symplectic_encodings(nk, rnd):
    n, k = nk
    code = random_code(rnd, n, k)
    assert validate(code) == []
    e = build_encoding(code)
    assert is_symplectic(e, n)
    assert reduce_encoding(e, k) == code.generator_matrix()
