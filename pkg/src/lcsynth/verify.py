"""Certify that a physical Clifford circuit implements a logical gate on a code.

A circuit ``U`` is a logical operator when every conjugated stabilizer
generator lies in the stabilizer group.  Its logical action is read off by
decomposing the images of the logical representatives into (logical Pauli) x
(stabilizer element).  Sign-exact checking additionally requires the
stabilizers to be fixed with ``+`` signs and the logical images to carry the
target's signs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .code import StabilizerCode, logical_tableau
from .gauge import ReducedFreedom
from .gf2 import BitMatrix, solve
from .pauli import (CliffordTableau, GateSequence, LayeredCircuit, PauliOp, SymplecticMap,
                    symplectic_of, tableau_of)


@dataclass
class VerificationReport:
    is_logical: bool
    logical_action: SymplecticMap | None = None
    sign_correct: bool = False
    gauge: ReducedFreedom | None = None
    failures: list[str] = field(default_factory=list)
    strict: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "strict": self.strict,
            "is_logical": self.is_logical,
            "sign_correct": self.sign_correct,
            "logical_action": None if self.logical_action is None
            else self.logical_action.mat.to_array().tolist(),
            "gauge": None if self.gauge is None else self.gauge.f_prime.to_array().tolist(),
            "failures": list(self.failures),
        }


def _has_signs(circuit) -> bool:
    return isinstance(circuit, (LayeredCircuit, GateSequence, CliffordTableau))


def _images(circuit, ops: list[PauliOp]) -> list[PauliOp]:
    if _has_signs(circuit):
        t = tableau_of(circuit)
        return [t.conjugate(p) for p in ops]
    s = symplectic_of(circuit)
    return [PauliOp.from_binary(p.n, s.mat.apply(p.vector()).bits) for p in ops]


def _check_size(circuit, code: StabilizerCode) -> None:
    n = circuit.n if hasattr(circuit, "n") else circuit.nrows // 2
    if n != code.n:
        raise ValueError(f"circuit acts on {n} qubits but the code has n={code.n}")


def is_logical_operator(circuit, code: StabilizerCode) -> tuple[bool, list]:
    """Check that ``U S U^dag`` lies in the stabilizer group for every generator.

    Returns ``(ok, witnesses)``.  On success the witnesses are the stabilizer
    expansions (index lists) of each image; on failure they are the indices of
    the offending generators.
    """
    _check_size(circuit, code)
    expansions, offending = [], []
    for j, img in enumerate(_images(circuit, code.stabilizers)):
        dec = code.decompose(img)
        if dec is None or dec[0].x or dec[0].z:
            offending.append(j)
        else:
            expansions.append(dec[1])
    if offending:
        return False, offending
    return True, expansions


def logical_action(circuit, code: StabilizerCode) -> tuple[SymplecticMap, list[tuple[PauliOp, list[int]]]]:
    """Symplectic logical action and the (logical, stabilizer coset) of each image."""
    ok, bad = is_logical_operator(circuit, code)
    if not ok:
        raise ValueError(f"not a logical operator: stabilizers {[j + 1 for j in bad]} leave the group")
    k = code.k
    cosets = []
    for img in _images(circuit, code.logical_x + code.logical_z):
        dec = code.decompose(img)
        if dec is None:
            raise ValueError("logical image outside the normalizer")
        cosets.append(dec)
    cols = [lg.vector() for lg, _ in cosets]
    mat = BitMatrix.from_columns(cols, 2 * k) if k else BitMatrix.zeros(0, 0)
    return SymplecticMap(k, mat), cosets


def implements_target(circuit, code: StabilizerCode, target, strict_signs: bool = False) -> VerificationReport:
    """Check the logical action of ``circuit`` against ``target``.

    ``target`` may be a k-qubit tableau, a symplectic matrix (all-``+`` signs),
    or a gate string such as ``"H@1"``.  Failures are reported by name:
    ``stabilizer-not-preserved:S<j>``, ``logical-action:X<i>``/``Z<i>``,
    ``stabilizer-sign:S<j>``, ``logical-sign:X<i>``/``Z<i>`` and
    ``signs-unavailable``.
    """
    report = VerificationReport(is_logical=False, strict=strict_signs)
    try:
        _check_size(circuit, code)
    except ValueError as exc:
        report.failures.append(f"qubit-count: {exc}")
        return report
    k = code.k
    want = logical_tableau(target, k)
    ok, bad = is_logical_operator(circuit, code)
    if not ok:
        report.failures += [f"stabilizer-not-preserved:S{j + 1}" for j in bad]
        return report
    report.is_logical = True
    action, cosets = logical_action(circuit, code)
    report.logical_action = action
    labels = [f"X{i + 1}" for i in range(k)] + [f"Z{i + 1}" for i in range(k)]
    for i, (lg, _) in enumerate(cosets):
        if lg.binary != want.images[i].binary:
            report.failures.append(f"logical-action:{labels[i]}")
    if report.failures:
        return report
    report.gauge = extract_gauge(circuit, code, want.symplectic.mat)
    if not _has_signs(circuit):
        if strict_signs:
            report.failures.append("signs-unavailable")
        return report
    sign_failures = []
    for j, img in enumerate(_images(circuit, code.stabilizers)):
        lg, _ = code.decompose(img)
        if lg.phase != 0:
            sign_failures.append(f"stabilizer-sign:S{j + 1}")
    for i, (lg, _) in enumerate(cosets):
        if lg.phase != want.images[i].phase:
            sign_failures.append(f"logical-sign:{labels[i]}")
    report.sign_correct = not sign_failures
    if strict_signs:
        report.failures += sign_failures
    return report


def extract_gauge(circuit, code: StabilizerCode, target_c) -> ReducedFreedom:
    """The unique ``F'`` with ``A E' = E' F'`` for the circuit's symplectic matrix ``A``."""
    a = symplectic_of(circuit).mat
    e_prime = code.generator_matrix()
    ae = a @ e_prime
    cols = []
    for j in range(e_prime.ncols):
        sol, null = solve(e_prime, ae.column(j))
        if sol is None or null:
            raise ValueError("circuit image leaves the span of the reduced encoding")
        cols.append(sol)
    f_prime = BitMatrix.from_columns(cols, e_prime.ncols)
    rf = ReducedFreedom(code.n, code.k, f_prime)
    if isinstance(target_c, SymplecticMap):
        target_c = target_c.mat
    if target_c is not None and not isinstance(target_c, BitMatrix):
        target_c = logical_tableau(target_c, code.k).symplectic.mat
    if target_c is not None and rf.target != target_c:
        raise ValueError("extracted gauge does not carry the requested target")
    return rf
