"""Stabilizer codes and their encoding matrices."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .gf2 import BitMatrix, BitVector, is_symplectic, rank, solve
from .pauli import CliffordTableau, GateSequence, PauliOp, SymplecticMap, commutes


class CodeError(ValueError):
    """Raised for invalid stabilizer code definitions."""


@dataclass
class StabilizerCode:
    n: int
    k: int
    stabilizers: list[PauliOp]
    logical_x: list[PauliOp]
    logical_z: list[PauliOp]
    name: str = ""
    _basis: BitMatrix | None = field(default=None, init=False, repr=False, compare=False)

    @classmethod
    def from_strings(cls, stabilizers: Sequence[str], logical_x: Sequence[str],
                     logical_z: Sequence[str], name: str = "") -> "StabilizerCode":
        stabs = [PauliOp.from_string(s) for s in stabilizers]
        lx = [PauliOp.from_string(s) for s in logical_x]
        lz = [PauliOp.from_string(s) for s in logical_z]
        allops = stabs + lx + lz
        if not allops:
            raise CodeError("a code needs at least one operator to fix n")
        n = allops[0].n
        return cls(n, len(lx), stabs, lx, lz, name)

    # -- linear algebra helpers ---------------------------------------------------
    def generator_matrix(self) -> BitMatrix:
        """Columns ``[x_1..x_k | z_1..z_k | s_1..s_{n-k}]``; the reduced encoding."""
        cols = [p.vector() for p in self.logical_x + self.logical_z + self.stabilizers]
        return BitMatrix.from_columns(cols, 2 * self.n)

    def decompose(self, p: PauliOp) -> tuple[PauliOp, list[int]] | None:
        """Write ``p = lift(L) * prod(S_j for j in idx)``.

        ``L`` is a ``k``-qubit Pauli (phase included) and ``lift`` replaces
        ``X_i, Z_i`` by the logical representatives.  Returns ``None`` when
        ``p`` does not commute with the stabilizer group.
        """
        if self._basis is None:
            self._basis = self.generator_matrix()
        sol, _ = solve(self._basis, p.vector())
        if sol is None:
            return None
        k = self.k
        a = sol.bits & ((1 << k) - 1)
        b = (sol.bits >> k) & ((1 << k) - 1)
        idx = [j for j in range(self.n - k) if (sol.bits >> (2 * k + j)) & 1]
        r = self.lift(PauliOp(k, a, b, 0)) * self.stabilizer_product(idx)
        return PauliOp(k, a, b, p.phase - r.phase), idx

    def lift(self, logical: PauliOp) -> PauliOp:
        out = PauliOp(self.n, 0, 0, logical.phase)
        for i in range(self.k):
            if (logical.x >> i) & 1:
                out = out * self.logical_x[i]
        for i in range(self.k):
            if (logical.z >> i) & 1:
                out = out * self.logical_z[i]
        return out

    def stabilizer_product(self, idx: Sequence[int]) -> PauliOp:
        out = PauliOp(self.n)
        for j in idx:
            out = out * self.stabilizers[j]
        return out

    def syndrome(self, p: PauliOp) -> int:
        bits = 0
        for j, s in enumerate(self.stabilizers):
            if not commutes(p, s):
                bits |= 1 << j
        return bits

    def in_stabilizer_group(self, p: PauliOp, up_to_sign: bool = True) -> bool:
        dec = self.decompose(p)
        if dec is None:
            return False
        logical, _ = dec
        if logical.x or logical.z:
            return False
        return up_to_sign or logical.phase == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "stabilizers": [str(s) for s in self.stabilizers],
            "logical_x": [str(p) for p in self.logical_x],
            "logical_z": [str(p) for p in self.logical_z],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StabilizerCode":
        try:
            code = cls.from_strings(d["stabilizers"], d["logical_x"], d["logical_z"],
                                    d.get("name", ""))
        except KeyError as exc:
            raise CodeError(f"missing field {exc.args[0]!r}") from None
        if "n" in d and d["n"] != code.n:
            raise CodeError(f"declared n={d['n']} but operators act on {code.n} qubits")
        if "k" in d and d["k"] != code.k:
            raise CodeError(f"declared k={d['k']} but {code.k} logical X operators given")
        return code


def validate(code: StabilizerCode) -> list[str]:
    """Return a list of diagnostics; an empty list means the code is valid."""
    n, k = code.n, code.k
    out: list[str] = []
    if not 0 <= k <= n:
        return [f"k={k} out of range for n={n}"]
    if len(code.stabilizers) != n - k:
        out.append(f"expected {n - k} stabilizer generators, got {len(code.stabilizers)}")
    if len(code.logical_x) != k or len(code.logical_z) != k:
        out.append(f"expected {k} logical X and Z operators, got "
                   f"{len(code.logical_x)} and {len(code.logical_z)}")
    named = ([(f"S{j+1}", s) for j, s in enumerate(code.stabilizers)]
             + [(f"X{i+1}", p) for i, p in enumerate(code.logical_x)]
             + [(f"Z{i+1}", p) for i, p in enumerate(code.logical_z)])
    for label, p in named:
        if p.n != n:
            out.append(f"{label} acts on {p.n} qubits, expected {n}")
    if out:
        return out
    for label, p in named:
        if not p.is_hermitian():
            out.append(f"{label} is not Hermitian")
    stabs = code.stabilizers
    for i in range(len(stabs)):
        for j in range(i + 1, len(stabs)):
            if not commutes(stabs[i], stabs[j]):
                out.append(f"S{i+1} and S{j+1} anticommute")
                return out
    if stabs:
        r = rank(BitMatrix.from_columns([s.vector() for s in stabs], 2 * n))
        if r < len(stabs):
            out.append(f"stabilizer generators are dependent (rank {r} < {len(stabs)})")
            return out
    for label, p in named[len(stabs):]:
        for j, s in enumerate(stabs):
            if not commutes(p, s):
                out.append(f"{label} anticommutes with S{j+1}")
                return out
    for i, xi in enumerate(code.logical_x):
        for j, zj in enumerate(code.logical_z):
            if commutes(xi, zj) == (i == j):
                rel = "commute" if i == j else "anticommute"
                out.append(f"X{i+1} and Z{j+1} {rel}")
                return out
        for j in range(i + 1, k):
            if not commutes(xi, code.logical_x[j]):
                out.append(f"X{i+1} and X{j+1} anticommute")
                return out
            if not commutes(code.logical_z[i], code.logical_z[j]):
                out.append(f"Z{i+1} and Z{j+1} anticommute")
                return out
    return out


def check(code: StabilizerCode) -> StabilizerCode:
    problems = validate(code)
    if problems:
        raise CodeError("; ".join(problems))
    return code


def build_encoding(code: StabilizerCode) -> BitMatrix:
    """Symplectic encoding matrix with columns ``[x | d | z | s]``.

    The destabilizer columns ``d_j`` are completed one at a time by solving the
    linear conditions ``<d_j, s_i> = [i == j]`` and ``<d_j, c> = 0`` for every
    other column already placed.
    """
    check(code)
    n, k = code.n, code.k
    mask = (1 << n) - 1

    def pairing_row(v: int) -> int:
        # row r with parity(r & w) == <v, w>
        return (v >> n) | ((v & mask) << n)

    xs = [p.binary for p in code.logical_x]
    zs = [p.binary for p in code.logical_z]
    ss = [p.binary for p in code.stabilizers]
    ds: list[int] = []
    for j in range(n - k):
        constraints = xs + zs + ss + ds
        rhs = 0
        pos = 2 * k + j
        rhs |= 1 << pos
        a = BitMatrix(len(constraints), 2 * n, [pairing_row(v) for v in constraints])
        sol, _ = solve(a, BitVector(len(constraints), rhs))
        if sol is None:
            raise CodeError("symplectic completion failed; the code is inconsistent")
        ds.append(sol.bits)
    cols = xs + ds + zs + ss
    e = BitMatrix.from_columns([BitVector(2 * n, c) for c in cols], 2 * n)
    if not is_symplectic(e, n):
        raise CodeError("encoding completion is not symplectic")
    return e


def reduce_encoding(e: BitMatrix, k: int) -> BitMatrix:
    """Drop the destabilizer columns ``k..n-1`` of an encoding matrix."""
    n = e.nrows // 2
    keep = list(range(k)) + list(range(n, 2 * n))
    return e.submatrix(list(range(2 * n)), keep)


# ---------------------------------------------------------------------------
# Built-in codes
# ---------------------------------------------------------------------------
def _sparse(n: int, letter: str, qubits: Sequence[int]) -> str:
    body = ["I"] * n
    for q in qubits:
        body[q - 1] = letter
    return "".join(body)


def _iceberg() -> StabilizerCode:
    return StabilizerCode.from_strings(
        ["XXXX", "ZZZZ"],
        ["XXII", "XIXI"],
        ["IZIZ", "IIZZ"],
        name="iceberg-4-2-2",
    )


def _twisted_toric() -> StabilizerCode:
    xs = [(1, 2, 6, 7), (1, 4, 11, 12), (2, 3, 9, 10), (3, 4, 5, 8), (5, 6, 10, 11)]
    zs = [(1, 2, 9, 12), (1, 4, 5, 6), (2, 3, 7, 8), (3, 4, 10, 11), (5, 8, 9, 10)]
    stabs = [_sparse(12, "X", q) for q in xs] + [_sparse(12, "Z", q) for q in zs]
    return StabilizerCode.from_strings(
        stabs,
        [_sparse(12, "X", (1, 5, 9)), _sparse(12, "X", (1, 2, 3, 4))],
        [_sparse(12, "Z", (1, 2, 3, 4)), _sparse(12, "Z", (2, 6, 10))],
        name="twisted-toric-12-2-3",
    )


def cube_vertices_with(bit: int, value: int) -> list[int]:
    return [v for v in range(8) if (v >> bit) & 1 == value]


def _color_832() -> StabilizerCode:
    # qubit v sits on the cube vertex with coordinates (v & 1, v >> 1 & 1, v >> 2 & 1)
    faces = [[v + 1 for v in cube_vertices_with(b, 0)] for b in range(3)]
    stabs = ["X" * 8] + [_sparse(8, "Z", f) for f in faces] + ["Z" * 8]
    lx = [_sparse(8, "X", f) for f in faces]
    lz = [_sparse(8, "Z", (1, 1 + (1 << b))) for b in range(3)]
    return StabilizerCode.from_strings(stabs, lx, lz, name="color-8-3-2")


BUILTIN_CODES = {
    "iceberg-4-2-2": _iceberg,
    "twisted-toric-12-2-3": _twisted_toric,
    "color-8-3-2": _color_832,
}


def builtin(name: str) -> StabilizerCode:
    try:
        return BUILTIN_CODES[name]()
    except KeyError:
        raise KeyError(f"unknown code {name!r}; choose from {sorted(BUILTIN_CODES)}") from None


def load_code(path: str | Path) -> StabilizerCode:
    with open(path) as fh:
        data = json.load(fh)
    return StabilizerCode.from_dict(data)


def save_code(code: StabilizerCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code.to_dict(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# Logical targets
# ---------------------------------------------------------------------------
def logical_tableau(target, k: int) -> CliffordTableau:
    if isinstance(target, CliffordTableau):
        if target.n != k:
            raise ValueError(f"target acts on {target.n} qubits, code has k={k}")
        return target
    if isinstance(target, str):
        return logical_gate(target, k)
    if isinstance(target, (SymplecticMap, BitMatrix)):
        t = CliffordTableau.from_symplectic(target, k)
        if t.n != k:
            raise ValueError(f"target acts on {t.n} qubits, code has k={k}")
        return t
    raise TypeError(f"unsupported target type {type(target).__name__}")


def logical_gate(spec: str, k: int) -> CliffordTableau:
    """Parse gate words like ``"H@1"``, ``"CX@2,1"`` or ``"H@1 S@2"`` (time order)."""
    seq = GateSequence(k)
    aliases = {"CNOT": "CX", "SDG": "S_DAG", "SQRTX": "SQRT_X", "ID": "I"}
    for word in spec.replace(";", " ").split():
        if "@" not in word:
            raise ValueError(f"gate word {word!r} needs the form NAME@q[,q]")
        name, qs = word.split("@", 1)
        name = aliases.get(name.upper(), name.upper())
        qubits = [int(q) - 1 for q in qs.split(",")]
        if name == "SWAP":
            a, b = qubits
            for c, t in ((a, b), (b, a), (a, b)):
                seq.append("CX", c, t)
            continue
        seq.append(name, *qubits)
    return seq.tableau()
