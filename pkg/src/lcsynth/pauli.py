"""Pauli operators, Clifford tableaus, and layered circuits.

Binary convention: an ``n``-qubit Pauli ``i^q X^x Z^z`` is stored as two
integer bit masks ``x`` and ``z`` plus the exponent ``q`` (mod 4).  Its binary
vector is ``[x; z]`` packed as ``x | z << n``.  ``Y = i X Z``, so the
Hermitian operator written ``+Y`` has ``q = 1``.

Symplectic matrices act on column vectors: column ``j < n`` is the image of
``X_j`` and column ``n + j`` the image of ``Z_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gf2 import BitMatrix, BitVector, is_symplectic, mat_mul, solve

_SIGN_PREFIXES = {"+": 0, "": 0, "-": 2, "i": 1, "+i": 1, "-i": 3}


@dataclass(frozen=True)
class PauliOp:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if (self.x | self.z) >> self.n:
            raise ValueError("Pauli has support beyond n qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction ---------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n)

    @classmethod
    def from_string(cls, s: str) -> "PauliOp":
        """Parse e.g. ``"XXIZ"``, ``"-YZ"``, ``"iX"``; qubit 0 is leftmost."""
        s = s.strip().replace("−", "-")
        body = s.lstrip("+-i")
        prefix = s[: len(s) - len(body)]
        if prefix not in _SIGN_PREFIXES:
            raise ValueError(f"bad sign prefix in Pauli string {s!r}")
        q = _SIGN_PREFIXES[prefix]
        x = z = 0
        for j, ch in enumerate(body.upper()):
            if ch in "I_":
                continue
            if ch == "X":
                x |= 1 << j
            elif ch == "Z":
                z |= 1 << j
            elif ch == "Y":
                x |= 1 << j
                z |= 1 << j
                q += 1
            else:
                raise ValueError(f"bad Pauli character {ch!r} in {s!r}")
        return cls(len(body), x, z, q)

    @classmethod
    def from_sparse(cls, n: int, terms: dict[int, str], sign: int = 1) -> "PauliOp":
        body = ["I"] * n
        for q, p in terms.items():
            body[q] = p
        return cls.from_string(("-" if sign < 0 else "+") + "".join(body))

    @classmethod
    def from_binary(cls, n: int, v: int, phase: int | None = None) -> "PauliOp":
        """Pauli with binary vector ``v``; default phase makes it ``+``-Hermitian."""
        mask = (1 << n) - 1
        x, z = v & mask, v >> n
        if phase is None:
            phase = (x & z).bit_count()
        return cls(n, x, z, phase)

    # -- properties -----------------------------------------------------------
    @property
    def binary(self) -> int:
        return self.x | (self.z << self.n)

    def vector(self) -> BitVector:
        return BitVector(2 * self.n, self.binary)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def is_hermitian(self) -> bool:
        return (self.phase - (self.x & self.z).bit_count()) % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian operators relative to the ``X/Y/Z`` string form."""
        d = (self.phase - (self.x & self.z).bit_count()) % 4
        if d == 0:
            return 1
        if d == 2:
            return -1
        raise ValueError("sign is only defined for Hermitian Paulis")

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        q = self.phase + other.phase + 2 * (self.z & other.x).bit_count()
        return PauliOp(self.n, self.x ^ other.x, self.z ^ other.z, q)

    def __neg__(self) -> "PauliOp":
        return PauliOp(self.n, self.x, self.z, self.phase + 2)

    def commutes(self, other: "PauliOp") -> bool:
        return commutes(self, other)

    def letters(self) -> str:
        out = []
        for j in range(self.n):
            xb, zb = (self.x >> j) & 1, (self.z >> j) & 1
            out.append("IXZY"[xb + 2 * zb])
        return "".join(out)

    def __str__(self) -> str:
        d = (self.phase - (self.x & self.z).bit_count()) % 4
        return ["+", "i", "-", "-i"][d] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOp({self})"

    def embed(self, n_total: int, offset: int = 0) -> "PauliOp":
        return PauliOp(n_total, self.x << offset, self.z << offset, self.phase)

    def restrict(self, qubits: Sequence[int]) -> "PauliOp":
        """Keep only the listed qubits (in order); phase is kept as is."""
        x = z = 0
        for i, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << i
            z |= ((self.z >> q) & 1) << i
        return PauliOp(len(qubits), x, z, self.phase)


def commutes(p: PauliOp, q: PauliOp) -> bool:
    if p.n != q.n:
        raise ValueError("qubit count mismatch")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


# ---------------------------------------------------------------------------
# Gate library.  Images are written as signed Pauli strings on the gate's own
# qubits: for one-qubit gates (X image, Z image); for two-qubit gates
# (X_a, X_b, Z_a, Z_b) images.
# ---------------------------------------------------------------------------
ONE_QUBIT_GATES: dict[str, tuple[str, str]] = {
    "I": ("+X", "+Z"),
    "X": ("+X", "-Z"),
    "Y": ("-X", "-Z"),
    "Z": ("-X", "+Z"),
    "H": ("+Z", "+X"),
    "S": ("+Y", "+Z"),
    "S_DAG": ("-Y", "+Z"),
    "SQRT_X": ("+X", "-Y"),
    "SQRT_X_DAG": ("+X", "+Y"),
}

TWO_QUBIT_GATES: dict[str, tuple[str, str, str, str]] = {
    "CZ": ("+XZ", "+ZX", "+ZI", "+IZ"),
    "CX": ("+XX", "+IX", "+ZI", "+ZZ"),
    "CY": ("+XY", "+ZX", "+ZI", "+ZZ"),
}

NON_UNITARY = {"R0", "RP", "MX", "MZ"}
ALL_GATES = set(ONE_QUBIT_GATES) | set(TWO_QUBIT_GATES) | NON_UNITARY

_ONE_Q_IMAGES = {
    name: tuple(PauliOp.from_string(s) for s in imgs) for name, imgs in ONE_QUBIT_GATES.items()
}
_TWO_Q_IMAGES = {
    name: tuple(PauliOp.from_string(s) for s in imgs) for name, imgs in TWO_QUBIT_GATES.items()
}


def _local_image(images, bits_x: int, bits_z: int, m: int) -> PauliOp:
    out = PauliOp(m)
    for j in range(m):
        if (bits_x >> j) & 1:
            out = out * images[j]
    for j in range(m):
        if (bits_z >> j) & 1:
            out = out * images[m + j]
    return out


def conjugate_by_gate(p: PauliOp, name: str, qubits: Sequence[int]) -> PauliOp:
    """Return ``G p G^dagger`` for a named unitary gate acting on ``qubits``."""
    if name in _ONE_Q_IMAGES:
        images = _ONE_Q_IMAGES[name]
    elif name in _TWO_Q_IMAGES:
        images = _TWO_Q_IMAGES[name]
    else:
        raise ValueError(f"{name} is not a unitary Clifford gate")
    m = len(qubits)
    lx = lz = 0
    for i, q in enumerate(qubits):
        lx |= ((p.x >> q) & 1) << i
        lz |= ((p.z >> q) & 1) << i
    if not (lx or lz):
        return p
    loc = _local_image(images, lx, lz, m)
    x, z = p.x, p.z
    for i, q in enumerate(qubits):
        bit = 1 << q
        x = (x & ~bit) | (((loc.x >> i) & 1) << q)
        z = (z & ~bit) | (((loc.z >> i) & 1) << q)
    return PauliOp(p.n, x, z, p.phase + loc.phase)


# ---------------------------------------------------------------------------
# Symplectic maps and tableaus
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SymplecticMap:
    n: int
    mat: BitMatrix

    def __post_init__(self):
        if not is_symplectic(self.mat, self.n):
            raise ValueError("matrix is not symplectic")

    @classmethod
    def identity(cls, n: int) -> "SymplecticMap":
        return cls(n, BitMatrix.identity(2 * n))

    def __matmul__(self, other: "SymplecticMap") -> "SymplecticMap":
        return SymplecticMap(self.n, mat_mul(self.mat, other.mat))

    def blocks(self) -> tuple[BitMatrix, BitMatrix, BitMatrix, BitMatrix]:
        n = self.n
        top, bot = list(range(n)), list(range(n, 2 * n))
        m = self.mat
        return (m.submatrix(top, top), m.submatrix(top, bot),
                m.submatrix(bot, top), m.submatrix(bot, bot))

    def __eq__(self, other) -> bool:
        if isinstance(other, SymplecticMap):
            return self.n == other.n and self.mat == other.mat
        if isinstance(other, BitMatrix):
            return self.mat == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mat)


class CliffordTableau:
    """Images of ``X_0..X_{n-1}, Z_0..Z_{n-1}`` under conjugation ``U P U^dagger``."""

    __slots__ = ("n", "images")

    def __init__(self, n: int, images: Sequence[PauliOp] | None = None):
        self.n = n
        if images is None:
            images = [PauliOp(n, 1 << j, 0) for j in range(n)] + [
                PauliOp(n, 0, 1 << j) for j in range(n)
            ]
        images = list(images)
        if len(images) != 2 * n or any(p.n != n for p in images):
            raise ValueError("tableau needs 2n images on n qubits")
        if not all(p.is_hermitian() for p in images):
            raise ValueError("tableau images must be Hermitian")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        return cls(n)

    @classmethod
    def from_symplectic(cls, s: SymplecticMap | BitMatrix, n: int | None = None,
                        sign_bits: Sequence[int] | None = None) -> "CliffordTableau":
        mat = s.mat if isinstance(s, SymplecticMap) else s
        n = s.n if isinstance(s, SymplecticMap) else (n if n is not None else mat.nrows // 2)
        if not is_symplectic(mat, n):
            raise ValueError("matrix is not symplectic")
        signs = sign_bits or [0] * (2 * n)
        images = []
        for j in range(2 * n):
            p = PauliOp.from_binary(n, mat.column(j).bits)
            images.append(-p if signs[j] else p)
        return cls(n, images)

    @property
    def symplectic(self) -> SymplecticMap:
        cols = [p.vector() for p in self.images]
        return SymplecticMap(self.n, BitMatrix.from_columns(cols, 2 * self.n))

    @property
    def sign_bits(self) -> list[int]:
        return [0 if p.sign > 0 else 1 for p in self.images]

    def conjugate(self, p: PauliOp) -> PauliOp:
        return conjugate(self, p)

    def then(self, other: "CliffordTableau") -> "CliffordTableau":
        """Tableau of applying ``self`` first and ``other`` second."""
        return CliffordTableau(self.n, [other.conjugate(p) for p in self.images])

    def apply_gate(self, name: str, qubits: Sequence[int]) -> "CliffordTableau":
        return CliffordTableau(self.n, [conjugate_by_gate(p, name, qubits) for p in self.images])

    def inverse(self) -> "CliffordTableau":
        """Tableau of ``U^dagger``."""
        n = self.n
        inv = SymplecticMap(n, _sym_inverse(self.symplectic.mat, n))
        cand = CliffordTableau.from_symplectic(inv)
        # fix signs so that U (U^dag P U) U^dag = P for each generator
        images = []
        for j, p in enumerate(cand.images):
            back = self.conjugate(p)
            images.append(p if back.sign > 0 else -p)
        return CliffordTableau(n, images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.n == other.n and self.images == other.images

    def __repr__(self) -> str:
        return "CliffordTableau(" + ", ".join(map(str, self.images)) + ")"


def _sym_inverse(mat: BitMatrix, n: int) -> BitMatrix:
    # A^{-1} = Omega A^T Omega for symplectic A
    from .gf2 import omega

    om = omega(n)
    return mat_mul(mat_mul(om, mat.transpose()), om)


def conjugate(t: CliffordTableau, p: PauliOp) -> PauliOp:
    if t.n != p.n:
        raise ValueError("qubit count mismatch")
    out = PauliOp(p.n, 0, 0, p.phase)
    n = p.n
    x, z = p.x, p.z
    for j in range(n):
        if (x >> j) & 1:
            out = out * t.images[j]
    for j in range(n):
        if (z >> j) & 1:
            out = out * t.images[n + j]
    return out


# ---------------------------------------------------------------------------
# Single-qubit symplectic classes.  An SCL entry is (xx, xz, zx, zz), i.e. the
# 2x2 matrix [[xx, xz], [zx, zz]] acting on [x; z].
# ---------------------------------------------------------------------------
SCL_CLASSES: dict[tuple[int, int, int, int], tuple[str, ...]] = {
    (1, 0, 0, 1): (),
    (0, 1, 1, 0): ("H",),
    (1, 0, 1, 1): ("S",),
    (1, 1, 0, 1): ("SQRT_X",),
    (1, 1, 1, 0): ("S", "H"),
    (0, 1, 1, 1): ("H", "S"),
}
IDENTITY_SCL = (1, 0, 0, 1)


def scl_entry_valid(e: Sequence[int]) -> bool:
    return len(e) == 4 and all(b in (0, 1) for b in e) and (e[0] & e[3]) ^ (e[1] & e[2]) == 1


def scl_compose(after: Sequence[int], before: Sequence[int]) -> tuple[int, int, int, int]:
    """2x2 product ``after @ before`` over GF(2)."""
    a, b, c, d = after
    e, f, g, h = before
    return ((a & e) ^ (b & g), (a & f) ^ (b & h), (c & e) ^ (d & g), (c & f) ^ (d & h))


def scl_inverse(e: Sequence[int]) -> tuple[int, int, int, int]:
    a, b, c, d = e
    return (d, b, c, a)


def scl_symplectic(assignments: Sequence[Sequence[int]]) -> SymplecticMap:
    n = len(assignments)
    rows = [0] * (2 * n)
    for j, e in enumerate(assignments):
        if not scl_entry_valid(e):
            raise ValueError(f"invalid single-qubit symplectic entry {tuple(e)} on qubit {j}")
        xx, xz, zx, zz = e
        rows[j] = (xx << j) | (xz << (n + j))
        rows[n + j] = (zx << j) | (zz << (n + j))
    return SymplecticMap(n, BitMatrix(2 * n, 2 * n, rows))


def _check_adjacency(gamma: BitMatrix) -> None:
    n = gamma.nrows
    if gamma.ncols != n:
        raise ValueError("adjacency matrix must be square")
    for i in range(n):
        if gamma[i, i]:
            raise ValueError("adjacency matrix must have a zero diagonal")
    if gamma.transpose() != gamma:
        raise ValueError("adjacency matrix must be symmetric")


def czl_symplectic(gamma: BitMatrix) -> SymplecticMap:
    _check_adjacency(gamma)
    n = gamma.nrows
    rows = [1 << i for i in range(n)] + [gamma.rows[i] | (1 << (n + i)) for i in range(n)]
    return SymplecticMap(n, BitMatrix(2 * n, 2 * n, rows))


def edges_of(gamma: BitMatrix) -> list[tuple[int, int]]:
    return [(i, j) for i in range(gamma.nrows) for j in range(i + 1, gamma.ncols) if gamma[i, j]]


def adjacency(n: int, edges: Iterable[tuple[int, int]]) -> BitMatrix:
    g = BitMatrix.zeros(n, n)
    for i, j in edges:
        if i == j:
            raise ValueError("self loop")
        g[i, j] ^= 1
        g[j, i] ^= 1
    return g


@dataclass
class LayeredCircuit:
    """Alternating single-qubit Clifford layers and CZ layers.

    ``scls[0]`` is applied first, then ``czls[0]``, then ``scls[1]`` and so on;
    there are ``len(czls) + 1`` SCLs.  ``pauli_frame`` is applied last.
    """

    n: int
    scls: list[list[tuple[int, int, int, int]]]
    czls: list[BitMatrix]
    pauli_frame: PauliOp | None = None

    def __post_init__(self):
        if len(self.scls) != len(self.czls) + 1:
            raise ValueError("need exactly one more SCL than CZLs")
        self.scls = [[tuple(e) for e in layer] for layer in self.scls]
        for layer in self.scls:
            if len(layer) != self.n:
                raise ValueError("SCL has wrong qubit count")
            for e in layer:
                if not scl_entry_valid(e):
                    raise ValueError(f"invalid SCL entry {e}")
        for g in self.czls:
            if g.shape != (self.n, self.n):
                raise ValueError("CZL has wrong size")
            _check_adjacency(g)
        if self.pauli_frame is not None and self.pauli_frame.n != self.n:
            raise ValueError("Pauli frame has wrong qubit count")

    @classmethod
    def identity(cls, n: int) -> "LayeredCircuit":
        return cls(n, [[IDENTITY_SCL] * n], [])

    @property
    def length(self) -> int:
        return len(self.czls)

    @property
    def cz_count(self) -> int:
        return sum(len(edges_of(g)) for g in self.czls)

    def then(self, other: "LayeredCircuit") -> "LayeredCircuit":
        """Concatenate, fusing this circuit's last SCL with ``other``'s first."""
        if other.n != self.n:
            raise ValueError("qubit count mismatch")
        if self.pauli_frame is not None:
            raise ValueError("cannot fuse past a Pauli frame")
        fused = [scl_compose(b, a) for a, b in zip(self.scls[-1], other.scls[0])]
        scls = self.scls[:-1] + [fused] + other.scls[1:]
        return LayeredCircuit(self.n, scls, self.czls + other.czls, other.pauli_frame)


def circuit_symplectic(c: LayeredCircuit) -> SymplecticMap:
    acc = scl_symplectic(c.scls[0])
    for g, b in zip(c.czls, c.scls[1:]):
        acc = scl_symplectic(b) @ (czl_symplectic(g) @ acc)
    return acc


# ---------------------------------------------------------------------------
# Flat gate sequences
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.name != "TICK" and self.name not in ALL_GATES:
            raise ValueError(f"unknown gate {self.name}")
        want = 2 if self.name in TWO_QUBIT_GATES else (0 if self.name == "TICK" else 1)
        if len(self.qubits) != want:
            raise ValueError(f"{self.name} takes {want} qubits")
        if want == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("two-qubit gate on a repeated qubit")

    def __str__(self) -> str:
        return " ".join([self.name] + [str(q + 1) for q in self.qubits])


@dataclass
class GateSequence:
    n: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            if any(not 0 <= q < self.n for q in g.qubits):
                raise ValueError(f"qubit index out of range in {g}")

    def append(self, name: str, *qubits: int) -> None:
        g = Gate(name, tuple(qubits))
        if any(not 0 <= q < self.n for q in g.qubits):
            raise ValueError(f"qubit index out of range in {g}")
        self.gates.append(g)

    def __iter__(self):
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def ops(self) -> list[Gate]:
        return [g for g in self.gates if g.name != "TICK"]

    def is_unitary(self) -> bool:
        return all(g.name not in NON_UNITARY for g in self.gates)

    def count(self, *names: str) -> int:
        return sum(1 for g in self.gates if g.name in names)

    def tableau(self) -> CliffordTableau:
        t = CliffordTableau.identity(self.n)
        for g in self.gates:
            if g.name == "TICK":
                continue
            if g.name in NON_UNITARY:
                raise ValueError("sequence contains non-unitary operations")
            t = t.apply_gate(g.name, g.qubits)
        return t

    def to_text(self) -> str:
        return "\n".join(str(g) for g in self.gates) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "GateSequence":
        gates = []
        top = -1
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            name = parts[0].upper()
            try:
                qubits = tuple(int(p) - 1 for p in parts[1:])
            except ValueError:
                raise ValueError(f"line {lineno}: bad qubit index in {raw!r}") from None
            if any(q < 0 for q in qubits):
                raise ValueError(f"line {lineno}: qubits are 1-indexed")
            try:
                gates.append(Gate(name, qubits))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            top = max([top, *qubits])
        if n is None:
            n = top + 1
        return cls(n, gates)


def flatten(c: LayeredCircuit) -> GateSequence:
    seq = GateSequence(c.n)
    for li, layer in enumerate(c.scls):
        if li > 0:
            seq.append("TICK")
            for i, j in edges_of(c.czls[li - 1]):
                seq.append("CZ", i, j)
            seq.append("TICK")
        for q, e in enumerate(layer):
            for name in SCL_CLASSES[e]:
                seq.append(name, q)
    if c.pauli_frame is not None and not c.pauli_frame.is_identity():
        seq.append("TICK")
        f = c.pauli_frame
        for q in range(c.n):
            letter = "IXZY"[((f.x >> q) & 1) + 2 * ((f.z >> q) & 1)]
            if letter != "I":
                seq.append(letter, q)
    return seq


def tableau_of(circuit) -> CliffordTableau:
    """Tableau of a LayeredCircuit (frame included), GateSequence or tableau."""
    if isinstance(circuit, CliffordTableau):
        return circuit
    if isinstance(circuit, LayeredCircuit):
        return flatten(circuit).tableau()
    if isinstance(circuit, GateSequence):
        return circuit.tableau()
    if isinstance(circuit, SymplecticMap):
        return CliffordTableau.from_symplectic(circuit)
    raise TypeError(f"cannot build a tableau from {type(circuit).__name__}")


def symplectic_of(circuit) -> SymplecticMap:
    if isinstance(circuit, LayeredCircuit):
        return circuit_symplectic(circuit)
    if isinstance(circuit, SymplecticMap):
        return circuit
    if isinstance(circuit, BitMatrix):
        return SymplecticMap(circuit.nrows // 2, circuit)
    return tableau_of(circuit).symplectic


def pauli_frame_fix(c: LayeredCircuit, code, target) -> PauliOp:
    """Choose the Pauli frame making ``c`` sign-exact for ``target`` on ``code``.

    ``target`` is a ``CliffordTableau`` on ``code.k`` qubits or a symplectic
    matrix (interpreted with all-``+`` signs).  The frame is stored on ``c``
    and returned.
    """
    from .code import logical_tableau

    target_t = logical_tableau(target, code.k)
    t = tableau_of(c)
    n = c.n
    rows, rhs = [], 0
    checks = [(s, None) for s in code.stabilizers]
    checks += [(code.logical_x[i], target_t.images[i]) for i in range(code.k)]
    checks += [(code.logical_z[i], target_t.images[code.k + i]) for i in range(code.k)]
    for idx, (p, want) in enumerate(checks):
        img = t.conjugate(p)
        dec = code.decompose(img)
        if dec is None:
            raise RuntimeError("circuit does not preserve the code space; no Pauli frame exists")
        logical, _ = dec
        if want is None:
            if logical.binary:
                raise RuntimeError("stabilizer mapped outside the stabilizer group")
            want = PauliOp(code.k)
        if logical.binary != want.binary:
            raise RuntimeError("logical action differs from the target beyond signs")
        bad = (logical.phase - want.phase) % 4
        if bad not in (0, 2):
            raise RuntimeError("non-Hermitian phase mismatch")
        # row u such that <u, p> = symplectic product with image
        v = img.binary
        mask = (1 << n) - 1
        rows.append((v >> n) | ((v & mask) << n))
        if bad == 2:
            rhs |= 1 << idx
    sol, _ = solve(BitMatrix(len(rows), 2 * n, rows), BitVector(len(rows), rhs))
    if sol is None:
        raise RuntimeError("internal inconsistency: Pauli frame system has no solution")
    corr = PauliOp.from_binary(n, sol.bits)
    old = c.pauli_frame or PauliOp(n)
    frame = corr * old
    c.pauli_frame = PauliOp.from_binary(n, frame.binary)
    return c.pauli_frame
