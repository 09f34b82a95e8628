"""Dense linear algebra over GF(2).

Rows are stored as Python integers used as bit sets: bit ``j`` of ``rows[i]``
is the entry in row ``i``, column ``j``.  Integers are arbitrary precision, so
a row of any width is a single packed word and row operations are single XORs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


def _mask(width: int) -> int:
    return (1 << width) - 1


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    """A vector over GF(2) of fixed length, packed into one integer."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_iter(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for n, v in enumerate(values, start=1):
            if v & 1:
                bits |= 1 << (n - 1)
        return cls(n, bits)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return parity(self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_array(self) -> np.ndarray:
        return np.array(list(self), dtype=np.uint8)

    def __repr__(self) -> str:
        return f"BitVector({''.join(map(str, self))})"


class BitMatrix:
    """A dense ``rows x cols`` matrix over GF(2)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("shape must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [0] * nrows
        else:
            rows = list(rows)
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            mask = _mask(ncols)
            for r in rows:
                if r < 0 or r & ~mask:
                    raise ValueError("row has bits beyond the column count")
            self.rows = rows

    # -- construction -----------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_array(cls, a) -> "BitMatrix":
        arr = np.asarray(a, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        arr = arr & 1
        nrows, ncols = arr.shape
        weights = [1 << j for j in range(ncols)]
        rows = [sum(w for w, v in zip(weights, row) if v) for row in arr.tolist()]
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector], nrows: int | None = None) -> "BitMatrix":
        if nrows is None:
            if not columns:
                raise ValueError("nrows required for an empty column list")
            nrows = columns[0].length
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col.length != nrows:
                raise ValueError("column length mismatch")
            b = col.bits
            while b:
                low = b & -b
                rows[low.bit_length() - 1] |= 1 << j
                b ^= low
        return cls(nrows, len(columns), rows)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["BitMatrix"]]) -> "BitMatrix":
        """Assemble a block matrix from a grid of compatible blocks."""
        out_rows: list[int] = []
        width = None
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise ValueError("block heights differ within a block row")
            w = sum(b.ncols for b in brow)
            if width is None:
                width = w
            elif w != width:
                raise ValueError("block rows have different widths")
            for i in range(h):
                r, shift = 0, 0
                for b in brow:
                    r |= b.rows[i] << shift
                    shift += b.ncols
                out_rows.append(r)
        return cls(len(out_rows), width or 0, out_rows)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.nrows, self.ncols, list(self.rows))

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(idx)
        return (self.rows[i] >> j) & 1

    def __setitem__(self, idx: tuple[int, int], value: int) -> None:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(idx)
        if value & 1:
            self.rows[i] |= 1 << j
        else:
            self.rows[i] &= ~(1 << j)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(self.nrows, bits)

    def columns(self) -> list[BitVector]:
        return [self.column(j) for j in range(self.ncols)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "BitMatrix":
        rows = []
        for i in row_idx:
            src = self.rows[i]
            r = 0
            for jj, j in enumerate(col_idx):
                if (src >> j) & 1:
                    r |= 1 << jj
            rows.append(r)
        return BitMatrix(len(row_idx), len(col_idx), rows)

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    out[i, j] = 1
                r >>= 1
                j += 1
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    # -- arithmetic -------------------------------------------------------
    def transpose(self) -> "BitMatrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= bit
                r ^= low
        return BitMatrix(self.ncols, self.nrows, out)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    __xor__ = __add__

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.apply(other)
        return mat_mul(self, other)

    def apply(self, v: BitVector) -> BitVector:
        if v.length != self.ncols:
            raise ValueError("dimension mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVector(self.nrows, bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, tuple(self.rows)))

    def __repr__(self) -> str:
        body = "; ".join(
            "".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows
        )
        return f"BitMatrix({self.nrows}x{self.ncols}: [{body}])"

    def __str__(self) -> str:
        return "\n".join(
            " ".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows
        )


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.nrows, b.ncols, out)


def _echelon(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place reduced row echelon form; returns (pivot columns, pivot rows order).

    Pivots are taken column by column, the pivot row being the first remaining
    row with that bit set, so the result is deterministic.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        bit = 1 << c
        p = next((i for i in range(r, nrows) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, rows


def rank(a: BitMatrix) -> int:
    pivots, _ = _echelon(list(a.rows), a.ncols)
    return len(pivots)


def rref(a: BitMatrix) -> tuple[BitMatrix, list[int]]:
    rows = list(a.rows)
    pivots, rows = _echelon(rows, a.ncols)
    return BitMatrix(a.nrows, a.ncols, rows), pivots


def nullspace(a: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : a v = 0}``."""
    return solve(a, BitVector.zeros(a.nrows))[1]


def solve(a: BitMatrix, b: BitVector) -> tuple[BitVector | None, list[BitVector]]:
    """Solve ``a x = b``.

    Returns ``(x, basis)`` where ``x`` is one solution (free variables set to
    zero) or ``None`` when the system is inconsistent, and ``basis`` spans the
    null space of ``a``.
    """
    if b.length != a.nrows:
        raise ValueError("dimension mismatch")
    n = a.ncols
    # augmented column n holds b
    rows = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(a.rows)]
    pivots, rows = _echelon(rows, n)
    rk = len(pivots)
    consistent = all(not (rows[i] >> n) & 1 for i in range(rk, len(rows)))
    x = None
    if consistent:
        bits = 0
        for i, c in enumerate(pivots):
            if (rows[i] >> n) & 1:
                bits |= 1 << c
        x = BitVector(n, bits)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        bits = 1 << f
        for i, c in enumerate(pivots):
            if (rows[i] >> f) & 1:
                bits |= 1 << c
        basis.append(BitVector(n, bits))
    return x, basis


def inverse(a: BitMatrix) -> BitMatrix | None:
    if a.nrows != a.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = a.nrows
    rows = [r | (1 << (n + i)) for i, r in enumerate(a.rows)]
    pivots, rows = _echelon(rows, n)
    if len(pivots) != n:
        return None
    return BitMatrix(n, n, [r >> n for r in rows])


def omega(n: int) -> BitMatrix:
    """The ``2n x 2n`` symplectic form ``[[0, I], [I, 0]]``."""
    rows = [1 << (n + i) for i in range(n)] + [1 << i for i in range(n)]
    return BitMatrix(2 * n, 2 * n, rows)


def symplectic_product(u: int, v: int, n: int) -> int:
    """``u^T Omega v`` for packed length-2n vectors laid out as ``[x; z]``."""
    m = _mask(n)
    return ((u & m) & (v >> n)).bit_count() + ((u >> n) & (v & m)).bit_count() & 1


def is_symplectic(a: BitMatrix, n: int) -> bool:
    if a.shape != (2 * n, 2 * n):
        raise ValueError(f"expected a {2*n}x{2*n} matrix, got {a.shape}")
    cols = [c.bits for c in a.columns()]
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            want = 1 if j == i + n else 0
            if symplectic_product(cols[i], cols[j], n) != want:
                return False
    return True


def iter_symplectic(n: int, template=None) -> Iterator[BitMatrix]:
    """Enumerate ``Sp(F_2^{2n})`` by backtracking over symplectic column pairs.

    Columns are chosen in the order ``(0, n), (1, n+1), ...``; each candidate
    column must have the prescribed symplectic products with every earlier
    column.  ``template``, when given, is a callable ``(col_index, bits) ->
    bool`` used to prune columns early.
    """
    dim = 2 * n
    order = [c for i in range(n) for c in (i, n + i)]
    chosen: dict[int, int] = {}

    def ok(col: int, v: int) -> bool:
        for c, w in chosen.items():
            want = 1 if abs(c - col) == n else 0
            if symplectic_product(v, w, n) != want:
                return False
        return template is None or template(col, v)

    def rec(pos: int):
        if pos == dim:
            cols = [BitVector(dim, chosen[j]) for j in range(dim)]
            yield BitMatrix.from_columns(cols, dim)
            return
        col = order[pos]
        for v in range(1, 1 << dim):
            if ok(col, v):
                chosen[col] = v
                yield from rec(pos + 1)
                del chosen[col]

    yield from rec(0)


def symplectic_group_order(n: int) -> int:
    order = 2 ** (n * n)
    for j in range(1, n + 1):
        order *= 4**j - 1
    return order
