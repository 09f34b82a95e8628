"""The freedom gauge group and its reduced form.

Two physical Cliffords implement the same logical gate on a code exactly when
their encodings differ by a right factor ``F`` of the block shape::

    F = [[F^xx, 0   ],     F^xx = [[I_k, *], [0, *]]
         [F^zx, F^zz]]     F^zz = [[I_k, 0], [*, *]]

with the top-left ``k x k`` block of ``F^zx`` equal to zero.  Rows and columns
follow the encoding layout ``[x | d | z | s]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .gf2 import BitMatrix, inverse, is_symplectic

ENUMERATION_CAP = 1 << 20

FIXED_0, FIXED_1, FREE = 0, 1, 2


def gl_order(m: int) -> int:
    """Order of GL(m, F2)."""
    out = 1
    for i in range(m):
        out *= (1 << m) - (1 << i)
    return out


def freedom_count(n: int, k: int) -> int:
    """Number of elements of the freedom gauge group for an ``[[n, k]]`` code."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    num_exp = n * (n + 1) // 2 + k * (n - k)
    den_exp = k * (k + 1) // 2
    return (1 << (num_exp - den_exp)) * gl_order(n - k)


def freedom_count_factored(n: int, k: int) -> tuple[int, int, int]:
    """Split the count into logical-mixing, symmetric, and stabilizer-basis factors."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    r = n - k
    return 1 << (2 * k * r), 1 << (r * (r + 1) // 2), gl_order(r)


@dataclass(frozen=True)
class FreedomTemplate:
    n: int
    k: int
    pattern: tuple[tuple[int, ...], ...]

    def matches(self, f: BitMatrix) -> bool:
        for i, row in enumerate(self.pattern):
            for j, p in enumerate(row):
                if p != FREE and f[i, j] != p:
                    return False
        return True

    def column_predicate(self) -> Callable[[int, int], bool]:
        """Predicate ``(col, bits) -> bool`` checking one column's fixed entries."""
        m = 2 * self.n
        masks, values = [], []
        for j in range(m):
            mask = val = 0
            for i in range(m):
                p = self.pattern[i][j]
                if p != FREE:
                    mask |= 1 << i
                    val |= p << i
            masks.append(mask)
            values.append(val)
        return lambda col, bits: (bits & masks[col]) == values[col]


def freedom_template(n: int, k: int) -> FreedomTemplate:
    m = 2 * n
    pat = [[FREE] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            xi, xj = i < n, j < n
            li, lj = i % n, j % n
            if xi and not xj:
                pat[i][j] = FIXED_0  # F^xz = 0
            elif xi and xj and lj < k:
                pat[i][j] = int(li == lj)  # first k columns of F^xx are [I; 0]
            elif not xi and not xj and li < k:
                pat[i][j] = int(li == lj)  # first k rows of F^zz are [I, 0]
            elif not xi and xj and li < k and lj < k:
                pat[i][j] = FIXED_0  # zero corner of F^zx
    return FreedomTemplate(n, k, tuple(tuple(r) for r in pat))


def is_valid_freedom(f: BitMatrix, n: int, k: int) -> bool:
    if f.shape != (2 * n, 2 * n):
        raise ValueError(f"expected a {2 * n}x{2 * n} matrix, got {f.shape}")
    return freedom_template(n, k).matches(f) and is_symplectic(f, n)


def iter_gl(m: int) -> Iterator[BitMatrix]:
    """All invertible ``m x m`` matrices, built row by row outside the running span."""

    def rec(rows: list[int], span: set[int]):
        if len(rows) == m:
            yield BitMatrix(m, m, list(rows))
            return
        for r in range(1, 1 << m):
            if r in span:
                continue
            rows.append(r)
            yield from rec(rows, span | {s ^ r for s in span})
            rows.pop()

    yield from rec([], {0})


def _from_blocks(n: int, fxx: BitMatrix, fzx: BitMatrix, fzz: BitMatrix) -> BitMatrix:
    rows = [fxx.rows[i] for i in range(n)]
    rows += [fzx.rows[i] | (fzz.rows[i] << n) for i in range(n)]
    return BitMatrix(2 * n, 2 * n, rows)


def enumerate_freedom(n: int, k: int, cap: int = ENUMERATION_CAP) -> Iterator[BitMatrix]:
    """Yield every element of the freedom gauge group exactly once.

    ``F^zz = [[I, 0], [W, V]]`` with ``V`` invertible, ``F^xx`` is the inverse
    transpose of ``F^zz``, and ``F^zx = F^zz @ Sigma`` for a symmetric ``Sigma``
    whose top-left ``k x k`` block vanishes.
    """
    total = freedom_count(n, k)
    if total > cap:
        raise ValueError(f"freedom group has {total} elements, above the cap {cap}")
    r = n - k
    sym_slots = [(i, j) for i in range(n) for j in range(i, n) if not (i < k and j < k)]
    for v in iter_gl(r):
        for wbits in product((0, 1), repeat=r * k):
            fzz = BitMatrix.identity(n)
            for a in range(r):
                for b in range(r):
                    fzz[k + a, k + b] = v[a, b]
                for b in range(k):
                    fzz[k + a, b] = wbits[a * k + b]
            fxx = inverse(fzz.transpose())
            for sbits in product((0, 1), repeat=len(sym_slots)):
                sigma = BitMatrix.zeros(n, n)
                for (i, j), bit in zip(sym_slots, sbits):
                    if bit:
                        sigma[i, j] = 1
                        sigma[j, i] = 1
                yield _from_blocks(n, fxx, fzz @ sigma, fzz)


# ---------------------------------------------------------------------------
# Reduced freedom matrix F'_C
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ReducedFreedom:
    """``(n+k) x (n+k)`` matrix in the reduced layout ``[x | z | s]``.

    The top ``2k`` rows are ``[C | 0]``; the bottom ``n-k`` rows are free.
    """

    n: int
    k: int
    f_prime: BitMatrix

    def __post_init__(self):
        n, k = self.n, self.k
        if self.f_prime.shape != (n + k, n + k):
            raise ValueError("reduced freedom matrix has the wrong shape")
        for i in range(2 * k):
            if self.f_prime.rows[i] >> (2 * k):
                raise ValueError("top-right block of a reduced freedom matrix must vanish")

    @property
    def target(self) -> BitMatrix:
        idx = list(range(2 * self.k))
        return self.f_prime.submatrix(idx, idx)

    @property
    def free_block(self) -> BitMatrix:
        return self.f_prime.submatrix(list(range(2 * self.k, self.n + self.k)),
                                      list(range(self.n + self.k)))


def reduced_template(c: BitMatrix, n: int) -> FreedomTemplate:
    """Fixed/free pattern of ``F'_C`` for a ``2k x 2k`` symplectic target ``c``."""
    if c.nrows != c.ncols or c.nrows % 2:
        raise ValueError("target must be a square 2k x 2k matrix")
    k = c.nrows // 2
    if not is_symplectic(c, k):
        raise ValueError("target is not symplectic")
    if k > n:
        raise ValueError("target acts on more qubits than the code encodes")
    m = n + k
    pat = [[FREE] * m for _ in range(m)]
    for i in range(2 * k):
        for j in range(m):
            pat[i][j] = c[i, j] if j < 2 * k else FIXED_0
    return FreedomTemplate(n, k, tuple(tuple(r) for r in pat))


def reduce_freedom(c: BitMatrix, f: BitMatrix, n: int) -> ReducedFreedom:
    """Trim ``C' F`` to the ``[x | z | s]`` rows and columns.

    ``C'`` acts as ``c`` on the logical rows and as the identity elsewhere.
    """
    k = c.nrows // 2
    keep = list(range(k)) + list(range(n, 2 * n))
    return ReducedFreedom(n, k, (embed_target(c, n) @ f).submatrix(keep, keep))


def embed_target(c: BitMatrix, n: int) -> BitMatrix:
    """``C'``: the logical target acting on the ``x`` and ``z`` rows of ``2n`` dims."""
    k = c.nrows // 2
    logical = list(range(k)) + list(range(n, n + k))
    out = BitMatrix.identity(2 * n)
    for a, i in enumerate(logical):
        for b, j in enumerate(logical):
            out[i, j] = c[a, b]
    return out
