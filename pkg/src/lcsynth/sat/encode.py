"""CNF construction helpers: Tseitin AND/XOR gates and a totalizer.

Gate helpers accept "signals": either a DIMACS literal (nonzero ``int``) or a
Python ``bool`` constant.  Constants fold away, so callers can push known
matrix entries through the same code path as unknown ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence, Union

Signal = Union[int, bool]

DIRECT_XOR_MAX = 5


@dataclass
class CNF:
    nvars: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    names: dict[str, int] = field(default_factory=dict)
    _and_cache: dict[tuple[int, int], int] = field(default_factory=dict, repr=False)
    _xor_cache: dict[tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def new_var(self, name: str | None = None) -> int:
        self.nvars += 1
        if name is not None:
            self.names[name] = self.nvars
        return self.nvars

    def add(self, clause: Iterable[int]) -> None:
        self.clauses.append(list(clause))

    # -- signals --------------------------------------------------------------------
    @staticmethod
    def neg(a: Signal) -> Signal:
        return (not a) if isinstance(a, bool) else -a

    def fix(self, a: Signal, value: bool) -> None:
        """Force a signal to a value; a contradicting constant adds the empty clause."""
        if isinstance(a, bool):
            if a != value:
                self.add([])
            return
        self.add([a if value else -a])

    def and2(self, a: Signal, b: Signal) -> Signal:
        if isinstance(a, bool):
            return b if a else False
        if isinstance(b, bool):
            return a if b else False
        if a == b:
            return a
        if a == -b:
            return False
        key = (min(a, b), max(a, b))
        if key in self._and_cache:
            return self._and_cache[key]
        y = self.new_var()
        self.add([-y, a])
        self.add([-y, b])
        self.add([y, -a, -b])
        self._and_cache[key] = y
        return y

    @staticmethod
    def affine(signals: Iterable[Signal]) -> tuple[list[int], bool]:
        """Reduce a XOR of signals to (distinct positive variables, constant)."""
        const = False
        odd: set[int] = set()
        for s in signals:
            if isinstance(s, bool):
                const ^= s
                continue
            if s < 0:
                const = not const
                s = -s
            odd ^= {s}
        return sorted(odd), const

    def xor_equal(self, signals: Iterable[Signal], rhs: bool = False) -> None:
        """Constrain ``XOR(signals) == rhs``."""
        vs, const = self.affine(signals)
        rhs = bool(rhs) ^ const
        while len(vs) > DIRECT_XOR_MAX:
            head = vs[: DIRECT_XOR_MAX - 1]
            y = self.new_var()
            self._xor_direct(head + [y], False)
            vs = [y] + vs[DIRECT_XOR_MAX - 1:]
        self._xor_direct(vs, rhs)

    def _xor_direct(self, vs: Sequence[int], rhs: bool) -> None:
        if not vs:
            if rhs:
                self.add([])
            return
        # forbid every assignment whose parity differs from rhs
        for bits in product((0, 1), repeat=len(vs)):
            if sum(bits) % 2 != rhs:
                self.add([-v if b else v for v, b in zip(vs, bits)])

    def xor(self, signals: Iterable[Signal]) -> Signal:
        """Signal equal to the XOR of the inputs (a fresh variable when needed)."""
        vs, const = self.affine(signals)
        if not vs:
            return const
        if len(vs) == 1:
            return -vs[0] if const else vs[0]
        key = tuple(vs)
        y = self._xor_cache.get(key)
        if y is None:
            y = self.new_var()
            self.xor_equal(vs + [y], False)
            self._xor_cache[key] = y
        return -y if const else y


class Totalizer:
    """Unary counter over ``inputs``; ``outputs[t]`` is implied when more than ``t`` are true.

    Only the upward implications are encoded, which is what at-most bounds need:
    asserting ``-outputs[t]`` enforces at most ``t`` true inputs.  Counts above
    ``ub`` saturate into ``outputs[ub]``.
    """

    def __init__(self, cnf: CNF, inputs: Sequence[int], ub: int):
        self.cnf = cnf
        self.inputs = list(inputs)
        self.ub = max(0, min(ub, len(self.inputs)))
        self.outputs = self._build(self.inputs) if self.inputs else []

    def _build(self, lits: list[int]) -> list[int]:
        if len(lits) == 1:
            return [lits[0]]
        mid = len(lits) // 2
        a = self._build(lits[:mid])
        b = self._build(lits[mid:])
        cap = min(len(lits), self.ub + 1)
        out = [self.cnf.new_var() for _ in range(cap)]
        for i in range(len(a) + 1):
            for j in range(len(b) + 1):
                s = i + j
                if s == 0:
                    continue
                s = min(s, cap)
                clause = [out[s - 1]]
                if i:
                    clause.append(-a[i - 1])
                if j:
                    clause.append(-b[j - 1])
                self.cnf.add(clause)
        return out

    def at_most(self, t: int) -> list[int]:
        """Assumption literals enforcing at most ``t`` true inputs."""
        if t >= len(self.inputs):
            return []
        if t > self.ub:
            raise ValueError(f"bound {t} exceeds the totalizer's capacity {self.ub}")
        return [-self.outputs[t]]
