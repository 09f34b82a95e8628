"""
Tailored synthesis versus swap routing
======================================

The baseline takes any Clifford, decomposes it into CX and single-qubit gates
and routes every CX along the hardware graph with swaps.  Synthesis that uses
the code's gauge freedom usually needs far fewer CZ gates.
"""
from lcsynth import baseline_compile, builtin, compile, grid, ring
from lcsynth.pauli import flatten

cases = [
    (builtin("iceberg-4-2-2"), "CX@1,2", 3, ring(4)),
    (builtin("iceberg-4-2-2"), "H@1 H@2", 3, ring(4)),
    (builtin("twisted-toric-12-2-3"), "CX@2,1", 2, grid(3, 4)),
]
for code, target, l, con in cases:
    res = compile(code, target, l, con, budget=600)
    routed = baseline_compile(flatten(res.circuit), con)
    # routing the tailored circuit's own map is the fairest like-for-like comparison
    print(f"{code.name:<22} {target:<8} tailored {res.cz_count:>3} CZ   routed {routed.cz_count:>3} CZ")
