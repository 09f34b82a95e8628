"""
Counting physical implementations of a logical gate
===================================================

Every logical Clifford on an [[n, k]] code has many physical realizations that
differ only outside the code space.  They form a group whose size has a closed
form; here we check it against brute-force enumeration and print a few sizes.
"""
from lcsynth.gauge import enumerate_freedom, freedom_count, freedom_count_factored
from lcsynth.gf2 import iter_symplectic

# the small cases can be enumerated directly
for n, k in [(1, 0), (2, 1), (3, 1), (3, 2)]:
    listed = sum(1 for _ in enumerate_freedom(n, k))
    print(f"[[{n},{k}]]  formula {freedom_count(n, k):>5}   enumerated {listed:>5}")

# an [[4,2]] code (the iceberg code) already has over ten thousand gauges
print("iceberg gauges:", freedom_count(4, 2))

# the factors: logical mixing, symmetric part, stabilizer basis change
a, b, c = freedom_count_factored(12, 2)
print(f"[[12,2]]: {a} * {b} * {c} = {a * b * c:.3e}")

# the logical group acting on two qubits
print("two-qubit symplectic group:", sum(1 for _ in iter_symplectic(2)))
