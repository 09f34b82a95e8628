"""Hardware-tailored synthesis of logical Clifford circuits for stabilizer codes."""
from .code import StabilizerCode, builtin, build_encoding, logical_gate, validate
from .compile import (ConnectivityGraph, CompileError, CompileResult, baseline_compile, compile,
                      compile_deepening, complete, connectivity, cube8, grid, line, ring, star)
from .ft import build_flag_gadget, check_fault_tolerance, find_gadget, find_guards
from .gauge import freedom_count, freedom_count_factored
from .gf2 import BitMatrix, BitVector
from .pauli import CliffordTableau, GateSequence, LayeredCircuit, PauliOp, flatten
from .verify import implements_target

__all__ = [
    "BitMatrix", "BitVector", "CliffordTableau", "CompileError", "CompileResult", "ConnectivityGraph",
    "GateSequence", "LayeredCircuit", "PauliOp", "StabilizerCode", "baseline_compile", "build_encoding",
    "build_flag_gadget", "builtin", "check_fault_tolerance", "compile", "compile_deepening",
    "complete", "connectivity", "cube8", "find_gadget", "find_guards", "flatten", "freedom_count", "freedom_count_factored",
    "grid", "implements_target", "line", "logical_gate", "ring", "star", "validate",
]
