"""Propositional back end: CDCL solver, PySAT adapter, CNF gadgets, DIMACS I/O."""
from .backends import BACKENDS, ExternalSolver, make_solver, pysat_available
from .dimacs import format_cnf, format_wcnf, parse_cnf, parse_model, parse_wcnf, write_cnf, write_wcnf
from .encode import CNF, Totalizer
from .solver import Solver

__all__ = [
    "BACKENDS", "CNF", "ExternalSolver", "Solver", "Totalizer", "format_cnf", "format_wcnf", "parse_cnf", "parse_model",
    "parse_wcnf", "make_solver", "pysat_available", "write_cnf", "write_wcnf",
]
