"""Quantum Fock-Goncharov matrices, snakes and the quantum special linear group.

Exact arithmetic throughout: coefficients are rationals or Laurent
polynomials in h = omega^(1/2), and flags are rational matrices.
"""

from .ncmatrix import NcMatrix, quantum_left, quantum_right
from .qtorus import GeneratorMap, HalfOmegaLaurent, QuantumTorus, TorusElement, make_torus, weyl_order
from .slnq import check_mnq, check_slnq, quantum_determinant
from .snake_quantum import build_embedding, solve_snake_move_poisson, verify_factorization
from .triangle_quiver import fg_poisson, fg_torus

__all__ = [
    "GeneratorMap",
    "HalfOmegaLaurent",
    "NcMatrix",
    "QuantumTorus",
    "TorusElement",
    "build_embedding",
    "check_mnq",
    "check_slnq",
    "fg_poisson",
    "fg_torus",
    "make_torus",
    "quantum_determinant",
    "quantum_left",
    "quantum_right",
    "solve_snake_move_poisson",
    "verify_factorization",
    "weyl_order",
]
