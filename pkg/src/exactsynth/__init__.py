"""Exact synthesis of Clifford+T circuits from unitaries over Z[1/sqrt2, i]."""

from ._kernels import BACKEND
from .errors import DeterminantObstruction, SynthesisError
from .linalg import ExactMatrix, ExactVector, TwoLevelOp, determinant_omega, is_unitary
from .lowering import Circuit, Gate, lower_circuit
from .ring import DOmega, DRoot2, Residue, ZOmega
from .synthesis import DET1, STANDARD, decompose, reduce_column, synthesize_no_ancilla
from .verify import check_exact, circuit_to_matrix

__all__ = [
    "BACKEND",
    "Circuit",
    "DET1",
    "DOmega",
    "DRoot2",
    "DeterminantObstruction",
    "ExactMatrix",
    "ExactVector",
    "Gate",
    "Residue",
    "STANDARD",
    "SynthesisError",
    "TwoLevelOp",
    "ZOmega",
    "check_exact",
    "circuit_to_matrix",
    "decompose",
    "determinant_omega",
    "is_unitary",
    "lower_circuit",
    "reduce_column",
    "synthesize_no_ancilla",
]
