"""Shared fixtures: the worked 4x4 example and random exact instances."""
from __future__ import annotations

import random
from functools import reduce

from exactsynth.linalg import ExactMatrix, TwoLevelOp, embed, mat_mul
from exactsynth.lowering import Circuit, Gate
from exactsynth.ring import DOmega, Residue
from exactsynth.verify import gate_to_matrix

# rows of [a, b, c, d, k] for (a w^3 + b w^2 + c w + d) / sqrt2^k
EXAMPLE_ENTRIES = [
    [(-1, 0, 1, -1, 3), (0, 1, 1, 1, 3), (0, 1, 0, 0, 3), (0, 0, -1, 0, 3)],
    [(0, 1, 1, 0, 3), (-1, 1, 0, 0, 3), (0, -1, 0, -1, 3), (1, 0, 1, 0, 3)],
    [(1, 1, 0, 0, 3), (-1, 0, 0, -1, 3), (0, 2, 0, 0, 3), (0, 0, 0, 0, 3)],
    [(0, 0, 0, -1, 3), (0, 0, 1, 0, 3), (0, 0, 0, 1, 3), (-1, 0, 2, 0, 3)],
]
EXAMPLE_U = ExactMatrix([[DOmega.from_tuple(t) for t in row] for row in EXAMPLE_ENTRIES])

RHO3 = [
    "1011 0111 0100 0010",
    "0110 1100 0101 1010",
    "1100 1001 0000 0000",
    "0001 0010 0001 1000",
]
RHO4 = [
    "1010 0101 1010 0101",
    "1111 1111 0000 0000",
    "1111 1111 0000 0000",
    "1010 0101 1010 0101",
]


def residue_rows(rows: list[str]) -> list[list[Residue]]:
    return [[Residue(x) for x in r.split()] for r in rows]


def parse_ops(text: str) -> list[TwoLevelOp]:
    """Parse a listing like 'T^5[2,3] H[2,3] omega^3[4]' with 1-based indices."""
    ops = []
    for tok in text.split():
        head, idx = tok.rstrip("]").split("[")
        kind, _, power = head.partition("^")
        m = int(power) if power else (1 if kind in ("T", "omega") else 0)
        indices = tuple(int(i) - 1 for i in idx.split(","))
        ops.append(TwoLevelOp(kind, indices, m))
    return ops


# first column reduction, application order (rightmost factor of W1 first)
W1_APPLIED = parse_ops(
    "T^3[2,3] H[2,3] T^2[1,4] H[1,4] T[1,4] H[1,4] T[3,4] H[3,4] T^3[3,4] H[3,4] "
    "X[1,4] omega^7[1]"
)
EXAMPLE_DECOMPOSITION = parse_ops(
    "T^5[2,3] H[2,3] T^6[1,4] H[1,4] T^7[1,4] H[1,4] T^7[3,4] H[3,4] T^5[3,4] H[3,4] "
    "X[1,4] omega[1] T^7[2,4] H[2,4] T^5[2,4] H[2,4] omega^2[2] H[3,4] T^5[3,4] H[3,4] "
    "omega^4[3] omega^3[4]"
)

ONE_QUBIT = ("H", "S", "Sdg", "T", "Tdg", "X")


def random_gates(n_wires: int, count: int, rng: random.Random, phase: bool = True) -> list[Gate]:
    gates = []
    for _ in range(count):
        if n_wires >= 2 and rng.random() < 0.25:
            c, t = rng.sample(range(n_wires), 2)
            gates.append(Gate("CNOT", (c, t)))
        elif phase and rng.random() < 0.05:
            gates.append(Gate("PHASE", (), rng.randrange(8)))
        else:
            gates.append(Gate(rng.choice(ONE_QUBIT), (rng.randrange(n_wires),)))
    return gates


def random_circuit(n_wires: int, count: int, rng: random.Random) -> Circuit:
    return Circuit(n_wires, 0, random_gates(n_wires, count, rng))


def clifford_t_unitary(n: int, rng: random.Random, lo: int = 5, hi: int = 30) -> ExactMatrix:
    """Exact product of lo..hi random Clifford+T generators on n qubits."""
    mats = [gate_to_matrix(g, n) for g in random_gates(n, rng.randint(lo, hi), rng)]
    return reduce(mat_mul, mats, ExactMatrix.identity(2**n))


def det1_unitary(dim: int, rng: random.Random, lo: int = 5, hi: int = 30) -> ExactMatrix:
    """Exact product of random determinant-one two-level operators."""
    out = ExactMatrix.identity(dim)
    for _ in range(rng.randint(lo, hi)):
        j, l = sorted(rng.sample(range(dim), 2))
        kind = rng.choice(("iX", "-iX", "THT", "W"))
        op = TwoLevelOp(kind, (j, l), rng.randrange(8) if kind in ("THT", "W") else 0)
        out = mat_mul(embed(op, dim), out)
    return out


def diag_phase(dim: int, m: int) -> ExactMatrix:
    """diag(1, ..., 1, omega^m)."""
    return ExactMatrix.diag([DOmega(1)] * (dim - 1) + [DOmega.omega_power(m)])
