"""Exact circuit simulation and the equality check used as acceptance oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _kernels
from .errors import DimensionMismatch
from .linalg import ExactMatrix, ExactVector, mat_vec
from .lowering import Circuit, Gate
from .ring import DOmega, ZOmega


class PackedMatrix:
    """An nrows x ncols block over D[omega] with one shared sqrt(2) exponent.

    Gates are applied in place through the simulation kernels. If the
    compiled backend reports that int64 coefficients would overflow, the
    buffer is moved to Python ints and simulation continues there.
    """

    def __init__(self, n_wires: int, columns: Sequence[int], backend=None):
        self.n_wires = n_wires
        self.nrows = 2**n_wires
        self.columns = list(columns)
        self.ncols = len(self.columns)
        self.k = 0
        self.backend = backend or _kernels.default
        values = [0] * (self.nrows * self.ncols * 4)
        for c, r in enumerate(self.columns):
            values[(r * self.ncols + c) * 4 + 3] = 1
        self.buf = _kernels.new_buffer(self.backend, values)

    def _mask(self, wire: int) -> int:
        if not 0 <= wire < self.n_wires:
            raise DimensionMismatch(f"wire {wire} outside a {self.n_wires}-wire register")
        return 1 << (self.n_wires - 1 - wire)

    def _demote(self) -> None:
        self.buf = _kernels.to_python(self.buf)
        self.backend = _kernels.py

    def apply(self, gate: Gate) -> None:
        kind, be = gate.kind, self.backend
        if kind == "H":
            mask = self._mask(gate.qubits[0])
            if not be.h_wire(self.buf, self.nrows, self.ncols, mask):
                self._demote()
                self.backend.h_wire(self.buf, self.nrows, self.ncols, mask)
            self.k += 1
            while self.k and self.backend.reduce_sqrt2(self.buf):
                self.k -= 1
        elif kind in ("S", "Sdg", "T", "Tdg"):
            m = {"T": 1, "S": 2, "Sdg": 6, "Tdg": 7}[kind]
            be.phase_wire(self.buf, self.nrows, self.ncols, self._mask(gate.qubits[0]), m)
        elif kind == "X":
            be.x_wire(self.buf, self.nrows, self.ncols, self._mask(gate.qubits[0]))
        elif kind == "CNOT":
            c, t = gate.qubits
            be.cnot(self.buf, self.nrows, self.ncols, self._mask(c), self._mask(t))
        elif kind == "PHASE":
            be.phase_all(self.buf, gate.m)
        else:  # pragma: no cover
            raise ValueError(kind)

    def entry(self, r: int, c: int) -> DOmega:
        i = (r * self.ncols + c) * 4
        b = self.buf
        return DOmega(ZOmega(int(b[i]), int(b[i + 1]), int(b[i + 2]), int(b[i + 3])), self.k)

    def column(self, c: int) -> list[DOmega]:
        return [self.entry(r, c) for r in range(self.nrows)]


def simulate(c: Circuit, columns: Sequence[int] | None = None, backend=None) -> PackedMatrix:
    """Run c on the given basis columns (all of them by default)."""
    if columns is None:
        columns = range(2**c.n_wires)
    state = PackedMatrix(c.n_wires, columns, backend)
    for g in c.gates:
        state.apply(g)
    return state


def circuit_to_matrix(c: Circuit, backend=None) -> ExactMatrix:
    state = simulate(c, backend=backend)
    return ExactMatrix.from_columns([ExactVector(state.column(j)) for j in range(state.ncols)])


# --- independent reference path --------------------------------------------------

def _gate_matrix(kind: str) -> ExactMatrix:
    w = DOmega.omega_power
    h = DOmega(1, 1)
    return {
        "H": ExactMatrix([[h, h], [h, -h]]),
        "S": ExactMatrix.diag([1, w(2)]),
        "Sdg": ExactMatrix.diag([1, w(6)]),
        "T": ExactMatrix.diag([1, w(1)]),
        "Tdg": ExactMatrix.diag([1, w(7)]),
        "X": ExactMatrix([[0, 1], [1, 0]]),
    }[kind]


def gate_to_matrix(g: Gate, n_wires: int) -> ExactMatrix:
    """Full 2**n x 2**n matrix of one gate, built with Kronecker products."""
    if g.kind == "PHASE":
        return ExactMatrix.diag([DOmega.omega_power(g.m)] * 2**n_wires)
    if g.kind == "CNOT":
        c, t = g.qubits
        dim = 2**n_wires
        cm, tm = 1 << (n_wires - 1 - c), 1 << (n_wires - 1 - t)
        perm = [r ^ tm if r & cm else r for r in range(dim)]
        return ExactMatrix([[1 if perm[j] == i else 0 for j in range(dim)] for i in range(dim)])
    (q,) = g.qubits
    out = ExactMatrix.identity(1)
    for w in range(n_wires):
        out = out.kron(_gate_matrix(g.kind) if w == q else ExactMatrix.identity(2))
    return out


def circuit_to_matrix_reference(c: Circuit) -> ExactMatrix:
    """Gate-by-gate state-vector simulation of every basis vector; slow."""
    n = c.n_wires
    mats = [gate_to_matrix(g, n) for g in c.gates]
    cols = []
    for j in range(2**n):
        v = ExactVector.basis(2**n, j)
        for m in mats:
            v = mat_vec(m, v)
        cols.append(v)
    return ExactMatrix.from_columns(cols)


# --- acceptance check ---------------------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    row: int | None = None
    col: int | None = None
    expected: DOmega | None = None
    actual: DOmega | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        if self.passed:
            return "PASS"
        return (
            f"FAIL at entry ({self.row},{self.col}): expected {self.expected}, "
            f"got {self.actual}. {self.message}"
        ).strip()


def check_exact(c: Circuit, target: ExactMatrix, backend=None) -> CheckReport:
    """Compare c against target exactly.

    With an ancilla, only inputs with the ancilla in |0> are simulated: each
    output column must be (target column) tensor |0>. Coordinates in the
    report refer to the full register.
    """
    if target.dim != 2**c.n_data:
        raise DimensionMismatch(f"target is {target.dim}x{target.dim}, circuit has {c.n_data} data qubits")
    stride = 2**c.n_ancilla
    columns = [phi * stride for phi in range(target.dim)]
    state = simulate(c, columns, backend)
    zero = DOmega(0)
    for ci, col in enumerate(columns):
        for r in range(state.nrows):
            want = target[r // stride, ci] if r % stride == 0 else zero
            got = state.entry(r, ci)
            if got != want:
                note = "ancilla leakage" if r % stride else ""
                return CheckReport(False, r, col, want, got, note)
    return CheckReport(True)
