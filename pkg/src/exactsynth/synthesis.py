"""Residue-guided reduction of unitaries over D[omega] into one- and two-level operators.

Two modes are supported:

``standard``
    operators of types X, H, T**m and one-level omega**m.
``det1``
    only determinant-one operators iX, T^-m (iH) T^m and W**m. This is the
    basis for ancilla-free circuits.

Decomposition results use one convention throughout: multiplying the
embedded operators left to right reproduces the input matrix.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    Det1Violation,
    DeterminantObstruction,
    DimensionMismatch,
    NormMismatch,
    NotUnitary,
    NotUnitVector,
)
from .linalg import (
    ExactMatrix,
    ExactVector,
    TwoLevelOp,
    apply_rows,
    determinant_omega,
    is_unitary,
    product,
)
from .ring import DOmega, Residue

log = logging.getLogger(__name__)

STANDARD = "standard"
DET1 = "det1"

_NORM_ZERO = Residue("0000")
_NORM_1010 = Residue("1010")
_NORM_0001 = Residue("0001")
_ALL_ONES = Residue("1111")


@dataclass
class SynthesisStats:
    op_counts: Counter = field(default_factory=Counter)
    max_exponent: int = 0
    initial_exponent: int = 0
    # largest ratio seen between an intermediate exponent and the exponent
    # at the start of the column that produced it
    exponent_bound_violations: int = 0

    @property
    def total_ops(self) -> int:
        return sum(self.op_counts.values())


@dataclass
class DecompositionResult:
    ops: list[TwoLevelOp]
    mode: str
    dim: int
    stats: SynthesisStats = field(default_factory=SynthesisStats)
    # exponent j of the trailing D_n**j factor (ancilla-free synthesis only)
    phase_fix: int = 0
    n_qubits: int | None = None

    def matrix(self) -> ExactMatrix:
        """Rebuild the unitary from ops (and the phase fixer, if any)."""
        u = product(self.ops, self.dim)
        if self.phase_fix:
            u = u @ phase_fixer(self.n_qubits, self.phase_fix)
        return u


def row_reduce_pair(u1: DOmega, u2: DOmega, k: int, mode: str = STANDARD) -> list[TwoLevelOp]:
    """Row operations on the pair (u1, u2) that make its k-residue reducible.

    The returned operators act on indices (0, 1) and are listed in
    application order. Empty when the pair is already reducible.
    """
    if k <= 0:
        raise ValueError("row reduction needs a positive denominator exponent")
    rows = [[u1], [u2]]
    ops: list[TwoLevelOp] = []

    def emit(op):
        apply_rows(op, rows)
        ops.append(op)

    reduce_pair(rows, 0, 1, 0, k, mode, emit)
    return ops


def _round(m: int, mode: str) -> list[tuple[str, int]]:
    # one "H T^m" round; det1 mode uses T^-m (iH) T^m instead
    if mode == DET1:
        return [("THT", m)]
    return ([("T", m)] if m else []) + [("H", 0)]


def _next_round(x1: Residue, x2: Residue) -> int | None:
    """The m of the next H T**m round, or None when the pair is already reducible."""
    n1, n2 = x1.norm(), x2.norm()
    if n1 != n2:
        raise NormMismatch(f"residue norms differ: {x1}->{n1}, {x2}->{n2}")
    if n1 == _NORM_ZERO:
        return None
    for m in range(4):
        if x2.mul_omega(m) == x1:
            return m
    if n1 == _NORM_0001:
        for m in range(4):
            if x1 + x2.mul_omega(m) == _ALL_ONES:
                return m
    raise AssertionError(f"no row operation for residues {x1}, {x2}")


def reduce_pair(rows: list[list[DOmega]], j: int, l: int, col: int, k: int, mode: str,
                emit) -> None:
    """Apply row operations to rows j, l until column col is reducible at exponent k."""
    rounds = 0
    while True:
        x1 = rows[j][col].k_residue(k)
        x2 = rows[l][col].k_residue(k)
        m = _next_round(x1, x2)
        if m is None:
            return
        rounds += 1
        if rounds > 2:
            raise AssertionError(f"more than two H rounds for residues {x1}, {x2}")
        for kind, mm in _round(m, mode):
            emit(TwoLevelOp(kind, (j, l), mm))


def _weight_one_index(rows: list[list[DOmega]], col: int, start: int) -> int:
    hits = []
    for i in range(start, len(rows)):
        w = rows[i][col].weight_sq()
        if w == 1:
            hits.append(i)
        elif w != 0:
            raise NotUnitVector(f"entry {i} has weight^2 {w} at exponent 0")
    if len(hits) != 1:
        raise NotUnitVector("column at exponent 0 is not a unit basis vector up to phase")
    return hits[0]


class _Reducer:
    """Mutable working state for reducing a matrix column by column."""

    def __init__(self, rows: list[list[DOmega]], mode: str, stats: SynthesisStats):
        self.rows = rows
        self.mode = mode
        self.stats = stats
        self.applied: list[TwoLevelOp] = []
        self.column_bound = 0

    def emit(self, op: TwoLevelOp) -> None:
        apply_rows(op, self.rows)
        self.applied.append(op)
        self.stats.op_counts[op.kind] += 1
        touched = max(self.rows[i][c].k for i in op.indices for c in range(len(self.rows[0])))
        if touched > self.stats.max_exponent:
            self.stats.max_exponent = touched
        if touched > 3 * self.column_bound:
            self.stats.exponent_bound_violations += 1
            log.warning("intermediate exponent %d exceeds 3*%d", touched, self.column_bound)

    def reduce_column(self, col: int, target: int, start: int) -> None:
        """Reduce column col to e_target using only rows in [start, n)."""
        rows, n = self.rows, len(self.rows)
        active = range(start, n)
        self.column_bound = max(e.k for i in active for e in rows[i])
        while True:
            k = max(rows[i][col].k for i in active)
            if k == 0:
                break
            norms = {i: rows[i][col].k_residue(k).norm() for i in active}
            counts = Counter(norms.values())
            if counts[_NORM_0001] % 2 or counts[_NORM_1010] % 2:
                raise NotUnitVector(f"odd number of irreducible residues at exponent {k}")
            # pair each irreducible index with the next one of equal norm,
            # processing pairs in the order they close
            open_index: dict[Residue, int] = {}
            for i in active:
                nm = norms[i]
                if nm == _NORM_ZERO:
                    continue
                if nm in open_index:
                    reduce_pair(rows, open_index.pop(nm), i, col, k, self.mode, self.emit)
                else:
                    open_index[nm] = i
            if max(rows[i][col].k for i in active) >= k:
                raise AssertionError("column exponent did not decrease")
        self._base_case(col, target, start)

    def _base_case(self, col: int, target: int, start: int) -> None:
        rows, n = self.rows, len(self.rows)
        j = _weight_one_index(rows, col, start)
        if j != target:
            pair = (min(j, target), max(j, target))
            self.emit(TwoLevelOp("iX" if self.mode == DET1 else "X", pair))
        e = rows[target][col].unit_exponent()
        if e is None:
            raise NotUnitVector("leftover entry is not a power of omega")
        m = -e % 8
        if not m:
            return
        if self.mode == STANDARD:
            self.emit(TwoLevelOp("omega", (target,), m))
        elif target + 1 < n:
            self.emit(TwoLevelOp("W", (target, target + 1), m))
        elif target - 1 >= start:
            self.emit(TwoLevelOp("W", (target - 1, target), -m))
        else:
            raise Det1Violation(f"residual phase omega^{e} in det1 mode")


def reduce_column(u: ExactVector, target: int = 0, mode: str = STANDARD) -> list[TwoLevelOp]:
    """Operators V_1..V_h (application order) with V_h ... V_1 u = e_target."""
    if not 0 <= target < u.dim:
        raise DimensionMismatch(f"target {target} outside dimension {u.dim}")
    if u.norm_sq() != 1:
        raise NotUnitVector("vector does not have norm 1")
    red = _Reducer([[e] for e in u.entries], mode, SynthesisStats())
    red.reduce_column(0, target, 0)
    return red.applied


def decompose(u: ExactMatrix, mode: str = STANDARD, check: bool = True) -> DecompositionResult:
    """Decompose a unitary into one- and two-level operators.

    Returns ops with product(ops) == u (left-to-right matrix product).
    """
    if mode not in (STANDARD, DET1):
        raise ValueError(f"unknown mode {mode!r}")
    if check and not is_unitary(u):
        raise NotUnitary("input matrix is not unitary")
    if mode == DET1:
        e = determinant_omega(u)
        if e:
            raise Det1Violation(f"det U = omega^{e}, expected 1")
    stats = SynthesisStats()
    rows = [list(r) for r in u.rows]
    stats.initial_exponent = max(e.k for r in rows for e in r)
    stats.max_exponent = stats.initial_exponent
    red = _Reducer(rows, mode, stats)
    for c in range(u.dim):
        red.reduce_column(c, c, c)
    return DecompositionResult(
        ops=[op.adjoint() for op in red.applied], mode=mode, dim=u.dim, stats=stats
    )


# --- ancilla-free entry point -------------------------------------------------

# exponent e of d_n = omega**e, for n = 0, 1, 2, 3 and n >= 4
_DN_EXPONENT = {0: 1, 1: 1, 2: 2, 3: 4}


def admissible_exponents(n_qubits: int) -> set[int]:
    """Exponents m for which det U = omega**m allows an ancilla-free circuit."""
    step = _DN_EXPONENT.get(n_qubits, 0)
    if step == 0:
        return {0}
    return set(range(0, 8, step))


def phase_fixer(n_qubits: int, power: int) -> ExactMatrix:
    """D_n ** power: T**power on the most significant wire (omega**power for n = 0)."""
    dim = 2**n_qubits
    if n_qubits == 0:
        return ExactMatrix.diag([DOmega.omega_power(power)])
    half = dim // 2
    return ExactMatrix.diag([DOmega.omega_power(power if i >= half else 0) for i in range(dim)])


def synthesize_no_ancilla(u: ExactMatrix, n_qubits: int | None = None) -> DecompositionResult:
    """Det-1 decomposition of u * D_n**-j, recording the D_n**j factor.

    Raises DeterminantObstruction when det u is outside the admissible set.
    """
    if n_qubits is None:
        n_qubits = u.dim.bit_length() - 1
    if u.dim != 2**n_qubits:
        raise DimensionMismatch(f"dimension {u.dim} is not 2^{n_qubits}")
    if not is_unitary(u):
        raise NotUnitary("input matrix is not unitary")
    e = determinant_omega(u)
    if e not in admissible_exponents(n_qubits):
        raise DeterminantObstruction(e, n_qubits)
    step = _DN_EXPONENT.get(n_qubits, 0)
    j = e // step if step else 0
    target = u @ phase_fixer(n_qubits, -j) if j else u
    result = decompose(target, DET1, check=False)
    result.phase_fix = j % 8
    result.n_qubits = n_qubits
    return result


def random_unitary_ops(dim: int, count: int, rng, kinds: Sequence[str] = ("X", "H", "T", "omega")):
    """Random one-/two-level operators, handy for building test unitaries."""
    ops = []
    for _ in range(count):
        kind = rng.choice(list(kinds))
        if kind == "omega" or dim == 1:
            ops.append(TwoLevelOp("omega", (rng.randrange(dim),), rng.randrange(1, 8)))
            continue
        j, l = sorted(rng.sample(range(dim), 2))
        m = rng.randrange(1, 8) if kind in ("T", "W", "THT") else 0
        ops.append(TwoLevelOp(kind, (j, l), m))
    return ops
