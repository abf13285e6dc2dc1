"""Dense exact vectors and matrices over D[omega], plus symbolic two-level operators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, InsufficientExponent, NotAUnit
from .ring import DOmega, Residue, ZOmega, ZERO, ONE, omega_exponent
from .ring import _scale_sqrt2 as _shift


class ExactVector:
    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[DOmega | int]) -> None:
        self.entries: tuple[DOmega, ...] = tuple(
            e if isinstance(e, DOmega) else DOmega(e) for e in entries
        )
        if not self.entries:
            raise DimensionMismatch("vectors need at least one entry")

    @classmethod
    def basis(cls, dim: int, i: int) -> ExactVector:
        return cls(ONE if j == i else ZERO for j in range(dim))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> DOmega:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"ExactVector([{', '.join(map(str, self.entries))}])"

    def norm_sq(self):
        total = None
        for e in self.entries:
            n = e.norm_sq()
            total = n if total is None else total + n
        return total


class ExactMatrix:
    """Square matrix over D[omega], stored dense and row-major."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[DOmega | int]]) -> None:
        self.rows: tuple[tuple[DOmega, ...], ...] = tuple(
            tuple(e if isinstance(e, DOmega) else DOmega(e) for e in row) for row in rows
        )
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrix must be square with dim >= 1")

    @classmethod
    def identity(cls, dim: int) -> ExactMatrix:
        return cls([[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def diag(cls, entries: Sequence[DOmega | int]) -> ExactMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[ExactVector]) -> ExactMatrix:
        n = len(cols)
        return cls([[cols[j][i] for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> DOmega:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> ExactVector:
        return ExactVector(row[j] for row in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "\n ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows)
        return f"ExactMatrix(\n {body})"

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return mat_mul(self, other)

    def adjoint(self) -> ExactMatrix:
        return mat_adjoint(self)

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        n, m = self.dim, other.dim
        return ExactMatrix(
            [
                [self.rows[i // m][j // m] * other.rows[i % m][j % m] for j in range(n * m)]
                for i in range(n * m)
            ]
        )

    def to_complex(self) -> list[list[complex]]:
        return [[e.to_complex() for e in row] for row in self.rows]


def _dot(xs: Sequence[DOmega], ys: Iterable[DOmega]) -> DOmega:
    # accumulate at a common exponent, canonicalize once
    terms = [(x, y) for x, y in zip(xs, ys) if x and y]
    if not terms:
        return ZERO
    k = max(x.k + y.k for x, y in terms)
    acc = ZOmega()
    for x, y in terms:
        acc = acc + _shift(x.num * y.num, k - x.k - y.k)
    return DOmega(acc, k)


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    cols = list(zip(*b.rows))
    return ExactMatrix([[_dot(row, col) for col in cols] for row in a.rows])


def mat_vec(a: ExactMatrix, v: ExactVector) -> ExactVector:
    if a.dim != v.dim:
        raise DimensionMismatch(f"cannot apply {a.dim}x{a.dim} matrix to a {v.dim}-vector")
    return ExactVector(_dot(row, v.entries) for row in a.rows)


def mat_adjoint(a: ExactMatrix) -> ExactMatrix:
    n = a.dim
    return ExactMatrix([[a.rows[j][i].conj() for j in range(n)] for i in range(n)])


def mat_identity(dim: int) -> ExactMatrix:
    return ExactMatrix.identity(dim)


def is_unitary(a: ExactMatrix) -> bool:
    return mat_mul(mat_adjoint(a), a) == ExactMatrix.identity(a.dim)


# --- two-level operators -----------------------------------------------------

TWO_LEVEL_KINDS = ("X", "H", "T", "iX", "-iX", "THT", "THTdg", "W")
ONE_LEVEL_KINDS = ("omega",)


@dataclass(frozen=True)
class TwoLevelOp:
    """A one- or two-level operator kept symbolically.

    kind   : one of X, H, T, omega, iX, -iX, THT, THTdg, W
    indices: (j, l) with j < l for two-level kinds, (j,) for omega
    m      : exponent for T (T**m), omega (omega**m), W (W**m) and the
             conjugation parameter of THT / THTdg

    THT(m) is T^-m (iH) T^m and THTdg(m) is its adjoint T^-m (-iH) T^m.
    """

    kind: str
    indices: tuple[int, ...]
    m: int = 0

    def __post_init__(self):
        if self.kind in ONE_LEVEL_KINDS:
            if len(self.indices) != 1:
                raise ValueError(f"{self.kind} is a one-level operator")
        elif self.kind in TWO_LEVEL_KINDS:
            if len(self.indices) != 2 or not self.indices[0] < self.indices[1]:
                raise ValueError(f"{self.kind} needs indices (j, l) with j < l")
        else:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.indices[0] < 0:
            raise IndexOutOfRange("negative index")
        object.__setattr__(self, "m", self.m % 8)

    def __str__(self) -> str:
        idx = ",".join(map(str, self.indices))
        if self.kind in ("T", "omega", "W", "THT", "THTdg") and self.m != 1:
            return f"{self.kind}^{self.m}[{idx}]"
        return f"{self.kind}[{idx}]"

    @property
    def is_one_level(self) -> bool:
        return self.kind in ONE_LEVEL_KINDS

    def kernel(self) -> tuple[tuple[DOmega, ...], ...]:
        """The 1x1 or 2x2 block this operator applies."""
        return _kernel(self.kind, self.m)

    def adjoint(self) -> TwoLevelOp:
        kind, m = self.kind, self.m
        if kind in ("T", "omega", "W"):
            return TwoLevelOp(kind, self.indices, -m)
        if kind == "iX":
            return TwoLevelOp("-iX", self.indices)
        if kind == "-iX":
            return TwoLevelOp("iX", self.indices)
        if kind == "THT":
            return TwoLevelOp("THTdg", self.indices, m)
        if kind == "THTdg":
            return TwoLevelOp("THT", self.indices, m)
        return self

    def det_exponent(self) -> int:
        """m with det(op) = omega**m."""
        if self.kind in ("X", "H"):
            return 4
        if self.kind in ("T", "omega"):
            return self.m
        return 0


def _kernel(kind: str, m: int):
    w = DOmega.omega_power
    if kind == "omega":
        return ((w(m),),)
    if kind == "X":
        return ((ZERO, ONE), (ONE, ZERO))
    if kind == "H":
        h = DOmega(1, 1)
        return ((h, h), (h, -h))
    if kind == "T":
        return ((ONE, ZERO), (ZERO, w(m)))
    if kind == "iX":
        return ((ZERO, w(2)), (w(2), ZERO))
    if kind == "-iX":
        return ((ZERO, w(6)), (w(6), ZERO))
    if kind in ("THT", "THTdg"):
        s = DOmega(ZOmega.omega_power(2 if kind == "THT" else 6), 1)
        return ((s, s.mul_omega(m)), (s.mul_omega(-m), -s))
    if kind == "W":
        return ((w(m), ZERO), (ZERO, w(-m)))
    raise ValueError(kind)


def embed(op: TwoLevelOp, dim: int) -> ExactMatrix:
    """Materialize op as an explicit dim x dim matrix."""
    _check_indices(op, dim)
    rows = [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
    ker = op.kernel()
    for a, i in enumerate(op.indices):
        for b, j in enumerate(op.indices):
            rows[i][j] = ker[a][b]
    return ExactMatrix(rows)


def _check_indices(op: TwoLevelOp, dim: int) -> None:
    if max(op.indices) >= dim:
        raise IndexOutOfRange(f"{op} does not fit in dimension {dim}")


def apply_rows(op: TwoLevelOp, rows: list[list[DOmega]]) -> None:
    """Left-multiply a mutable row list by op in place."""
    _check_indices(op, len(rows))
    ker = op.kernel()
    if op.is_one_level:
        (j,) = op.indices
        rows[j] = [ker[0][0] * x for x in rows[j]]
        return
    j, l = op.indices
    (p, q), (r, s) = ker
    rj, rl = rows[j], rows[l]
    rows[j] = [_dot((p, q), (x, y)) for x, y in zip(rj, rl)]
    rows[l] = [_dot((r, s), (x, y)) for x, y in zip(rj, rl)]


def apply_two_level(op: TwoLevelOp, target: ExactMatrix | ExactVector):
    """Return op * target, touching only the rows op acts on."""
    if isinstance(target, ExactVector):
        rows = [[e] for e in target.entries]
        apply_rows(op, rows)
        return ExactVector(r[0] for r in rows)
    rows = [list(r) for r in target.rows]
    apply_rows(op, rows)
    return ExactMatrix(rows)


def product(ops: Sequence[TwoLevelOp], dim: int) -> ExactMatrix:
    """ops[0] @ ops[1] @ ... as an explicit matrix."""
    rows = [list(r) for r in ExactMatrix.identity(dim).rows]
    for op in reversed(ops):
        apply_rows(op, rows)
    return ExactMatrix(rows)


# --- denominator exponents and residues -------------------------------------

def lde_vector(u: ExactVector | Sequence[DOmega]) -> int:
    return max(e.k for e in u)


def lde_matrix(a: ExactMatrix) -> int:
    return max(e.k for row in a.rows for e in row)


def k_residue_matrix(a: ExactMatrix, k: int) -> list[list[Residue]]:
    if k < lde_matrix(a):
        raise InsufficientExponent(f"{k} is below the least denominator exponent")
    return [[e.k_residue(k) for e in row] for row in a.rows]


# --- determinant -------------------------------------------------------------

def _bareiss(m: list[list[ZOmega]]) -> ZOmega:
    n = len(m)
    m = [list(r) for r in m]
    sign = 1
    prev = ZOmega(0, 0, 0, 1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return ZOmega()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant(a: ExactMatrix) -> DOmega:
    """Exact determinant, via fraction-free elimination over Z[omega]."""
    k = lde_matrix(a)
    scaled = [[e.scaled_num(k) for e in row] for row in a.rows]
    return DOmega(_bareiss(scaled), k * a.dim)


def determinant_omega(a: ExactMatrix) -> int:
    """Return m such that det(a) = omega**m."""
    det = determinant(a)
    m = det.unit_exponent()
    if m is None:
        raise NotAUnit(f"determinant {det} is not a power of omega")
    return m


def determinant_cofactor(a: ExactMatrix) -> DOmega:
    """Laplace expansion along the first row; slow, meant as a cross-check."""
    def det(rows: list[list[DOmega]]) -> DOmega:
        if len(rows) == 1:
            return rows[0][0]
        total = ZERO
        for j, x in enumerate(rows[0]):
            if not x:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = x * det(minor)
            total = total - term if j % 2 else total + term
        return total

    return det([list(r) for r in a.rows])


__all__ = [
    "ExactVector",
    "ExactMatrix",
    "TwoLevelOp",
    "apply_two_level",
    "apply_rows",
    "determinant",
    "determinant_cofactor",
    "determinant_omega",
    "embed",
    "is_unitary",
    "k_residue_matrix",
    "lde_matrix",
    "lde_vector",
    "mat_adjoint",
    "mat_identity",
    "mat_mul",
    "mat_vec",
    "product",
    "omega_exponent",
]
