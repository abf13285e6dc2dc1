import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactsynth.errors import DimensionMismatch, IndexOutOfRange, InsufficientExponent, NotAUnit
from exactsynth.linalg import (
    ExactMatrix,
    ExactVector,
    TwoLevelOp,
    apply_two_level,
    determinant,
    determinant_cofactor,
    determinant_omega,
    embed,
    is_unitary,
    k_residue_matrix,
    lde_matrix,
    lde_vector,
    mat_adjoint,
    mat_identity,
    mat_mul,
    product,
)
from exactsynth.ring import DOmega, ZOmega

from support import EXAMPLE_U, RHO3, RHO4, det1_unitary, residue_rows

w = DOmega.omega_power
h = DOmega(1, 1)
H2 = ExactMatrix([[h, h], [h, -h]])
KINDS = ("X", "H", "T", "iX", "-iX", "THT", "THTdg", "W", "omega")
DET_EXPONENT = {"X": 4, "H": 4, "iX": 0, "-iX": 0, "THT": 0, "THTdg": 0, "W": 0}


def random_op(rng: random.Random, dim: int, kinds=KINDS) -> TwoLevelOp:
    kind = rng.choice(kinds)
    if kind == "omega":
        return TwoLevelOp("omega", (rng.randrange(dim),), rng.randrange(8))
    j, l = sorted(rng.sample(range(dim), 2))
    return TwoLevelOp(kind, (j, l), rng.randrange(8))


def random_matrix(rng: random.Random, dim: int) -> ExactMatrix:
    def entry():
        return DOmega(ZOmega(*(rng.randint(-3, 3) for _ in range(4))), rng.randint(0, 3))
    return ExactMatrix([[entry() for _ in range(dim)] for _ in range(dim)])


def test_basic_products():
    assert mat_mul(mat_identity(4), mat_identity(4)) == mat_identity(4)
    assert H2 @ H2 == mat_identity(2)
    assert mat_adjoint(ExactMatrix.diag([1, w(1)])) == ExactMatrix.diag([1, DOmega(ZOmega(-1, 0, 0, 0))])
    with pytest.raises(DimensionMismatch):
        mat_mul(mat_identity(2), mat_identity(4))


def test_is_unitary_examples():
    cnot = ExactMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    for m in (H2, ExactMatrix.diag([1, w(2)]), ExactMatrix.diag([1, w(1)]), cnot, EXAMPLE_U):
        assert is_unitary(m)
    assert not is_unitary(ExactMatrix.diag([1, 2]))


def test_apply_two_level_examples():
    e4 = ExactVector.basis(4, 3)
    assert apply_two_level(TwoLevelOp("X", (0, 3)), e4) == ExactVector.basis(4, 0)
    e1 = ExactVector.basis(4, 0)
    for m in range(8):
        got = apply_two_level(TwoLevelOp("omega", (0,), m), e1)
        assert got == ExactVector([w(m), 0, 0, 0])
    with pytest.raises(IndexOutOfRange):
        apply_two_level(TwoLevelOp("X", (0, 4)), e4)


def test_first_rows_reduce_on_example_column():
    u = EXAMPLE_U.column(0)
    assert lde_vector(u) == 3
    v = apply_two_level(TwoLevelOp("T", (1, 2), 3), u)
    v = apply_two_level(TwoLevelOp("H", (1, 2)), v)
    # rows 2 and 3 (1-based) drop to a lower exponent; rows 1 and 4 untouched
    assert v[1].k < 3 and v[2].k < 3
    assert v[0] == u[0] and v[3] == u[3]
    assert v.norm_sq() == 1


def test_lde_and_residues_of_example():
    assert lde_matrix(EXAMPLE_U) == 3
    assert k_residue_matrix(EXAMPLE_U, 3) == residue_rows(RHO3)
    assert k_residue_matrix(EXAMPLE_U, 4) == residue_rows(RHO4)
    assert all(str(x) == "0000" for row in k_residue_matrix(EXAMPLE_U, 5) for x in row)
    assert lde_matrix(mat_identity(4)) == 0
    with pytest.raises(InsufficientExponent):
        k_residue_matrix(EXAMPLE_U, 2)


def test_kernels_are_unitary_with_expected_determinants():
    for kind in KINDS:
        for m in range(8):
            idx = (0,) if kind == "omega" else (0, 1)
            op = TwoLevelOp(kind, idx, m)
            mat = ExactMatrix(op.kernel())
            assert is_unitary(mat)
            assert determinant_omega(mat) == op.det_exponent()
            if kind in DET_EXPONENT:
                assert op.det_exponent() == DET_EXPONENT[kind]
            assert ExactMatrix(op.adjoint().kernel()) == mat.adjoint()


def test_tht_matches_definition():
    t = lambda m: ExactMatrix.diag([1, w(m)])  # noqa: E731
    ih = ExactMatrix([[x * w(2) for x in row] for row in H2.rows])
    for m in range(8):
        assert ExactMatrix(TwoLevelOp("THT", (0, 1), m).kernel()) == t(-m) @ ih @ t(m)
        assert ExactMatrix(TwoLevelOp("W", (0, 1), m).kernel()) == ExactMatrix.diag([w(m), w(-m)])


def test_op_validation():
    with pytest.raises(ValueError):
        TwoLevelOp("X", (2, 1))
    with pytest.raises(ValueError):
        TwoLevelOp("omega", (0, 1))
    with pytest.raises(ValueError):
        TwoLevelOp("Y", (0, 1))
    assert TwoLevelOp("T", (0, 1), 9).m == 1
    assert str(TwoLevelOp("T", (1, 2), 5)) == "T^5[1,2]"
    assert str(TwoLevelOp("omega", (0,), 1)) == "omega[0]"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 3, 4, 8]))
def test_apply_equals_embedded_product(seed, dim):
    rng = random.Random(seed)
    op = random_op(rng, dim)
    a = random_matrix(rng, dim)
    assert apply_two_level(op, a) == mat_mul(embed(op, dim), a)
    v = a.column(0)
    assert apply_two_level(op, v) == mat_mul(embed(op, dim), a).column(0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([2, 4, 8]))
def test_unitarity_and_determinant_multiplicativity(seed, dim):
    rng = random.Random(seed)
    ops = [random_op(rng, dim) for _ in range(rng.randint(1, 8))]
    u = product(ops, dim)
    assert is_unitary(u)
    assert determinant_omega(u) == sum(op.det_exponent() for op in ops) % 8
    # explicit product agrees with the row-application path
    explicit = mat_identity(dim)
    for op in ops:
        explicit = explicit @ embed(op, dim)
    assert explicit == u


def test_determinants_of_known_matrices():
    assert determinant_omega(mat_identity(4)) == 0
    assert determinant_omega(embed(TwoLevelOp("H", (1, 2)), 4)) == 4
    det = determinant(EXAMPLE_U)
    assert det == determinant_cofactor(EXAMPLE_U)
    assert determinant_omega(EXAMPLE_U) == det.unit_exponent()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([1, 2, 3, 4]))
def test_bareiss_matches_cofactor_on_arbitrary_matrices(seed, dim):
    rng = random.Random(seed)
    a = random_matrix(rng, dim)
    assert determinant(a) == determinant_cofactor(a)


def test_singular_and_non_unit_determinants():
    assert determinant(ExactMatrix([[1, 1], [1, 1]])) == 0
    with pytest.raises(NotAUnit):
        determinant_omega(ExactMatrix.diag([1, 2]))
    # zero pivot forces a row swap
    a = ExactMatrix([[0, 1, 0], [1, 0, 0], [0, 0, w(1)]])
    assert determinant(a) == determinant_cofactor(a) == -w(1)


def test_det1_products_have_unit_determinant():
    rng = random.Random(7)
    for dim in (2, 4, 8):
        assert determinant_omega(det1_unitary(dim, rng)) == 0


def test_kron():
    x = ExactMatrix([[0, 1], [1, 0]])
    big = x.kron(mat_identity(2))
    assert big == ExactMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


def test_unit_columns_have_integer_weight():
    rng = random.Random(3)
    for _ in range(10):
        u = det1_unitary(4, rng)
        for j in range(4):
            col = u.column(j)
            assert sum(e.weight_sq() for e in col) == 1
