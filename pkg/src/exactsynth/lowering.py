"""Lowering of one- and two-level operators to Clifford+T circuits.

Wire convention: big-endian. Basis index r of an n-wire register has wire 0
as its most significant bit, so wire w corresponds to bit (n - 1 - w). When
an ancilla is present it is the last wire, index n_data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AncillaRequired, IndexOutOfRange, InsufficientWires, ParseError
from .linalg import TwoLevelOp
from .synthesis import DET1, DecompositionResult

GATE_KINDS = ("H", "S", "Sdg", "T", "Tdg", "X", "CNOT", "PHASE")
_INVERSE = {"S": "Sdg", "Sdg": "S", "T": "Tdg", "Tdg": "T"}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...] = ()
    m: int = 0  # PHASE only: global phase omega**m

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        arity = 0 if self.kind == "PHASE" else 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s)")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")
        if self.kind == "PHASE":
            object.__setattr__(self, "m", self.m % 8)

    def inverse(self) -> Gate:
        if self.kind == "PHASE":
            return Gate("PHASE", (), -self.m)
        return Gate(_INVERSE.get(self.kind, self.kind), self.qubits)

    def __str__(self) -> str:
        if self.kind == "PHASE":
            return f"PHASE {self.m}"
        return " ".join([self.kind, *map(str, self.qubits)])


@dataclass
class Circuit:
    n_data: int
    n_ancilla: int = 0
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        if self.n_ancilla not in (0, 1):
            raise ValueError("at most one ancilla is supported")

    @property
    def n_wires(self) -> int:
        return self.n_data + self.n_ancilla

    @property
    def ancilla(self) -> int | None:
        return self.n_data if self.n_ancilla else None

    def __len__(self) -> int:
        return len(self.gates)

    def t_count(self) -> int:
        return sum(g.kind in ("T", "Tdg") for g in self.gates)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g in self.gates:
            out[g.kind] = out.get(g.kind, 0) + 1
        return out


def inverse(gates: Sequence[Gate]) -> list[Gate]:
    return [g.inverse() for g in reversed(gates)]


def _g(kind: str, *qubits: int) -> Gate:
    return Gate(kind, tuple(qubits))


# T**m on one wire, m mod 8, as a short diagonal product
_T_POWERS = {
    0: (),
    1: ("T",),
    2: ("S",),
    3: ("S", "T"),
    4: ("S", "S"),
    5: ("Sdg", "Tdg"),
    6: ("Sdg",),
    7: ("Tdg",),
}


def t_power(wire: int, m: int) -> list[Gate]:
    return [_g(k, wire) for k in _T_POWERS[m % 8]]


# --- elementary cells ----------------------------------------------------------

def toffoli(a: int, b: int, c: int) -> list[Gate]:
    """Exact 15-gate Clifford+T Toffoli with controls a, b and target c."""
    return [
        _g("H", c),
        _g("CNOT", b, c), _g("Tdg", c),
        _g("CNOT", a, c), _g("T", c),
        _g("CNOT", b, c), _g("Tdg", c),
        _g("CNOT", a, c), _g("T", b), _g("T", c),
        _g("H", c),
        _g("CNOT", a, b), _g("T", a), _g("Tdg", b),
        _g("CNOT", a, b),
    ]


def controlled_h_cell(control: int, target: int) -> list[Gate]:
    """Ancilla-free controlled Hadamard."""
    return [
        _g("S", target), _g("H", target), _g("T", target),
        _g("CNOT", control, target),
        _g("Tdg", target), _g("H", target), _g("Sdg", target),
    ]


def _free_wires(borrowed: Iterable[int], used: Iterable[int]) -> list[int]:
    used = set(used)
    return [w for w in borrowed if w not in used]


def multiply_controlled_not(controls: Sequence[int], target: int,
                            borrowed: Sequence[int] = ()) -> list[Gate]:
    """C^m X on target. For m >= 3 the borrowed wires are used as dirty ancillas
    and are returned to their initial state."""
    controls = list(controls)
    m = len(controls)
    if target in controls:
        raise ValueError("target cannot also be a control")
    if m == 0:
        return [_g("X", target)]
    if m == 1:
        return [_g("CNOT", controls[0], target)]
    if m == 2:
        return toffoli(controls[0], controls[1], target)
    spare = _free_wires(borrowed, controls + [target])
    if not spare:
        raise InsufficientWires(f"C^{m}X needs at least one borrowed wire")
    if len(spare) >= m - 2:
        return _v_chain(controls, target, spare[: m - 2])
    # split across one borrowed wire; each half borrows the other's wires
    b = spare[0]
    rest = spare[1:]
    m1 = (m + 1) // 2
    c1, c2 = controls[:m1], controls[m1:]
    first = multiply_controlled_not(c1, b, c2 + [target] + rest)
    second = multiply_controlled_not(c2 + [b], target, c1 + rest)
    return first + second + first + second


def _v_chain(c: list[int], target: int, a: list[int]) -> list[Gate]:
    m = len(c)
    top = toffoli(c[m - 1], a[m - 3], target)
    down: list[Gate] = []
    for i in range(m - 2, 1, -1):
        down += toffoli(c[i], a[i - 2], a[i - 1])
    base = toffoli(c[0], c[1], a[0])
    up: list[Gate] = []
    for i in range(2, m - 1):
        up += toffoli(c[i], a[i - 2], a[i - 1])
    return top + down + base + up + top + down + base + up


def controlled_ix(controls: Sequence[int], target: int, borrowed: Sequence[int] = ()) -> list[Gate]:
    """Multiply-controlled iX (no clean ancilla needed)."""
    controls = list(controls)
    n = len(controls)
    if n == 0:
        return [_g("X", target), Gate("PHASE", (), 2)]
    if n == 1:
        return [_g("S", controls[0]), _g("CNOT", controls[0], target)]
    half = (n + 1) // 2
    ca, cb = controls[:half], controls[half:]
    extra = _free_wires(borrowed, controls + [target])
    mcx_a = multiply_controlled_not(ca, target, cb + extra)
    mcx_b = multiply_controlled_not(cb, target, ca + extra)
    return (
        [_g("H", target), _g("Tdg", target)] + mcx_a
        + [_g("T", target)] + mcx_b
        + [_g("Tdg", target)] + mcx_a
        + [_g("T", target)] + mcx_b
        + [_g("H", target)]
    )


def controlled_mix(controls: Sequence[int], target: int, borrowed: Sequence[int] = ()) -> list[Gate]:
    """Multiply-controlled -iX, the inverse of controlled_ix."""
    return inverse(controlled_ix(controls, target, borrowed))


# --- controlled-gate specs -------------------------------------------------------

CONTROLLED_BASES = ("X", "H", "T", "iX", "-iX", "THT", "THTdg", "W")


@dataclass(frozen=True)
class ControlledGateSpec:
    base: str
    target: int
    controls: tuple[tuple[int, int], ...] = ()  # (wire, polarity)
    m: int = 0

    def __post_init__(self):
        if self.base not in CONTROLLED_BASES:
            raise ValueError(f"unknown controlled base {self.base!r}")
        if any(w == self.target for w, _ in self.controls):
            raise ValueError("control wires must differ from the target")


def lower_controlled(spec: ControlledGateSpec, n_wires: int, ancilla: int | None = None) -> list[Gate]:
    """Clifford+T gates for spec on an n_wires register.

    X with three or more controls, H with two or more and T**m with one or
    more need the clean ancilla; the determinant-one bases never do.
    """
    wires = [w for w, _ in spec.controls] + [spec.target]
    if max(wires) >= n_wires or min(wires) < 0:
        raise IndexOutOfRange(f"spec uses wires outside 0..{n_wires - 1}")
    flips = [_g("X", w) for w, pol in spec.controls if not pol]
    cs = [w for w, _ in spec.controls]
    t = spec.target
    k = len(cs)
    others = [w for w in range(n_wires) if w not in wires and w != ancilla]

    def need_ancilla() -> int:
        if ancilla is None:
            raise AncillaRequired(f"{spec.base} with {k} control(s) needs an ancilla")
        return ancilla

    base, m = spec.base, spec.m
    if base == "X":
        if k <= 2:
            core = multiply_controlled_not(cs, t)
        else:
            a = need_ancilla()
            ix = controlled_ix(cs, a, [t] + others)
            core = ix + [_g("CNOT", a, t)] + inverse(ix)
    elif base == "H":
        if k == 0:
            core = [_g("H", t)]
        elif k == 1:
            core = controlled_h_cell(cs[0], t)
        else:
            a = need_ancilla()
            ix = controlled_ix(cs, a, [t] + others)
            core = ix + controlled_h_cell(a, t) + inverse(ix)
    elif base == "T":
        if k == 0 or m % 8 == 0:
            core = t_power(t, m)
        else:
            a = need_ancilla()
            ix = controlled_ix(cs + [t], a, others)
            core = ix + t_power(a, m) + inverse(ix)
    elif base == "iX":
        core = controlled_ix(cs, t, others)
    elif base == "-iX":
        core = controlled_mix(cs, t, others)
    elif base in ("THT", "THTdg"):
        ix = controlled_ix(cs, t, others) if base == "THT" else controlled_mix(cs, t, others)
        core = (
            t_power(t, m)
            + [_g("S", t), _g("H", t), _g("T", t)]
            + ix
            + [_g("Tdg", t), _g("H", t), _g("Sdg", t)]
            + t_power(t, -m)
        )
    elif base == "W":
        core = (
            controlled_ix(cs, t, others) + t_power(t, m)
            + controlled_mix(cs, t, others) + t_power(t, -m)
        )
    else:  # pragma: no cover - guarded by ControlledGateSpec
        raise ValueError(base)
    return flips + core + flips


# --- two-level operators ---------------------------------------------------------------

def _wire_of_bit(bit: int, n: int) -> int:
    return n - 1 - bit


def two_level_to_controlled(op: TwoLevelOp, n_qubits: int):
    """Reduce op to (prefix gates, controlled spec, suffix gates).

    For two-level ops, CNOTs from the most significant differing wire make
    the two basis states adjacent; the remaining wires become controls.
    """
    n = n_qubits
    if n < 1:
        raise IndexOutOfRange("two-level lowering needs at least one qubit")
    if max(op.indices) >= 2**n:
        raise IndexOutOfRange(f"{op} does not fit on {n} qubit(s)")
    if op.is_one_level:
        (j,) = op.indices
        t = n - 1
        controls = tuple((_wire_of_bit(b, n), j >> b & 1) for b in range(n - 1, 0, -1))
        flip = [] if j & 1 else [_g("X", t)]
        return flip, ControlledGateSpec("T", t, controls, op.m), flip
    j, l = op.indices
    diff = j ^ l
    pivot = diff.bit_length() - 1
    p = _wire_of_bit(pivot, n)
    walk = [
        _g("CNOT", p, _wire_of_bit(b, n))
        for b in range(pivot - 1, -1, -1)
        if diff >> b & 1
    ]
    controls = tuple(
        (_wire_of_bit(b, n), j >> b & 1) for b in range(n - 1, -1, -1) if b != pivot
    )
    spec = ControlledGateSpec(op.kind, p, controls, op.m)
    return walk, spec, list(reversed(walk))


def lower_two_level(op: TwoLevelOp, n_qubits: int, ancilla: int | None = None) -> list[Gate]:
    n_wires = n_qubits + (ancilla is not None)
    if n_qubits == 0:
        if op.kind != "omega":
            raise IndexOutOfRange(f"{op} does not fit on 0 qubits")
        return [Gate("PHASE", (), op.m)] if op.m else []
    prefix, spec, suffix = two_level_to_controlled(op, n_qubits)
    return prefix + lower_controlled(spec, n_wires, ancilla) + suffix


def lower_circuit(decomp: DecompositionResult, n_qubits: int | None = None) -> Circuit:
    """Clifford+T circuit for a decomposition; one ancilla unless the result is det1."""
    if n_qubits is None:
        n_qubits = decomp.dim.bit_length() - 1
    if decomp.dim != 2**n_qubits:
        raise IndexOutOfRange(f"decomposition of dimension {decomp.dim} is not on {n_qubits} qubits")
    n_anc = 0 if decomp.mode == DET1 else 1
    ancilla = n_qubits if n_anc else None
    gates: list[Gate] = []
    if decomp.phase_fix:
        if n_qubits == 0:
            gates.append(Gate("PHASE", (), decomp.phase_fix))
        else:
            gates += t_power(0, decomp.phase_fix)
    # the product ops[0] @ ops[1] @ ... acts right-to-left in time
    for op in reversed(decomp.ops):
        gates += lower_two_level(op, n_qubits, ancilla)
    phase = sum(g.m for g in gates if g.kind == "PHASE") % 8
    gates = [g for g in gates if g.kind != "PHASE"]
    if phase:
        gates.append(Gate("PHASE", (), phase))
    return Circuit(n_qubits, n_anc, gates)


# --- text format -------------------------------------------------------------------

def format_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n_data}", f"ancillas {c.n_ancilla}"]
    lines += [str(g) for g in c.gates]
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    n_data = n_anc = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        try:
            if head == "qubits":
                (n_data,) = map(int, args)
            elif head == "ancillas":
                (n_anc,) = map(int, args)
            elif head == "PHASE":
                (m,) = map(int, args)
                gates.append(Gate("PHASE", (), m))
            else:
                gates.append(Gate(head, tuple(map(int, args))))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {raw!r}: {exc}") from None
    if n_data is None:
        raise ParseError("missing 'qubits' header")
    n_anc = n_anc or 0
    try:
        circuit = Circuit(n_data, n_anc, gates)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    for g in gates:
        if any(q >= circuit.n_wires or q < 0 for q in g.qubits):
            raise ParseError(f"gate {g} uses a wire outside the register")
    return circuit
