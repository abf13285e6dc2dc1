"""Exception hierarchy shared by every stage of the synthesis pipeline."""


class SynthesisError(ValueError):
    """Base class for all errors raised by exactsynth."""


class NotReducible(SynthesisError):
    pass


class InsufficientExponent(SynthesisError):
    pass


class DimensionMismatch(SynthesisError):
    pass


class IndexOutOfRange(SynthesisError, IndexError):
    pass


class NotAUnit(SynthesisError):
    pass


class NormMismatch(SynthesisError):
    pass


class NotUnitVector(SynthesisError):
    pass


class NotUnitary(SynthesisError):
    pass


class NotInRing(SynthesisError):
    pass


class Det1Violation(SynthesisError):
    pass


class DeterminantObstruction(SynthesisError):
    """The determinant rules out an ancilla-free circuit.

    ``exponent`` is the m with det U = omega**m.
    """

    def __init__(self, exponent: int, n_qubits: int):
        self.exponent = exponent
        self.n_qubits = n_qubits
        super().__init__(
            f"det U = omega^{exponent} is not admissible for {n_qubits} qubit(s) "
            "without an ancilla"
        )


class InsufficientWires(SynthesisError):
    pass


class AncillaRequired(SynthesisError):
    pass


class ParseError(SynthesisError):
    pass
