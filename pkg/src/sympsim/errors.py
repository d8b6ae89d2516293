"""Exception hierarchy.

Every error raised by the library derives from :class:`SympsimError`.  Errors
produced while reading circuit text carry a 1-based ``line``/``col`` position.
"""

from __future__ import annotations


class SympsimError(ValueError):
    """Base class; optionally positioned (line/col are 1-based)."""

    def __init__(self, message: str, *, line: int | None = None, col: int | None = None,
                 deviation: float | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.deviation = deviation
        super().__init__(self._format())

    def _format(self) -> str:
        if self.line is None:
            return self.message
        if self.col is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, col {self.col}: {self.message}"


# linear algebra / group membership
class NotSquare(SympsimError):
    pass


class OddDimension(SympsimError):
    pass


class NotHermitian(SympsimError):
    pass


class NotUnitary(SympsimError):
    pass


class NotGammaImage(SympsimError):
    pass


class NotInIntersection(SympsimError):
    def __init__(self, message: str, *, failed: str, deviation: float):
        self.failed = failed
        super().__init__(message, deviation=deviation)


class NonFinite(SympsimError):
    pass


class DimMismatch(SympsimError):
    pass


# dynamics
class InvalidInterval(SympsimError):
    pass


class InnerSolveDiverged(SympsimError):
    pass


# gates
class KindMismatch(SympsimError):
    pass


class TargetOutOfRange(SympsimError):
    pass


class ModeOutOfRange(TargetOutOfRange):
    pass


class DuplicateTarget(SympsimError):
    pass


class DuplicateMode(DuplicateTarget):
    pass


class UnknownGate(SympsimError):
    pass


class ArityMismatch(SympsimError):
    pass


# circuit text
class CircuitSyntaxError(SympsimError):
    pass


class MissingHeader(CircuitSyntaxError):
    pass


# execution / measurement
class SymplecticGateOnComplexBackend(SympsimError):
    def __init__(self, gate_name: str, op_index: int):
        self.gate_name = gate_name
        self.op_index = op_index
        super().__init__(
            f"gate {gate_name} (op {op_index}) is symplectic-only and has no complex-backend action"
        )


class ZeroNormState(SympsimError):
    pass


class ZeroShots(SympsimError):
    pass
