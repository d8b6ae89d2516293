"""Circuit text format: parsing, validation and serialization.

Grammar (one statement per line, UTF-8)::

    program    := header NEWLINE (stmt NEWLINE)*
    header     := "qubits" WS INT                 # INT >= 1, N = 2^INT modes
    stmt       := gate_stmt | sgate_stmt | "measure" | comment | blank
    gate_stmt  := "gate" WS NAME params? (WS INT)+   # qubit targets
    sgate_stmt := "sgate" WS NAME params? (WS INT)+  # mode targets, 0..2^n-1
    params     := "(" REAL ("," REAL)* ")"        # whitespace inside tolerated
    comment    := "#" any-chars
    NAME       := [A-Z][A-Z0-9_]*

Leading/trailing blanks and tabs on a line, and a trailing ``\\r``, are
ignored.  ``measure`` may appear once and must be the last statement.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    CircuitSyntaxError,
    DuplicateTarget,
    KindMismatch,
    MissingHeader,
    TargetOutOfRange,
    UnknownGate,
)
from .gates import CATALOG, GateKind, make_gate

MAX_QUBITS = 20


class TargetSpace(str, enum.Enum):
    QUBIT = "qubit"
    MODE = "mode"


@dataclass(frozen=True)
class PlacedGate:
    gate_name: str
    params: tuple[float, ...]
    targets: tuple[int, ...]
    target_space: TargetSpace

    def gate(self):
        return make_gate(self.gate_name, self.params)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    ops: tuple[PlacedGate, ...] = ()
    measure_at_end: bool = False

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def has_symplectic_only(self) -> bool:
        return any(op.target_space is TargetSpace.MODE for op in self.ops)


_WS = re.compile(r"[ \t]+")
_INT = re.compile(r"[0-9]+")
_NAME = re.compile(r"[A-Z][A-Z0-9_]*")
_REAL = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")


class _Cursor:
    """Column-tracking scanner over a single line."""

    def __init__(self, text: str, lineno: int, offset: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno
        self.offset = offset  # columns stripped from the left

    @property
    def col(self) -> int:
        return self.offset + self.pos + 1

    def error(self, cls, message: str, col: int | None = None):
        return cls(message, line=self.lineno, col=self.col if col is None else col)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, pattern: re.Pattern, what: str) -> str:
        m = pattern.match(self.text, self.pos)
        if not m:
            found = repr(self.peek()) if not self.at_end() else "end of line"
            raise self.error(CircuitSyntaxError, f"expected {what}, found {found}")
        self.pos = m.end()
        return m.group()

    def ws(self, required: bool = True):
        m = _WS.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        elif required:
            found = repr(self.peek()) if not self.at_end() else "end of line"
            raise self.error(CircuitSyntaxError, f"expected whitespace, found {found}")

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if not self.at_end() else "end of line"
            raise self.error(CircuitSyntaxError, f"expected {ch!r}, found {found}")
        self.pos += 1


def _parse_params(cur: _Cursor) -> tuple[float, ...]:
    cur.expect("(")
    params = []
    while True:
        cur.ws(required=False)
        col = cur.col
        value = float(cur.match(_REAL, "a real number"))
        if not math.isfinite(value):
            raise cur.error(CircuitSyntaxError, "parameter is not a finite number", col)
        params.append(value)
        cur.ws(required=False)
        if cur.peek() == ",":
            cur.pos += 1
            continue
        cur.expect(")")
        return tuple(params)


def _parse_gate_stmt(cur: _Cursor, space: TargetSpace, n_qubits: int) -> PlacedGate:
    cur.ws()
    name_col = cur.col
    name = cur.match(_NAME, "a gate name")
    params = _parse_params(cur) if cur.peek() == "(" else ()

    spec = CATALOG.get(name)
    if spec is None:
        raise cur.error(UnknownGate, f"unknown gate {name!r}", name_col)
    if space is TargetSpace.QUBIT and spec.kind is not GateKind.UNITARY:
        raise cur.error(KindMismatch, f"gate {name} is symplectic-only; use 'sgate'", name_col)
    if space is TargetSpace.MODE and spec.kind is not GateKind.SYMPLECTIC_ONLY:
        raise cur.error(KindMismatch, f"gate {name} is unitary; use 'gate'", name_col)
    if len(params) != spec.n_params:
        raise cur.error(ArityMismatch, f"gate {name} takes {spec.n_params} parameter(s), got {len(params)}", name_col)

    bound = n_qubits if space is TargetSpace.QUBIT else 2**n_qubits
    what = "qubit" if space is TargetSpace.QUBIT else "mode"
    targets: list[int] = []
    while not cur.at_end():
        cur.ws()
        if cur.at_end():
            break
        col = cur.col
        t = int(cur.match(_INT, f"a {what} index"))
        if t >= bound:
            raise cur.error(TargetOutOfRange, f"{what} {t} out of range 0..{bound - 1}", col)
        if t in targets:
            raise cur.error(DuplicateTarget, f"duplicate {what} {t}", col)
        targets.append(t)
    if len(targets) != spec.arity:
        raise cur.error(ArityMismatch, f"gate {name} acts on {spec.arity} {what}(s), got {len(targets)}", name_col)
    return PlacedGate(name, params, tuple(targets), space)


def _split_line(raw: str, lineno: int) -> _Cursor:
    line = raw.rstrip("\r")
    stripped = line.lstrip(" \t")
    offset = len(line) - len(stripped)
    return _Cursor(stripped.rstrip(" \t"), lineno, offset)


def parse_circuit(text: str) -> Circuit:
    """Parse circuit text; raises a positioned :class:`~sympsim.errors.SympsimError`."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MissingHeader("empty program: expected 'qubits N' header", line=1, col=1)

    cur = _split_line(lines[0], 1)
    if not cur.text.startswith("qubits"):
        raise cur.error(MissingHeader, "first line must be the header 'qubits N'")
    cur.pos = len("qubits")
    cur.ws()
    col = cur.col
    n_qubits = int(cur.match(_INT, "the number of qubits"))
    if not cur.at_end():
        raise cur.error(CircuitSyntaxError, "unexpected text after header")
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise cur.error(CircuitSyntaxError, f"qubit count must be in 1..{MAX_QUBITS}, got {n_qubits}", col)

    ops: list[PlacedGate] = []
    measure_line = None
    for lineno, raw in enumerate(lines[1:], start=2):
        cur = _split_line(raw, lineno)
        if cur.at_end() or cur.text.startswith("#"):
            continue
        if measure_line is not None:
            what = "duplicate 'measure'" if cur.text == "measure" else "statement after 'measure'"
            raise cur.error(CircuitSyntaxError, f"{what} (measure on line {measure_line} must be last)")
        keyword = re.match(r"[A-Za-z_]*", cur.text).group()
        cur.pos = len(keyword)
        if keyword == "measure":
            if not cur.at_end():
                raise cur.error(CircuitSyntaxError, "unexpected text after 'measure'")
            measure_line = lineno
        elif keyword == "gate":
            ops.append(_parse_gate_stmt(cur, TargetSpace.QUBIT, n_qubits))
        elif keyword == "sgate":
            ops.append(_parse_gate_stmt(cur, TargetSpace.MODE, n_qubits))
        elif keyword == "qubits":
            raise cur.error(CircuitSyntaxError, "duplicate header", 1 + cur.offset)
        else:
            raise cur.error(CircuitSyntaxError,
                            f"unknown statement {keyword or cur.text[:1]!r}; expected gate, sgate or measure",
                            1 + cur.offset)
    return Circuit(n_qubits, tuple(ops), measure_line is not None)


def serialize_circuit(c: Circuit) -> str:
    """Canonical text form; ``parse_circuit`` of the result reproduces ``c``."""
    out = [f"qubits {c.n_qubits}"]
    for op in c.ops:
        kw = "gate" if op.target_space is TargetSpace.QUBIT else "sgate"
        params = "(" + ",".join(repr(v) for v in op.params) + ")" if op.params else ""
        out.append(f"{kw} {op.gate_name}{params} " + " ".join(str(t) for t in op.targets))
    if c.measure_at_end:
        out.append("measure")
    return "\n".join(out) + "\n"
