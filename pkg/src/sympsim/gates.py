"""Gate library and full-system embeddings.

Unitary gates act on qubits of C^(2^n) with big-endian ordering: qubit 0 is
the most significant bit of the basis index.  Symplectic-only gates act on
mode coordinate pairs ``(q_k, p_k)`` of R^(2N); a gate on ``m`` modes is a
``2m x 2m`` matrix in the local stacked layout ``(q_1..q_m; p_1..p_m)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import gamma, is_orthogonal, is_symplectic, is_unitary
from .errors import (
    ArityMismatch,
    DuplicateMode,
    DuplicateTarget,
    KindMismatch,
    ModeOutOfRange,
    NonFinite,
    TargetOutOfRange,
    UnknownGate,
)


class GateKind(str, enum.Enum):
    UNITARY = "unitary"
    SYMPLECTIC_ONLY = "symplectic"


@dataclass(frozen=True, eq=False)
class Gate:
    name: str
    kind: GateKind
    params: tuple[float, ...]
    arity: int
    matrix: np.ndarray


def _finite(*params: float):
    for v in params:
        if not math.isfinite(v):
            raise NonFinite(f"gate parameter must be finite, got {v}")


def _unitary(name, matrix, params=(), arity=1) -> Gate:
    m = np.array(matrix, dtype=complex)
    m.setflags(write=False)
    return Gate(name, GateKind.UNITARY, tuple(float(v) for v in params), arity, m)


def _symplectic(name, matrix, params=(), arity=1) -> Gate:
    m = np.array(matrix, dtype=float)
    m.setflags(write=False)
    return Gate(name, GateKind.SYMPLECTIC_ONLY, tuple(float(v) for v in params), arity, m)


# ---------------------------------------------------------------------------
# Constructors


def gate_not_paper() -> Gate:
    """The NOT gate in the real-rotation form ``[[0, 1], [-1, 0]]`` (= i sigma_y).

    Distinct from Pauli X; squares to -I.
    """
    return _unitary("NOTP", [[0.0, 1.0], [-1.0, 0.0]])


def gate_rotation(theta: float) -> Gate:
    """Phase-plane rotation ``[[cos, sin], [-sin, cos]]``.

    Both orthogonal and symplectic, so it is classified unitary.  Exact
    values are used at multiples of pi/2 so that ``ROT(pi/2)`` reproduces
    NOTP entry for entry.
    """
    _finite(theta)
    c, s = _exact_cos_sin(theta)
    return _unitary("ROT", [[c, s], [-s, c]], (theta,))


def _exact_cos_sin(theta: float) -> tuple[float, float]:
    quarter = theta / (math.pi / 2)
    k = round(quarter)
    if quarter == k:
        return [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][k % 4]
    return math.cos(theta), math.sin(theta)


def gate_cnot() -> Gate:
    """Control = first target, flips second target: |10> <-> |11>."""
    m = np.eye(4)
    m[[2, 3]] = m[[3, 2]]
    return _unitary("CNOT", m, arity=2)


def gamma_cnot() -> np.ndarray:
    return gamma(gate_cnot().matrix)


def gate_squeeze(r: float) -> Gate:
    """Single-mode squeeze ``diag(e^r, e^-r)`` on (q_k, p_k)."""
    _finite(r)
    if abs(r) > 700:
        raise NonFinite(f"squeeze parameter {r} overflows double precision")
    return _symplectic("SQUEEZE", np.diag([math.exp(r), math.exp(-r)]), (r,))


def gate_shear(s: float) -> Gate:
    """Single-mode shear ``[[1, s], [0, 1]]``: q_k += s p_k."""
    _finite(s)
    return _symplectic("SHEAR", [[1.0, s], [0.0, 1.0]], (s,))


_SQRT1_2 = 1 / math.sqrt(2)


def _rx(t):
    _finite(t)
    c, s = math.cos(t / 2), math.sin(t / 2)
    return _unitary("RX", [[c, -1j * s], [-1j * s, c]], (t,))


def _ry(t):
    _finite(t)
    c, s = math.cos(t / 2), math.sin(t / 2)
    return _unitary("RY", [[c, -s], [s, c]], (t,))


def _rz(t):
    _finite(t)
    return _unitary("RZ", [[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]], (t,))


@dataclass(frozen=True)
class GateSpec:
    name: str
    kind: GateKind
    n_params: int
    arity: int
    build: Callable[..., Gate]


def _fixed(name, matrix, arity=1):
    gate = _unitary(name, matrix, arity=arity)
    return lambda: gate


CATALOG: dict[str, GateSpec] = {
    spec.name: spec
    for spec in [
        GateSpec("NOTP", GateKind.UNITARY, 0, 1, gate_not_paper),
        GateSpec("X", GateKind.UNITARY, 0, 1, _fixed("X", [[0, 1], [1, 0]])),
        GateSpec("Y", GateKind.UNITARY, 0, 1, _fixed("Y", [[0, -1j], [1j, 0]])),
        GateSpec("Z", GateKind.UNITARY, 0, 1, _fixed("Z", [[1, 0], [0, -1]])),
        GateSpec("H", GateKind.UNITARY, 0, 1, _fixed("H", [[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]])),
        GateSpec("S", GateKind.UNITARY, 0, 1, _fixed("S", [[1, 0], [0, 1j]])),
        GateSpec("T", GateKind.UNITARY, 0, 1, _fixed("T", [[1, 0], [0, np.exp(0.25j * math.pi)]])),
        GateSpec("RX", GateKind.UNITARY, 1, 1, _rx),
        GateSpec("RY", GateKind.UNITARY, 1, 1, _ry),
        GateSpec("RZ", GateKind.UNITARY, 1, 1, _rz),
        GateSpec("ROT", GateKind.UNITARY, 1, 1, gate_rotation),
        GateSpec("CNOT", GateKind.UNITARY, 0, 2, gate_cnot),
        GateSpec("SQUEEZE", GateKind.SYMPLECTIC_ONLY, 1, 1, gate_squeeze),
        GateSpec("SHEAR", GateKind.SYMPLECTIC_ONLY, 1, 1, gate_shear),
    ]
}


def make_gate(name: str, params: Sequence[float] = ()) -> Gate:
    try:
        spec = CATALOG[name]
    except KeyError:
        raise UnknownGate(f"unknown gate {name!r}") from None
    if len(params) != spec.n_params:
        raise ArityMismatch(f"gate {name} takes {spec.n_params} parameter(s), got {len(params)}")
    return spec.build(*(float(v) for v in params))


def check_gate(g: Gate, tol: float = 1e-12) -> bool:
    """Kind invariant: unitary gates are unitary; symplectic-only gates are symplectic."""
    if g.kind is GateKind.UNITARY:
        return is_unitary(g.matrix, tol)[0]
    return is_symplectic(g.matrix, tol)[0]


def is_strictly_symplectic(g: Gate, tol: float = 1e-12) -> bool:
    return is_symplectic(g.matrix, tol)[0] and not is_orthogonal(g.matrix, tol)[0]


# ---------------------------------------------------------------------------
# Embeddings


def _validate_indices(idx: Sequence[int], bound: int, arity: int, what: str,
                      out_of_range=TargetOutOfRange, duplicate=DuplicateTarget):
    if len(idx) != arity:
        raise ArityMismatch(f"expected {arity} {what}(s), got {len(idx)}")
    for i in idx:
        if not 0 <= i < bound:
            raise out_of_range(f"{what} {i} out of range 0..{bound - 1}")
    if len(set(idx)) != len(idx):
        raise duplicate(f"duplicate {what} in {list(idx)}")


def apply_unitary(state: np.ndarray, matrix: np.ndarray, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Apply a k-qubit matrix to the given targets of an n-qubit vector or matrix columns."""
    k = len(targets)
    extra = state.shape[1:]
    t = state.reshape((2,) * n_qubits + extra)
    g = matrix.reshape((2,) * (2 * k))
    t = np.tensordot(g, t, axes=(list(range(k, 2 * k)), list(targets)))
    # tensordot puts the gate's output axes first; move them back into place
    t = np.moveaxis(t, list(range(k)), list(targets))
    return t.reshape(state.shape)


def embed_unitary(g: Gate, targets: Sequence[int], n_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n matrix acting as ``g`` on ``targets`` (big-endian)."""
    if g.kind is not GateKind.UNITARY:
        raise KindMismatch(f"gate {g.name} is not a unitary gate")
    targets = list(targets)
    _validate_indices(targets, n_qubits, g.arity, "qubit")
    if targets == list(range(n_qubits)):
        return np.array(g.matrix)
    dim = 2**n_qubits
    return apply_unitary(np.eye(dim, dtype=complex), g.matrix, targets, n_qubits)


def embed_symplectic(g: Gate, modes: Sequence[int], n_modes: int) -> np.ndarray:
    """Full 2N x 2N matrix acting as ``g`` on the (q_k, p_k) pairs of ``modes``."""
    if g.kind is not GateKind.SYMPLECTIC_ONLY:
        raise KindMismatch(f"gate {g.name} is not a symplectic-only gate")
    modes = list(modes)
    _validate_indices(modes, n_modes, g.arity, "mode", ModeOutOfRange, DuplicateMode)
    idx = np.array(modes + [n_modes + k for k in modes])
    S = np.eye(2 * n_modes)
    S[np.ix_(idx, idx)] = g.matrix
    return S
