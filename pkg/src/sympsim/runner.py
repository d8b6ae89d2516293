"""Circuit execution on the complex and real backends, measurement, and the
cross-backend equivalence check."""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, PlacedGate, TargetSpace
from .core import (
    ComplexState,
    PhaseState,
    complex_to_real_state,
    random_state,
    real_action,
    real_to_complex_state,
)
from .errors import DimMismatch, NonFinite, SymplecticGateOnComplexBackend, ZeroNormState, ZeroShots
from .gates import CATALOG, embed_symplectic, embed_unitary

SHOT_BLOCK = 8192
_MASK64 = (1 << 64) - 1


def _unitary_matrix(op: PlacedGate, n_qubits: int) -> np.ndarray:
    return embed_unitary(op.gate(), op.targets, n_qubits)


def run_complex(c: Circuit, psi0: ComplexState | None = None) -> ComplexState:
    """Apply the circuit's embedded unitaries to ``psi0`` (default |0...0>)."""
    psi = ComplexState.basis(c.dim) if psi0 is None else psi0
    if psi.dim != c.dim:
        raise DimMismatch(f"circuit acts on dimension {c.dim}, state has {psi.dim}")
    for i, op in enumerate(c.ops):
        if op.target_space is TargetSpace.MODE:
            raise SymplecticGateOnComplexBackend(op.gate_name, i)
    amp = psi.amplitudes
    for op in c.ops:
        amp = _unitary_matrix(op, c.n_qubits) @ amp
    return ComplexState(amp)


def op_real_matrix(op: PlacedGate, n_qubits: int) -> np.ndarray:
    """The 2N x 2N real matrix that the real backend applies for ``op``."""
    if op.target_space is TargetSpace.MODE:
        return embed_symplectic(op.gate(), op.targets, 2**n_qubits)
    return real_action(_unitary_matrix(op, n_qubits))


def run_real(c: Circuit, phi0: PhaseState | None = None) -> PhaseState:
    """Apply each gate as a real 2N x 2N matrix on the stacked (q; p) vector."""
    phi = PhaseState.basis(c.dim) if phi0 is None else phi0
    if phi.dim != c.dim:
        raise DimMismatch(f"circuit acts on dimension {c.dim}, state has {phi.dim}")
    x = phi.stacked
    for i, op in enumerate(c.ops):
        with np.errstate(over="ignore", invalid="ignore"):
            x = op_real_matrix(op, c.n_qubits) @ x
        if not np.all(np.isfinite(x)):
            raise NonFinite(f"state overflowed at op {i} ({op.gate_name})")
    return PhaseState.from_stacked(x)


# ---------------------------------------------------------------------------
# Measurement


@dataclass
class MeasurementResult:
    counts: dict[int, int]
    total_norm: float
    shots: int
    seed: int
    probabilities: np.ndarray = field(repr=False, default=None)


def outcome_weights(state: ComplexState | PhaseState) -> tuple[np.ndarray, float]:
    """Per-mode weights ``q_k^2 + p_k^2`` and their total."""
    if isinstance(state, ComplexState):
        state = complex_to_real_state(state)
    w = state.q * state.q + state.p * state.p
    return w, float(np.sum(w))


def _block_rng(seed: int, block: int) -> np.random.Generator:
    # block index lives in the top word of Philox's 256-bit counter
    return np.random.Generator(np.random.Philox(key=seed & _MASK64, counter=block << 192))


def _sample_block(cdf: np.ndarray, seed: int, block: int, n: int) -> np.ndarray:
    u = _block_rng(seed, block).random(n)
    idx = np.searchsorted(cdf, u, side="right")
    return np.bincount(idx, minlength=cdf.size)


def measure(state: ComplexState | PhaseState, shots: int, seed: int,
            workers: int | None = None) -> MeasurementResult:
    """Sample per-mode outcomes with probability ``(q_k^2 + p_k^2) / total``.

    Shots are drawn in fixed blocks of ``SHOT_BLOCK``; block ``b`` uses its own
    counter-based Philox stream keyed by ``seed``.  Counts are therefore
    identical whether blocks run sequentially or on ``workers`` threads.
    """
    if shots < 1:
        raise ZeroShots(f"need at least one shot, got {shots}")
    w, total = outcome_weights(state)
    if not total > 0:
        raise ZeroNormState("cannot measure a state of zero norm")
    probs = w / total
    cdf = np.cumsum(probs)
    # close the cdf at the last outcome of nonzero weight; zero-weight
    # outcomes then have empty intervals and are never drawn
    cdf[np.flatnonzero(probs)[-1]:] = 1.0

    sizes = [SHOT_BLOCK] * (shots // SHOT_BLOCK)
    if shots % SHOT_BLOCK:
        sizes.append(shots % SHOT_BLOCK)
    if workers and workers > 1 and len(sizes) > 1:
        with concurrent.futures.ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _sample_block(cdf, seed, b, sizes[b]), range(len(sizes))))
    else:
        parts = [_sample_block(cdf, seed, b, n) for b, n in enumerate(sizes)]
    totals = np.sum(parts, axis=0)
    counts = {int(k): int(v) for k, v in enumerate(totals) if v}
    return MeasurementResult(counts, total, shots, seed, probs)


# ---------------------------------------------------------------------------
# Backend equivalence


@dataclass
class EquivalenceReport:
    max_state_deviation: float
    per_trial: list[float]


def backend_deviation(c: Circuit, psi0: ComplexState) -> float:
    psi_c = run_complex(c, psi0)
    psi_r = real_to_complex_state(run_real(c, complex_to_real_state(psi0)))
    return float(np.max(np.abs(psi_c.amplitudes - psi_r.amplitudes)))


def equivalence_check(c: Circuit, trials: int, seed: int) -> EquivalenceReport:
    """Run both backends from ``trials`` random normalized states; raw max-norm deviation."""
    for i, op in enumerate(c.ops):
        if op.target_space is TargetSpace.MODE:
            raise SymplecticGateOnComplexBackend(op.gate_name, i)
    rng = np.random.default_rng(seed & _MASK64)
    per_trial = [backend_deviation(c, random_state(c.dim, rng)) for _ in range(trials)]
    return EquivalenceReport(max(per_trial, default=0.0), per_trial)


def random_circuit(n_qubits: int, n_gates: int, rng: np.random.Generator,
                   gate_names: Sequence[str] = ("H", "X", "RZ", "CNOT", "NOTP")) -> Circuit:
    """Random unitary-only circuit; two-qubit gates are skipped when n_qubits = 1."""
    names = [g for g in gate_names if CATALOG[g].arity <= n_qubits]
    ops = []
    for _ in range(n_gates):
        spec = CATALOG[names[rng.integers(len(names))]]
        params = tuple(float(v) for v in rng.uniform(-np.pi, np.pi, spec.n_params))
        targets = tuple(int(t) for t in rng.choice(n_qubits, size=spec.arity, replace=False))
        ops.append(PlacedGate(spec.name, params, targets, TargetSpace.QUBIT))
    return Circuit(n_qubits, tuple(ops), False)
