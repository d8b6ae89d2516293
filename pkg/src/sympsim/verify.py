"""Randomized property battery behind ``sympsim verify``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    complex_to_real_state,
    decompose_hermitian,
    gamma,
    gamma_inverse,
    intersection_to_unitary,
    is_orthogonal,
    is_symplectic,
    random_hermitian,
    random_state,
    random_unitary,
)
from .dynamics import evolve_complex, evolve_real_exact
from .runner import equivalence_check, random_circuit


@dataclass
class PropertyResult:
    name: str
    per_n: dict[int, float] = field(default_factory=dict)

    @property
    def max_deviation(self) -> float:
        return max(self.per_n.values(), default=0.0)

    def record(self, n: int, dev: float):
        self.per_n[n] = max(self.per_n.get(n, 0.0), float(dev))


def run_battery(seed: int = 0, max_dim: int = 8, trials: int = 10) -> list[PropertyResult]:
    """Per-dimension max deviations for each property, N = 1..max_dim."""
    rng = np.random.default_rng(seed & ((1 << 64) - 1))
    hom = PropertyResult("gamma_homomorphism")
    symp = PropertyResult("gamma_symplectic")
    orth = PropertyResult("gamma_orthogonal")
    inter = PropertyResult("intersection_roundtrip")
    ginv = PropertyResult("gamma_inverse_roundtrip")
    duality = PropertyResult("evolution_duality")
    for n in range(1, max_dim + 1):
        for _ in range(trials):
            v1, v2 = random_unitary(n, rng), random_unitary(n, rng)
            g1 = gamma(v1)
            hom.record(n, np.max(np.abs(gamma(v1 @ v2) - g1 @ gamma(v2))))
            symp.record(n, is_symplectic(g1)[1])
            orth.record(n, is_orthogonal(g1)[1])
            inter.record(n, np.max(np.abs(intersection_to_unitary(g1, tol=1e-9) - v1)))
            ginv.record(n, np.max(np.abs(gamma_inverse(g1) - v1)))

            H = decompose_hermitian(random_hermitian(n, rng))
            psi0 = random_state(n, rng)
            t = float(rng.uniform(-10, 10))
            a = complex_to_real_state(evolve_complex(H, psi0, t))
            b = evolve_real_exact(H, complex_to_real_state(psi0), t)
            duality.record(n, max(np.max(np.abs(a.q - b.q)), np.max(np.abs(a.p - b.p))))

    circuits = PropertyResult("backend_equivalence")
    n_qubits = 1
    while 2**n_qubits <= max_dim:
        for _ in range(trials):
            c = random_circuit(n_qubits, 30, rng)
            circuits.record(2**n_qubits, equivalence_check(c, 2, int(rng.integers(2**63))).max_state_deviation)
        n_qubits += 1
    return [hom, symp, orth, inter, ginv, duality, circuits]
