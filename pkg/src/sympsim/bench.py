"""Timing of the complex and real backends on identical random circuits."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import ComplexState, PhaseState
from .runner import random_circuit, run_complex, run_real

CSV_HEADER = ("n", "depth", "backend", "median_ns", "p95_ns")


@dataclass
class BenchRow:
    n: int
    depth: int
    backend: str
    median_ns: int
    p95_ns: int

    def as_tuple(self):
        return (self.n, self.depth, self.backend, self.median_ns, self.p95_ns)


def _time(fn, warmup: int, iters: int) -> tuple[int, int]:
    for _ in range(warmup):
        fn()
    samples = np.empty(iters, dtype=np.int64)
    for i in range(iters):
        t0 = time.perf_counter_ns()
        fn()
        samples[i] = time.perf_counter_ns() - t0
    return int(np.median(samples)), int(np.percentile(samples, 95))


def workload(n: int, depth: int, seed: int):
    """Circuit for one grid cell; depends only on (n, depth, seed)."""
    rng = np.random.default_rng([seed & ((1 << 64) - 1), n, depth])
    return random_circuit(n, depth, rng)


def run_bench(qubits: Iterable[int], depths: Iterable[int], seed: int = 0,
              warmup: int = 5, iters: int = 20) -> list[BenchRow]:
    if warmup < 5 or iters < 20:
        raise ValueError("bench needs at least 5 warmup and 20 measured iterations")
    rows = []
    for n in qubits:
        for depth in depths:
            c = workload(n, depth, seed)
            psi0, phi0 = ComplexState.basis(c.dim), PhaseState.basis(c.dim)
            for backend, fn in (("complex", lambda: run_complex(c, psi0)),
                                ("real", lambda: run_real(c, phi0))):
                med, p95 = _time(fn, warmup, iters)
                rows.append(BenchRow(n, depth, backend, med, p95))
    return rows
