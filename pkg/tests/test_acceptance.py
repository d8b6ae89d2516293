"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary.  Runtime budgets are asserted alongside the numerical tolerances.
Set SYMPSIM_FUZZ_SECONDS to shorten the parser fuzz (default 60 s).
"""

import math
import os
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from parser_corpus import INVALID, VALID
from sympsim.circuit import parse_circuit, serialize_circuit
from sympsim.core import (
    ComplexState,
    PhaseState,
    complex_to_real_state,
    decompose_hermitian,
    gamma,
    intersection_to_unitary,
    is_symplectic,
    random_hermitian,
    random_state,
    random_unitary,
    real_to_complex_state,
    symplectic_form,
)
from sympsim.dynamics import IntegratorConfig, evolve_complex, evolve_real_exact, hsym, integrate
from sympsim.errors import NotInIntersection, SymplecticGateOnComplexBackend, SympsimError
from sympsim.gates import embed_symplectic, gate_not_paper, gate_shear, gate_squeeze
from sympsim.runner import equivalence_check, measure, random_circuit, run_complex, run_real

GOLDEN_GAMMA_NOT = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    info = {}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        ACCEPTANCE_LINES.append(f"FAIL  {number:2d}. {title}: {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{k}={v}" for k, v in info.items())
    if elapsed >= budget_s:
        ACCEPTANCE_LINES.append(f"FAIL  {number:2d}. {title}: runtime {elapsed:.3f}s >= {budget_s}s")
        raise AssertionError(f"criterion {number} took {elapsed:.3f}s, budget {budget_s}s")
    ACCEPTANCE_LINES.append(f"PASS  {number:2d}. {title} ({detail}; {elapsed * 1e3:.2f} ms < {budget_s * 1e3:g} ms)")


def test_01_golden_gamma_not():
    gamma(gate_not_paper().matrix)  # warm caches outside the timed region
    with criterion(1, "golden gamma(NOTP)", 1e-3) as info:
        S = gamma(gate_not_paper().matrix)
        assert np.array_equal(S, GOLDEN_GAMMA_NOT)
        info["exact"] = True


def test_02_gamma_group_membership():
    with criterion(2, "gamma images in Sp and O", 5.0) as info:
        rng = np.random.default_rng(2)
        worst_s = worst_o = 0.0
        for i in range(200):
            n = 1 + i % 8
            S = gamma(random_unitary(n, rng))
            J = symplectic_form(n)
            worst_s = max(worst_s, np.max(np.abs(S.T @ J @ S - J)))
            worst_o = max(worst_o, np.max(np.abs(S.T @ S - np.eye(2 * n))))
        info.update(symp=f"{worst_s:.1e}", orth=f"{worst_o:.1e}")
        assert worst_s <= 1e-12 and worst_o <= 1e-12


def test_03_homomorphism():
    with criterion(3, "gamma homomorphism", 5.0) as info:
        rng = np.random.default_rng(3)
        worst = 0.0
        for i in range(200):
            n = 1 + i % 8
            V1, V2 = random_unitary(n, rng), random_unitary(n, rng)
            worst = max(worst, np.max(np.abs(gamma(V1 @ V2) - gamma(V1) @ gamma(V2))))
        info["max_dev"] = f"{worst:.1e}"
        assert worst <= 1e-12


def test_04_intersection():
    with criterion(4, "Sp ∩ O extraction", 1.0) as info:
        rng = np.random.default_rng(4)
        worst = 0.0
        for i in range(80):
            V = random_unitary(1 + i % 8, rng)
            worst = max(worst, np.max(np.abs(intersection_to_unitary(gamma(V)) - V)))
        assert worst <= 1e-12
        rejected = 0
        for S in (gate_squeeze(0.5).matrix, gate_shear(0.5).matrix,
                  embed_symplectic(gate_squeeze(1.0), [1], 3), embed_symplectic(gate_shear(-2.0), [0], 2)):
            with pytest.raises(NotInIntersection):
                intersection_to_unitary(S)
            rejected += 1
        info.update(max_dev=f"{worst:.1e}", rejected=rejected)


def test_05_duality_of_evolution():
    with criterion(5, "complex/real evolution duality", 10.0) as info:
        rng = np.random.default_rng(5)
        worst = 0.0
        for i in range(100):
            n = 1 + i % 8
            H = decompose_hermitian(random_hermitian(n, rng))
            psi0 = random_state(n, rng)
            t = float(rng.uniform(-10, 10))
            a = complex_to_real_state(evolve_complex(H, psi0, t)).stacked
            b = evolve_real_exact(H, complex_to_real_state(psi0), t).stacked
            worst = max(worst, np.max(np.abs(a - b)))
        info["max_dev"] = f"{worst:.1e}"
        assert worst <= 1e-11


def test_06_backend_equivalence():
    with criterion(6, "backend equivalence, 50 circuits x 6 qubits x 50 gates", 30.0) as info:
        rng = np.random.default_rng(6)
        worst = 0.0
        for _ in range(50):
            c = random_circuit(6, 50, rng, ("H", "X", "RZ", "CNOT", "NOTP"))
            worst = max(worst, equivalence_check(c, 1, int(rng.integers(1 << 62))).max_state_deviation)
        info["max_dev"] = f"{worst:.1e}"
        assert worst <= 1e-10


def test_07_hsym_conservation_and_order():
    with criterion(7, "H_sym conservation and integrator order", 60.0) as info:
        rng = np.random.default_rng(7)
        n = 4
        # shifted spectrum keeps H_sym away from zero so relative drift is meaningful
        H = decompose_hermitian(random_hermitian(n, rng) + 4 * np.eye(n))
        phi0 = complex_to_real_state(random_state(n, rng))
        h0 = hsym(H, phi0)

        exact = max(abs(hsym(H, evolve_real_exact(H, phi0, t)) - h0) for t in np.linspace(0, 10, 101)) / abs(h0)
        assert exact <= 1e-10

        traj = integrate(H, phi0, 0.0, 10.0, IntegratorConfig(dt=1e-3))
        assert len(traj) == 10001
        midpoint = max(abs(hsym(H, s) - h0) for _, s in traj) / abs(h0)
        assert midpoint <= 1e-8

        ref = evolve_real_exact(H, phi0, 1.0).stacked
        errs = [np.linalg.norm(integrate(H, phi0, 0.0, 1.0, IntegratorConfig(dt=dt))[-1][1].stacked - ref)
                for dt in (1e-2, 5e-3, 2.5e-3)]
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        info.update(exact_drift=f"{exact:.1e}", midpoint_drift=f"{midpoint:.1e}",
                    orders="/".join(f"{o:.3f}" for o in orders))
        assert np.all(np.abs(orders - 2.0) <= 0.2)


def test_08_strict_inclusion_witness():
    with criterion(8, "squeeze is symplectic, not unitary", 1.0) as info:
        S = gate_squeeze(1.0).matrix
        assert is_symplectic(S)[0]
        c = parse_circuit("qubits 1\nsgate SQUEEZE(1) 0\n")
        out = run_real(c)
        factor = out.q[0] / 1.0
        assert factor == pytest.approx(math.e, rel=1e-15)
        assert math.sqrt(out.norm_squared()) == pytest.approx(math.e, rel=1e-15)
        with pytest.raises(SymplecticGateOnComplexBackend):
            equivalence_check(c, 3, 0)
        with pytest.raises(SymplecticGateOnComplexBackend):
            run_complex(c)
        info["norm_factor"] = f"{factor:.12f}"


def test_09_measurement_statistics():
    with criterion(9, "Bell measurement statistics", 10.0) as info:
        c = parse_circuit("qubits 2\ngate H 0\ngate CNOT 0 1\nmeasure\n")
        state = run_complex(c)
        a = measure(state, 100000, 9)
        b = measure(state, 100000, 9)
        par = measure(state, 100000, 9, workers=4)
        real = measure(run_real(c), 100000, 9)
        assert set(a.counts) == {0, 3}
        sigma = math.sqrt(100000 * 0.25)
        for k in (0, 3):
            assert abs(a.counts[k] - 50000) <= 3 * sigma
        assert a.counts == b.counts == par.counts
        assert abs(a.total_norm - 1.0) <= 1e-12
        info.update(counts=f"{a.counts[0]}/{a.counts[3]}", reproducible=True, parallel=True,
                    real_backend_same=real.counts == a.counts)


def _mutate(text: str, rnd: random.Random) -> str:
    alphabet = "qubitsgatemeasure SQUEEZEHXCNOTRZ()0123456789.,-+eE#\n\t\r é−\x00"
    chars = list(text)
    for _ in range(rnd.randint(1, 6)):
        op = rnd.randrange(6)
        pos = rnd.randrange(len(chars) + 1)
        if op == 0:
            chars.insert(pos, rnd.choice(alphabet))
        elif op == 1 and chars:
            del chars[min(pos, len(chars) - 1)]
        elif op == 2 and chars:
            chars[min(pos, len(chars) - 1)] = rnd.choice(alphabet)
        elif op == 3:
            lines = "".join(chars).split("\n")
            line = rnd.choice(lines)
            lines.insert(rnd.randrange(len(lines) + 1), line)
            chars = list("\n".join(lines))
        elif op == 4:
            chars.insert(pos, str(rnd.randint(0, 10**rnd.randint(1, 25))))
        else:
            chars.insert(pos, chr(rnd.randint(0, 0x2FFF)))
    return "".join(chars)


def test_10_parser_robustness():
    seconds = float(os.environ.get("SYMPSIM_FUZZ_SECONDS", "60"))
    with criterion(10, "parser corpus and fuzzing", seconds + 30.0) as info:
        assert len(VALID) >= 25 and len(INVALID) >= 25
        for text in VALID:
            c = parse_circuit(text)
            assert parse_circuit(serialize_circuit(c)) == c
        for text, line, cls in INVALID:
            with pytest.raises(SympsimError) as exc:
                parse_circuit(text)
            assert type(exc.value).__name__ == cls
            assert exc.value.line == line and exc.value.col is not None

        rnd = random.Random(10)
        seeds = [t for t in VALID] + [t for t, _, _ in INVALID]
        n_inputs = n_valid = 0
        deadline = time.monotonic() + seconds
        while time.monotonic() < deadline:
            text = _mutate(rnd.choice(seeds), rnd)
            n_inputs += 1
            try:
                c = parse_circuit(text)
            except SympsimError as exc:
                assert exc.line is not None, text
            else:
                n_valid += 1
                assert parse_circuit(serialize_circuit(c)) == c, text
        info.update(valid=len(VALID), invalid=len(INVALID), fuzzed=n_inputs, fuzz_valid=n_valid)
