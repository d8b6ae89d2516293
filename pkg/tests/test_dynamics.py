import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from sympsim.core import (
    ComplexState,
    PhaseState,
    complex_to_real_state,
    decompose_hermitian,
    is_orthogonal,
    is_symplectic,
    random_hermitian,
    random_state,
)
from sympsim.dynamics import (
    IntegratorConfig,
    Method,
    QuadraticHamiltonian,
    evolve_complex,
    evolve_real_exact,
    hsym,
    integrate,
    make_propagator,
    midpoint_transfer,
    strang_transfer,
    trajectory_table,
)
from sympsim.errors import DimMismatch, InvalidInterval

SX = decompose_hermitian([[0, 1], [1, 0]])


def _dev(a: PhaseState, b: PhaseState) -> float:
    return float(max(np.max(np.abs(a.q - b.q)), np.max(np.abs(a.p - b.p))))


# --- complex evolution -------------------------------------------------------

def test_evolve_complex_t0():
    psi = ComplexState([0.6, 0.8j])
    assert_array_equal(evolve_complex(SX, psi, 0.0).amplitudes, psi.amplitudes)


def test_evolve_complex_sigma_x_half_pi():
    # exp(-i theta sigma_x) = cos(theta) I - i sin(theta) sigma_x
    out = evolve_complex(SX, ComplexState([1, 0]), np.pi / 2)
    assert_allclose(out.amplitudes, [0, -1j], atol=1e-15)


def test_evolve_complex_diagonal():
    H = decompose_hermitian(np.diag([1.0, 2.0]))
    out = evolve_complex(H, ComplexState(np.array([1, 1]) / np.sqrt(2)), 1.0)
    assert_allclose(out.amplitudes, np.exp([-1j, -2j]) / np.sqrt(2), atol=1e-15)


def test_dim_mismatch():
    with pytest.raises(DimMismatch):
        evolve_complex(SX, ComplexState([1, 0, 0]), 1.0)
    with pytest.raises(DimMismatch):
        evolve_real_exact(SX, PhaseState.basis(3), 1.0)
    with pytest.raises(DimMismatch):
        hsym(QuadraticHamiltonian(np.eye(2), np.zeros((2, 2))), PhaseState.basis(3))


# --- propagator --------------------------------------------------------------

def test_propagator_t0():
    prop = make_propagator(SX, 0.0)
    assert_array_equal(prop.u_t, np.eye(2))
    assert_array_equal(prop.s_t, np.eye(4))


@pytest.mark.parametrize("t", [0.3, 1.0, -2.2, 7.0])
def test_propagator_sigma_x_blocks(t):
    prop = make_propagator(SX, t)
    X = np.cos(t) * np.eye(2)
    Y = -np.sin(t) * np.array([[0, 1], [1, 0]])
    assert_allclose(prop.u_t.real, X, atol=1e-14)
    assert_allclose(prop.u_t.imag, Y, atol=1e-14)
    # real action on (q; p) is [[X, -Y], [Y, X]]
    assert_allclose(prop.s_t, np.block([[X, -Y], [Y, X]]), atol=1e-14)


def test_propagator_random_in_sp_and_o(rng):
    prop = make_propagator(decompose_hermitian(random_hermitian(4, rng)), 0.7)
    assert is_symplectic(prop.s_t)[0]
    assert is_orthogonal(prop.s_t)[0]


def test_propagator_matches_real_generator(rng):
    H = decompose_hermitian(random_hermitian(5, rng))
    from sympsim.expm import matrix_exponential

    M = QuadraticHamiltonian.from_operator(H).generator()
    for t in (0.1, 1.3, -4.0, 9.5):
        assert np.max(np.abs(make_propagator(H, t).s_t - matrix_exponential(t * M))) <= 1e-12


def test_propagator_group_property(rng):
    H = decompose_hermitian(random_hermitian(4, rng))
    for t, s in [(0.3, 0.9), (2.5, -1.1), (5.0, 4.0)]:
        lhs = make_propagator(H, t + s).s_t
        rhs = make_propagator(H, t).s_t @ make_propagator(H, s).s_t
        assert np.max(np.abs(lhs - rhs)) <= 1e-11


# --- exact real evolution -------------------------------------------------------

def test_evolve_real_t0():
    phi = PhaseState([0.6, 0.0], [0.0, 0.8])
    out = evolve_real_exact(SX, phi, 0.0)
    assert_array_equal(out.q, phi.q)
    assert_array_equal(out.p, phi.p)


def test_evolve_real_sigma_x_half_pi():
    out = evolve_real_exact(SX, complex_to_real_state(ComplexState([1, 0])), np.pi / 2)
    assert_allclose(out.q, [0, 0], atol=1e-15)
    assert_allclose(out.p, [0, -1], atol=1e-15)


def test_evolve_real_random_cross_backend(rng):
    H = decompose_hermitian(random_hermitian(6, rng))
    psi0 = random_state(6, rng)
    a = complex_to_real_state(evolve_complex(H, psi0, 1.3))
    b = evolve_real_exact(H, complex_to_real_state(psi0), 1.3)
    assert _dev(a, b) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), t=st.floats(-10, 10))
def test_duality_commutation(seed, n, t):
    rng = np.random.default_rng(seed)
    H = decompose_hermitian(random_hermitian(n, rng))
    psi0 = random_state(n, rng)
    a = complex_to_real_state(evolve_complex(H, psi0, t))
    b = evolve_real_exact(H, complex_to_real_state(psi0), t)
    assert _dev(a, b) <= 1e-12
    # norm conservation under the unitary-image flow
    assert abs(b.norm_squared() - 1.0) <= 1e-12


# --- H_sym ------------------------------------------------------------------

def test_hsym_examples():
    assert hsym(QuadraticHamiltonian(np.eye(2), np.zeros((2, 2))), PhaseState([1, 0], [0, 0])) == 0.5
    # L q = (0, 1), p . L q = 1
    Hq = QuadraticHamiltonian(np.zeros((2, 2)), [[0, -1], [1, 0]])
    assert hsym(Hq, PhaseState([1, 0], [0, 1])) == 1.0


def test_hsym_is_half_expectation(rng):
    # resolved numerically: H_sym(q, p) = 1/2 <psi, H psi> for psi = q + ip
    for n in range(1, 7):
        H = decompose_hermitian(random_hermitian(n, rng))
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        expect = np.vdot(z, H.entries @ z)
        assert abs(expect.imag) <= 1e-12
        assert hsym(H, complex_to_real_state(ComplexState(z))) == pytest.approx(0.5 * expect.real, rel=1e-12)


def test_generator_matches_hamilton_equations(rng):
    # finite-difference gradient of H_sym through J gives M x
    from sympsim.core import symplectic_form

    H = QuadraticHamiltonian.from_operator(decompose_hermitian(random_hermitian(3, rng)))
    x = rng.standard_normal(6)
    eps = 1e-6
    grad = np.array([
        (hsym(H, PhaseState.from_stacked(x + eps * e)) - hsym(H, PhaseState.from_stacked(x - eps * e))) / (2 * eps)
        for e in np.eye(6)
    ])
    assert_allclose(symplectic_form(3) @ grad, H.generator() @ x, atol=1e-8)


def test_hsym_conserved_by_exact_flow(rng):
    H = decompose_hermitian(random_hermitian(4, rng) + 3 * np.eye(4))
    phi0 = complex_to_real_state(random_state(4, rng))
    h0 = hsym(H, phi0)
    for t in np.linspace(0, 10, 21):
        assert abs(hsym(H, evolve_real_exact(H, phi0, t)) - h0) <= 1e-10 * abs(h0)


# --- integrators ------------------------------------------------------------------

def test_integrate_constant_sigma_x_midpoint():
    phi0 = PhaseState([1, 0], [0, 0])
    traj = integrate(SX, phi0, 0.0, 1.0, IntegratorConfig(dt=1e-3))
    assert len(traj) == 1001
    assert traj[0][1] is phi0
    t_end, end = traj[-1]
    assert t_end == pytest.approx(1.0)
    assert _dev(end, evolve_real_exact(SX, phi0, 1.0)) <= 1e-6


def test_integrate_callable_matches_constant():
    phi0 = PhaseState([1, 0], [0, 0])
    cfg = IntegratorConfig(dt=1e-2)
    a = integrate(SX, phi0, 0.0, 1.0, cfg)[-1][1]
    b = integrate(lambda t: SX, phi0, 0.0, 1.0, cfg)[-1][1]
    assert _dev(a, b) <= 1e-14


def _cos_k(t):
    return QuadraticHamiltonian([[np.cos(t)]], [[0.0]])


def _cos_k_exact(phi0, t):
    # M(t) = cos(t) [[0, 1], [-1, 0]] commutes with itself at all times: rotation by sin(t)
    s = np.sin(t)
    return PhaseState([np.cos(s) * phi0.q[0] + np.sin(s) * phi0.p[0]],
                      [-np.sin(s) * phi0.q[0] + np.cos(s) * phi0.p[0]])


@pytest.mark.parametrize("method", list(Method))
def test_time_dependent_against_closed_form(method):
    phi0 = PhaseState([1.0], [0.5])
    end = integrate(_cos_k, phi0, 0.0, 2.0, IntegratorConfig(dt=1e-3, method=method))[-1][1]
    assert _dev(end, _cos_k_exact(phi0, 2.0)) <= 1e-6


@pytest.mark.parametrize("method", list(Method))
def test_time_dependent_half_period(method):
    phi0 = PhaseState([1.0], [0.5])
    end = integrate(_cos_k, phi0, 0.0, np.pi, IntegratorConfig(dt=1e-3, method=method))[-1][1]
    assert _dev(end, _cos_k_exact(phi0, np.pi)) <= 1e-6


@pytest.mark.parametrize("method", list(Method))
def test_time_dependent_self_convergence_order_two(method):
    # Richardson-style ratio without a reference: (x_h - x_h/2) / (x_h/2 - x_h/4) -> 4
    # [0, pi] is useless here: midpoint sampling of cos is antisymmetric about
    # pi/2, so the endpoint is exact for every dt
    phi0 = PhaseState([1.0], [0.0])
    ends = [integrate(_cos_k, phi0, 0.0, 2.0, IntegratorConfig(dt=dt, method=method))[-1][1].stacked
            for dt in (1e-2, 5e-3, 2.5e-3)]
    ratio = np.linalg.norm(ends[0] - ends[1]) / np.linalg.norm(ends[1] - ends[2])
    assert np.log2(ratio) == pytest.approx(2.0, abs=0.2)


@pytest.mark.parametrize("method", list(Method))
def test_constant_order_two(rng, method):
    H = decompose_hermitian(random_hermitian(3, rng))
    phi0 = complex_to_real_state(random_state(3, rng))
    exact = evolve_real_exact(H, phi0, 1.0).stacked
    errs = [np.linalg.norm(integrate(H, phi0, 0.0, 1.0, IntegratorConfig(dt=dt, method=method))[-1][1].stacked - exact)
            for dt in (1e-2, 5e-3, 2.5e-3)]
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(np.abs(orders - 2.0) <= 0.2)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5), dt=st.floats(1e-4, 2.0))
def test_step_matrices_are_symplectic(seed, n, dt):
    rng = np.random.default_rng(seed)
    Hq = QuadraticHamiltonian.from_operator(decompose_hermitian(random_hermitian(n, rng)))
    assert is_symplectic(midpoint_transfer(Hq.generator(), dt), 1e-10)[0]
    assert is_symplectic(strang_transfer(Hq, dt), 1e-10)[0]


def test_step_matrices_symplectic_for_general_quadratic(rng):
    # symplecticity does not rely on the unitary structure: arbitrary K, L
    Hq = QuadraticHamiltonian(rng.standard_normal((3, 3)) * 3, rng.standard_normal((3, 3)) * 3)
    assert is_symplectic(midpoint_transfer(Hq.generator(), 0.37), 1e-10)[0]


def test_midpoint_conserves_hsym_time_independent(rng):
    H = decompose_hermitian(random_hermitian(4, rng) + 3 * np.eye(4))
    phi0 = complex_to_real_state(random_state(4, rng))
    traj = integrate(H, phi0, 0.0, 10.0, IntegratorConfig(dt=1e-3, stride=100))
    h0 = hsym(H, phi0)
    drift = max(abs(hsym(H, s) - h0) for _, s in traj) / abs(h0)
    assert drift <= 1e-8
    norms = [s.norm_squared() for _, s in traj]
    assert max(abs(v - 1.0) for v in norms) <= 1e-10


def test_stride_and_endpoint():
    traj = integrate(SX, PhaseState.basis(2), 0.0, 1.0, IntegratorConfig(dt=0.1, stride=3))
    times = [t for t, _ in traj]
    assert times[0] == 0.0 and times[-1] == pytest.approx(1.0)
    assert len(times) == 1 + 3 + 1  # steps 3, 6, 9 and the endpoint 10


def test_uneven_dt_splits_evenly():
    traj = integrate(SX, PhaseState.basis(2), 0.0, 1.0, IntegratorConfig(dt=0.3))
    assert len(traj) == 5
    assert traj[-1][0] == pytest.approx(1.0)


def test_invalid_interval():
    with pytest.raises(InvalidInterval):
        integrate(SX, PhaseState.basis(2), 1.0, 1.0, IntegratorConfig(dt=0.1))
    with pytest.raises(InvalidInterval):
        integrate(SX, PhaseState.basis(2), 1.0, 0.0, IntegratorConfig(dt=0.1))


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.1, newton_tol=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.1, method="rk4")
    assert IntegratorConfig(dt=0.1, method="strang").method is Method.STRANG


def test_trajectory_table_columns():
    traj = integrate(SX, PhaseState.basis(2), 0.0, 0.5, IntegratorConfig(dt=0.1))
    table = trajectory_table(traj, SX)
    assert set(table) == {"times", "q", "p", "hsym", "norm"}
    assert len(table["hsym"]) == len(table["times"]) == 6
    assert table["hsym"][0] == 0.0  # <e0, sigma_x e0> = 0
