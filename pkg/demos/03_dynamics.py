"""Exact propagation in both pictures and symplectic integration of a
time-dependent Hamiltonian, with H_sym monitored along the way."""

import numpy as np

from sympsim import (
    IntegratorConfig,
    PhaseState,
    QuadraticHamiltonian,
    complex_to_real_state,
    decompose_hermitian,
    evolve_complex,
    evolve_real_exact,
    hsym,
    integrate,
    make_propagator,
)
from sympsim.core import random_hermitian, random_state

rng = np.random.default_rng(3)
H = decompose_hermitian(random_hermitian(4, rng) + 3 * np.eye(4))
psi0 = random_state(4, rng)
phi0 = complex_to_real_state(psi0)

# %% exp(-iHt) psi0 versus exp(tM) (q0; p0)
for t in (0.5, 2.0, 8.0):
    a = complex_to_real_state(evolve_complex(H, psi0, t)).stacked
    b = evolve_real_exact(H, phi0, t).stacked
    print(f"t={t:4.1f}  |complex - real| = {np.max(np.abs(a - b)):.2e}")

# %% H_sym = 1/2 <psi, H psi>
print("H_sym:", hsym(H, phi0), " 1/2<psi,H psi>:", 0.5 * np.vdot(psi0.amplitudes, H.entries @ psi0.amplitudes).real)

# %% The propagator's real block matrix
prop = make_propagator(H, 1.0)
print("S_t shape:", prop.s_t.shape)

# %% Implicit midpoint conserves H_sym up to round-off
traj = integrate(H, phi0, 0.0, 10.0, IntegratorConfig(dt=1e-3, stride=1000))
h0 = hsym(H, phi0)
for t, s in traj:
    print(f"t={t:5.2f}  relative H_sym drift {abs(hsym(H, s) - h0) / abs(h0):.1e}  norm^2 {s.norm_squared():.15f}")


# %% Time-dependent K(t) = cos(t) I: the exact flow is a rotation by sin(t)
def K_of_t(t):
    return QuadraticHamiltonian([[np.cos(t)]], [[0.0]])


start = PhaseState([1.0], [0.0])
for method in ("midpoint", "strang"):
    errs = []
    for dt in (1e-2, 5e-3, 2.5e-3):
        end = integrate(K_of_t, start, 0.0, 2.0, IntegratorConfig(dt=dt, method=method))[-1][1]
        s = np.sin(2.0)
        errs.append(np.hypot(end.q[0] - np.cos(s), end.p[0] + np.sin(s)))
    print(method, "observed orders:", np.round(np.log2(np.array(errs[:-1]) / errs[1:]), 3))
