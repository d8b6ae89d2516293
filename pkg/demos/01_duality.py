"""The same unitary seen twice: as a complex N x N matrix and as a real
2N x 2N matrix in Sp(2N) ∩ O(2N)."""

import numpy as np

from sympsim import (
    ComplexState,
    complex_to_real_state,
    decompose_hermitian,
    gamma,
    gate_not_paper,
    intersection_to_unitary,
    is_orthogonal,
    is_symplectic,
    real_action,
)
from sympsim.core import random_unitary

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# %% The NOT gate [[0, 1], [-1, 0]] and its embedding
V = gate_not_paper().matrix
print("gamma(NOT) =\n", gamma(V).real)

# %% A Hermitian H = K + iL splits into a symmetric and a skew real part
H = decompose_hermitian([[1.0, 2 - 1j], [2 + 1j, -0.5]])
print("K =\n", H.k_part, "\nL =\n", H.l_part)

# %% gamma lands in both groups, and is a homomorphism
V1, V2 = random_unitary(4, rng), random_unitary(4, rng)
S = gamma(V1)
print("symplectic:", is_symplectic(S), " orthogonal:", is_orthogonal(S))
print("|gamma(V1 V2) - gamma(V1) gamma(V2)| =", np.max(np.abs(gamma(V1 @ V2) - S @ gamma(V2))))

# %% ...and the intersection gives the unitary back
print("recovered:", np.max(np.abs(intersection_to_unitary(S) - V1)))

# %% On (q; p) = (Re psi; Im psi) the matrix that reproduces psi -> V psi is
# real_action(V) = [[X, -Y], [Y, X]]; gamma(V) reproduces psi -> conj(V) psi.
psi = ComplexState(rng.standard_normal(4) + 1j * rng.standard_normal(4))
x = complex_to_real_state(psi).stacked
lhs = complex_to_real_state(ComplexState(V1 @ psi.amplitudes)).stacked
print("real_action matches V psi:", np.allclose(real_action(V1) @ x, lhs))
print("gamma matches conj(V) psi:",
      np.allclose(gamma(V1) @ x, complex_to_real_state(ComplexState(V1.conj() @ psi.amplitudes)).stacked))
