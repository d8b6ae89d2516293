"""Symplectic gates outside the unitary group: squeeze and shear change the
state norm, so measurement reports the unnormalized mass."""

import math

from sympsim import gate_shear, gate_squeeze, is_orthogonal, is_symplectic, measure, parse_circuit, run_real
from sympsim.gates import gate_rotation

for g in (gate_rotation(0.7), gate_squeeze(1.0), gate_shear(0.5)):
    print(f"{g.name:8s} symplectic={is_symplectic(g.matrix.real)[0]!s:5s} "
          f"orthogonal={is_orthogonal(g.matrix.real)[0]}")

# %% A symbit (alpha, beta) = (1, 0) gains norm e^r under SQUEEZE(r)
phi = run_real(parse_circuit("qubits 1\nsgate SQUEEZE(1) 0"))
print("q after squeeze:", phi.q, " norm:", math.sqrt(phi.norm_squared()), "(e =", math.e, ")")

# %% H then SQUEEZE on mode 0: weights (e^2/2, 1/2) normalized by their sum
c = parse_circuit(open(__file__.replace("02_strict_inclusion.py", "squeeze.circ")).read())
r = measure(run_real(c), 100000, seed=1)
print("counts:", r.counts, " total_norm:", r.total_norm)
print("expected P(0) =", math.e**2 / (math.e**2 + 1))

# %% The complex backend refuses it
from sympsim import run_complex  # noqa: E402
from sympsim.errors import SymplecticGateOnComplexBackend  # noqa: E402

try:
    run_complex(c)
except SymplecticGateOnComplexBackend as exc:
    print("complex backend:", exc)
