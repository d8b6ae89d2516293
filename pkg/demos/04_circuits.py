"""Parse a circuit, run it on both backends, measure, and check equivalence on
random circuits."""

from pathlib import Path

import numpy as np

from sympsim import equivalence_check, measure, parse_circuit, real_to_complex_state, run_complex, run_real
from sympsim.runner import random_circuit

c = parse_circuit((Path(__file__).parent / "bell.circ").read_text())
psi = run_complex(c)
phi = run_real(c)
print("complex:", np.round(psi.amplitudes, 4))
print("real q :", np.round(phi.q, 4), " p:", np.round(phi.p, 4))
print("deviation:", np.max(np.abs(psi.amplitudes - real_to_complex_state(phi).amplitudes)))

# %% Counts are fixed by the seed, also when shots run on several threads
print(measure(psi, 100000, seed=42).counts, measure(psi, 100000, seed=42, workers=4).counts)

# %% Random 6-qubit circuits
rng = np.random.default_rng(0)
worst = max(equivalence_check(random_circuit(6, 50, rng), 2, seed=i).max_state_deviation for i in range(10))
print("worst backend deviation over 10 random circuits:", worst)
