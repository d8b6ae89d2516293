"""Dual complex/real simulation of unitary and symplectic computations."""

from .circuit import Circuit, PlacedGate, TargetSpace, parse_circuit, serialize_circuit
from .core import (
    ComplexState,
    HermitianOperator,
    PhaseState,
    complex_to_real_state,
    decompose_hermitian,
    gamma,
    gamma_inverse,
    intersection_to_unitary,
    is_orthogonal,
    is_symplectic,
    is_unitary,
    real_action,
    real_to_complex_state,
    symplectic_form,
)
from .dynamics import (
    IntegratorConfig,
    Method,
    Propagator,
    QuadraticHamiltonian,
    evolve_complex,
    evolve_real_exact,
    hsym,
    integrate,
    make_propagator,
)
from .expm import matrix_exponential
from .gates import (
    CATALOG,
    Gate,
    GateKind,
    embed_symplectic,
    embed_unitary,
    gamma_cnot,
    gate_cnot,
    gate_not_paper,
    gate_rotation,
    gate_shear,
    gate_squeeze,
    make_gate,
)
from .runner import (
    MeasurementResult,
    equivalence_check,
    measure,
    run_complex,
    run_real,
)

__version__ = "0.1.0"
