"""Time evolution in the complex and the real (phase-space) picture.

The Schrödinger equation ``i psi' = H psi`` with ``H = K + iL`` and
``psi = q + ip`` becomes the linear Hamiltonian system

    q' =  K p + L q
    p' = -K q + L p

i.e. ``x' = M x`` for the stacked ``x = (q; p)`` and ``M = [[L, K], [-K, L]]``.
Its generating function is

    H_sym(q, p) = 1/2 (p.K p + q.K q) + p.L q,

which equals ``1/2 <psi, H psi>`` for ``psi = q + ip``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .core import (
    ComplexState,
    HermitianOperator,
    PhaseState,
    decompose_hermitian,
    real_action,
)
from .errors import DimMismatch, InnerSolveDiverged, InvalidInterval, NonFinite
from .expm import matrix_exponential


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    k: np.ndarray
    l: np.ndarray

    def __post_init__(self):
        k = np.array(self.k, dtype=float)
        l = np.array(self.l, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1] or k.shape != l.shape:
            raise DimMismatch(f"K and L must be equal square matrices, got {k.shape} and {l.shape}")
        k = (k + k.T) / 2
        l = (l - l.T) / 2
        k.setflags(write=False)
        l.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @classmethod
    def from_operator(cls, H: HermitianOperator) -> "QuadraticHamiltonian":
        return cls(H.k_part, H.l_part)

    @property
    def dim(self) -> int:
        return self.k.shape[0]

    def generator(self) -> np.ndarray:
        """Real generator ``M = [[L, K], [-K, L]]`` of the phase-space flow."""
        return np.block([[self.l, self.k], [-self.k, self.l]])


@dataclass(frozen=True, eq=False)
class Propagator:
    """``u_t = exp(-iHt)`` and the real matrix ``s_t`` acting on (q; p)."""

    t: float
    u_t: np.ndarray
    s_t: np.ndarray


class Method(str, enum.Enum):
    MIDPOINT = "midpoint"
    STRANG = "strang"


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    method: Method = Method.MIDPOINT
    newton_tol: float = 1e-12
    max_inner_iters: int = 50
    stride: int = 1

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ValueError(f"dt must be positive and finite, got {self.dt}")
        if not self.newton_tol > 0:
            raise ValueError(f"newton_tol must be positive, got {self.newton_tol}")
        if self.stride < 1:
            raise ValueError(f"stride must be >= 1, got {self.stride}")


HamiltonianLike = Union[HermitianOperator, QuadraticHamiltonian]
Sampler = Union[HamiltonianLike, Callable[[float], HamiltonianLike]]


def _as_quadratic(H: HamiltonianLike) -> QuadraticHamiltonian:
    if isinstance(H, QuadraticHamiltonian):
        return H
    if isinstance(H, HermitianOperator):
        return QuadraticHamiltonian.from_operator(H)
    return QuadraticHamiltonian.from_operator(decompose_hermitian(H))


def _check_dims(n_h: int, n_state: int):
    if n_h != n_state:
        raise DimMismatch(f"Hamiltonian has dimension {n_h} but state has dimension {n_state}")


def evolve_complex(H: HermitianOperator, psi0: ComplexState, t: float) -> ComplexState:
    """``psi(t) = exp(-iHt) psi0``."""
    _check_dims(H.dim, psi0.dim)
    return ComplexState(matrix_exponential(-1j * t * H.entries) @ psi0.amplitudes)


def make_propagator(H: HermitianOperator, t: float) -> Propagator:
    u = matrix_exponential(-1j * t * H.entries)
    return Propagator(float(t), u, real_action(u))


def evolve_real_exact(H: HamiltonianLike, phi0: PhaseState, t: float) -> PhaseState:
    """Exact phase-space flow ``exp(tM) (q; p)``.

    Exponentiates the real generator directly, so it shares no code path with
    :func:`evolve_complex` beyond the exponential routine.
    """
    Hq = _as_quadratic(H)
    _check_dims(Hq.dim, phi0.dim)
    return PhaseState.from_stacked(matrix_exponential(t * Hq.generator()) @ phi0.stacked)


def hsym(Hq: HamiltonianLike, phi: PhaseState) -> float:
    Hq = _as_quadratic(Hq)
    _check_dims(Hq.dim, phi.dim)
    q, p = phi.q, phi.p
    return float(0.5 * (p @ Hq.k @ p + q @ Hq.k @ q) + p @ Hq.l @ q)


# ---------------------------------------------------------------------------
# One-step transfer matrices


def midpoint_transfer(M: np.ndarray, h: float) -> np.ndarray:
    """Cayley map ``(I - h/2 M)^-1 (I + h/2 M)``: implicit midpoint for x' = Mx."""
    ident = np.eye(M.shape[0])
    return np.linalg.solve(ident - 0.5 * h * M, ident + 0.5 * h * M)


def strang_transfer(Hq: QuadraticHamiltonian, h: float) -> np.ndarray:
    """Half step of the L-flow, full step of the K-flow, half step of the L-flow."""
    n = Hq.dim
    zero = np.zeros((n, n))
    half_l = matrix_exponential(0.5 * h * Hq.l)
    D = np.block([[half_l, zero], [zero, half_l]])
    E = matrix_exponential(h * np.block([[zero, Hq.k], [-Hq.k, zero]]))
    return D @ E @ D


def _transfer(Hq: QuadraticHamiltonian, h: float, method: Method) -> np.ndarray:
    if method is Method.MIDPOINT:
        T = midpoint_transfer(Hq.generator(), h)
    else:
        T = strang_transfer(Hq, h)
    if not np.all(np.isfinite(T)):
        raise InnerSolveDiverged(f"non-finite step matrix for dt={h}")
    return T


def integrate(sampler: Sampler, phi0: PhaseState, t0: float, t1: float,
              cfg: IntegratorConfig) -> list[tuple[float, PhaseState]]:
    """Integrate ``x' = M(t) x`` from t0 to t1 with a symplectic one-step method.

    ``sampler`` is either a fixed Hamiltonian or a callable ``t -> Hamiltonian``;
    a callable is sampled at each step midpoint.  The interval is split into
    ``ceil((t1 - t0) / dt)`` equal steps.  The returned trajectory holds every
    ``cfg.stride``-th state plus the endpoint, starting with ``(t0, phi0)``.
    """
    if not (np.isfinite(t0) and np.isfinite(t1)) or t1 <= t0:
        raise InvalidInterval(f"need finite t0 < t1, got t0={t0}, t1={t1}")
    n_steps = max(1, int(np.ceil((t1 - t0) / cfg.dt - 1e-9)))
    h = (t1 - t0) / n_steps

    constant = not callable(sampler)
    if constant:
        Hq = _as_quadratic(sampler)
        _check_dims(Hq.dim, phi0.dim)
        T_const = _transfer(Hq, h, cfg.method)

    x = phi0.stacked
    traj = [(float(t0), phi0)]
    for i in range(n_steps):
        if constant:
            x_new = T_const @ x
        else:
            Hq = _as_quadratic(sampler(t0 + (i + 0.5) * h))
            _check_dims(Hq.dim, phi0.dim)
            x_new = _step(Hq, h, x, cfg)
        if not np.all(np.isfinite(x_new)):
            raise NonFinite(f"state became non-finite at step {i + 1}")
        x = x_new
        if (i + 1) % cfg.stride == 0 or i + 1 == n_steps:
            traj.append((t0 + (i + 1) * h, PhaseState.from_stacked(x)))
    return traj


def _step(Hq: QuadraticHamiltonian, h: float, x: np.ndarray, cfg: IntegratorConfig) -> np.ndarray:
    if cfg.method is Method.STRANG:
        return strang_transfer(Hq, h) @ x
    # linear system, so the implicit stage is a single exact solve
    M = Hq.generator()
    lhs = np.eye(M.shape[0]) - 0.5 * h * M
    rhs = x + 0.5 * h * (M @ x)
    x_new = np.linalg.solve(lhs, rhs)
    resid = float(np.max(np.abs(lhs @ x_new - rhs)))
    if not resid <= cfg.newton_tol * (1.0 + float(np.max(np.abs(rhs)))):
        raise InnerSolveDiverged(f"midpoint solve residual {resid:.3e} exceeds {cfg.newton_tol:.1e}")
    return x_new


def trajectory_table(traj: list[tuple[float, PhaseState]], H: HamiltonianLike | Callable | None = None) -> dict:
    """Columns ``times, q, p, hsym, norm`` for serialization.

    ``hsym`` is evaluated with the Hamiltonian at each sample time (a callable
    is sampled there); it is omitted when ``H`` is None.
    """
    out = {
        "times": [t for t, _ in traj],
        "q": [s.q.tolist() for _, s in traj],
        "p": [s.p.tolist() for _, s in traj],
        "norm": [s.norm_squared() for _, s in traj],
    }
    if H is not None:
        out["hsym"] = [hsym(H(t) if callable(H) else H, s) for t, s in traj]
    return out
