"""Complex/real duality: the unitary-to-symplectic embedding and its checks.

Conventions
-----------
A complex state ``psi`` in C^N is identified with the real phase-space vector
``(q; p)`` in R^{2N}, stacked with ``q = Re psi`` in slots ``0..N-1`` and
``p = Im psi`` in slots ``N..2N-1``.  The symplectic form is

    J = [[0, I], [-I, 0]].

Two real images of a complex matrix ``V = X + iY`` appear:

* ``gamma(V) = [[X, Y], [-Y, X]]`` -- the canonical embedding of U(N) into
  Sp(2N, R), a group homomorphism.
* ``real_action(V) = [[X, -Y], [Y, X]]`` -- the matrix that reproduces
  ``psi -> V psi`` on the stacked ``(q; p)`` vector.  It equals
  ``gamma(conj(V))``; both lie in Sp(2N) ∩ O(2N) when V is unitary.

The backends evolve states with :func:`real_action`; :func:`gamma` is kept
literal so its images can be compared entry for entry with known matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DimMismatch,
    NotGammaImage,
    NotHermitian,
    NotInIntersection,
    NotSquare,
    NotUnitary,
    OddDimension,
)

DEFAULT_TOL = 1e-12


def _frozen(a, dtype) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _max_abs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def _square(M, name="matrix") -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"{name} must be square, got shape {M.shape}")
    return M


def _even_square(S) -> tuple[np.ndarray, int]:
    S = _square(S)
    if S.shape[0] % 2:
        raise OddDimension(f"expected an even dimension, got {S.shape[0]}")
    return S, S.shape[0] // 2


def symplectic_form(n: int) -> np.ndarray:
    """Standard symplectic form J of size 2n x 2n."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def blocks(S) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split a 2N x 2N matrix into its N x N quadrants (A, B, C, D)."""
    S, n = _even_square(S)
    return S[:n, :n], S[:n, n:], S[n:, :n], S[n:, n:]


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Hermitian matrix together with its real decomposition ``H = K + iL``."""

    entries: np.ndarray
    k_part: np.ndarray
    l_part: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class ComplexState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes)
        if amp.ndim != 1 or amp.size == 0:
            raise DimMismatch(f"state must be a non-empty vector, got shape {amp.shape}")
        object.__setattr__(self, "amplitudes", _frozen(amp, complex))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm_squared(self) -> float:
        re, im = self.amplitudes.real, self.amplitudes.imag
        return float(np.sum(re * re + im * im))

    @classmethod
    def basis(cls, dim: int, index: int = 0) -> "ComplexState":
        amp = np.zeros(dim, dtype=complex)
        amp[index] = 1.0
        return cls(amp)


@dataclass(frozen=True, eq=False)
class PhaseState:
    """Real phase-space state; ``stacked`` gives the (q; p) column vector."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        q, p = np.asarray(self.q), np.asarray(self.p)
        if q.ndim != 1 or q.shape != p.shape or q.size == 0:
            raise DimMismatch(f"q and p must be equal-length vectors, got {q.shape} and {p.shape}")
        object.__setattr__(self, "q", _frozen(q, float))
        object.__setattr__(self, "p", _frozen(p, float))

    @property
    def dim(self) -> int:
        return self.q.shape[0]

    @property
    def stacked(self) -> np.ndarray:
        return np.concatenate([self.q, self.p])

    @classmethod
    def from_stacked(cls, x) -> "PhaseState":
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.size % 2:
            raise OddDimension(f"stacked phase vector must have even length, got {x.shape}")
        n = x.size // 2
        return cls(x[:n], x[n:])

    @classmethod
    def basis(cls, dim: int, index: int = 0) -> "PhaseState":
        q = np.zeros(dim)
        q[index] = 1.0
        return cls(q, np.zeros(dim))

    def norm_squared(self) -> float:
        return float(np.sum(self.q * self.q + self.p * self.p))


# ---------------------------------------------------------------------------
# Decomposition and state conversion


def decompose_hermitian(H, tol: float = DEFAULT_TOL) -> HermitianOperator:
    """Split a Hermitian matrix into symmetric real part K and skew real part L.

    Raises
    ------
    NotHermitian
        If ``max|H - H^dagger| > tol``.
    """
    H = _square(np.asarray(H, dtype=complex), "Hamiltonian")
    dev = _max_abs(H - H.conj().T)
    if dev > tol:
        raise NotHermitian(f"matrix is not Hermitian (max deviation {dev:.3e})", deviation=dev)
    k = H.real
    l = H.imag
    k = (k + k.T) / 2
    l = (l - l.T) / 2
    return HermitianOperator(_frozen(k + 1j * l, complex), _frozen(k, float), _frozen(l, float))


def complex_to_real_state(psi: ComplexState) -> PhaseState:
    return PhaseState(psi.amplitudes.real, psi.amplitudes.imag)


def real_to_complex_state(phi: PhaseState) -> ComplexState:
    amp = np.empty(phi.dim, dtype=complex)
    amp.real = phi.q
    amp.imag = phi.p
    return ComplexState(amp)


# ---------------------------------------------------------------------------
# Group membership


def is_symplectic(S, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check ``S^T J S = J``; returns (verdict, max deviation)."""
    S, n = _even_square(np.asarray(S, dtype=float))
    J = symplectic_form(n)
    dev = _max_abs(S.T @ J @ S - J)
    return dev <= tol, dev


def symplectic_block_deviation(S) -> float:
    """Largest violation of the quadrant conditions for symplecticity.

    For ``S = [[A, B], [C, D]]`` these are: ``A^T C`` and ``B^T D`` symmetric
    and ``A^T D - C^T B = I``.
    """
    A, B, C, D = blocks(np.asarray(S, dtype=float))
    AtC = A.T @ C
    BtD = B.T @ D
    return max(
        _max_abs(AtC - AtC.T),
        _max_abs(BtD - BtD.T),
        _max_abs(A.T @ D - C.T @ B - np.eye(A.shape[0])),
    )


def is_orthogonal(S, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    S = _square(np.asarray(S, dtype=float))
    dev = _max_abs(S.T @ S - np.eye(S.shape[0]))
    return dev <= tol, dev


def is_unitary(V, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    V = _square(np.asarray(V, dtype=complex))
    dev = _max_abs(V.conj().T @ V - np.eye(V.shape[0]))
    return dev <= tol, dev


# ---------------------------------------------------------------------------
# Embeddings


def gamma(V, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Embed a unitary ``V = X + iY`` as the symplectic matrix ``[[X, Y], [-Y, X]]``."""
    V = np.asarray(V, dtype=complex)
    ok, dev = is_unitary(V, tol)
    if not ok:
        raise NotUnitary(f"matrix is not unitary (max deviation {dev:.3e})", deviation=dev)
    X, Y = V.real, V.imag
    return np.block([[X, Y], [-Y, X]])


def gamma_inverse(S, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Read ``X + iY`` back out of a matrix of the form ``[[X, Y], [-Y, X]]``."""
    A, B, C, D = blocks(np.asarray(S, dtype=float))
    dev = max(_max_abs(A - D), _max_abs(B + C))
    if dev > tol:
        raise NotGammaImage(
            f"matrix lacks the [[X, Y], [-Y, X]] structure (max deviation {dev:.3e})", deviation=dev
        )
    return A + 1j * B


def real_action(V) -> np.ndarray:
    """Real 2N x 2N matrix acting on stacked (q; p) exactly as V acts on psi.

    No unitarity is required: any complex matrix is a real-linear map.
    """
    V = _square(np.asarray(V, dtype=complex))
    X, Y = V.real, V.imag
    return np.block([[X, -Y], [Y, X]])


def intersection_to_unitary(S, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Recover the unitary V with ``gamma(V) = S`` for S in Sp(2N) ∩ O(2N)."""
    S = np.asarray(S, dtype=float)
    symp, dev_s = is_symplectic(S, tol)
    if not symp:
        raise NotInIntersection(
            f"matrix is not symplectic (max deviation {dev_s:.3e})", failed="symplectic", deviation=dev_s
        )
    orth, dev_o = is_orthogonal(S, tol)
    if not orth:
        raise NotInIntersection(
            f"matrix is not orthogonal (max deviation {dev_o:.3e})", failed="orthogonal", deviation=dev_o
        )
    # symplectic + orthogonal forces S J = J S, i.e. the [[X, Y], [-Y, X]] shape
    J = symplectic_form(S.shape[0] // 2)
    dev_c = _max_abs(S @ J - J @ S)
    if dev_c > tol:
        raise NotInIntersection(
            f"matrix does not commute with J (max deviation {dev_c:.3e})", failed="complex-structure",
            deviation=dev_c,
        )
    A, B, _, _ = blocks(S)
    return A + 1j * B


# ---------------------------------------------------------------------------
# Random instances (Haar unitaries, GUE-like Hermitians, normalized states)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (z + z.conj().T) / 2


def random_state(n: int, rng: np.random.Generator) -> ComplexState:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return ComplexState(z / np.linalg.norm(z))


# ---------------------------------------------------------------------------
# JSON matrix files


def matrix_from_json(obj) -> np.ndarray:
    """Decode ``{"dim", "re", "im"}`` (complex) or ``{"dim", "entries"}`` (real).

    ``obj`` may be a parsed dict, a JSON string, or a path.
    """
    if isinstance(obj, Path) or (isinstance(obj, str) and not obj.lstrip().startswith("{")):
        obj = json.loads(Path(obj).read_text())
    elif isinstance(obj, str):
        obj = json.loads(obj)
    if "entries" in obj:
        M = np.array(obj["entries"], dtype=float)
    elif "re" in obj:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float) if "im" in obj else np.zeros_like(re)
        if re.shape != im.shape:
            raise DimMismatch(f"re and im shapes differ: {re.shape} vs {im.shape}")
        M = re + 1j * im
    else:
        raise DimMismatch("matrix object needs 'entries' or 're'/'im' fields")
    M = _square(M)
    if "dim" in obj and int(obj["dim"]) != M.shape[0]:
        raise DimMismatch(f"declared dim {obj['dim']} but matrix is {M.shape[0]}x{M.shape[1]}")
    return M


def matrix_to_json(M) -> dict:
    M = np.asarray(M)
    if np.iscomplexobj(M):
        return {"dim": M.shape[0], "re": M.real.tolist(), "im": M.imag.tolist()}
    return {"dim": M.shape[0], "entries": M.tolist()}
