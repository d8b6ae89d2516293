"""Matrix exponential by scaling and squaring with diagonal Padé approximants.

Follows Higham (2005), "The scaling and squaring method for the matrix
exponential revisited": choose the lowest Padé degree m in {3, 5, 7, 9, 13}
whose backward-error bound ``theta_m`` covers ``||A||_1``; otherwise scale
by 2^-s to fit degree 13 and square s times.
"""

from __future__ import annotations

import numpy as np

from .errors import NonFinite, NotSquare

_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}

_PADE = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0, 670442572800.0,
         33522128640.0, 1323241920.0, 40840800.0, 960960.0, 16380.0, 182.0, 1.0),
}


def _pade_uv(A: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    b = _PADE[m]
    ident = np.eye(A.shape[0], dtype=A.dtype)
    A2 = A @ A
    if m == 13:
        A4 = A2 @ A2
        A6 = A4 @ A2
        U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
                 + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
        V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
             + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
        return U, V
    # low degrees: even powers A^0, A^2, A^4, ...
    powers = [ident, A2]
    for _ in range(2, (m + 1) // 2):
        powers.append(powers[-1] @ A2)
    U = sum(b[j] * powers[j // 2] for j in range(m, 0, -2))
    V = sum(b[j] * powers[j // 2] for j in range(m - 1, -1, -2))
    return A @ U, V


def matrix_exponential(M) -> np.ndarray:
    """Return ``exp(M)`` for a square real or complex matrix."""
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquare(f"matrix must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFinite("matrix exponential of a matrix with non-finite entries")
    A = A.astype(complex if np.iscomplexobj(A) else float)
    n = A.shape[0]
    if n == 0:
        return A.copy()

    norm1 = float(np.max(np.sum(np.abs(A), axis=0)))
    for m in (3, 5, 7, 9):
        if norm1 <= _THETA[m]:
            U, V = _pade_uv(A, m)
            return np.linalg.solve(V - U, V + U)

    s = 0
    if norm1 > _THETA[13]:
        s = max(0, int(np.ceil(np.log2(norm1 / _THETA[13]))))
    A = A / 2.0**s
    U, V = _pade_uv(A, 13)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(s):
        R = R @ R
    return R
