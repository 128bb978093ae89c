"""Small dense kernels: Hurwitz test and the continuous Lyapunov equation
A W + W A^T = -Q, solved directly through the Kronecker-sum linear system."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HopcavError, StabilityError

MAX_ORDER = 16
# stability margin relative to the matrix scale
ABSCISSA_RTOL = 1e-12
RESIDUAL_GATE = 1e-9


@dataclass(frozen=True)
class LyapunovSolution:
    """Stationary second-moment matrix and its relative residual
    ||A W + W A^T + Q||_F / ||Q||_F."""

    w: np.ndarray
    residual_norm: float


def spectral_abscissa(a: np.ndarray) -> float:
    """Largest real part of the eigenvalues of ``a``."""
    a = np.asarray(a, dtype=float)
    _check_square(a)
    try:
        ev = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise HopcavError(f"eigenvalue solver failed: {exc}") from exc
    return float(ev.real.max())


def is_hurwitz(a: np.ndarray) -> tuple[bool, float]:
    """Whether all eigenvalues sit strictly in the left half-plane, together
    with the spectral abscissa.  Strictness uses a margin of
    ``ABSCISSA_RTOL`` times the Frobenius norm."""
    a = np.asarray(a, dtype=float)
    absc = spectral_abscissa(a)
    margin = ABSCISSA_RTOL * np.linalg.norm(a)
    return bool(absc < -margin), absc


def solve_lyapunov(a: np.ndarray, q: np.ndarray, *, assume_hurwitz: bool = False) -> LyapunovSolution:
    """Unique symmetric solution of A W + W A^T = -Q for a Hurwitz A.

    Solves the order-n^2 Kronecker-sum system with dense pivoted elimination
    (deterministic), symmetrizes, and records the relative residual.  Raises
    :class:`StabilityError` when A is not Hurwitz, so callers treat the point
    as having no steady state.
    """
    a = np.asarray(a, dtype=float)
    q = np.asarray(q, dtype=float)
    _check_square(a)
    if q.shape != a.shape:
        raise HopcavError(f"shape mismatch: A {a.shape} vs Q {q.shape}")
    if not np.allclose(q, q.T, rtol=0.0, atol=1e-12 * max(1.0, np.linalg.norm(q))):
        raise HopcavError("Q must be symmetric")
    if not assume_hurwitz:
        ok, absc = is_hurwitz(a)
        if not ok:
            raise StabilityError(
                f"drift is not Hurwitz (spectral abscissa {absc:.6e}); no steady state"
            )

    n = a.shape[0]
    eye = np.eye(n)
    system = np.kron(a, eye) + np.kron(eye, a)
    w = np.linalg.solve(system, -q.reshape(-1)).reshape(n, n)
    w = 0.5 * (w + w.T)

    qnorm = np.linalg.norm(q)
    if qnorm == 0.0:
        residual = float(np.linalg.norm(a @ w + w @ a.T))
    else:
        residual = float(np.linalg.norm(a @ w + w @ a.T + q) / qnorm)
    return LyapunovSolution(w=w, residual_norm=residual)


def _check_square(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise HopcavError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_ORDER:
        raise HopcavError(
            f"kernel is sized for order <= {MAX_ORDER}, got {a.shape[0]}"
        )
