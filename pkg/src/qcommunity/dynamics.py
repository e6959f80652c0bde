"""Closed-form continuous-time quantum walk quantities.

Time averages are uniform averages over ``[0, t]``. They are evaluated
exactly in the eigenbasis through the kernel

    phi(delta, t) = (1/t) int_0^t exp(-i delta s) ds,

and ``t = numpy.inf`` selects the infinite-time limit, where the kernel
becomes the indicator of ``delta == 0``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NonPositiveTimeError
from .hermitian import SpectralDecomposition, validate_hermitian

INFINITE = math.inf


def _check_avg_time(t) -> float:
    t = float(t)
    if math.isnan(t) or t <= 0:
        raise NonPositiveTimeError(f"averaging time must be positive, got {t}")
    return t


def time_average_kernel(delta, t: float) -> np.ndarray:
    """Uniform time average of ``exp(-i delta s)`` over ``s`` in ``[0, t]``.

    Written as ``exp(-i x/2) sinc(x/2)`` with ``x = delta t`` so that small
    ``x`` loses no precision. For ``t = inf`` returns 1 where ``delta == 0``
    and 0 elsewhere.
    """
    delta = np.asarray(delta, dtype=float)
    t = _check_avg_time(t)
    if math.isinf(t):
        return (delta == 0).astype(complex)
    x = delta * t
    return np.exp(-0.5j * x) * np.sinc(x / (2 * np.pi))


def energy_differences(D: SpectralDecomposition) -> np.ndarray:
    """Matrix of ``E_j - E_k`` over distinct eigenvalues."""
    E = D.eigenvalues
    return E[:, None] - E[None, :]


def pair_kernel(D: SpectralDecomposition, t: float) -> np.ndarray:
    """Kernel ``phi(E_j - E_k, t)`` as an ``m x m`` matrix."""
    t = _check_avg_time(t)
    if math.isinf(t):
        return np.eye(D.n_spaces, dtype=complex)
    return time_average_kernel(energy_differences(D), t)


def double_pair_kernel(D: SpectralDecomposition, t: float) -> np.ndarray:
    """Kernel for time averages of products of two oscillating factors.

    Rows and columns run over ordered eigenspace pairs ``J = (j, k)``
    flattened as ``j * m + k``; the entry for ``(J, K)`` is
    ``phi(omega_J + omega_K, t)`` with ``omega_(j,k) = E_j - E_k``.
    In the infinite-time limit every resonance ``omega_J + omega_K = 0``
    (within the decomposition's grouping tolerance) survives, not only the
    trivial ones.
    """
    t = _check_avg_time(t)
    omega = energy_differences(D).ravel()
    total = omega[:, None] + omega[None, :]
    if math.isinf(t):
        return (np.abs(total) <= D.gap_tol).astype(complex)
    return time_average_kernel(total, t)


def propagator(D: SpectralDecomposition, t: float) -> np.ndarray:
    """``U(t) = exp(-iHt)`` assembled from the eigenspace projectors."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    phases = np.exp(-1j * D.eigenvalues * t)
    return np.einsum("k,kab->ab", phases, D.projectors)


def transfer_matrix(D: SpectralDecomposition, t: float) -> np.ndarray:
    """Transport probabilities ``R_ab(t) = |U_ab(t)|^2`` (from b to a)."""
    U = propagator(D, t)
    return U.real**2 + U.imag**2


def avg_transfer_matrix(D: SpectralDecomposition, t: float) -> np.ndarray:
    """Time-averaged transfer matrix over ``[0, t]``; ``t=inf`` gives the mixing matrix.

    Uses ``sum_jk phi(E_j - E_k, t) (L_j)_ab conj((L_k)_ab)``, which for
    ``t = inf`` reduces to ``sum_k |(L_k)_ab|^2``.
    """
    t = _check_avg_time(t)
    n, m = D.source_n, D.n_spaces
    flat = D.projectors.reshape(m, n * n)
    if math.isinf(t):
        R = np.sum(flat.real**2 + flat.imag**2, axis=0)
    else:
        phi = pair_kernel(D, t)
        R = np.real(np.sum(flat * (phi @ flat.conj()), axis=0))
    return R.reshape(n, n)


def short_time_avg_transfer(H, t: float) -> np.ndarray:
    """Second-order expansion of the averaged transfer matrix for small ``t``.

    ``delta_ab (1 - t^2/3 (H^2)_aa) + t^2/3 |H_ab|^2``. No check is made
    that ``t ||H||`` is actually small.
    """
    H = np.asarray(H, dtype=complex)
    c = t * t / 3.0
    R = c * (H.real**2 + H.imag**2)
    h2_diag = np.sum(H.real**2 + H.imag**2, axis=1)  # (H^2)_aa for Hermitian H
    R[np.diag_indices_from(R)] += 1.0 - c * h2_diag
    return R


def short_time_coefficients(H) -> np.ndarray:
    """Coefficient of ``t^2`` in the short-time averaged transfer matrix."""
    H = np.asarray(H, dtype=complex)
    A = (H.real**2 + H.imag**2) / 3.0
    A[np.diag_indices_from(A)] -= np.sum(H.real**2 + H.imag**2, axis=1) / 3.0
    return A


def validate_density(rho, tol: float = 1e-9) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a density matrix."""
    rho = validate_hermitian(rho, tol)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace is {tr}, expected 1")
    lowest = np.linalg.eigvalsh(rho)[0]
    if lowest < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {lowest:.3e}")
    return rho


def uniform_superposition(phases) -> np.ndarray:
    """State vector ``n^{-1/2} sum_k exp(i theta_k) |k>``."""
    phases = np.asarray(phases, dtype=float)
    return np.exp(1j * phases) / math.sqrt(len(phases))


def pure_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def evolve_density(D: SpectralDecomposition, rho0, t: float) -> np.ndarray:
    U = propagator(D, t)
    rho = U @ np.asarray(rho0, dtype=complex) @ U.conj().T
    return (rho + rho.conj().T) / 2


def avg_density(D: SpectralDecomposition, rho0, t: float) -> np.ndarray:
    """Time-averaged density matrix over ``[0, t]``.

    ``sum_jk phi(E_j - E_k, t) L_j rho0 L_k``; for ``t = inf`` only the
    block-diagonal part ``sum_k L_k rho0 L_k`` survives.
    """
    t = _check_avg_time(t)
    rho0 = np.asarray(rho0, dtype=complex)
    P = D.projectors
    left = P @ rho0
    if math.isinf(t):
        rho = np.sum(left @ P, axis=0)
    else:
        right = np.einsum("jk,kab->jab", pair_kernel(D, t), P)
        rho = np.sum(left @ right, axis=0)
    return (rho + rho.conj().T) / 2
