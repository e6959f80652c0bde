"""Hermitian matrices and their spectral decomposition into eigenspaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigensolverFailure, HermiticityError, NonSquareMatrixError

DEFAULT_DEGENERACY_TOL = 1e-9


def validate_hermitian(M, tol: float = 1e-9) -> np.ndarray:
    """Check that `M` is Hermitian and return its symmetrized copy.

    Parameters
    ----------
    M : array_like
        Square matrix, real or complex.
    tol : float
        Largest accepted value of ``max |M_ij - conj(M_ji)|``.

    Returns
    -------
    numpy.ndarray
        ``(M + M^dagger) / 2`` as a complex array.

    Raises
    ------
    NonSquareMatrixError
        If `M` is not a non-empty square matrix.
    HermiticityError
        If the asymmetry exceeds `tol`.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise NonSquareMatrixError(f"expected a non-empty square matrix, got shape {M.shape}")
    M = M.astype(complex)
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    asym = float(np.max(np.abs(M - M.conj().T)))
    if asym > tol:
        raise HermiticityError(asym, tol)
    return (M + M.conj().T) / 2


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues of a Hermitian matrix and the eigenspace projectors.

    ``projectors[k]`` is the orthogonal projector onto the eigenspace with
    energy ``eigenvalues[k]``. `gap_tol` is the absolute energy tolerance
    used when grouping eigenvalues; it is reused to detect resonant energy
    differences.
    """

    eigenvalues: np.ndarray
    projectors: np.ndarray
    matrix: np.ndarray
    gap_tol: float

    @property
    def source_n(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_spaces(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,kab->ab", self.eigenvalues, self.projectors)


def _group_sorted(evals: np.ndarray, tol: float) -> list[np.ndarray]:
    groups = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[i - 1] > tol:
            groups.append([i])
        else:
            groups[-1].append(i)
    return [np.array(g) for g in groups]


def spectral_decompose(H, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix and group degenerate eigenvalues.

    Sorted eigenvalues are chained into one eigenspace while consecutive gaps
    stay within ``degeneracy_tol * max(1, E_max - E_min)``. Each group's
    energy is the mean of its members and its projector is the sum of the
    outer products of the group's eigenvectors.

    Real input is diagonalized in real arithmetic, so the projectors (and
    every quantity derived from them) are exactly symmetric.
    """
    if degeneracy_tol < 0:
        raise ValueError("degeneracy_tol must be non-negative")
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] < 1:
        raise NonSquareMatrixError(f"expected a non-empty square matrix, got shape {H.shape}")
    is_real = not np.iscomplexobj(H) or not np.any(H.imag)
    work = np.ascontiguousarray(H.real if is_real else H, dtype=float if is_real else complex)
    try:
        evals, evecs = np.linalg.eigh(work)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    if not np.all(np.isfinite(evals)):
        raise EigensolverFailure("eigensolver returned non-finite eigenvalues")

    spread = float(evals[-1] - evals[0])
    gap_tol = degeneracy_tol * max(1.0, spread)
    groups = _group_sorted(evals, gap_tol)

    n = H.shape[0]
    energies = np.empty(len(groups))
    projectors = np.empty((len(groups), n, n), dtype=complex)
    for k, idx in enumerate(groups):
        V = evecs[:, idx]
        P = V @ V.conj().T
        projectors[k] = (P + P.conj().T) / 2
        energies[k] = evals[idx].mean()

    energies.setflags(write=False)
    projectors.setflags(write=False)
    matrix = np.array(H, dtype=complex)
    matrix.setflags(write=False)
    return SpectralDecomposition(energies, projectors, matrix, gap_tol)
