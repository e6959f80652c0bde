"""Node closeness matrices derived from quantum walk dynamics.

Every measure returns ``2/n^2 * A`` where ``A`` is the measure's node-level
adjacency; closeness between communities is the pairwise mean of node
closeness (:func:`community_closeness`). Positive global rescaling does not
change dendrograms or the modularity-optimal level.

Regimes are given as ``"short"``, ``"infinite"`` (or ``numpy.inf``), or a
positive averaging time ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import (
    avg_density,
    avg_transfer_matrix,
    double_pair_kernel,
    pair_kernel,
    pure_density,
    uniform_superposition,
)
from .errors import EmptyCommunityError, NonPositiveTimeError, OverlappingCommunitiesError
from .hermitian import SpectralDecomposition

MEASURES = ("transport", "fidelity", "fidelity_phase_avg", "purity", "purity_phase_avg")


@dataclass(frozen=True)
class NodeCloseness:
    """Symmetric ``n x n`` closeness with the measure and regime that produced it.

    The diagonal is kept for inspection only; clustering and modularity
    treat it as zero.
    """

    values: np.ndarray
    measure: str
    regime: str
    extra: dict = field(default_factory=dict, compare=False)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def parse_regime(regime) -> float | str:
    """Normalize a regime spec to ``"short"`` or an averaging time (``inf`` allowed)."""
    if isinstance(regime, str):
        key = regime.strip().lower()
        if key == "short":
            return "short"
        if key in ("infinite", "inf", "long"):
            return math.inf
        try:
            regime = float(key)
        except ValueError:
            raise ValueError(f"unknown regime {regime!r}") from None
    t = float(regime)
    if math.isnan(t) or t <= 0:
        raise NonPositiveTimeError(f"t must be positive, got {t}")
    return t


def regime_label(regime) -> str:
    r = parse_regime(regime)
    if r == "short":
        return "short"
    if math.isinf(r):
        return "infinite"
    return f"finite(t={r:g})"


def _finalize(A: np.ndarray, measure: str, regime, **extra) -> NodeCloseness:
    n = A.shape[0]
    A = np.asarray(A, dtype=float)
    values = (2.0 / n**2) * (A + A.T) / 2
    values.setflags(write=False)
    return NodeCloseness(values, measure, regime_label(regime), extra)


def _phases(D: SpectralDecomposition, phases) -> np.ndarray:
    if phases is None:
        return np.zeros(D.source_n)
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (D.source_n,):
        raise ValueError(f"expected {D.source_n} phases, got shape {phases.shape}")
    return phases


def _needs_time(regime, measure: str) -> float:
    r = parse_regime(regime)
    if r == "short":
        raise ValueError(f"the {measure} measure has no short-time regime; give t or 'infinite'")
    return r


def closeness_transport(D: SpectralDecomposition, regime) -> NodeCloseness:
    """Transport closeness ``2/n^2 * sym(Rbar)``.

    In the short regime the ``t^2`` coefficient ``|H_ab|^2 / 3`` stands in
    for ``Rbar``; its diagonal (which would be negative) is set to zero.
    """
    r = parse_regime(regime)
    if r == "short":
        H = D.matrix
        A = (H.real**2 + H.imag**2) / 3.0
        np.fill_diagonal(A, 0.0)
    else:
        A = avg_transfer_matrix(D, r)
    return _finalize(A, "transport", regime)


def closeness_fidelity(D: SpectralDecomposition, regime, phases=None) -> NodeCloseness:
    """Fidelity closeness ``2 Re(rhobar_ab rho_ba(0))`` for a uniform superposition.

    Entries can be negative; use signed modularity downstream.
    """
    t = _needs_time(regime, "fidelity")
    theta = _phases(D, phases)
    rho0 = pure_density(uniform_superposition(theta))
    rho_bar = avg_density(D, rho0, t)
    n = D.source_n
    A = n**2 * np.real(rho_bar * rho0.T)
    return _finalize(A, "fidelity", regime, phases=theta.tolist())


def closeness_fidelity_phase_avg(D: SpectralDecomposition, regime) -> NodeCloseness:
    """Fidelity closeness averaged over all initial phases.

    ``A_ab = <Re(U_aa conj(U_bb))> + delta_ab (1 - <|U_aa|^2>)`` with ``<.>``
    the time average, written in terms of projector diagonals.
    """
    t = _needs_time(regime, "fidelity_phase_avg")
    d = np.real(np.diagonal(D.projectors, axis1=1, axis2=2))  # (m, n)
    G = np.real(d.T @ pair_kernel(D, t) @ d)
    A = G + np.diag(1.0 - np.diag(G))
    return _finalize(A, "fidelity_phase_avg", regime)


def closeness_purity(D: SpectralDecomposition, regime, phases=None) -> NodeCloseness:
    """Purity closeness ``2 <|rho_ab(t)|^2>`` for a uniform superposition.

    For the pure evolving state ``alpha(t) = U(t) psi`` one has
    ``|rho_ab|^2 = |alpha_a|^2 |alpha_b|^2``; each factor is a sum over
    eigenspace pairs, so the time average uses the double-pair kernel.
    Memory and time grow as ``m^4`` for ``m`` distinct eigenvalues.
    """
    t = _needs_time(regime, "purity")
    theta = _phases(D, phases)
    psi = uniform_superposition(theta)
    n, m = D.source_n, D.n_spaces
    w = D.projectors @ psi  # (m, n): component of psi in each eigenspace
    C = (w[:, None, :] * w.conj()[None, :, :]).reshape(m * m, n).T  # (n, m^2)
    avg = np.real(C @ double_pair_kernel(D, t) @ C.T)
    return _finalize(n**2 * avg, "purity", regime, phases=theta.tolist())


def closeness_purity_phase_avg(D: SpectralDecomposition, regime) -> NodeCloseness:
    """Purity closeness averaged over all initial phases.

    ``A_ab = 1 + delta_ab - <sum_x R_ax R_bx>`` where ``R`` is the transfer
    matrix. Cost is ``O(n^2 m^4)``; intended for networks of a few dozen nodes.
    """
    t = _needs_time(regime, "purity_phase_avg")
    n, m = D.source_n, D.n_spaces
    P = D.projectors
    # G[a, x, (j, k)] = (L_j)_ax conj((L_k)_ax), so R_ax(t) = sum_J e^{-i w_J t} G[a, x, J]
    G = (P[:, None, :, :] * P.conj()[None, :, :, :]).reshape(m * m, n * n).T
    Y = (G @ double_pair_kernel(D, t)).reshape(n, n, m * m)
    G = G.reshape(n, n, m * m)
    corr = np.real(np.einsum("axk,bxk->ab", Y, G))
    A = 1.0 + np.eye(n) - corr
    return _finalize(A, "purity_phase_avg", regime)


def node_closeness(D: SpectralDecomposition, measure: str, regime, phases=None) -> NodeCloseness:
    """Dispatch to the closeness measure named `measure`."""
    if measure == "transport":
        return closeness_transport(D, regime)
    if measure == "fidelity":
        return closeness_fidelity(D, regime, phases)
    if measure == "fidelity_phase_avg":
        return closeness_fidelity_phase_avg(D, regime)
    if measure == "purity":
        return closeness_purity(D, regime, phases)
    if measure == "purity_phase_avg":
        return closeness_purity_phase_avg(D, regime)
    raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")


def community_closeness(c, A, B) -> float:
    """Pairwise-mean closeness between disjoint node sets `A` and `B`."""
    A = sorted(set(A))
    B = sorted(set(B))
    if not A or not B:
        raise EmptyCommunityError("communities must be non-empty")
    if set(A) & set(B):
        raise OverlappingCommunitiesError(f"communities share nodes {sorted(set(A) & set(B))}")
    c = np.asarray(c, dtype=float)
    return float(c[np.ix_(A, B)].mean())
