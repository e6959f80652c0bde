"""Agglomerative clustering, modularity and NMI for closeness-weighted networks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateTotalWeightError, MismatchedNodeSetsError, NegativeEntriesError

TIE_RTOL = 1e-9
Q_TIE_ATOL = 1e-12


@dataclass(frozen=True)
class Partition:
    """Assignment of nodes ``0..n-1`` to disjoint communities.

    Labels are canonical: communities are numbered in order of their
    smallest node, so two equal partitions compare equal.
    """

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", _canonical(self.labels))

    @classmethod
    def from_communities(cls, communities: Sequence[Sequence[int]], n: int | None = None) -> "Partition":
        nodes = [i for comm in communities for i in comm]
        if n is None:
            n = len(nodes)
        if any(len(comm) == 0 for comm in communities):
            raise ValueError("communities must be non-empty")
        if sorted(nodes) != list(range(n)):
            raise ValueError("communities must cover nodes 0..n-1 exactly once")
        labels = [0] * n
        for k, comm in enumerate(communities):
            for i in comm:
                labels[i] = k
        return cls(tuple(labels))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def n_communities(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def communities(self) -> list[list[int]]:
        out = [[] for _ in range(self.n_communities)]
        for i, lab in enumerate(self.labels):
            out[lab].append(i)
        return out

    def indicator(self) -> np.ndarray:
        """Community matrix ``C`` with ``C[i, A] = 1`` iff node i is in A."""
        C = np.zeros((self.n, self.n_communities))
        C[np.arange(self.n), self.labels] = 1.0
        return C

    def is_coarsening_of(self, other: "Partition") -> bool:
        mine = self.labels
        return all(len({mine[i] for i in comm}) == 1 for comm in other.communities)


def _canonical(labels) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


@dataclass(frozen=True)
class Merge:
    """One agglomeration step: `groups` are the communities joined into one."""

    closeness: float
    groups: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class Dendrogram:
    """Hierarchy from singletons (``partitions[0]``) to a single community."""

    partitions: tuple[Partition, ...]
    merges: tuple[Merge, ...]

    @property
    def levels(self) -> list[tuple[float, Partition]]:
        """``(merge_closeness, partition)`` pairs; the singleton level carries ``inf``."""
        closeness = [math.inf] + [m.closeness for m in self.merges]
        return list(zip(closeness, self.partitions))

    def merge_closeness(self) -> np.ndarray:
        return np.array([m.closeness for m in self.merges])


def _offdiag(c) -> np.ndarray:
    A = np.array(c, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("closeness must be a square matrix")
    np.fill_diagonal(A, 0.0)
    return A


def _components(adj: np.ndarray) -> list[list[int]]:
    K = adj.shape[0]
    seen = [False] * K
    comps = []
    for s in range(K):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in np.flatnonzero(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        comps.append(sorted(comp))
    return comps


def agglomerate(c, tie_rtol: float = TIE_RTOL) -> Dendrogram:
    """Build the merge hierarchy by repeatedly joining the closest communities.

    Closeness between communities is the mean node closeness between them,
    recomputed from the node matrix at every step. All pairs within
    ``tie_rtol * max|c|`` of the current maximum are merged together, along
    with everything connected to them through such tied pairs, so the result
    does not depend on node order.
    """
    A = _offdiag(c)
    n = A.shape[0]
    if n < 1:
        raise ValueError("need at least one node")
    tie_tol = tie_rtol * float(np.max(np.abs(A))) if n > 1 else 0.0

    comms: list[list[int]] = [[i] for i in range(n)]
    partitions = [Partition.singletons(n)]
    merges = []
    while len(comms) > 1:
        K = len(comms)
        labels = np.empty(n, dtype=int)
        for k, comm in enumerate(comms):
            labels[comm] = k
        C = np.zeros((n, K))
        C[np.arange(n), labels] = 1.0
        sizes = C.sum(axis=0)
        between = (C.T @ A @ C) / np.outer(sizes, sizes)
        np.fill_diagonal(between, -np.inf)
        best = float(between.max())
        tied = between >= best - tie_tol
        tied = tied | tied.T
        groups = [g for g in _components(tied) if len(g) > 1]

        merged_ids = {k for g in groups for k in g}
        new_comms = [sorted(i for k in g for i in comms[k]) for g in groups]
        new_comms += [comms[k] for k in range(K) if k not in merged_ids]
        new_comms.sort(key=lambda comm: comm[0])
        merges.append(
            Merge(best, tuple(tuple(tuple(comms[k]) for k in g) for g in groups))
        )
        comms = new_comms
        partitions.append(Partition.from_communities(comms, n))
    return Dendrogram(tuple(partitions), tuple(merges))


def modularity(c, X: Partition) -> float:
    """Newman modularity ``tr(C^T B C) / 2m`` with adjacency ``A_ij = c(i, j)``, ``A_ii = 0``.

    Raises
    ------
    NegativeEntriesError
        If an off-diagonal closeness is negative (use :func:`signed_modularity`).
    DegenerateTotalWeightError
        If the total weight is zero.
    """
    A = _offdiag(c)
    _check_size(A, X)
    if np.any(A < 0):
        raise NegativeEntriesError("closeness has negative entries; use signed_modularity")
    k = A.sum(axis=1)
    two_m = k.sum()
    if two_m <= 0:
        raise DegenerateTotalWeightError("total closeness weight is zero")
    C = X.indicator()
    B = A - np.outer(k, k) / two_m
    return float(np.trace(C.T @ B @ C) / two_m) + 0.0  # no -0.0


def signed_modularity(c, X: Partition) -> float:
    """Modularity with separate null models for positive and negative weights.

    ``Q = [sum_ij (A+_ij - k+_i k+_j / 2m+) - (A-_ij - k-_i k-_j / 2m-)] delta / (2m+ + 2m-)``.
    Equal to :func:`modularity` when no weight is negative.
    """
    A = _offdiag(c)
    _check_size(A, X)
    C = X.indicator()
    total = 0.0
    weight = 0.0
    for part, sign in ((np.clip(A, 0, None), 1.0), (np.clip(-A, 0, None), -1.0)):
        k = part.sum(axis=1)
        two_m = k.sum()
        if two_m <= 0:
            continue
        B = part - np.outer(k, k) / two_m
        total += sign * np.trace(C.T @ B @ C)
        weight += two_m
    if weight <= 0:
        raise DegenerateTotalWeightError("closeness has no non-zero off-diagonal weight")
    return float(total / weight) + 0.0


def _check_size(A, X: Partition):
    if A.shape[0] != X.n:
        raise MismatchedNodeSetsError(f"closeness has {A.shape[0]} nodes, partition has {X.n}")


def best_level(d: Dendrogram, c) -> tuple[Partition, float]:
    """Dendrogram level with maximal signed modularity.

    Ties (within 1e-12) go to the level with fewer communities. A closeness
    without any off-diagonal weight gives the single community with ``Q = 0``.
    """
    best, best_q = None, -math.inf
    for X in d.partitions:
        try:
            q = signed_modularity(c, X)
        except DegenerateTotalWeightError:
            return d.partitions[-1], 0.0
        if q >= best_q - Q_TIE_ATOL:
            best, best_q = X, q
    return best, best_q


def _entropy(counts: np.ndarray, n: int) -> float:
    p = np.sort(counts[counts > 0]) / n
    return float(-np.sum(p * np.log(p)))


def nmi(X: Partition, Y: Partition) -> float:
    """Normalized mutual information ``2 I(X, Y) / (H(X) + H(Y))`` in nats.

    Two single-community partitions give 1.
    """
    if X.n != Y.n:
        raise MismatchedNodeSetsError(f"partitions cover {X.n} and {Y.n} nodes")
    n = X.n
    if n == 0:
        raise MismatchedNodeSetsError("partitions are empty")
    x = np.asarray(X.labels)
    y = np.asarray(Y.labels)
    hx = _entropy(np.bincount(x), n)
    hy = _entropy(np.bincount(y), n)
    if hx + hy == 0:
        return 1.0
    joint = np.zeros((X.n_communities, Y.n_communities))
    np.add.at(joint, (x, y), 1)
    hxy = _entropy(joint.ravel(), n)
    value = 2 * ((hx + hy) - hxy) / (hx + hy)
    return float(min(1.0, max(0.0, value)))
