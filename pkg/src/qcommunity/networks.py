"""Test networks, phase randomization and degeneracy-breaking perturbations.

All randomness goes through ``numpy.random.default_rng(seed)`` (PCG64), so
every generator is a deterministic function of its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleDegreeError, NegativeSigmaError
from .partition import Partition

TOY_VARIANTS = "abcdefghi"

# node pairs (0-based) of the four links bridging the two triangles: 2-4, 2-5, 3-4, 3-5
BRIDGES = ((1, 3), (1, 4), (2, 3), (2, 4))
# signs that cancel every path out of {1} into {6}: the symmetric state |2> + |3>
# is annihilated by the bridge block
CANCELING_SIGNS = (1.0, -1.0, -1.0, 1.0)


@dataclass(frozen=True)
class ToyConfig:
    variant: str
    rng_seed: int | None = None

    def __post_init__(self):
        if self.variant not in TOY_VARIANTS or len(self.variant) != 1:
            raise ValueError(f"toy variant must be one of {list(TOY_VARIANTS)}, got {self.variant!r}")


@dataclass(frozen=True)
class PlantedSpec:
    n: int
    n_communities: int
    mean_degree: float
    rewire_fraction: float
    rng_seed: int = 0

    def __post_init__(self):
        if self.n <= 0 or self.n_communities <= 0:
            raise ValueError("n and n_communities must be positive")
        if self.n % self.n_communities:
            raise ValueError("n must be divisible by n_communities")
        if self.mean_degree < 0:
            raise ValueError("mean_degree must be non-negative")
        if not 0 <= self.rewire_fraction <= 1:
            raise ValueError("rewire_fraction must lie in [0, 1]")


def toy_hamiltonian(cfg: ToyConfig | str, rng_seed: int | None = None) -> np.ndarray:
    """Six-node network of two unit-coupled triangles {1,2,3} and {4,5,6}.

    Variants a-c have no bridges; d/g bridge 2,3 to 4,5 with amplitude 1;
    e/h give each bridge a random phase ``exp(i phi)``; f/i use signs that
    make transport between nodes 1 and 6 vanish identically.
    """
    if isinstance(cfg, str):
        cfg = ToyConfig(cfg, rng_seed)
    H = np.zeros((6, 6), dtype=complex)
    for block in ((0, 1, 2), (3, 4, 5)):
        for i in block:
            for j in block:
                if i != j:
                    H[i, j] = 1.0
    v = cfg.variant
    if v in "abc":
        return H
    if v in "dg":
        amps = np.ones(4, dtype=complex)
    elif v in "eh":
        rng = np.random.default_rng(cfg.rng_seed)
        amps = np.exp(1j * rng.uniform(0, 2 * np.pi, size=4))
    else:
        amps = np.array(CANCELING_SIGNS, dtype=complex)
    for (i, j), a in zip(BRIDGES, amps):
        H[i, j] = a
        H[j, i] = np.conj(a)
    return H


def planted_hamiltonian(spec: PlantedSpec) -> tuple[np.ndarray, Partition]:
    """Equal-size planted-partition graph used as a real Hamiltonian ``H = A``.

    Each community gets ``round(size * mean_degree / 2)`` edges drawn
    uniformly without replacement. A ``rewire_fraction`` share of all edges
    then keeps one random endpoint and moves the other to a uniformly chosen
    node of a different community. Connectivity is not enforced; see
    :func:`is_connected`.

    Raises
    ------
    InfeasibleDegreeError
        If the community size cannot support `mean_degree`.
    """
    n, K = spec.n, spec.n_communities
    size = n // K
    if spec.mean_degree > size - 1:
        raise InfeasibleDegreeError(
            f"mean degree {spec.mean_degree} impossible in communities of {size} nodes"
        )
    rng = np.random.default_rng(spec.rng_seed)
    labels = np.repeat(np.arange(K), size)
    iu, ju = np.triu_indices(size, 1)
    n_edges = int(round(size * spec.mean_degree / 2))

    A = np.zeros((n, n), dtype=int)
    edges = []
    for k in range(K):
        pick = rng.choice(len(iu), size=n_edges, replace=False)
        for p in np.sort(pick):
            i, j = k * size + iu[p], k * size + ju[p]
            edges.append((i, j))
            A[i, j] = A[j, i] = 1

    n_rewire = int(round(spec.rewire_fraction * len(edges)))
    for e in np.sort(rng.choice(len(edges), size=n_rewire, replace=False)):
        i, j = edges[e]
        keep = i if rng.random() < 0.5 else j
        targets = np.flatnonzero((labels != labels[keep]) & (A[keep] == 0))
        if len(targets) == 0:
            continue
        new = int(rng.choice(targets))
        A[i, j] = A[j, i] = 0
        A[keep, new] = A[new, keep] = 1
    return A.astype(float), Partition(tuple(int(x) for x in labels))


def is_connected(H) -> bool:
    """Whether the graph of non-zero off-diagonal entries is connected."""
    adj = np.asarray(H) != 0
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = np.flatnonzero(adj[frontier].any(axis=0) & ~seen)
        seen[nxt] = True
        frontier = list(nxt)
    return bool(seen.all())


def randomize_phases(H, sigma: float, rng_seed: int | None) -> np.ndarray:
    """Multiply every non-zero hopping ``H_ij`` (i<j) by ``exp(i theta)``, ``theta ~ N(0, sigma^2)``.

    Moduli and the diagonal are preserved; the lower triangle is set to the
    conjugate of the upper one. Angles are drawn in row-major order of the
    upper triangle.
    """
    if sigma < 0:
        raise NegativeSigmaError(f"sigma must be non-negative, got {sigma}")
    H = np.array(H, dtype=complex)
    iu, ju = np.triu_indices(H.shape[0], 1)
    nz = H[iu, ju] != 0
    iu, ju = iu[nz], ju[nz]
    rng = np.random.default_rng(rng_seed)
    theta = rng.normal(0.0, sigma, size=len(iu)) if sigma > 0 else np.zeros(len(iu))
    H[iu, ju] = H[iu, ju] * np.exp(1j * theta)
    H[ju, iu] = np.conj(H[iu, ju])
    return H


def perturb(H, epsilon: float, rng_seed: int | None) -> np.ndarray:
    """Add a seeded random Hermitian matrix with entries of modulus at most `epsilon`.

    Off-diagonal entries have modulus ``U(0, epsilon)`` and uniform phase;
    diagonal entries are ``U(-epsilon, epsilon)``.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    H = np.array(H, dtype=complex)
    if epsilon == 0:
        return H
    n = H.shape[0]
    rng = np.random.default_rng(rng_seed)
    iu, ju = np.triu_indices(n, 1)
    mod = rng.uniform(0.0, epsilon, size=len(iu))
    ang = rng.uniform(0.0, 2 * np.pi, size=len(iu))
    E = np.zeros((n, n), dtype=complex)
    E[iu, ju] = mod * np.exp(1j * ang)
    E[ju, iu] = np.conj(E[iu, ju])
    E[np.diag_indices(n)] = rng.uniform(-epsilon, epsilon, size=n)
    return H + E
