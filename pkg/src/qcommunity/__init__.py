"""Community detection in quantum networks given by Hermitian Hamiltonians."""

from .closeness import (
    MEASURES,
    NodeCloseness,
    closeness_fidelity,
    closeness_fidelity_phase_avg,
    closeness_purity,
    closeness_purity_phase_avg,
    closeness_transport,
    community_closeness,
    node_closeness,
    parse_regime,
)
from .dynamics import (
    avg_density,
    avg_transfer_matrix,
    evolve_density,
    propagator,
    short_time_avg_transfer,
    transfer_matrix,
)
from .experiments import Detection, detect, phase_sweep
from .hermitian import SpectralDecomposition, spectral_decompose, validate_hermitian
from .networks import (
    PlantedSpec,
    ToyConfig,
    perturb,
    planted_hamiltonian,
    randomize_phases,
    toy_hamiltonian,
)
from .partition import (
    Dendrogram,
    Partition,
    agglomerate,
    best_level,
    modularity,
    nmi,
    signed_modularity,
)

__version__ = "0.1.0"
