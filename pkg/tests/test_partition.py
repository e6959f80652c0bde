import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.metrics import normalized_mutual_info_score

from oracles import modularity_double_sum
from qcommunity import (
    Partition,
    agglomerate,
    best_level,
    closeness_transport,
    modularity,
    nmi,
    signed_modularity,
    spectral_decompose,
    toy_hamiltonian,
)
from qcommunity.errors import DegenerateTotalWeightError, MismatchedNodeSetsError, NegativeEntriesError


def random_closeness(rng, n, signed=False):
    A = rng.uniform(-1 if signed else 0, 1, size=(n, n))
    return (A + A.T) / 2


def random_partition(rng, n):
    return Partition(tuple(rng.integers(0, rng.integers(1, n + 1), size=n)))


labels_st = st.integers(1, 30).flatmap(
    lambda n: st.lists(st.integers(0, 5), min_size=n, max_size=n).map(lambda xs: Partition(tuple(xs)))
)


def test_partition_is_canonical():
    assert Partition((5, 5, 2, 7)) == Partition((0, 0, 1, 2))
    assert Partition((5, 5, 2, 7)).communities == [[0, 1], [2], [3]]


def test_from_communities_validates():
    assert Partition.from_communities([[2, 0], [1]]).labels == (0, 1, 0)
    with pytest.raises(ValueError):
        Partition.from_communities([[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        Partition.from_communities([[0], []])


def test_coarsening():
    fine = Partition((0, 1, 2, 3))
    coarse = Partition((0, 0, 1, 1))
    assert coarse.is_coarsening_of(fine)
    assert not fine.is_coarsening_of(coarse)


@pytest.mark.parametrize("seed", range(20))
def test_modularity_matches_double_sum(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 25))
    c = random_closeness(rng, n)
    X = random_partition(rng, n)
    assert modularity(c, X) == pytest.approx(modularity_double_sum(c, X.labels), abs=1e-12)


def test_single_community_modularity_is_zero(rng):
    c = random_closeness(rng, 9)
    assert abs(modularity(c, Partition.whole(9))) < 1e-12
    assert abs(signed_modularity(random_closeness(rng, 9, signed=True), Partition.whole(9))) < 1e-12


def test_two_cliques_half():
    c = np.kron(np.eye(2), np.ones((3, 3)))
    assert modularity(c, Partition((0, 0, 0, 1, 1, 1))) == pytest.approx(0.5, abs=1e-12)


def test_modularity_ignores_diagonal(rng):
    c = random_closeness(rng, 6)
    X = random_partition(rng, 6)
    d = c + np.diag(rng.uniform(0, 10, 6))
    assert modularity(c, X) == modularity(d, X)


def test_modularity_errors():
    with pytest.raises(NegativeEntriesError):
        modularity(-np.ones((3, 3)), Partition.whole(3))
    with pytest.raises(DegenerateTotalWeightError):
        modularity(np.eye(3), Partition.whole(3))
    with pytest.raises(MismatchedNodeSetsError):
        modularity(np.ones((3, 3)), Partition.whole(4))


@pytest.mark.parametrize("seed", range(10))
def test_signed_reduces_to_plain(seed):
    rng = np.random.default_rng(seed)
    c = random_closeness(rng, 12)
    X = random_partition(rng, 12)
    assert signed_modularity(c, X) == pytest.approx(modularity(c, X), abs=1e-12)


def test_signed_two_blocks_best_at_blocks():
    c = np.where(np.kron(np.eye(2), np.ones((4, 4))) > 0, 1.0, -1.0)
    blocks = Partition((0,) * 4 + (1,) * 4)
    d = agglomerate(c)
    qs = {X: signed_modularity(c, X) for X in d.partitions}
    assert qs[blocks] > 0
    assert all(q < qs[blocks] for X, q in qs.items() if X != blocks)
    assert best_level(d, c) == (blocks, qs[blocks])


def test_two_clique_dendrogram_and_best_level():
    c = closeness_transport(spectral_decompose(toy_hamiltonian("a")), np.inf).values
    d = agglomerate(c)
    assert d.partitions[-2] == Partition((0, 0, 0, 1, 1, 1))
    assert d.partitions[-1] == Partition.whole(6)
    X, q = best_level(d, c)
    assert X == Partition((0, 0, 0, 1, 1, 1))
    assert q == pytest.approx(0.5)


def test_uniform_closeness_single_step_single_community():
    c = np.ones((7, 7))
    d = agglomerate(c)
    assert len(d.merges) == 1
    assert d.partitions[1] == Partition.whole(7)
    assert best_level(d, c)[0] == Partition.whole(7)


def test_zero_closeness_best_level_is_whole():
    c = np.zeros((4, 4))
    X, q = best_level(agglomerate(c), c)
    assert X == Partition.whole(4) and q == 0.0


@pytest.mark.parametrize("seed", range(25))
def test_merge_closeness_non_increasing(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 30))
    d = agglomerate(random_closeness(rng, n, signed=bool(seed % 2)))
    assert np.all(np.diff(d.merge_closeness()) <= 1e-12)
    assert d.partitions[-1] == Partition.whole(n)
    for fine, coarse in zip(d.partitions, d.partitions[1:]):
        assert coarse.is_coarsening_of(fine)
        assert coarse.n_communities < fine.n_communities


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 15), scale=st.floats(1e-6, 1e6))
def test_dendrogram_scale_invariant(seed, n, scale):
    rng = np.random.default_rng(seed)
    c = random_closeness(rng, n)
    assert agglomerate(c).partitions == agglomerate(scale * c).partitions


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 15))
def test_dendrogram_permutation_equivariant(seed, n):
    rng = np.random.default_rng(seed)
    c = random_closeness(rng, n)
    perm = rng.permutation(n)
    d = agglomerate(c)
    dp = agglomerate(c[np.ix_(perm, perm)])
    for X, Y in zip(d.partitions, dp.partitions):
        assert Partition(tuple(X.labels[p] for p in perm)) == Y


def test_nmi_crossing_example():
    X = Partition((0, 0, 1, 1))
    Y = Partition((0, 1, 0, 1))
    assert nmi(X, Y) == 0.0


def test_nmi_trivial_cases():
    assert nmi(Partition.whole(5), Partition.whole(5)) == 1.0
    assert nmi(Partition.whole(5), Partition.singletons(5)) == 0.0
    with pytest.raises(MismatchedNodeSetsError):
        nmi(Partition.whole(3), Partition.whole(4))


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_nmi_properties(data):
    X = data.draw(labels_st)
    Y = Partition(tuple(data.draw(st.lists(st.integers(0, 5), min_size=X.n, max_size=X.n))))
    v = nmi(X, Y)
    assert v == nmi(Y, X)
    assert 0.0 <= v <= 1.0
    assert nmi(X, X) == pytest.approx(1.0, abs=1e-12)
    if X.n_communities > 1 or Y.n_communities > 1:
        oracle = normalized_mutual_info_score(X.labels, Y.labels, average_method="arithmetic")
        assert v == pytest.approx(oracle, abs=1e-10)
