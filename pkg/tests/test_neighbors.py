from itertools import product
import numpy as np
import pytest
from pointseg.diffcore.grad_check import grad_check
from pointseg.diffcore.ops import concat_columns, max_pool_rows, sum_all
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.neighbors.cluster_assignment import ClusterAssignment
from pointseg.neighbors.distance_matrix import pairwise_l1
from pointseg.neighbors.kmeans import kmeans, kmeans_k
from pointseg.neighbors.neighbor_index import NeighborIndex, knn_indices
from pointseg.neighbors.nf_module import NFModule
from pointseg.neighbors.nw_module import NWModule


def test_pairwise_l1_examples():
    assert pairwise_l1(Value(np.array([[4.0, 2.0]]))).data.tolist() == [[0]]
    assert pairwise_l1(Value(np.array([[0.0], [3.0]]))).data.tolist() == [[0, 3], [3, 0]]
    d = pairwise_l1(Value(np.array([[1.0, 2.0], [3.0, 1.0], [0.0, 0.0]]))).data
    assert (d[0, 1], d[0, 2], d[1, 2]) == (3, 3, 4)


def test_pairwise_l1_properties(rng):
    x = rng.normal(size=(30, 5))
    d = pairwise_l1(Value(x)).data
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0)
    assert np.all(d >= 0)
    direct = np.abs(x[:, None, :] - x[None, :, :]).sum(axis=2)
    assert np.allclose(d, direct, rtol=0, atol=1e-12)
    for _ in range(50):
        i, j, k = rng.randint(0, 30, size=3)
        assert d[i, k] <= d[i, j] + d[j, k] + 1e-12


def test_pairwise_l1_gradient(rng):
    x = Value(rng.normal(size=(5, 3)))
    weights = rng.uniform(size=(5, 5))

    def forward() -> Value:
        distances = pairwise_l1(x).values

        def backward() -> None:
            distances.grad += weighted.grad * weights

        weighted = Value(distances.data * weights, parents=(distances,), op="scale", backward=backward)
        return sum_all(weighted)
    assert grad_check(forward, [x]).passed


def test_pairwise_l1_empty():
    with pytest.raises(ValidationError):
        pairwise_l1(Value(np.zeros((0, 3))))


def test_knn_examples():
    d = pairwise_l1(Value(np.array([[0.0], [1.0], [5.0]]))).data
    assert knn_indices(d, 1).indices.reshape(-1).tolist() == [1, 0, 1]
    full = knn_indices(d, 2)
    for i in range(3):
        assert sorted(full.indices[i].tolist()) == [j for j in range(3) if j != i]


def test_knn_duplicate_points():
    d = pairwise_l1(Value(np.array([[0.0], [0.0], [0.0], [2.0]]))).data
    first = knn_indices(d, 1).indices.reshape(-1).tolist()
    assert first == [1, 0, 0, 0]
    assert knn_indices(d, 1).indices.reshape(-1).tolist() == first


def test_knn_too_many_neighbors():
    with pytest.raises(ValidationError):
        knn_indices(np.zeros((3, 3)), 3)


def test_knn_brute_force(rng):
    for _ in range(100):
        n = rng.randint(2, 40)
        k = rng.randint(0, n)
        # Small integers produce many ties.
        half = rng.randint(0, 5, size=(n, n)).astype(float)
        d = np.triu(half, 1) + np.triu(half, 1).T
        index = knn_indices(d, k)
        assert index.indices.shape == (n, k)
        for i in range(n):
            expected = sorted((d[i, j], j) for j in range(n) if j != i)[:k]
            assert index.indices[i].tolist() == [j for _, j in expected]
            assert index.distances[i].tolist() == [dist for dist, _ in expected]
            assert i not in index.indices[i]


def test_kmeans_k():
    assert kmeans_k(4096) == 78
    assert kmeans_k(256) == 4
    assert kmeans_k(52) == 1
    assert kmeans_k(10) == 1


def test_kmeans_every_point_its_own_cluster(rng):
    points = rng.normal(size=(6, 3))
    result = kmeans(points, 6, rng)
    assert result.inertia == 0
    assert sorted(result.assignments.tolist()) == list(range(6))
    assert result.assignments.tolist() == list(range(6))


def test_kmeans_single_cluster(rng):
    points = rng.normal(size=(8, 2))
    result = kmeans(points, 1, rng)
    assert np.all(result.assignments == 0)
    assert np.allclose(result.centers[0], points.mean(axis=0))


def test_kmeans_two_clumps_is_optimal(rng):
    points = np.vstack([rng.uniform(-0.1, 0.1, size=(5, 2)), 10 + rng.uniform(-0.1, 0.1, size=(5, 2))])
    result = kmeans(points, 2, rng)
    assert result.assignments.tolist() == [0] * 5 + [1] * 5
    best = np.inf
    for labels in product([0, 1], repeat=10):
        labels = np.array(labels)
        if labels.min() == labels.max():
            continue
        best = min(best, ClusterAssignment.from_labels(labels, points).inertia)
    assert np.isclose(result.inertia, best)


def test_kmeans_monotone_and_fixed_point(rng):
    for _ in range(10):
        points = rng.normal(size=(60, 3))
        result = kmeans(points, 5, rng)
        history = np.array(result.inertia_history)
        assert np.all(np.diff(history) <= 1e-9)
        nearest = np.argmin(((points[:, None, :] - result.centers[None, :, :]) ** 2).sum(axis=2), axis=1)
        assert np.array_equal(nearest, result.assignments)
        assert np.all(np.bincount(result.assignments, minlength=5) > 0)


def test_kmeans_canonical_numbering(rng):
    result = kmeans(rng.normal(size=(40, 2)), 4, rng)
    _, first = np.unique(result.assignments, return_index=True)
    assert np.all(np.diff(first) > 0)


def test_kmeans_determinism():
    points = np.random.RandomState(5).normal(size=(50, 3))
    a = kmeans(points, 4, np.random.RandomState(1))
    b = kmeans(points, 4, np.random.RandomState(1))
    assert np.array_equal(a.assignments, b.assignments)


def test_kmeans_invalid_k(rng):
    with pytest.raises(ValidationError):
        kmeans(rng.normal(size=(3, 2)), 4, rng)
    with pytest.raises(ValidationError):
        kmeans(rng.normal(size=(3, 2)), 0, rng)


def _nf(in_dim: int = 4, width: int = 4, center_concat: bool = False, seed: int = 0) -> NFModule:
    return NFModule(name="nf", in_dim=in_dim, width=width, params=ParameterSet(), rng=np.random.RandomState(seed),
                    center_concat=center_concat)


def test_nf_symmetric_pair(rng):
    out, distances, neighbors = _nf().forward(Value(rng.normal(size=(2, 4))), k=1)
    assert out.shape == (2, 4)
    assert np.array_equal(out.data[0], out.data[1])
    assert neighbors.indices.reshape(-1).tolist() == [1, 0]
    assert distances.data.shape == (2, 2)


@pytest.mark.parametrize("center_concat", [False, True])
def test_nf_permutation_equivariance(rng, center_concat):
    module = _nf(center_concat=center_concat)
    x = rng.normal(size=(10, 4))
    out = module.forward(Value(x), k=3)[0].data
    for _ in range(20):
        order = rng.permutation(10)
        permuted = module.forward(Value(x[order]), k=3)[0].data
        assert np.allclose(permuted, out[order], rtol=0, atol=1e-12)


@pytest.mark.parametrize("center_concat", [False, True])
def test_nf_gradients(rng, center_concat):
    params = ParameterSet()
    module = NFModule(name="nf", in_dim=4, width=3, params=params, rng=rng, center_concat=center_concat)
    x = Value(rng.normal(size=(5, 4)))
    neighbors = knn_indices(pairwise_l1(x).data, 2)
    report = grad_check(lambda: sum_all(module.forward(x, k=2, neighbors=neighbors)[0]), [x] + list(params))
    assert report.passed, str(report)


def test_stacked_nf_receptive_field():
    n, width = 6, 2
    modules = [_nf(in_dim=width, width=width, seed=i) for i in range(n - 1)]
    for module in modules:
        for weights, bias in module.mlp.layers:
            weights.data = np.eye(width)
            bias.data = np.zeros(width)
    # A path graph: the only neighbor of point i is point i + 1.
    path = NeighborIndex(indices=np.array([[i + 1] for i in range(n - 1)] + [[n - 2]]), distances=np.ones((n, 1)))
    x = np.ones((n, width))
    for hops in range(1, n):
        perturbed = x.copy()
        perturbed[hops] = 5
        for depth in range(1, n):
            a, b = Value(x), Value(perturbed)
            for module in modules[:depth]:
                a = module.forward(a, k=1, neighbors=path)[0]
                b = module.forward(b, k=1, neighbors=path)[0]
            reached = not np.array_equal(a.data[0], b.data[0])
            assert reached == (depth >= hops)


def _nw(in_dim: int = 3, width: int = 4) -> NWModule:
    return NWModule(name="nw", in_dim=in_dim, width=width, params=ParameterSet(), rng=np.random.RandomState(0))


def test_nw_single_cluster(rng):
    module = _nw()
    x = rng.normal(size=(5, 3))
    regional, broadcast = module.forward(Value(x), ClusterAssignment.from_labels(np.zeros(5), x))
    expected = max_pool_rows(module.mlp(concat_columns([Value(x), Value(np.tile(x.mean(axis=0), (5, 1)))]))).data
    assert regional.shape == (1, 4)
    assert np.allclose(regional.data, expected)
    assert np.all(broadcast.data == broadcast.data[0])


def test_nw_own_clusters(rng):
    module = _nw()
    x = rng.normal(size=(4, 3))
    regional, broadcast = module.forward(Value(x), ClusterAssignment.from_labels(np.arange(4), x))
    expected = module.mlp(Value(np.hstack([x, x]))).data
    assert np.allclose(regional.data, expected)
    assert np.allclose(broadcast.data, expected)


def test_nw_brute_force(rng):
    module = _nw()
    x = rng.normal(size=(6, 3))
    labels = np.array([0, 1, 1, 0, 1, 0])
    regional, broadcast = module.forward(Value(x), ClusterAssignment.from_labels(labels, x))
    for c in range(2):
        members = x[labels == c]
        rows = np.hstack([members, np.tile(members.mean(axis=0), (members.shape[0], 1))])
        assert np.allclose(regional.data[c], module.mlp(Value(rows)).data.max(axis=0))
    assert np.array_equal(broadcast.data, regional.data[labels])


def _first_appearance(labels: np.ndarray) -> np.ndarray:
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inverse]


def test_nw_permutation_equivariance(rng):
    module = _nw()
    x = rng.normal(size=(12, 3))
    assignment = kmeans(x, 3, rng)
    regional, broadcast = module.forward(Value(x), assignment)
    for _ in range(20):
        order = rng.permutation(12)
        labels = _first_appearance(assignment.assignments[order])
        permuted_regional, permuted_broadcast = module.forward(Value(x[order]),
                                                               ClusterAssignment.from_labels(labels, x[order]))
        assert np.allclose(permuted_broadcast.data, broadcast.data[order], rtol=0, atol=1e-12)
        for c in range(3):
            original = assignment.assignments[order][labels == c][0]
            assert np.allclose(permuted_regional.data[c], regional.data[original], rtol=0, atol=1e-12)


def test_nw_assignment_mismatch(rng):
    x = rng.normal(size=(4, 3))
    with pytest.raises(ValidationError):
        _nw().forward(Value(x), ClusterAssignment.from_labels(np.array([0, 1, 0]), x[:3]))


def test_nw_gradients(rng):
    params = ParameterSet()
    module = NWModule(name="nw", in_dim=3, width=3, params=params, rng=rng)
    x = Value(rng.normal(size=(6, 3)))
    assignment = ClusterAssignment.from_labels(np.array([0, 0, 1, 1, 2, 2]), x.data)
    report = grad_check(lambda: sum_all(module.forward(x, assignment)[1]), [x] + list(params))
    assert report.passed, str(report)


if __name__ == "__main__":
    pytest.main([__file__])
