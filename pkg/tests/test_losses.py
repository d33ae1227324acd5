import numpy as np
import pytest
import pointseg.neighbors.nf_module
from pointseg.diffcore.grad_check import grad_check
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.losses.centroid_distance import CentroidDistance
from pointseg.losses.centroid_loss import centroid_loss
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.pair_reduction import PairReduction
from pointseg.losses.pairwise_loss import pair_losses, pairwise_loss
from pointseg.losses.row_distance import row_distance
from pointseg.losses.total_loss import total_loss
from pointseg.neighbors.distance_matrix import DistanceMatrix, pairwise_l1
from pointseg.pipeline.segmentation_model import SegmentationModel


def _distances(d: np.ndarray) -> DistanceMatrix:
    return DistanceMatrix(values=Value(np.asarray(d, dtype=float)))


def _pair_value(distance: float, same: bool, tau_near: float, tau_far: float) -> float:
    labels = np.array([0, 0]) if same else np.array([0, 1])
    config = LossConfig(tau_near=tau_near, tau_far=tau_far)
    return pairwise_loss(_distances([[0, distance], [distance, 0]]), labels, config).item()


def test_pair_examples():
    assert _pair_value(0.1, True, 0.5, 3.0) == 0
    assert _pair_value(0.5, True, 0.5, 3.0) == 0
    assert _pair_value(3.5, False, 0.5, 3.0) == 0
    assert _pair_value(2.0, True, 0.5, 3.0) == 1.5
    assert _pair_value(1.0, False, 0.5, 3.0) == 2


def test_pair_losses_monotone():
    d = np.linspace(0, 5, 101)
    same = pair_losses(d, np.ones_like(d, dtype=bool), 0.2, 2.0)
    different = pair_losses(d, np.zeros_like(d, dtype=bool), 0.2, 2.0)
    assert np.all(same >= 0) and np.all(different >= 0)
    assert np.all(np.diff(same) >= 0)
    assert np.all(np.diff(different) <= 0)


def test_pairwise_loss_direct_formula(rng):
    x = rng.normal(size=(12, 4))
    labels = rng.randint(0, 3, 12)
    config = LossConfig(tau_near=1.0, tau_far=4.0)
    expected = 0.0
    for i in range(12):
        for j in range(i + 1, 12):
            d = np.abs(x[i] - x[j]).sum()
            expected += max(d - 1.0, 0) if labels[i] == labels[j] else max(4.0 - d, 0)
    loss = pairwise_loss(pairwise_l1(Value(x)), labels, config)
    assert np.isclose(loss.item(), expected)
    mean = pairwise_loss(pairwise_l1(Value(x)), labels, LossConfig(tau_near=1.0, tau_far=4.0,
                                                                   pair_reduction=PairReduction.mean))
    assert np.isclose(mean.item(), expected / 66)


def test_pairwise_loss_zero_iff_separated():
    x = np.array([[0.0, 0.0], [0.1, 0.0], [10.0, 0.0], [10.0, 0.1]])
    labels = np.array([0, 0, 1, 1])
    config = LossConfig(tau_near=0.2, tau_far=2.0)
    assert pairwise_loss(pairwise_l1(Value(x)), labels, config).item() == 0
    x[1] = [1.0, 0.0]
    assert pairwise_loss(pairwise_l1(Value(x)), labels, config).item() > 0


def test_pairwise_loss_single_point():
    loss = pairwise_loss(_distances([[0.0]]), np.array([0]), LossConfig())
    assert loss.item() == 0
    loss.backward()


def test_pairwise_loss_label_mismatch():
    with pytest.raises(ValidationError):
        pairwise_loss(_distances(np.zeros((3, 3))), np.array([0, 1]), LossConfig())


def test_pairwise_loss_gradient(rng):
    x = Value(rng.normal(size=(6, 4)))
    labels = np.array([0, 1, 2, 0, 1, 2])
    config = LossConfig(tau_near=1.0, tau_far=6.0)
    report = grad_check(lambda: pairwise_loss(pairwise_l1(x), labels, config), [x])
    assert report.passed, str(report)


def test_sampled_pairwise_loss_estimates_full_loss(rng):
    x = rng.normal(size=(10, 3))
    labels = rng.randint(0, 2, 10)
    distances = pairwise_l1(Value(x))
    for reduction in [PairReduction.sum, PairReduction.mean]:
        full = pairwise_loss(distances, labels, LossConfig(tau_near=0.5, tau_far=3.0, pair_reduction=reduction))
        sampled = pairwise_loss(distances, labels, LossConfig(tau_near=0.5, tau_far=3.0, pair_reduction=reduction,
                                                              pair_samples=200000), rng)
        assert np.isclose(sampled.item(), full.item(), rtol=0.05)


def test_sampled_pairwise_loss_determinism(rng):
    distances = pairwise_l1(Value(rng.normal(size=(8, 3))))
    labels = np.array([0, 1] * 4)
    config = LossConfig(pair_samples=10)
    a = pairwise_loss(distances, labels, config, np.random.RandomState(3)).item()
    b = pairwise_loss(distances, labels, config, np.random.RandomState(3)).item()
    assert a == b
    with pytest.raises(ValidationError):
        pairwise_loss(distances, labels, config)


def test_sampled_pairwise_loss_gradient(rng):
    x = Value(rng.normal(size=(6, 4)))
    labels = np.array([0, 1, 2, 0, 1, 2])
    config = LossConfig(tau_near=1.0, tau_far=6.0, pair_samples=20)
    report = grad_check(lambda: pairwise_loss(pairwise_l1(x), labels, config, np.random.RandomState(7)), [x])
    assert report.passed, str(report)


def test_pairwise_loss_reuses_distance_matrix(monkeypatch, tiny_model_config, rng):
    calls = list()
    original = pointseg.neighbors.nf_module.pairwise_l1

    def counting(x: Value) -> DistanceMatrix:
        calls.append(x.shape)
        return original(x)

    monkeypatch.setattr(pointseg.neighbors.nf_module, "pairwise_l1", counting)
    model = SegmentationModel(tiny_model_config)
    output = model.forward(rng.uniform(size=(20, 9)), rng.uniform(size=(20, 3)), rng)
    report = model.loss(output, rng.randint(0, 3, 20))
    report.value.backward()
    assert len(calls) == tiny_model_config.num_nf_modules
    assert report.l_pair > 0


def test_centroid_identical_points():
    x = Value(np.array([[1.0, 2.0], [1.0, 2.0], [-3.0, 0.5], [-3.0, 0.5]]))
    assert np.isclose(centroid_loss(x, np.array([0, 0, 1, 1]), LossConfig()).item(), 0, atol=1e-12)


def test_centroid_collinear_points():
    x = Value(np.array([[1.0, 2.0], [3.0, 6.0]]))
    assert np.isclose(centroid_loss(x, np.array([0, 0]), LossConfig()).item(), 0, atol=1e-12)


def test_centroid_orthogonal_points():
    x = Value(np.array([[1.0, 0.0], [0.0, 1.0]]))
    loss = centroid_loss(x, np.array([0, 0]), LossConfig())
    assert np.isclose(loss.item(), 2 * (1 - np.cos(np.pi / 4)))
    assert round(loss.item(), 4) == 0.5858


def test_centroid_other_distances():
    x = Value(np.array([[1.0, 0.0], [0.0, 1.0]]))
    l1 = centroid_loss(x, np.array([0, 0]), LossConfig(cent_distance=CentroidDistance.l1))
    l2 = centroid_loss(x, np.array([0, 0]), LossConfig(cent_distance=CentroidDistance.l2))
    assert np.isclose(l1.item(), 2.0)
    assert np.isclose(l2.item(), 2 * np.sqrt(0.5))


def test_centroid_absent_classes():
    x = Value(np.array([[1.0, 0.0], [0.0, 1.0], [2.0, 2.0]]))
    loss = centroid_loss(x, np.array([7, 7, 2]), LossConfig())
    assert np.isclose(loss.item(), 2 * (1 - np.cos(np.pi / 4)))


def test_row_distance_zero_vector():
    d = row_distance(Value(np.zeros((1, 3))), Value(np.ones((1, 3))))
    assert d.data.tolist() == [1.0]
    d = row_distance(Value(np.zeros((1, 3))), Value(np.zeros((1, 3))), metric=CentroidDistance.l2)
    assert d.data.tolist() == [0.0]


@pytest.mark.parametrize("metric", [CentroidDistance.cosine, CentroidDistance.l1, CentroidDistance.l2])
def test_centroid_gradient(rng, metric):
    x = Value(rng.normal(size=(6, 4)))
    labels = np.array([0, 1, 0, 1, 2, 2])
    config = LossConfig(cent_distance=metric)
    report = grad_check(lambda: centroid_loss(x, labels, config), [x])
    assert report.passed, str(report)


def test_total_loss():
    def scalars(*values):
        return [Value(np.array(float(v))) for v in values]
    assert total_loss(*scalars(1, 2, 3), LossConfig()).total == 6
    only_class = total_loss(*scalars(1.5, 2, 3), LossConfig(weights=(1.0, 0.0, 0.0)))
    assert only_class.total == 1.5
    assert only_class.l_pair == 2
    weighted = total_loss(*scalars(2, 4, 1), LossConfig(weights=(1.0, 0.5, 2.0)))
    assert weighted.total == 6
    assert "total=6.000000" in str(weighted)


def test_total_loss_gradient():
    components = [Value(np.array(2.0)), Value(np.array(4.0)), Value(np.array(1.0))]
    report = total_loss(*components, LossConfig(weights=(1.0, 0.5, 2.0)))
    report.value.backward()
    assert [c.grad.item() for c in components] == [1.0, 0.5, 2.0]


def test_invalid_loss_config():
    with pytest.raises(ValidationError):
        LossConfig(tau_near=-1.0)
    with pytest.raises(ValidationError):
        LossConfig(tau_near=2.0, tau_far=2.0)
    with pytest.raises(ValidationError):
        LossConfig(weights=(1.0, -1.0, 1.0))
    with pytest.raises(ValidationError):
        LossConfig(weights=(1.0, 1.0))
    with pytest.raises(ValidationError):
        LossConfig(pair_samples=-1)


if __name__ == "__main__":
    pytest.main([__file__])
