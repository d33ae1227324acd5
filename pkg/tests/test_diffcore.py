import numpy as np
import pytest
from pointseg.diffcore.adam import optimizer_step
from pointseg.diffcore.grad_check import grad_check
from pointseg.diffcore.mlp import Mlp
from pointseg.diffcore.ops import add, concat_columns, gather_rows, linear, max_pool_groups, max_pool_rows, relu, \
    segment_mean, softmax_cross_entropy, sum_all, values_finite, weighted_sum
from pointseg.diffcore.optimizer_state import OptimizerState
from pointseg.diffcore.param import Param
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError


def test_linear_identity():
    x = Value(np.array([[1.0, 2.0], [3.0, 4.0]]))
    w = Param("w", np.eye(2))
    b = Param("b", np.zeros(2))
    assert np.array_equal(linear(x, w, b).data, x.data)


def test_linear_zero_input():
    w = Param("w", np.ones((3, 2)))
    b = Param("b", np.array([0.5, -1.0]))
    out = linear(Value(np.zeros((4, 3))), w, b)
    assert np.array_equal(out.data, np.tile([0.5, -1.0], (4, 1)))


def test_linear_shape_mismatch():
    with pytest.raises(ValidationError):
        linear(Value(np.zeros((4, 3))), Param("w", np.zeros((2, 2))), Param("b", np.zeros(2)))


def test_linear_grad_check(rng):
    x = Value(rng.normal(size=(4, 3)))
    w = Param("w", rng.normal(size=(3, 2)))
    b = Param("b", rng.normal(size=2))
    report = grad_check(lambda: sum_all(linear(x, w, b)), [x, w, b])
    assert report.passed
    assert report.max_rel_error < 1e-6
    assert report.num_checked == 12 + 6 + 2


def test_relu():
    out = relu(Value(np.array([-1.0, 0.0, 2.0])))
    assert out.data.tolist() == [0, 0, 2]


def test_relu_negative_zero_gradient():
    x = Value(-np.ones((3, 2)))
    out = relu(x)
    sum_all(out).backward()
    assert np.all(out.data == 0)
    assert np.all(x.grad == 0)


def test_relu_grad_check(rng):
    data = rng.normal(size=(5, 4))
    data[np.abs(data) < 1e-3] = 0.5
    x = Value(data)
    w = Param("w", rng.normal(size=(4, 3)))
    b = Param("b", np.zeros(3))
    report = grad_check(lambda: softmax_cross_entropy(linear(relu(x), w, b), np.array([0, 1, 2, 0, 1])), [x, w])
    assert report.passed


def test_max_pool_rows_example():
    x = Value(np.array([[1.0, 5.0], [2.0, 4.0], [0.0, 6.0]]))
    out = max_pool_rows(x)
    assert out.data.tolist() == [[2, 6]]
    assert out.argmax.reshape(-1).tolist() == [1, 2]
    out.backward(np.array([[3.0, 7.0]]))
    assert x.grad.tolist() == [[0, 0], [3, 0], [0, 7]]
    assert x.grad.sum() == 10


def test_max_pool_rows_single_row():
    x = Value(np.array([[1.0, -2.0, 3.0]]))
    assert np.array_equal(max_pool_rows(x).data, x.data)


def test_max_pool_ties_go_to_lowest_row():
    x = Value(np.array([[1.0, 0.0], [1.0, 2.0], [0.0, 2.0]]))
    out = max_pool_rows(x)
    assert out.argmax.reshape(-1).tolist() == [0, 1]
    sum_all(out).backward()
    assert x.grad.tolist() == [[1, 0], [0, 1], [0, 0]]


def test_max_pool_rows_permutation_invariance(rng):
    data = rng.normal(size=(7, 4))
    expected = max_pool_rows(Value(data)).data
    for _ in range(20):
        assert np.array_equal(max_pool_rows(Value(data[rng.permutation(7)])).data, expected)


def test_max_pool_groups(rng):
    data = rng.normal(size=(4, 3))
    out = max_pool_groups(Value(data), np.array([0, 0, 1, 1]), 2)
    assert np.array_equal(out.data[0], data[:2].max(axis=0))
    assert np.array_equal(out.data[1], data[2:].max(axis=0))
    single = max_pool_groups(Value(data), np.zeros(4, dtype=int), 1)
    assert np.array_equal(single.data, max_pool_rows(Value(data)).data)
    own = max_pool_groups(Value(data), np.arange(4), 4)
    assert np.array_equal(own.data, data)


def test_max_pool_groups_empty_group():
    with pytest.raises(ValidationError):
        max_pool_groups(Value(np.zeros((3, 2))), np.array([0, 0, 2]), 3)


def test_max_pool_groups_grad_check(rng):
    x = Value(rng.normal(size=(8, 3)))
    groups = np.array([0, 1, 2, 0, 1, 2, 0, 1])
    w = Param("w", rng.normal(size=(3, 2)))
    b = Param("b", np.zeros(2))
    report = grad_check(lambda: softmax_cross_entropy(linear(max_pool_groups(x, groups, 3), w, b),
                                                      np.array([0, 1, 1])), [x, w])
    assert report.passed


def test_cross_entropy_uniform():
    loss = softmax_cross_entropy(Value(np.zeros((3, 4))), np.array([0, 1, 3]))
    assert np.isclose(loss.item(), np.log(4))


def test_cross_entropy_saturated():
    logits = np.zeros((3, 3))
    labels = np.array([2, 0, 1])
    logits[np.arange(3), labels] = 1000
    loss = softmax_cross_entropy(Value(logits), labels)
    assert loss.item() >= 0
    assert loss.item() < 1e-12


def test_cross_entropy_gradient(rng):
    logits = Value(rng.normal(size=(5, 3)))
    labels = np.array([0, 2, 1, 1, 0])
    loss = softmax_cross_entropy(logits, labels)
    loss.backward()
    assert loss.item() >= 0
    assert np.allclose(logits.grad.sum(axis=1), 0)
    logits.grad[:] = 0
    assert grad_check(lambda: softmax_cross_entropy(logits, labels), [logits]).passed


def test_cross_entropy_invalid_labels():
    with pytest.raises(ValidationError):
        softmax_cross_entropy(Value(np.zeros((2, 3))), np.array([0, 3]))


def test_helper_ops_grad_check(rng):
    a = Value(rng.normal(size=(6, 3)))
    c = Value(rng.normal(size=(6, 3)))
    groups = np.array([0, 1, 0, 2, 1, 2])
    w = Param("w", rng.normal(size=(6, 3)))
    b = Param("b", np.zeros(3))

    def forward() -> Value:
        means = gather_rows(segment_mean(add(a, c), groups, 3), groups)
        return softmax_cross_entropy(linear(concat_columns([a, means]), w, b), np.array([0, 1, 2, 0, 1, 2]))
    assert grad_check(forward, [a, c, w]).passed


def test_segment_mean():
    x = Value(np.array([[1.0, 2.0], [3.0, 4.0], [10.0, 10.0]]))
    out = segment_mean(x, np.array([0, 0, 1]), 2)
    assert out.data.tolist() == [[2, 3], [10, 10]]
    with pytest.raises(ValidationError):
        segment_mean(x, np.array([0, 0, 2]), 3)


def test_weighted_sum():
    values = [Value(np.array(2.0)), Value(np.array(4.0)), Value(np.array(1.0))]
    total = weighted_sum(values, [1.0, 0.5, 2.0])
    assert total.item() == 6
    total.backward()
    assert [v.grad.item() for v in values] == [1.0, 0.5, 2.0]


def test_values_finite():
    assert values_finite([Value(np.ones(3))])
    assert not values_finite([Value(np.ones(3)), Value(np.array([np.nan]))])


def test_backward_needs_scalar():
    with pytest.raises(ValueError):
        Value(np.ones(3)).backward()


def test_shared_node_gradients_accumulate():
    x = Value(np.array([[1.0, 2.0]]))
    y = add(x, x)
    sum_all(y).backward()
    assert x.grad.tolist() == [[2, 2]]


def test_deep_graph_backward():
    x = Value(np.ones((1, 1)))
    y = x
    for _ in range(5000):
        y = add(y, x)
    sum_all(y).backward()
    assert x.grad.item() == 5001


def test_parameter_set(rng):
    params = ParameterSet()
    w = params.weight("w", 3, 4, rng)
    params.bias("b", 4)
    assert params.names() == ["w", "b"]
    assert "w" in params
    assert len(params) == 2
    limit = np.sqrt(6 / 7)
    assert np.all(np.abs(w.data) <= limit)
    with pytest.raises(ValidationError):
        params.bias("w", 2)
    snapshot = params.snapshot()
    w.data = w.data + 1
    params.restore(snapshot)
    assert np.array_equal(params["w"].data, snapshot["w"])
    with pytest.raises(ValidationError):
        params.restore({"w": snapshot["w"]})


def test_mlp(rng):
    params = ParameterSet()
    mlp = Mlp("mlp", in_dim=3, width=5, params=params, rng=rng)
    assert params.names() == ["mlp.0.weight", "mlp.0.bias", "mlp.1.weight", "mlp.1.bias"]
    out = mlp(Value(rng.normal(size=(4, 3))))
    assert out.shape == (4, 5)
    assert np.all(out.data >= 0)


def test_adam_first_step():
    p = Param("p", np.array([0.0]))
    p.grad = np.array([1.0])
    state = OptimizerState()
    optimizer_step([p], state)
    assert np.isclose(p.data[0], -1e-3)
    assert state.step == 1
    assert np.all(p.grad == 0)


def test_adam_zero_gradient_is_identity(rng):
    p = Param("p", rng.normal(size=(3, 2)))
    before = p.data.copy()
    state = OptimizerState()
    for _ in range(5):
        optimizer_step([p], state)
    assert np.array_equal(p.data, before)
    assert state.step == 5


def test_adam_quadratic_bowl():
    w = Param("w", np.array([1.0]))
    state = OptimizerState(learning_rate=0.01)
    for _ in range(200):
        w.grad = 2 * w.data
        optimizer_step([w], state)
    assert abs(w.data[0]) < 0.1


def test_adam_moment_shapes(rng):
    params = ParameterSet()
    params.weight("w", 3, 2, rng)
    params.bias("b", 2)
    for p in params:
        p.grad = np.ones_like(p.data)
    state = OptimizerState()
    optimizer_step(params, state)
    for p in params:
        assert state.first_moments[p.name].shape == p.data.shape
        assert state.second_moments[p.name].shape == p.data.shape


def _doubled_linear(x: Value, w: Param, b: Param) -> Value:
    def backward() -> None:
        x.grad += 2 * out.grad @ w.data.T
        w.grad += 2 * x.data.T @ out.grad
        b.grad += 2 * out.grad.sum(axis=0)

    out = Value(x.data @ w.data + b.data, parents=(x, w, b), backward=backward)
    return out


def test_grad_check_detects_corrupted_backward(rng):
    x = Value(rng.normal(size=(4, 3)))
    w = Param("w", rng.normal(size=(3, 2)))
    b = Param("b", rng.normal(size=2))
    report = grad_check(lambda: sum_all(_doubled_linear(x, w, b)), [x, w, b])
    assert not report.passed
    # |2n - n| / max(|2n|, |n|)
    assert np.isclose(report.max_rel_error, 0.5, atol=1e-6)
    assert "FAILED" in str(report)


def test_grad_check_restores_values(rng):
    x = Value(rng.normal(size=(3, 2)))
    before = x.data.copy()
    grad_check(lambda: sum_all(relu(x)), [x], max_coordinates=3, rng=rng)
    assert np.array_equal(x.data, before)
    assert np.all(x.grad == 0)


if __name__ == "__main__":
    pytest.main([__file__])
