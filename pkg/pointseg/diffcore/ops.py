from typing import List, Sequence
import numpy as np
from pointseg.diffcore.param import Param
from pointseg.diffcore.pooled_value import PooledValue
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError

"""
Differentiable operations. Each returns a new `Value` whose backward closure adds exact gradients to its inputs.
"""


def linear(x: Value, weights: Param, bias: Param) -> Value:
    """
    :param x: An N×F_in input.
    :param weights: An F_in×F_out weight matrix.
    :param bias: An F_out bias, added to every row.

    :return: `x · weights + bias`, an N×F_out value.
    """

    if x.data.ndim != 2 or weights.data.ndim != 2 or x.shape[1] != weights.shape[0] or \
            bias.shape != (weights.shape[1],):
        raise ValidationError(f"linear(): shape mismatch: {x.shape} · {weights.shape} + {bias.shape}")

    def backward() -> None:
        x.grad += out.grad @ weights.data.T
        weights.grad += x.data.T @ out.grad
        bias.grad += out.grad.sum(axis=0)

    out = Value(x.data @ weights.data + bias.data, parents=(x, weights, bias), op="linear", backward=backward)
    return out


def relu(x: Value) -> Value:
    """
    :param x: Any value.

    :return: `max(x, 0)` elementwise. The gradient at exactly 0 is 0.
    """

    mask = x.data > 0

    def backward() -> None:
        x.grad += out.grad * mask

    out = Value(np.where(mask, x.data, 0).astype(x.data.dtype), parents=(x,), op="relu", backward=backward)
    return out


def max_pool_groups(x: Value, group_ids: np.ndarray, num_groups: int) -> PooledValue:
    """
    :param x: An N×F input.
    :param group_ids: N group indices in `[0, num_groups)`.
    :param num_groups: The number of groups G. Every group needs at least one row.

    :return: A G×F value: the column-wise maximum of each group. The backward pass routes each output gradient to the winning row (ties go to the lowest row index).
    """

    group_ids = np.asarray(group_ids, dtype=np.int64)
    n, f = x.shape
    if group_ids.shape != (n,):
        raise ValidationError(f"max_pool_groups(): {group_ids.shape[0]} group IDs for {n} rows")
    if n > 0 and (group_ids.min() < 0 or group_ids.max() >= num_groups):
        raise ValidationError(f"max_pool_groups(): group IDs outside [0, {num_groups})")
    counts = np.bincount(group_ids, minlength=num_groups)
    if np.any(counts == 0):
        raise ValidationError(f"max_pool_groups(): empty group(s): {np.flatnonzero(counts == 0).tolist()}")
    pooled = np.full((num_groups, f), -np.inf, dtype=x.data.dtype)
    np.maximum.at(pooled, group_ids, x.data)
    # The lowest row index that reaches each maximum.
    rows = np.broadcast_to(np.arange(n)[:, None], (n, f))
    candidates = np.where(x.data == pooled[group_ids], rows, n)
    argmax = np.full((num_groups, f), n, dtype=np.int64)
    np.minimum.at(argmax, group_ids, candidates)
    columns = np.broadcast_to(np.arange(f)[None, :], (num_groups, f))

    def backward() -> None:
        np.add.at(x.grad, (argmax, columns), out.grad)

    out = PooledValue(pooled, argmax=argmax, parents=(x,), op="max_pool_groups", backward=backward)
    return out


def max_pool_rows(x: Value) -> PooledValue:
    """
    :param x: An N×F input with N ≥ 1.

    :return: A 1×F value: the column-wise maximum. `argmax` holds the winning row of each column.
    """

    if x.shape[0] < 1:
        raise ValidationError("max_pool_rows(): no rows")
    return max_pool_groups(x, np.zeros(x.shape[0], dtype=np.int64), 1)


def softmax_cross_entropy(logits: Value, labels: np.ndarray) -> Value:
    """
    :param logits: An N×C array of unnormalized class scores.
    :param labels: N labels in `[0, C)`.

    :return: A scalar: the mean over rows of `-log softmax(logits)[label]`.
    """

    labels = np.asarray(labels, dtype=np.int64)
    n, c = logits.shape
    if labels.shape != (n,) or (n > 0 and (labels.min() < 0 or labels.max() >= c)):
        raise ValidationError(f"softmax_cross_entropy(): invalid labels for {n}×{c} logits")
    shifted = logits.data - logits.data.max(axis=1, keepdims=True)
    log_sum = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_sum
    rows = np.arange(n)
    loss = -log_probs[rows, labels].mean()

    def backward() -> None:
        g = np.exp(log_probs)
        g[rows, labels] -= 1
        logits.grad += out.grad * g / n

    out = Value(np.array(loss, dtype=logits.data.dtype), parents=(logits,), op="softmax_cross_entropy",
                backward=backward)
    return out


def add(a: Value, b: Value) -> Value:
    """
    :param a: A value.
    :param b: A value with the same shape.

    :return: `a + b`.
    """

    if a.shape != b.shape:
        raise ValidationError(f"add(): shape mismatch: {a.shape} vs {b.shape}")

    def backward() -> None:
        a.grad += out.grad
        b.grad += out.grad

    out = Value(a.data + b.data, parents=(a, b), op="add", backward=backward)
    return out


def concat_columns(values: Sequence[Value]) -> Value:
    """
    :param values: Values with the same number of rows.

    :return: The values side by side.
    """

    rows = {v.shape[0] for v in values}
    if len(rows) != 1:
        raise ValidationError(f"concat_columns(): row mismatch: {[v.shape for v in values]}")
    widths = [v.shape[1] for v in values]
    offsets = np.concatenate([[0], np.cumsum(widths)])

    def backward() -> None:
        for v, start, end in zip(values, offsets[:-1], offsets[1:]):
            v.grad += out.grad[:, start:end]

    out = Value(np.concatenate([v.data for v in values], axis=1), parents=tuple(values), op="concat_columns",
                backward=backward)
    return out


def gather_rows(x: Value, indices: np.ndarray) -> Value:
    """
    :param x: An N×F value.
    :param indices: M row indices. Rows can repeat.

    :return: An M×F value; row `i` is row `indices[i]` of `x`.
    """

    indices = np.asarray(indices, dtype=np.int64)

    def backward() -> None:
        np.add.at(x.grad, indices, out.grad)

    out = Value(x.data[indices], parents=(x,), op="gather_rows", backward=backward)
    return out


def segment_mean(x: Value, group_ids: np.ndarray, num_groups: int) -> Value:
    """
    :param x: An N×F value.
    :param group_ids: N group indices in `[0, num_groups)`. Every group needs at least one row.
    :param num_groups: The number of groups G.

    :return: A G×F value: the mean row of each group.
    """

    group_ids = np.asarray(group_ids, dtype=np.int64)
    counts = np.bincount(group_ids, minlength=num_groups)
    if np.any(counts == 0):
        raise ValidationError(f"segment_mean(): empty group(s): {np.flatnonzero(counts == 0).tolist()}")
    sums = np.zeros((num_groups, x.shape[1]), dtype=x.data.dtype)
    np.add.at(sums, group_ids, x.data)
    scale = (1.0 / counts).astype(x.data.dtype)[:, None]

    def backward() -> None:
        x.grad += (out.grad * scale)[group_ids]

    out = Value(sums * scale, parents=(x,), op="segment_mean", backward=backward)
    return out


def weighted_sum(values: Sequence[Value], weights: Sequence[float]) -> Value:
    """
    :param values: Scalar values.
    :param weights: One weight per value.

    :return: A scalar: `weights[0] * values[0] + weights[1] * values[1] + ...`, summed left to right.
    """

    if len(values) != len(weights):
        raise ValidationError(f"weighted_sum(): {len(values)} values but {len(weights)} weights")
    total = 0.0
    for v, w in zip(values, weights):
        total = total + w * v.item()

    def backward() -> None:
        for v, w in zip(values, weights):
            v.grad += w * out.grad

    out = Value(np.array(total), parents=tuple(values), op="weighted_sum", backward=backward)
    return out


def values_finite(values: List[Value]) -> bool:
    """
    :param values: Values.

    :return: True if every entry of every value is finite.
    """

    return all(np.all(np.isfinite(v.data)) for v in values)


def sum_all(x: Value) -> Value:
    """
    :param x: Any value.

    :return: A scalar: the sum of every entry.
    """

    def backward() -> None:
        x.grad += out.grad

    out = Value(np.array(x.data.sum()), parents=(x,), op="sum_all", backward=backward)
    return out
