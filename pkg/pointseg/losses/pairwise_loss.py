from typing import Optional
import numpy as np
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.pair_reduction import PairReduction
from pointseg.neighbors.distance_matrix import DistanceMatrix


def pair_losses(distances: np.ndarray, same_class: np.ndarray, tau_near: float, tau_far: float) -> np.ndarray:
    """
    The per-pair hinge loss. Same-class pairs are pulled within `tau_near`; different-class pairs are pushed beyond `tau_far`.

    :param distances: Pair distances. Any shape.
    :param same_class: True where a pair shares a class. Same shape as `distances`.
    :param tau_near: The same-class threshold.
    :param tau_far: The different-class threshold.

    :return: `max(d - tau_near, 0)` for same-class pairs, `max(tau_far - d, 0)` otherwise.
    """

    return np.where(same_class, np.maximum(distances - tau_near, 0), np.maximum(tau_far - distances, 0))


def _pair_slopes(distances: np.ndarray, same_class: np.ndarray, tau_near: float, tau_far: float) -> np.ndarray:
    # The derivative at a hinge kink is 0.
    return np.where(same_class, (distances > tau_near).astype(distances.dtype),
                    -(distances < tau_far).astype(distances.dtype))


def pairwise_loss(distances: DistanceMatrix, labels: np.ndarray, config: LossConfig,
                  rng: Optional[np.random.RandomState] = None) -> Value:
    """
    The pairwise similarity loss over the unordered pairs `i < j` of a block. It reuses the distance matrix of a feature-space neighborhood module; it never computes distances itself.

    If `config.pair_samples` is greater than 0, the loss is evaluated on that many pairs, drawn uniformly with replacement from the unordered pairs. With `PairReduction.sum`, the sampled sum is rescaled to estimate the full sum.

    :param distances: The N×N `DistanceMatrix`.
    :param labels: N class labels.
    :param config: The loss parameters.
    :param rng: The random number generator used to sample pairs. Required if `config.pair_samples` > 0.

    :return: A scalar value.
    """

    d = distances.values
    n = len(distances)
    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (n,):
        raise ValidationError(f"pairwise_loss(): expected {n} labels, got {labels.shape}")
    num_pairs = n * (n - 1) // 2
    if num_pairs == 0:
        return Value(np.array(0.0, dtype=d.data.dtype), parents=(d,), op="pairwise_loss", backward=lambda: None)
    if config.pair_samples > 0:
        if rng is None:
            raise ValidationError("pairwise_loss(): pair sampling requires a random number generator")
        return _sampled_pairwise_loss(d, labels, config, rng, num_pairs)
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    same_class = labels[:, None] == labels[None, :]
    losses = np.where(upper, pair_losses(d.data, same_class, config.tau_near, config.tau_far), 0)
    scale = 1.0 if config.pair_reduction == PairReduction.sum else 1.0 / num_pairs

    def backward() -> None:
        slopes = np.where(upper, _pair_slopes(d.data, same_class, config.tau_near, config.tau_far), 0)
        d.grad += (out.grad * scale) * slopes

    out = Value(np.array(losses.sum() * scale, dtype=d.data.dtype), parents=(d,), op="pairwise_loss",
                backward=backward)
    return out


def _sampled_pairwise_loss(d: Value, labels: np.ndarray, config: LossConfig, rng: np.random.RandomState,
                           num_pairs: int) -> Value:
    n = d.shape[0]
    p = config.pair_samples
    # Uniform over ordered pairs with i != j, which is uniform over unordered pairs.
    first = rng.randint(0, n, size=p)
    second = rng.randint(0, n - 1, size=p)
    second = second + (second >= first)
    rows = np.minimum(first, second)
    columns = np.maximum(first, second)
    sampled = d.data[rows, columns]
    same_class = labels[rows] == labels[columns]
    losses = pair_losses(sampled, same_class, config.tau_near, config.tau_far)
    scale = num_pairs / p if config.pair_reduction == PairReduction.sum else 1.0 / p

    def backward() -> None:
        slopes = _pair_slopes(sampled, same_class, config.tau_near, config.tau_far)
        np.add.at(d.grad, (rows, columns), (out.grad * scale) * slopes)

    out = Value(np.array(losses.sum() * scale, dtype=d.data.dtype), parents=(d,), op="pairwise_loss",
                backward=backward)
    return out
