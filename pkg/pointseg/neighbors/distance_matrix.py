import numpy as np
from scipy.spatial.distance import cdist
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError

# The maximum number of entries of the temporary sign tensor in the backward pass.
_CHUNK_ENTRIES: int = 1 << 22


class DistanceMatrix:
    """
    The N×N matrix of pairwise distances between feature points. It is symmetric, non-negative, and has a zero diagonal.
    """

    def __init__(self, values: Value, metric: str = "l1"):
        """
        :param values: The N×N differentiable distances.
        :param metric: The distance metric.
        """

        """:field
        The N×N differentiable distances.
        """
        self.values: Value = values
        """:field
        The distance metric.
        """
        self.metric: str = metric

    @property
    def data(self) -> np.ndarray:
        """
        :return: The N×N distances as a plain array.
        """

        return self.values.data

    def __len__(self) -> int:
        return self.values.shape[0]


def pairwise_l1(x: Value) -> DistanceMatrix:
    """
    `D[i][j] = sum_f |x[i][f] - x[j][f]|`. The result is differentiable with respect to `x`.

    :param x: An N×F value with N ≥ 1.

    :return: A `DistanceMatrix`.
    """

    if x.data.ndim != 2 or x.shape[0] < 1:
        raise ValidationError(f"pairwise_l1(): expected an N×F array, got {x.shape}")
    n, f = x.shape
    distances = cdist(x.data, x.data, metric="cityblock").astype(x.data.dtype)
    chunk = max(1, _CHUNK_ENTRIES // max(1, n * f))

    def backward() -> None:
        # D[i][j] and D[j][i] both depend on x[i] through sign(x[i] - x[j]).
        g = out.grad + out.grad.T
        for start in range(0, n, chunk):
            end = min(n, start + chunk)
            signs = np.sign(x.data[start:end, None, :] - x.data[None, :, :])
            x.grad[start:end] += np.einsum("ij,ijf->if", g[start:end], signs)

    out = Value(distances, parents=(x,), op="pairwise_l1", backward=backward)
    return DistanceMatrix(values=out, metric="l1")
