import numpy as np
from pointseg.errors import ValidationError


class NeighborIndex:
    """
    The k nearest neighbors of every point. A point is never its own neighbor.
    """

    def __init__(self, indices: np.ndarray, distances: np.ndarray):
        """
        :param indices: An N×k array of neighbor indices.
        :param distances: An N×k array of distances, ascending per row.
        """

        """:field
        An N×k array of neighbor indices.
        """
        self.indices: np.ndarray = indices
        """:field
        An N×k array of distances, ascending per row.
        """
        self.distances: np.ndarray = distances

    @property
    def k(self) -> int:
        """
        :return: The number of neighbors per point.
        """

        return self.indices.shape[1]


def knn_indices(distances: np.ndarray, k: int) -> NeighborIndex:
    """
    Find the k nearest neighbors of every point, excluding the point itself. Ties go to the lower index.

    :param distances: An N×N distance matrix.
    :param k: The number of neighbors. Must be at most N - 1.

    :return: A `NeighborIndex`.
    """

    n = distances.shape[0]
    if k < 0 or k > n - 1:
        raise ValidationError(f"knn_indices(): k={k} but there are only {n} points")
    masked = np.array(distances, dtype=np.float64)
    np.fill_diagonal(masked, np.inf)
    # A stable sort keeps equal distances in index order.
    order = np.argsort(masked, axis=1, kind="stable")[:, :k]
    return NeighborIndex(indices=order, distances=np.take_along_axis(masked, order, axis=1))
