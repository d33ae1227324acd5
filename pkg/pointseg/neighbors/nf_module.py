from typing import Optional, Tuple
import numpy as np
from pointseg.diffcore.mlp import Mlp
from pointseg.diffcore.ops import concat_columns, gather_rows, max_pool_groups
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.neighbors.distance_matrix import DistanceMatrix, pairwise_l1
from pointseg.neighbors.neighbor_index import NeighborIndex, knn_indices


class NFModule:
    """
    Updates every point feature from its neighborhood in the learned feature space:

    1. Compute the N×N L1 distance matrix of the input features.
    2. Find the k nearest neighbors of every point.
    3. Stack each point with its neighbors (k + 1 rows), pass every row through a shared MLP, and max-pool the rows.

    The neighbor indices are constants in the backward pass. The distance matrix is returned so that the pairwise loss can reuse it.
    """

    def __init__(self, name: str, in_dim: int, width: int, params: ParameterSet, rng: np.random.RandomState,
                 center_concat: bool = False):
        """
        :param name: The parameter name prefix.
        :param in_dim: The input feature width F.
        :param width: The output width W.
        :param params: The parameter set.
        :param rng: The random number generator.
        :param center_concat: If True, every neighborhood row is `[neighbor, center]` instead of the bare neighbor.
        """

        """:field
        If True, every neighborhood row is `[neighbor, center]` instead of the bare neighbor.
        """
        self.center_concat: bool = center_concat
        """:field
        The shared neighborhood MLP.
        """
        self.mlp: Mlp = Mlp(name=f"{name}.mlp", in_dim=in_dim * 2 if center_concat else in_dim, width=width,
                            params=params, rng=rng)

    @property
    def width(self) -> int:
        """
        :return: The output width.
        """

        return self.mlp.width

    def forward(self, x: Value, k: int,
                neighbors: Optional[NeighborIndex] = None) -> Tuple[Value, DistanceMatrix, NeighborIndex]:
        """
        :param x: The N×F input features.
        :param k: The number of neighbors, at most N - 1.
        :param neighbors: If not None, use this neighbor index instead of computing one.

        :return: Tuple: the N×W updated features, the distance matrix of `x`, the neighbor index.
        """

        n = x.shape[0]
        distances = pairwise_l1(x)
        if neighbors is None:
            neighbors = knn_indices(distances.data, k)
        rows = np.hstack([np.arange(n)[:, None], neighbors.indices]).reshape(-1)
        group_ids = np.repeat(np.arange(n), neighbors.k + 1)
        neighborhood = gather_rows(x, rows)
        if self.center_concat:
            neighborhood = concat_columns([neighborhood, gather_rows(x, group_ids)])
        pooled = max_pool_groups(self.mlp(neighborhood), group_ids, n)
        return pooled, distances, neighbors
