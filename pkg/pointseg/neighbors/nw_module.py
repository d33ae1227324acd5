from typing import Tuple
import numpy as np
from pointseg.diffcore.mlp import Mlp
from pointseg.diffcore.ops import concat_columns, gather_rows, max_pool_groups, segment_mean
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.neighbors.cluster_assignment import ClusterAssignment


class NWModule:
    """
    Builds a regional descriptor for every world-space cluster:
    the cluster's mean feature is appended to each member's feature, every row passes through a shared MLP, and the rows are max-pooled per cluster.
    """

    def __init__(self, name: str, in_dim: int, width: int, params: ParameterSet, rng: np.random.RandomState):
        """
        :param name: The parameter name prefix.
        :param in_dim: The input feature width F.
        :param width: The output width W.
        :param params: The parameter set.
        :param rng: The random number generator.
        """

        """:field
        The shared cluster MLP.
        """
        self.mlp: Mlp = Mlp(name=f"{name}.mlp", in_dim=in_dim * 2, width=width, params=params, rng=rng)

    @property
    def width(self) -> int:
        """
        :return: The output width.
        """

        return self.mlp.width

    def forward(self, x: Value, assignment: ClusterAssignment) -> Tuple[Value, Value]:
        """
        :param x: The N×F input features.
        :param assignment: The clusters. Every point is assigned and every cluster is non-empty.

        :return: Tuple: the K×W regional descriptors, an N×W value where each row is its point's regional descriptor.
        """

        labels = assignment.assignments
        if labels.shape != (x.shape[0],):
            raise ValidationError(f"{labels.shape[0]} cluster assignments for {x.shape[0]} points")
        k = assignment.num_clusters
        means = gather_rows(segment_mean(x, labels, k), labels)
        regional = max_pool_groups(self.mlp(concat_columns([x, means])), labels, k)
        return regional, gather_rows(regional, labels)
