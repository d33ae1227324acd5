from typing import List, Optional
from pointseg.diffcore.value import Value
from pointseg.neighbors.cluster_assignment import ClusterAssignment
from pointseg.neighbors.distance_matrix import DistanceMatrix
from pointseg.neighbors.neighbor_index import NeighborIndex


class ModelOutput:
    """
    The result of a forward pass of a `SegmentationModel`.
    """

    def __init__(self, logits: Value, centroid_features: Value, pair_distances: Optional[DistanceMatrix],
                 point_features: Value, global_feature: Value, nf_outputs: List[Value],
                 neighbors: List[NeighborIndex], assignment: Optional[ClusterAssignment]):
        """:field
        The N×C class scores.
        """
        self.logits: Value = logits
        """:field
        The N×W features that feed the classifier layer. The centroid loss is computed on these.
        """
        self.centroid_features: Value = centroid_features
        """:field
        The distance matrix that feeds the pairwise loss. None if the model has no feature-space modules.
        """
        self.pair_distances: Optional[DistanceMatrix] = pair_distances
        """:field
        The point features of the feature network.
        """
        self.point_features: Value = point_features
        """:field
        The global pathway feature of the feature network.
        """
        self.global_feature: Value = global_feature
        """:field
        The output of each feature-space module.
        """
        self.nf_outputs: List[Value] = nf_outputs
        """:field
        The neighbor index of each feature-space module.
        """
        self.neighbors: List[NeighborIndex] = neighbors
        """:field
        The world-space clusters. None if the model has no world-space module.
        """
        self.assignment: Optional[ClusterAssignment] = assignment
