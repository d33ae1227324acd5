from typing import Tuple
from pointseg.constants import TAU_NEAR, TAU_FAR
from pointseg.errors import ValidationError
from pointseg.losses.centroid_distance import CentroidDistance
from pointseg.losses.pair_reduction import PairReduction


class LossConfig:
    """
    Parameters of the three training losses.
    """

    def __init__(self, tau_near: float = TAU_NEAR, tau_far: float = TAU_FAR,
                 pair_reduction: PairReduction = PairReduction.sum,
                 cent_distance: CentroidDistance = CentroidDistance.cosine,
                 weights: Tuple[float, float, float] = (1.0, 1.0, 1.0), pair_samples: int = 0):
        """
        :param tau_near: Same-class pairs closer than this aren't penalized.
        :param tau_far: Different-class pairs farther than this aren't penalized.
        :param pair_reduction: How per-pair losses are combined.
        :param cent_distance: The centroid distance.
        :param weights: The weights of the classification, pairwise, and centroid losses.
        :param pair_samples: If greater than 0, the pairwise loss uses this many uniformly sampled pairs instead of all pairs.
        """

        if tau_near < 0:
            raise ValidationError(f"Invalid tau_near: {tau_near}")
        if tau_far <= tau_near:
            raise ValidationError(f"tau_far ({tau_far}) must be greater than tau_near ({tau_near})")
        if len(weights) != 3 or any(w < 0 for w in weights):
            raise ValidationError(f"Invalid loss weights: {weights}")
        if pair_samples < 0:
            raise ValidationError(f"Invalid pair samples: {pair_samples}")
        """:field
        Same-class pairs closer than this aren't penalized.
        """
        self.tau_near: float = tau_near
        """:field
        Different-class pairs farther than this aren't penalized.
        """
        self.tau_far: float = tau_far
        """:field
        How per-pair losses are combined.
        """
        self.pair_reduction: PairReduction = pair_reduction
        """:field
        The centroid distance.
        """
        self.cent_distance: CentroidDistance = cent_distance
        """:field
        The weights of the classification, pairwise, and centroid losses.
        """
        self.weights: Tuple[float, float, float] = (float(weights[0]), float(weights[1]), float(weights[2]))
        """:field
        If greater than 0, the pairwise loss uses this many uniformly sampled pairs.
        """
        self.pair_samples: int = pair_samples
