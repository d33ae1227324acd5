from typing import Tuple
import numpy as np
from pointseg.diffcore.mlp import Mlp
from pointseg.diffcore.ops import add, concat_columns, gather_rows, linear, max_pool_rows, relu
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.featnet.fusion import Fusion


class FeatureBlock:
    """
    A simplified PointNet that can be stacked:

    1. A point MLP refines every point feature.
    2. The refined features are max-pooled into a global feature, which passes through a global MLP.
    3. The global feature is fused into the global pathway.
    4. The global pathway is stacked N times, concatenated with the refined point features, and projected back to the layer width.
    5. The projection is fused into the local point pathway.
    """

    def __init__(self, name: str, point_in: int, global_in: int, width: int, fusion: Fusion, params: ParameterSet,
                 rng: np.random.RandomState):
        """
        :param name: The parameter name prefix.
        :param point_in: The width of the incoming local point pathway.
        :param global_in: The width of the incoming global pathway.
        :param width: The layer width W.
        :param fusion: How pathways are combined.
        :param params: The parameter set.
        :param rng: The random number generator.
        """

        if fusion == Fusion.additive and (point_in != width or global_in != width):
            raise ValidationError(f"Additive fusion needs pathway widths of {width}, not {point_in} and {global_in}")
        """:field
        How pathways are combined.
        """
        self.fusion: Fusion = fusion
        """:field
        The width of the outgoing local point pathway.
        """
        self.point_out: int = width if fusion == Fusion.additive else point_in + width
        """:field
        The width of the outgoing global pathway.
        """
        self.global_out: int = width if fusion == Fusion.additive else global_in + width
        """:field
        The point MLP.
        """
        self.point_mlp: Mlp = Mlp(name=f"{name}.point_mlp", in_dim=point_in, width=width, params=params, rng=rng)
        """:field
        The global MLP.
        """
        self.global_mlp: Mlp = Mlp(name=f"{name}.global_mlp", in_dim=width, width=width, params=params, rng=rng)
        self._projection_weights = params.weight(f"{name}.projection.weight", width + self.global_out, width, rng)
        self._projection_bias = params.bias(f"{name}.projection.bias", width)
        self._point_in: int = point_in
        self._global_in: int = global_in

    def forward(self, point_feats: Value, global_feat: Value) -> Tuple[Value, Value]:
        """
        :param point_feats: The N×P local point pathway.
        :param global_feat: The 1×G global pathway.

        :return: Tuple: the new local point pathway, the new global pathway.
        """

        if point_feats.shape[1] != self._point_in or global_feat.shape != (1, self._global_in):
            raise ValidationError(f"Feature block expected N×{self._point_in} and 1×{self._global_in}, "
                                  f"got {point_feats.shape} and {global_feat.shape}")
        refined = self.point_mlp(point_feats)
        pooled = max_pool_rows(refined)
        new_global = self.global_mlp(pooled)
        global_out = self._fuse(global_feat, new_global)
        stacked = gather_rows(global_out, np.zeros(point_feats.shape[0], dtype=np.int64))
        projected = relu(linear(concat_columns([refined, stacked]), self._projection_weights, self._projection_bias))
        return self._fuse(point_feats, projected), global_out

    def _fuse(self, pathway: Value, new: Value) -> Value:
        if self.fusion == Fusion.additive:
            return add(pathway, new)
        return concat_columns([pathway, new])
