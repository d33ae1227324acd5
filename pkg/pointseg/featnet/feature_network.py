from typing import List, Tuple
import numpy as np
from pointseg.diffcore.ops import linear, max_pool_rows, relu
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.featnet.feature_block import FeatureBlock
from pointseg.featnet.feature_network_config import FeatureNetworkConfig


class FeatureNetwork:
    """
    Transforms input point features (position, color, ...) into learned features with a chain of feature blocks.

    ```python
    import numpy as np
    from pointseg.diffcore.parameter_set import ParameterSet
    from pointseg.diffcore.value import Value
    from pointseg.featnet.feature_network import FeatureNetwork
    from pointseg.featnet.feature_network_config import FeatureNetworkConfig

    config = FeatureNetworkConfig(input_dim=9, num_blocks=3, width=8)
    network = FeatureNetwork(config=config, params=ParameterSet(), rng=np.random.RandomState(0))
    features = network(Value(np.random.uniform(size=(5, 9))))
    print(features.shape) # (5, 8)
    ```
    """

    def __init__(self, config: FeatureNetworkConfig, params: ParameterSet, rng: np.random.RandomState,
                 name: str = "featnet"):
        """
        :param config: The network shape.
        :param params: The parameter set.
        :param rng: The random number generator.
        :param name: The parameter name prefix.
        """

        """:field
        The network shape.
        """
        self.config: FeatureNetworkConfig = config
        self._entry_weights = params.weight(f"{name}.entry.weight", config.input_dim, config.width, rng)
        self._entry_bias = params.bias(f"{name}.entry.bias", config.width)
        """:field
        The feature blocks.
        """
        self.blocks: List[FeatureBlock] = list()
        point_width = config.width
        global_width = config.width
        for i in range(config.num_blocks):
            block = FeatureBlock(name=f"{name}.block_{i}", point_in=point_width, global_in=global_width,
                                 width=config.width, fusion=config.fusion, params=params, rng=rng)
            self.blocks.append(block)
            point_width = block.point_out
            global_width = block.global_out

    @property
    def output_width(self) -> int:
        """
        :return: The width of the output point features.
        """

        return self.config.output_width

    def forward(self, x: Value) -> Tuple[Value, Value]:
        """
        :param x: The N×D input features.

        :return: Tuple: the N×F learned point features, the final global pathway feature.
        """

        if x.data.ndim != 2 or x.shape[1] != self.config.input_dim:
            raise ValidationError(f"Feature network expected N×{self.config.input_dim} input, got {x.shape}")
        points = relu(linear(x, self._entry_weights, self._entry_bias))
        global_feat = max_pool_rows(points)
        for block in self.blocks:
            points, global_feat = block.forward(points, global_feat)
        return points, global_feat

    def __call__(self, x: Value) -> Value:
        return self.forward(x)[0]
