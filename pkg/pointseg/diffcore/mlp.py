from typing import List
import numpy as np
from pointseg.diffcore.ops import linear, relu
from pointseg.diffcore.param import Param
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value


class Mlp:
    """
    A shared multi layer perceptron: linear layers, each followed by a rectifier. The same weights are applied to every row.
    """

    def __init__(self, name: str, in_dim: int, width: int, params: ParameterSet, rng: np.random.RandomState,
                 num_layers: int = 2):
        """
        :param name: The parameter name prefix.
        :param in_dim: The input width.
        :param width: The width of every layer.
        :param params: The parameter set to register the weights in.
        :param rng: The random number generator used to initialize the weights.
        :param num_layers: The number of layers.
        """

        """:field
        The input width.
        """
        self.in_dim: int = in_dim
        """:field
        The output width.
        """
        self.width: int = width
        """:field
        Per layer: (weights, bias).
        """
        self.layers: List[List[Param]] = list()
        fan_in = in_dim
        for i in range(num_layers):
            self.layers.append([params.weight(f"{name}.{i}.weight", fan_in, width, rng),
                                params.bias(f"{name}.{i}.bias", width)])
            fan_in = width

    def __call__(self, x: Value) -> Value:
        for weights, bias in self.layers:
            x = relu(linear(x, weights, bias))
        return x
