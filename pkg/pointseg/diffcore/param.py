import numpy as np
from pointseg.diffcore.value import Value


class Param(Value):
    """
    A named, learnable leaf `Value`. Its gradient accumulates over backward passes until the optimizer clears it.
    """

    def __init__(self, name: str, data: np.ndarray):
        """
        :param name: A name that is unique within the model, for example `featnet.block_0.point_mlp.0.weight`.
        :param data: The initial values.
        """

        super().__init__(data=data, op="param")
        """:field
        A name that is unique within the model.
        """
        self.name: str = name

    def zero_grad(self) -> None:
        """
        Clear the accumulated gradient.
        """

        self.grad = np.zeros_like(self.data)

    @staticmethod
    def glorot_uniform(fan_in: int, fan_out: int, rng: np.random.RandomState, dtype: np.dtype) -> np.ndarray:
        """
        :param fan_in: The number of inputs.
        :param fan_out: The number of outputs.
        :param rng: The random number generator.
        :param dtype: The floating point type.

        :return: A fan_in×fan_out weight matrix, uniform in `±sqrt(6 / (fan_in + fan_out))`.
        """

        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return rng.uniform(-limit, limit, size=(fan_in, fan_out)).astype(dtype)

    def __repr__(self):
        return f"Param({self.name}, shape={self.shape})"
