from typing import Dict, Iterator, List
import numpy as np
from pointseg.diffcore.param import Param
from pointseg.errors import ValidationError


class ParameterSet:
    """
    An ordered registry of a model's `Param` objects. Names are unique.
    """

    def __init__(self, dtype: np.dtype = np.float64):
        """
        :param dtype: The floating point type of every parameter.
        """

        """:field
        The floating point type of every parameter.
        """
        self.dtype: np.dtype = np.dtype(dtype)
        self._params: Dict[str, Param] = dict()

    def weight(self, name: str, fan_in: int, fan_out: int, rng: np.random.RandomState) -> Param:
        """
        :param name: The unique name.
        :param fan_in: The number of inputs.
        :param fan_out: The number of outputs.
        :param rng: The random number generator.

        :return: A new Glorot-uniform weight matrix.
        """

        return self.add(Param(name=name, data=Param.glorot_uniform(fan_in, fan_out, rng, self.dtype)))

    def bias(self, name: str, size: int) -> Param:
        """
        :param name: The unique name.
        :param size: The number of outputs.

        :return: A new zero bias vector.
        """

        return self.add(Param(name=name, data=np.zeros(size, dtype=self.dtype)))

    def add(self, param: Param) -> Param:
        """
        :param param: A parameter.

        :return: The same parameter, now registered.
        """

        if param.name in self._params:
            raise ValidationError(f"Duplicate parameter name: {param.name}")
        self._params[param.name] = param
        return param

    def zero_grad(self) -> None:
        """
        Clear the gradient of every parameter.
        """

        for param in self._params.values():
            param.zero_grad()

    def names(self) -> List[str]:
        """
        :return: The parameter names in registration order.
        """

        return list(self._params.keys())

    def snapshot(self) -> Dict[str, np.ndarray]:
        """
        :return: A copy of every parameter's values, keyed by name.
        """

        return {name: param.data.copy() for name, param in self._params.items()}

    def restore(self, values: Dict[str, np.ndarray]) -> None:
        """
        Overwrite parameter values in place.

        :param values: Arrays keyed by parameter name. Every parameter must be present with a matching shape.
        """

        for name, param in self._params.items():
            if name not in values:
                raise ValidationError(f"Missing parameter: {name}")
            if values[name].shape != param.data.shape:
                raise ValidationError(f"Shape mismatch for {name}: {values[name].shape} vs {param.data.shape}")
            param.data = np.array(values[name], dtype=self.dtype)
            param.zero_grad()

    def __getitem__(self, name: str) -> Param:
        return self._params[name]

    def __contains__(self, name: str) -> bool:
        return name in self._params

    def __iter__(self) -> Iterator[Param]:
        return iter(self._params.values())

    def __len__(self) -> int:
        return len(self._params)
