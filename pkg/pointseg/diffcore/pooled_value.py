from typing import Callable, Optional, Tuple
import numpy as np
from pointseg.diffcore.value import Value


class PooledValue(Value):
    """
    The output of a max-pooling operation. It remembers which input row won each output entry.
    """

    def __init__(self, data: np.ndarray, argmax: np.ndarray, parents: Tuple[Value, ...], op: str,
                 backward: Optional[Callable[[], None]] = None):
        """
        :param data: The G×F pooled array.
        :param argmax: A G×F array of input row indices.
        :param parents: The input node.
        :param op: The operation name.
        :param backward: The backward closure.
        """

        super().__init__(data=data, parents=parents, op=op, backward=backward)
        """:field
        A G×F array: the input row of the maximum of each output entry. Ties go to the lowest row index.
        """
        self.argmax: np.ndarray = argmax
