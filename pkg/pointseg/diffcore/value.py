from typing import Callable, List, Optional, Set, Tuple
import numpy as np
from overrides import final


class Value:
    """
    A node of a reverse-mode differentiation graph: an array, its accumulated gradient, and the operation that produced it.

    ```python
    import numpy as np
    from pointseg.diffcore.value import Value
    from pointseg.diffcore.ops import relu

    x = Value(np.array([-1.0, 0.0, 2.0]))
    y = relu(x)
    print(y.data) # [0. 0. 2.]
    ```

    Operations create a new `Value` with a backward closure that reads the output's `grad` and adds to its parents' `grad`.
    """

    def __init__(self, data: np.ndarray, parents: Tuple["Value", ...] = (), op: str = "",
                 backward: Optional[Callable[[], None]] = None):
        """
        :param data: The array. Integer arrays are converted to float64.
        :param parents: The input nodes of the operation that created this node.
        :param op: A short name of the operation, for debugging.
        :param backward: A closure that propagates `self.grad` to the parents. Can be None for leaf nodes.
        """

        data = np.asarray(data)
        if not np.issubdtype(data.dtype, np.floating):
            data = data.astype(np.float64)
        """:field
        The array.
        """
        self.data: np.ndarray = data
        """:field
        The accumulated gradient. Same shape as `data`.
        """
        self.grad: np.ndarray = np.zeros_like(data)
        """:field
        A short name of the operation that created this node.
        """
        self.op: str = op
        """:field
        The input nodes of the operation that created this node.
        """
        self.parents: Tuple[Value, ...] = parents
        self._backward: Optional[Callable[[], None]] = backward

    @property
    def shape(self) -> Tuple[int, ...]:
        """
        :return: The shape of the array.
        """

        return self.data.shape

    def item(self) -> float:
        """
        :return: The value of a single-element array.
        """

        return float(self.data.reshape(-1)[0])

    @final
    def backward(self, grad: np.ndarray = None) -> None:
        """
        Propagate gradients from this node to every node it depends on.

        :param grad: The gradient of this node. If None, this node must have exactly one element and its gradient is 1.
        """

        if grad is None:
            if self.data.size != 1:
                raise ValueError(f"backward() without a gradient needs a single-element value, not {self.shape}")
            grad = np.ones_like(self.data)
        self.grad = self.grad + grad
        for node in reversed(self._topological_order()):
            if node._backward is not None:
                node._backward()

    @final
    def _topological_order(self) -> List["Value"]:
        """
        :return: Every node this node depends on (including itself), parents before children.
        """

        order: List[Value] = list()
        visited: Set[int] = set()
        # Iterative depth-first search; deep networks would overflow the recursion limit.
        stack: List[Tuple[Value, bool]] = [(self, False)]
        while len(stack) > 0:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node.parents:
                if id(parent) not in visited:
                    stack.append((parent, False))
        return order

    def __repr__(self):
        return f"Value(op={self.op}, shape={self.shape})"
