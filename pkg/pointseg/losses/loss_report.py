from pointseg.diffcore.value import Value


class LossReport:
    """
    The components of the training loss and their weighted sum.
    """

    def __init__(self, l_class: float, l_pair: float, l_cent: float, total: float, value: Value = None):
        """
        :param l_class: The classification loss.
        :param l_pair: The pairwise similarity loss.
        :param l_cent: The centroid loss.
        :param total: The weighted sum.
        :param value: The differentiable total. Can be None.
        """

        """:field
        The classification loss.
        """
        self.l_class: float = l_class
        """:field
        The pairwise similarity loss.
        """
        self.l_pair: float = l_pair
        """:field
        The centroid loss.
        """
        self.l_cent: float = l_cent
        """:field
        The weighted sum of the three losses.
        """
        self.total: float = total
        """:field
        The differentiable total; call `value.backward()` to get gradients.
        """
        self.value: Value = value

    def __str__(self):
        return f"l_class={self.l_class:.6f} l_pair={self.l_pair:.6f} l_cent={self.l_cent:.6f} total={self.total:.6f}"
