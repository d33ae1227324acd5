class EpochLog:
    """
    The mean losses and the training accuracy of one epoch.
    """

    def __init__(self, epoch: int, l_class: float, l_pair: float, l_cent: float, total: float, o_acc: float,
                 learning_rate: float, steps: int):
        """
        :param epoch: The zero-based epoch.
        :param l_class: The mean classification loss over the epoch's blocks.
        :param l_pair: The mean pairwise similarity loss.
        :param l_cent: The mean centroid loss.
        :param total: The mean total loss.
        :param o_acc: The overall accuracy of the training predictions of the epoch's sampled points.
        :param learning_rate: The learning rate of the epoch.
        :param steps: The total number of optimizer steps at the end of the epoch.
        """

        self.epoch: int = epoch
        self.l_class: float = l_class
        self.l_pair: float = l_pair
        self.l_cent: float = l_cent
        self.total: float = total
        self.o_acc: float = o_acc
        self.learning_rate: float = learning_rate
        self.steps: int = steps

    def __str__(self):
        return f"epoch={self.epoch} l_class={self.l_class:.6f} l_pair={self.l_pair:.6f} l_cent={self.l_cent:.6f} " \
               f"total={self.total:.6f} oAcc={self.o_acc:.4f} lr={self.learning_rate:.3g} steps={self.steps}"
