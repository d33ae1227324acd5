import numpy as np


class EpochProgress:
    """
    How far training got through an epoch when a mid-epoch checkpoint was written.
    """

    def __init__(self, order: np.ndarray, position: int, loss_sums: np.ndarray, confusion_counts: np.ndarray):
        """
        :param order: The shuffled block order of the epoch.
        :param position: The number of blocks in `order` that were already trained on.
        :param loss_sums: The running sums of the classification, pairwise, centroid, and total losses.
        :param confusion_counts: The running training confusion matrix counts.
        """

        """:field
        The shuffled block order of the epoch.
        """
        self.order: np.ndarray = np.asarray(order, dtype=np.int64)
        """:field
        The number of blocks in `order` that were already trained on.
        """
        self.position: int = position
        """:field
        The running sums of the classification, pairwise, centroid, and total losses.
        """
        self.loss_sums: np.ndarray = np.asarray(loss_sums, dtype=np.float64)
        """:field
        The running training confusion matrix counts.
        """
        self.confusion_counts: np.ndarray = np.asarray(confusion_counts, dtype=np.int64)
