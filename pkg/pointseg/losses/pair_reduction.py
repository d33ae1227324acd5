from enum import Enum


class PairReduction(Enum):
    """
    How the per-pair losses of the pairwise similarity loss are combined.
    """

    sum = 0  # The sum over all pairs.
    mean = 1  # The mean over all pairs. Keeps the loss scale independent of the block size.
