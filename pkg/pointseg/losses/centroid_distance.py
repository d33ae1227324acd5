from enum import Enum


class CentroidDistance(Enum):
    """
    The distance between a feature and its class centroid in the centroid loss.
    """

    cosine = 0  # 1 - cos(a, b)
    l1 = 1  # sum |a - b|
    l2 = 2  # ||a - b||
