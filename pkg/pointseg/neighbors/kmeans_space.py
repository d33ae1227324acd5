from enum import Enum


class KMeansSpace(Enum):
    """
    The world space that k-means clusters in.
    """

    xyz = 0  # The original point positions.
    input = 1  # The full input feature vector (position, color, normalized coordinates).
