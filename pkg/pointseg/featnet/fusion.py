from enum import Enum


class Fusion(Enum):
    """
    How a feature block combines its new features with the local point pathway and the global pathway.
    """

    additive = 0  # pathway = pathway + new features. The width stays constant.
    concat = 1  # pathway = [pathway, new features]. The width grows by one layer width per block.
