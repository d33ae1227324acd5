from typing import Optional
import numpy as np


class SampledBlock:
    """
    A fixed-size set of points drawn from a block. This is what a single forward pass consumes.
    """

    def __init__(self, block_id: str, features: np.ndarray, labels: np.ndarray, world_positions: np.ndarray,
                 source_indices: np.ndarray, colors: Optional[np.ndarray] = None):
        """
        :param block_id: The ID of the source block.
        :param features: An N×D input feature matrix. Columns 0-2 are always the raw positions.
        :param labels: N ground-truth labels.
        :param world_positions: An N×3 array of the original positions in meters.
        :param source_indices: N indices into the parent cloud.
        :param colors: An N×3 array of colors, or None.
        """

        """:field
        The ID of the source block.
        """
        self.block_id: str = block_id
        """:field
        An N×D input feature matrix: `[x, y, z]`, `[x, y, z, r, g, b]` or `[x, y, z, r, g, b, x', y', z']`.
        """
        self.features: np.ndarray = features
        """:field
        N ground-truth labels.
        """
        self.labels: np.ndarray = labels
        """:field
        An N×3 array of the original (never augmented) positions in meters.
        """
        self.world_positions: np.ndarray = world_positions
        """:field
        N indices into the parent cloud.
        """
        self.source_indices: np.ndarray = source_indices
        """:field
        An N×3 array of colors, or None.
        """
        self.colors: Optional[np.ndarray] = colors

    def __len__(self) -> int:
        return self.features.shape[0]

    def with_features(self, features: np.ndarray) -> "SampledBlock":
        """
        :param features: A new N×D feature matrix.

        :return: A copy of this block with different features.
        """

        return SampledBlock(block_id=self.block_id, features=features, labels=self.labels,
                            world_positions=self.world_positions, source_indices=self.source_indices,
                            colors=self.colors)
