import numpy as np


class Block:
    """
    A cell of a scene on the ground (x, y) plane. A block only stores indices into its parent point cloud.
    """

    def __init__(self, block_id: str, point_indices: np.ndarray, bbox_min: np.ndarray, bbox_max: np.ndarray,
                 block_size: float):
        """
        :param block_id: A unique name: the scene ID and the cell's grid coordinates.
        :param point_indices: Indices into the parent cloud.
        :param bbox_min: The minimum corner of the block in meters.
        :param bbox_max: The maximum corner of the block in meters.
        :param block_size: The ground-plane edge length in meters.
        """

        """:field
        A unique name: the scene ID and the cell's grid coordinates.
        """
        self.block_id: str = block_id
        """:field
        Indices into the parent cloud.
        """
        self.point_indices: np.ndarray = np.asarray(point_indices, dtype=np.int64)
        """:field
        The minimum corner of the block in meters.
        """
        self.bbox_min: np.ndarray = np.asarray(bbox_min, dtype=np.float64)
        """:field
        The maximum corner of the block in meters.
        """
        self.bbox_max: np.ndarray = np.asarray(bbox_max, dtype=np.float64)
        """:field
        The ground-plane edge length in meters.
        """
        self.block_size: float = block_size

    def __len__(self) -> int:
        return self.point_indices.shape[0]
