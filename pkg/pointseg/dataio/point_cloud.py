from typing import Optional
import numpy as np
from pointseg.errors import ValidationError


class PointCloud:
    """
    A scanned (or synthetic) scene: positions in meters, optional colors in [0, 1], and a semantic label per point.

    ```python
    import numpy as np
    from pointseg.dataio.point_cloud import PointCloud

    cloud = PointCloud(positions=np.zeros((1, 3)), colors=np.array([[1.0, 0, 0]]), labels=np.array([2]),
                       scene_id="room", num_classes=13)
    print(len(cloud)) # 1
    ```
    """

    def __init__(self, positions: np.ndarray, labels: np.ndarray, scene_id: str, num_classes: int,
                 colors: Optional[np.ndarray] = None):
        """
        :param positions: An N×3 array of positions in meters.
        :param labels: N integer labels in `[0, num_classes)`.
        :param scene_id: The name of the scene.
        :param num_classes: The number of semantic classes.
        :param colors: An N×3 array of colors in [0, 1]. Can be None.
        """

        """:field
        An N×3 array of positions in meters.
        """
        self.positions: np.ndarray = np.asarray(positions, dtype=np.float64).reshape(-1, 3)
        """:field
        N integer labels.
        """
        self.labels: np.ndarray = np.asarray(labels, dtype=np.int64).reshape(-1)
        """:field
        An N×3 array of colors in [0, 1], or None if the data has no color.
        """
        self.colors: Optional[np.ndarray] = None if colors is None else np.asarray(colors, dtype=np.float64).reshape(-1, 3)
        """:field
        The name of the scene.
        """
        self.scene_id: str = scene_id
        """:field
        The number of semantic classes.
        """
        self.num_classes: int = num_classes
        self._validate()

    def __len__(self) -> int:
        return self.positions.shape[0]

    @property
    def has_colors(self) -> bool:
        """
        :return: True if this cloud has per-point colors.
        """

        return self.colors is not None

    def room_bbox(self) -> np.ndarray:
        """
        :return: A 2×3 array: the minimum and maximum corner of all positions.
        """

        return np.stack([self.positions.min(axis=0), self.positions.max(axis=0)])

    def _validate(self) -> None:
        n = self.positions.shape[0]
        if self.labels.shape[0] != n:
            raise ValidationError(f"{self.scene_id}: {n} positions but {self.labels.shape[0]} labels")
        if not np.all(np.isfinite(self.positions)):
            raise ValidationError(f"{self.scene_id}: non-finite position")
        if n > 0 and (self.labels.min() < 0 or self.labels.max() >= self.num_classes):
            raise ValidationError(f"{self.scene_id}: label out of range [0, {self.num_classes}): "
                                  f"{self.labels.min()}..{self.labels.max()}")
        if self.colors is not None:
            if self.colors.shape[0] != n:
                raise ValidationError(f"{self.scene_id}: {n} positions but {self.colors.shape[0]} colors")
            if n > 0 and (self.colors.min() < 0 or self.colors.max() > 1):
                raise ValidationError(f"{self.scene_id}: colors outside [0, 1]")
