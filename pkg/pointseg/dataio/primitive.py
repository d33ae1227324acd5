from typing import List, Tuple
import numpy as np
from pointseg.errors import ValidationError


class Primitive:
    """
    An axis-aligned surface of a synthetic scene: either a plane (a rectangle with zero extent along one axis) or a box.
    A box's four side faces and its top face are sampled; the bottom face is hidden from a scanner and is skipped.
    """

    """:class_var
    The valid primitive kinds.
    """
    KINDS: List[str] = ["plane", "box"]

    def __init__(self, kind: str, class_id: int, bbox_min: np.ndarray, bbox_max: np.ndarray, density: float,
                 color: np.ndarray = None):
        """
        :param kind: `plane` or `box`.
        :param class_id: The semantic label of every point on this primitive.
        :param bbox_min: The minimum corner in meters.
        :param bbox_max: The maximum corner in meters.
        :param density: Points per square meter.
        :param color: The RGB color in [0, 1]. If None, defaults to gray.
        """

        """:field
        `plane` or `box`.
        """
        self.kind: str = kind
        """:field
        The semantic label of every point on this primitive.
        """
        self.class_id: int = class_id
        """:field
        The minimum corner in meters.
        """
        self.bbox_min: np.ndarray = np.asarray(bbox_min, dtype=np.float64)
        """:field
        The maximum corner in meters.
        """
        self.bbox_max: np.ndarray = np.asarray(bbox_max, dtype=np.float64)
        """:field
        Points per square meter.
        """
        self.density: float = density
        """:field
        The RGB color in [0, 1].
        """
        self.color: np.ndarray = np.array([0.5, 0.5, 0.5]) if color is None else np.asarray(color, dtype=np.float64)
        if self.kind not in Primitive.KINDS:
            raise ValidationError(f"Invalid primitive kind: {self.kind}")
        if self.density <= 0:
            raise ValidationError(f"Invalid density: {self.density}")
        if self.class_id < 0:
            raise ValidationError(f"Invalid class: {self.class_id}")
        extent = self.bbox_max - self.bbox_min
        if np.any(extent < 0):
            raise ValidationError(f"Invalid bounds: {self.bbox_min} {self.bbox_max}")
        flat = int(np.sum(extent == 0))
        if self.kind == "plane" and flat != 1:
            raise ValidationError(f"A plane needs exactly one flat axis: {self.bbox_min} {self.bbox_max}")
        if self.kind == "box" and flat != 0:
            raise ValidationError(f"A box can't be flat: {self.bbox_min} {self.bbox_max}")
        if np.any(self.color < 0) or np.any(self.color > 1):
            raise ValidationError(f"Invalid color: {self.color}")

    def faces(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        """
        :return: The (minimum corner, maximum corner) of each sampled rectangle.
        """

        if self.kind == "plane":
            return [(self.bbox_min, self.bbox_max)]
        lo = self.bbox_min
        hi = self.bbox_max
        faces: List[Tuple[np.ndarray, np.ndarray]] = list()
        # Side faces.
        for axis in [0, 1]:
            for value in [lo[axis], hi[axis]]:
                a = lo.copy()
                b = hi.copy()
                a[axis] = value
                b[axis] = value
                faces.append((a, b))
        # Top face.
        a = lo.copy()
        a[2] = hi[2]
        faces.append((a, hi.copy()))
        return faces
