import numpy as np
from pointseg.diffcore.ops import gather_rows, segment_mean, sum_all
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.row_distance import row_distance


def centroid_loss(x: Value, labels: np.ndarray, config: LossConfig) -> Value:
    """
    The sum over all points of the distance between a point's feature and the mean feature of its class. The class means are computed from `x` and are differentiable.

    ```python
    import numpy as np
    from pointseg.diffcore.value import Value
    from pointseg.losses.centroid_loss import centroid_loss
    from pointseg.losses.loss_config import LossConfig

    x = Value(np.array([[1.0, 0.0], [0.0, 1.0]]))
    print(round(centroid_loss(x, np.array([0, 0]), LossConfig()).item(), 4)) # 0.5858
    ```

    :param x: N×F features.
    :param labels: N class labels. Only the classes that are present get a centroid.
    :param config: The loss parameters.

    :return: A scalar value.
    """

    labels = np.asarray(labels, dtype=np.int64)
    if labels.shape != (x.shape[0],):
        raise ValidationError(f"centroid_loss(): expected {x.shape[0]} labels, got {labels.shape}")
    classes, members = np.unique(labels, return_inverse=True)
    centroids = segment_mean(x, members, len(classes))
    return sum_all(row_distance(x, gather_rows(centroids, members), metric=config.cent_distance))
