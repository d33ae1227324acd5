import numpy as np
from pointseg.errors import ValidationError


class ConfusionMatrix:
    """
    Point counts per (ground truth, prediction) class pair. `counts[g][p]` is the number of points with ground truth `g` that were predicted as `p`.

    ```python
    import numpy as np
    from pointseg.metrics.confusion_matrix import ConfusionMatrix

    cm = ConfusionMatrix(num_classes=3)
    cm.accumulate(predictions=np.array([0, 1, 1]), labels=np.array([0, 1, 2]))
    print(cm.counts[2][1]) # 1
    ```

    Accumulation is associative and commutative, so matrices of disjoint sets of points can be combined with `merge()`.
    """

    def __init__(self, num_classes: int):
        """
        :param num_classes: The number of classes C.
        """

        if num_classes < 1:
            raise ValidationError(f"Invalid number of classes: {num_classes}")
        """:field
        The number of classes C.
        """
        self.num_classes: int = num_classes
        """:field
        The C×C counts.
        """
        self.counts: np.ndarray = np.zeros((num_classes, num_classes), dtype=np.int64)

    def accumulate(self, predictions: np.ndarray, labels: np.ndarray) -> "ConfusionMatrix":
        """
        Add points to the matrix.

        :param predictions: N predicted classes.
        :param labels: N ground truth classes.

        :return: This matrix.
        """

        predictions = np.asarray(predictions, dtype=np.int64)
        labels = np.asarray(labels, dtype=np.int64)
        if predictions.shape != labels.shape or predictions.ndim != 1:
            raise ValidationError(f"Shape mismatch: {predictions.shape} predictions vs. {labels.shape} labels")
        for name, values in [("label", labels), ("prediction", predictions)]:
            bad = (values < 0) | (values >= self.num_classes)
            if np.any(bad):
                raise ValidationError(f"Out-of-range {name}: {int(values[bad][0])} (number of classes: {self.num_classes})")
        self.counts += np.bincount(labels * self.num_classes + predictions,
                                   minlength=self.num_classes * self.num_classes).reshape(self.num_classes,
                                                                                          self.num_classes)
        return self

    def merge(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        """
        :param other: Another matrix with the same number of classes.

        :return: A new matrix with the summed counts.
        """

        if other.num_classes != self.num_classes:
            raise ValidationError(f"Can't merge a {other.num_classes}-class matrix into a {self.num_classes}-class matrix")
        merged = ConfusionMatrix(self.num_classes)
        merged.counts = self.counts + other.counts
        return merged

    @property
    def total(self) -> int:
        """
        :return: The number of accumulated points.
        """

        return int(self.counts.sum())
