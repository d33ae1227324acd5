from typing import List, Optional
import numpy as np
from pointseg.errors import ValidationError
from pointseg.metrics.confusion_matrix import ConfusionMatrix


class SegmentationMetrics:
    """
    Overall accuracy, mean class accuracy, per-class IoU, and mean IoU.

    Classes with no ground truth points are excluded from mAcc. Classes with no ground truth points and no predictions are excluded from mIoU. Their per-class values are NaN.
    """

    def __init__(self, o_acc: float, m_acc: float, per_class_accuracy: np.ndarray, per_class_iou: np.ndarray,
                 m_iou: float, num_points: int):
        """:field
        The overall accuracy.
        """
        self.o_acc: float = o_acc
        """:field
        The mean class accuracy.
        """
        self.m_acc: float = m_acc
        """:field
        The accuracy of each class.
        """
        self.per_class_accuracy: np.ndarray = per_class_accuracy
        """:field
        The intersection-over-union of each class.
        """
        self.per_class_iou: np.ndarray = per_class_iou
        """:field
        The mean intersection-over-union.
        """
        self.m_iou: float = m_iou
        """:field
        The number of evaluated points.
        """
        self.num_points: int = num_points

    def to_text(self) -> str:
        """
        :return: The metrics as `key: value` lines.
        """

        lines = [f"points: {self.num_points}",
                 f"oAcc: {self.o_acc:.6f}",
                 f"mAcc: {self.m_acc:.6f}",
                 f"mIoU: {self.m_iou:.6f}"]
        for i, iou in enumerate(self.per_class_iou):
            lines.append(f"iou_{i}: {iou:.6f}")
        return "\n".join(lines)

    def to_table(self, class_names: Optional[List[str]] = None) -> str:
        """
        :param class_names: The name of each class. If None, classes are numbered.

        :return: A tab-separated table with one header row and one row of values: oAcc, mIoU, and the IoU of each class.
        """

        if class_names is None:
            class_names = [str(i) for i in range(len(self.per_class_iou))]
        if len(class_names) != len(self.per_class_iou):
            raise ValidationError(f"Got {len(class_names)} class names for {len(self.per_class_iou)} classes")
        header = ["oAcc", "mIoU"] + class_names
        row = [self.o_acc, self.m_iou] + self.per_class_iou.tolist()
        return "\t".join(header) + "\n" + "\t".join(f"{100 * v:.2f}" for v in row)


def compute_metrics(cm: ConfusionMatrix) -> SegmentationMetrics:
    """
    :param cm: A non-empty `ConfusionMatrix`.

    :return: `SegmentationMetrics`.
    """

    total = cm.total
    if total == 0:
        raise ValidationError("Can't compute metrics of an empty confusion matrix")
    counts = cm.counts.astype(np.float64)
    diagonal = np.diag(counts)
    ground_truth = counts.sum(axis=1)
    predicted = counts.sum(axis=0)
    union = ground_truth + predicted - diagonal
    with np.errstate(invalid="ignore", divide="ignore"):
        per_class_accuracy = np.where(ground_truth > 0, diagonal / ground_truth, np.nan)
        per_class_iou = np.where(union > 0, diagonal / union, np.nan)
    return SegmentationMetrics(o_acc=float(diagonal.sum() / total),
                               m_acc=float(np.nanmean(per_class_accuracy)),
                               per_class_accuracy=per_class_accuracy,
                               per_class_iou=per_class_iou,
                               m_iou=float(np.nanmean(per_class_iou)),
                               num_points=total)
