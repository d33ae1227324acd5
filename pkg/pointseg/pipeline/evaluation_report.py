from typing import Dict
import numpy as np
from pointseg.metrics.confusion_matrix import ConfusionMatrix
from pointseg.metrics.segmentation_metrics import SegmentationMetrics


class EvaluationReport:
    """
    The predictions of every evaluated point and the resulting metrics.
    """

    def __init__(self, confusion_matrix: ConfusionMatrix, metrics: SegmentationMetrics,
                 predictions: Dict[str, np.ndarray], coverage: Dict[str, np.ndarray]):
        """:field
        The confusion matrix of every scene.
        """
        self.confusion_matrix: ConfusionMatrix = confusion_matrix
        """:field
        The metrics.
        """
        self.metrics: SegmentationMetrics = metrics
        """:field
        The predicted label of every point, keyed by scene ID. Point order matches the scene.
        """
        self.predictions: Dict[str, np.ndarray] = predictions
        """:field
        The number of forward passes that predicted each point, keyed by scene ID.
        """
        self.coverage: Dict[str, np.ndarray] = coverage
