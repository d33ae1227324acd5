from pointseg.metrics.confusion_matrix import ConfusionMatrix
from pointseg.metrics.segmentation_metrics import SegmentationMetrics, compute_metrics
