from pathlib import Path
from typing import List, Optional
from pointseg.diffcore.optimizer_state import OptimizerState
from pointseg.pipeline.epoch_log import EpochLog
from pointseg.pipeline.segmentation_model import SegmentationModel


class TrainResult:
    """
    The trained model and the training history.
    """

    def __init__(self, model: SegmentationModel, optimizer_state: OptimizerState, logs: List[EpochLog],
                 step_losses: List[float], checkpoint_path: Optional[Path]):
        """:field
        The trained model.
        """
        self.model: SegmentationModel = model
        """:field
        The final Adam state.
        """
        self.optimizer_state: OptimizerState = optimizer_state
        """:field
        One log per epoch of this run.
        """
        self.logs: List[EpochLog] = logs
        """:field
        The total loss of every block of this run, in training order.
        """
        self.step_losses: List[float] = step_losses
        """:field
        The path to the final checkpoint, or None if no output directory was given.
        """
        self.checkpoint_path: Optional[Path] = checkpoint_path
