from .errors import PointSegError, ValidationError, NumericalError, CheckpointError
from .exit_code import ExitCode
from .dataio import PointCloud, load_point_cloud, save_point_cloud, load_dataset
from .pipeline import ModelConfig, TrainConfig, SegmentationModel, build_model, train, evaluate, predict, \
    save_checkpoint, load_checkpoint
