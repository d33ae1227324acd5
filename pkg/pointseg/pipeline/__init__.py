from pointseg.pipeline.config_file import parse_config_text, read_config_file, write_config_text
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.run_config import load_run_config, split_config
from pointseg.pipeline.model_output import ModelOutput
from pointseg.pipeline.segmentation_model import SegmentationModel, build_model
from pointseg.pipeline.epoch_progress import EpochProgress
from pointseg.pipeline.checkpoint import Checkpoint, save_checkpoint, load_checkpoint, load_model
from pointseg.pipeline.epoch_log import EpochLog
from pointseg.pipeline.train_result import TrainResult
from pointseg.pipeline.trainer import train, train_on_clouds
from pointseg.pipeline.evaluation_report import EvaluationReport
from pointseg.pipeline.evaluator import evaluate, evaluate_clouds, predict, predict_cloud
from pointseg.pipeline.ablation_setting import AblationSetting
from pointseg.pipeline.ablation import AblationRow, ablation_config, ablation_table, run_ablation
