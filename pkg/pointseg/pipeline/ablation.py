import logging
from typing import List, Optional
from pointseg.constants import NUM_NF_MODULES
from pointseg.dataio.point_cloud import PointCloud
from pointseg.metrics.segmentation_metrics import SegmentationMetrics
from pointseg.pipeline.ablation_setting import AblationSetting
from pointseg.pipeline.evaluator import evaluate_clouds
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.trainer import train_on_clouds

logger = logging.getLogger(__name__)


class AblationRow:
    """
    The result of training and evaluating one ablation setting.
    """

    def __init__(self, setting: AblationSetting, train_o_acc: float, final_loss: float, metrics: SegmentationMetrics,
                 step_losses: List[float]):
        """:field
        The setting.
        """
        self.setting: AblationSetting = setting
        """:field
        The training accuracy of the last epoch.
        """
        self.train_o_acc: float = train_o_acc
        """:field
        The mean total loss of the last epoch.
        """
        self.final_loss: float = final_loss
        """:field
        The evaluation metrics on the training scenes.
        """
        self.metrics: SegmentationMetrics = metrics
        """:field
        The total loss of every training block.
        """
        self.step_losses: List[float] = step_losses


def ablation_config(base: ModelConfig, setting: AblationSetting) -> ModelConfig:
    """
    :param base: The full model's config. Its number of feature-space modules is kept unless the setting removes them.
    :param setting: The setting.

    :return: The config of the ablated model.
    """

    values = base.to_dict()
    num_nf = base.num_nf_modules if base.num_nf_modules > 0 else NUM_NF_MODULES
    values["num_nf_modules"] = str(0 if setting == AblationSetting.fn_only else num_nf)
    values["pair_loss_module"] = str(min(base.pair_loss_module, num_nf))
    values["use_nw_module"] = str(setting in (AblationSetting.fn_nf_pair_nw, AblationSetting.full)).lower()
    weights = base.loss.weights
    pair = weights[1] if setting in (AblationSetting.fn_nf_pair, AblationSetting.fn_nf_pair_nw,
                                     AblationSetting.full) else 0.0
    cent = weights[2] if setting == AblationSetting.full else 0.0
    values["loss_weights"] = f"{weights[0]!r} {pair!r} {cent!r}"
    return ModelConfig.from_dict(values)


def run_ablation(clouds: List[PointCloud], base: ModelConfig, train_config: TrainConfig,
                 settings: Optional[List[AblationSetting]] = None, progress: bool = False) -> List[AblationRow]:
    """
    Train and evaluate each setting with the same data, seed, and train config.

    :param clouds: The training scenes. Evaluation uses the same scenes.
    :param base: The full model's config.
    :param train_config: The train config.
    :param settings: The settings to run. If None, run all of them in order.
    :param progress: If True, show progress bars.

    :return: One row per setting.
    """

    if settings is None:
        settings = [s for s in AblationSetting]
    rows: List[AblationRow] = list()
    for setting in settings:
        logger.info(f"Ablation: {setting.name}")
        config = ablation_config(base, setting)
        result = train_on_clouds(clouds=clouds, model_config=config, train_config=train_config, progress=progress)
        report = evaluate_clouds(model=result.model, clouds=clouds, train_config=train_config, progress=progress)
        rows.append(AblationRow(setting=setting, train_o_acc=result.logs[-1].o_acc, final_loss=result.logs[-1].total,
                                metrics=report.metrics, step_losses=result.step_losses))
    return rows


def ablation_table(rows: List[AblationRow]) -> str:
    """
    :param rows: The ablation rows.

    :return: A tab-separated table: one row per setting with the training accuracy, the evaluation oAcc, mAcc and mIoU (in percent), and the final loss.
    """

    lines = ["setting\ttrain_oAcc\toAcc\tmAcc\tmIoU\tfinal_loss"]
    for row in rows:
        lines.append(f"{row.setting.name}\t{100 * row.train_o_acc:.2f}\t{100 * row.metrics.o_acc:.2f}\t"
                     f"{100 * row.metrics.m_acc:.2f}\t{100 * row.metrics.m_iou:.2f}\t{row.final_loss:.6f}")
    return "\n".join(lines)
