import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union
import numpy as np
from tqdm import tqdm
from pointseg.dataio.blocks import split_into_blocks, take_points
from pointseg.dataio.features import compute_input_features
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.point_cloud_io import load_dataset, save_point_cloud
from pointseg.errors import ValidationError
from pointseg.metrics.confusion_matrix import ConfusionMatrix
from pointseg.metrics.segmentation_metrics import compute_metrics
from pointseg.pipeline.checkpoint import load_checkpoint
from pointseg.pipeline.evaluation_report import EvaluationReport
from pointseg.pipeline.segmentation_model import SegmentationModel
from pointseg.pipeline.train_config import TrainConfig
from pointseg.util import get_rng

logger = logging.getLogger(__name__)


def predict_cloud(model: SegmentationModel, cloud: PointCloud, train_config: TrainConfig,
                  rng: np.random.RandomState, covers: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """
    Predict a label for every point of a scene.

    Each block is covered by a random permutation of its points, cut into chunks of `points_per_block` points. A short last chunk is filled with randomly chosen points of the block; the filler points don't count as predictions. Each cover predicts every point of the block exactly once. The logits of all covers are averaged per point.

    :param model: The model.
    :param cloud: The scene.
    :param train_config: The train config. Sets the block size, stride, and points per block.
    :param rng: The random number generator of sampling and k-means.
    :param covers: The number of covers per block.

    :return: Tuple: the N predicted labels, the number of predictions of each point.
    """

    if cloud.num_classes != model.config.num_classes:
        raise ValidationError(f"Scene {cloud.scene_id} has {cloud.num_classes} classes but the model has "
                              f"{model.config.num_classes}")
    if covers < 1:
        raise ValidationError(f"Invalid number of covers: {covers}")
    n_points = train_config.points_per_block
    if n_points < 2:
        raise ValidationError(f"Evaluation needs at least 2 points per block, got {n_points}")
    room_bbox = cloud.room_bbox()
    sums = np.zeros((len(cloud), model.config.num_classes))
    counts = np.zeros(len(cloud), dtype=np.int64)
    for block in split_into_blocks(cloud, block_size=train_config.block_size, stride=train_config.stride):
        count = len(block)
        for _ in range(covers):
            order = rng.permutation(count)
            for start in range(0, count, n_points):
                chosen = order[start:start + n_points]
                num_chosen = chosen.shape[0]
                if num_chosen < n_points:
                    chosen = np.concatenate([chosen, rng.choice(count, size=n_points - num_chosen, replace=True)])
                source = block.point_indices[chosen]
                sampled = take_points(block.block_id, cloud, source)
                features = compute_input_features(sampled, room_bbox, model.config.feature_mode)
                logits = model.predict(features=features, world_positions=sampled.world_positions, rng=rng)
                sums[source[:num_chosen]] += logits[:num_chosen]
                counts[source[:num_chosen]] += 1
    if np.any(counts == 0):
        raise ValidationError(f"{int(np.sum(counts == 0))} point(s) of scene {cloud.scene_id} aren't in any block")
    return np.argmax(sums / counts[:, None], axis=1), counts


def evaluate_clouds(model: SegmentationModel, clouds: List[PointCloud], train_config: TrainConfig,
                    covers: int = 1, progress: bool = True) -> EvaluationReport:
    """
    :param model: The model.
    :param clouds: The scenes.
    :param train_config: The train config. Sets the block size, stride, points per block, and evaluation seed.
    :param covers: The number of covers per block.
    :param progress: If True, show a progress bar.

    :return: An `EvaluationReport`.
    """

    rng = get_rng(train_config.eval_seed)
    cm = ConfusionMatrix(model.config.num_classes)
    predictions: Dict[str, np.ndarray] = dict()
    coverage: Dict[str, np.ndarray] = dict()
    pbar = tqdm(total=len(clouds), disable=not progress)
    for cloud in clouds:
        labels, counts = predict_cloud(model=model, cloud=cloud, train_config=train_config, rng=rng, covers=covers)
        cm.accumulate(labels, cloud.labels)
        predictions[cloud.scene_id] = labels
        coverage[cloud.scene_id] = counts
        pbar.update(1)
    pbar.close()
    metrics = compute_metrics(cm)
    logger.info(f"Evaluated {metrics.num_points} points: oAcc={metrics.o_acc:.4f} mIoU={metrics.m_iou:.4f}")
    return EvaluationReport(confusion_matrix=cm, metrics=metrics, predictions=predictions, coverage=coverage)


def evaluate(data_path: Union[str, Path], checkpoint_path: Union[str, Path],
             train_config: Optional[TrainConfig] = None, covers: int = 1, progress: bool = True) -> EvaluationReport:
    """
    Evaluate a checkpoint on a dataset.

    :param data_path: A point file or a directory of point files.
    :param checkpoint_path: The path to the checkpoint.
    :param train_config: The train config. If None, use the checkpoint's train config (or the defaults).
    :param covers: The number of covers per block.
    :param progress: If True, show a progress bar.

    :return: An `EvaluationReport`.
    """

    model, train_config = _load(checkpoint_path, train_config)
    clouds = load_dataset(data_path, num_classes=model.config.num_classes)
    return evaluate_clouds(model=model, clouds=clouds, train_config=train_config, covers=covers, progress=progress)


def predict(data_path: Union[str, Path], checkpoint_path: Union[str, Path], out_path: Union[str, Path],
            train_config: Optional[TrainConfig] = None, covers: int = 1, progress: bool = True) -> EvaluationReport:
    """
    Predict labels and write them as an extra column: `x y z [r g b] label prediction`. Point order is preserved.

    :param data_path: A point file or a directory of point files.
    :param checkpoint_path: The path to the checkpoint.
    :param out_path: The output file if `data_path` is a file, or the output directory if it's a directory.
    :param train_config: The train config. If None, use the checkpoint's train config (or the defaults).
    :param covers: The number of covers per block.
    :param progress: If True, show a progress bar.

    :return: An `EvaluationReport` of the written predictions.
    """

    data_path = Path(data_path)
    out_path = Path(out_path)
    model, train_config = _load(checkpoint_path, train_config)
    clouds = load_dataset(data_path, num_classes=model.config.num_classes)
    report = evaluate_clouds(model=model, clouds=clouds, train_config=train_config, covers=covers, progress=progress)
    for cloud in clouds:
        path = out_path.joinpath(f"{cloud.scene_id}.txt") if data_path.is_dir() else out_path
        save_point_cloud(cloud, path, predictions=report.predictions[cloud.scene_id])
        logger.info(f"Wrote predictions: {path}")
    return report


def _load(checkpoint_path: Union[str, Path],
          train_config: Optional[TrainConfig]) -> Tuple[SegmentationModel, TrainConfig]:
    checkpoint = load_checkpoint(checkpoint_path)
    if train_config is None:
        train_config = checkpoint.train_config if checkpoint.train_config is not None else TrainConfig()
    return checkpoint.model, train_config
