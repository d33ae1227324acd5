import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union
import numpy as np
from tqdm import tqdm
from pointseg.dataio.block import Block
from pointseg.dataio.blocks import sample_block, split_into_blocks
from pointseg.dataio.features import augment_translate, compute_input_features
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.point_cloud_io import load_dataset, save_point_cloud
from pointseg.dataio.sampled_block import SampledBlock
from pointseg.diffcore.adam import optimizer_step
from pointseg.diffcore.optimizer_state import OptimizerState
from pointseg.errors import NumericalError, ValidationError
from pointseg.metrics.confusion_matrix import ConfusionMatrix
from pointseg.metrics.segmentation_metrics import compute_metrics
from pointseg.pipeline.checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from pointseg.pipeline.epoch_progress import EpochProgress
from pointseg.pipeline.epoch_log import EpochLog
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.segmentation_model import SegmentationModel
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.train_result import TrainResult
from pointseg.util import get_rng, get_rng_state, set_rng_state

logger = logging.getLogger(__name__)

# The file name of the final checkpoint in the output directory.
FINAL_CHECKPOINT_NAME = "model.ckpt"
# The file name of the per-epoch log in the output directory.
TRAIN_LOG_NAME = "train_log.tsv"


def training_blocks(clouds: List[PointCloud], train_config: TrainConfig) -> List[Tuple[Block, PointCloud]]:
    """
    :param clouds: The training scenes.
    :param train_config: The train config.

    :return: Every block with at least `min_block_points` points, paired with its scene.
    """

    blocks: List[Tuple[Block, PointCloud]] = list()
    for cloud in clouds:
        for block in split_into_blocks(cloud, block_size=train_config.block_size, stride=train_config.stride,
                                       min_points=train_config.min_block_points):
            blocks.append((block, cloud))
    if len(blocks) == 0:
        raise ValidationError(f"No block has at least {train_config.min_block_points} points")
    return blocks


def prepare_block(block: Block, cloud: PointCloud, model_config: ModelConfig, train_config: TrainConfig,
                  rng: np.random.RandomState) -> SampledBlock:
    """
    Sample a block, compute its input features, and (optionally) augment it.

    :param block: The block.
    :param cloud: The block's scene.
    :param model_config: The model config.
    :param train_config: The train config.
    :param rng: The random number generator.

    :return: A sampled block ready for a forward pass.
    """

    sampled = sample_block(block, cloud, train_config.points_per_block, rng)
    sampled = sampled.with_features(compute_input_features(sampled, cloud.room_bbox(), model_config.feature_mode))
    if train_config.augment:
        sampled = augment_translate(sampled, rng, train_config.max_offset)
    return sampled


def train_on_clouds(clouds: List[PointCloud], model_config: ModelConfig, train_config: TrainConfig,
                    out_dir: Optional[Union[str, Path]] = None, resume: Optional[Union[str, Path]] = None,
                    progress: bool = True) -> TrainResult:
    """
    Train a model on point clouds that are already in memory.

    Every epoch shuffles the blocks. Each block is sampled, augmented, and passed forward; the total loss is back-propagated with a weight of `1 / blocks_per_batch`. After every `blocks_per_batch` blocks (and at the end of the epoch) Adam updates the parameters.

    :param clouds: The training scenes.
    :param model_config: The model config. Ignored if `resume` is set.
    :param train_config: The train config.
    :param out_dir: If not None, checkpoints and the training log are written here.
    :param resume: If not None, the path to a checkpoint to continue training from.
    :param progress: If True, show a progress bar.

    :return: A `TrainResult`.
    """

    rng = get_rng(train_config.seed)
    resumed_progress: Optional[EpochProgress] = None
    if resume is not None:
        checkpoint = load_checkpoint(resume)
        model = checkpoint.model
        model_config = model.config
        state = checkpoint.optimizer_state if checkpoint.optimizer_state is not None else OptimizerState()
        if checkpoint.rng_state is not None:
            set_rng_state(rng, checkpoint.rng_state)
        start_epoch = checkpoint.epoch
        seed = checkpoint.seed
        resumed_progress = checkpoint.epoch_progress
        if resumed_progress is None:
            logger.info(f"Resuming from {resume} at epoch {start_epoch}")
        else:
            logger.info(f"Resuming from {resume} at epoch {start_epoch}, block {resumed_progress.position}")
    else:
        model = SegmentationModel(config=model_config, seed=train_config.seed)
        state = OptimizerState(learning_rate=train_config.learning_rate, beta1=train_config.beta1,
                               beta2=train_config.beta2, epsilon=train_config.epsilon)
        start_epoch = 0
        seed = train_config.seed
    for cloud in clouds:
        if cloud.num_classes != model_config.num_classes:
            raise ValidationError(f"Scene {cloud.scene_id} has {cloud.num_classes} classes but the model has "
                                  f"{model_config.num_classes}")
    blocks = training_blocks(clouds, train_config)
    logger.info(f"Training on {len(blocks)} blocks from {len(clouds)} scene(s), {len(model.params)} parameter arrays")
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    scale = np.asarray(1.0 / train_config.blocks_per_batch, dtype=model_config.np_dtype)
    logs: List[EpochLog] = list()
    step_losses: List[float] = list()
    checkpoint_path: Optional[Path] = None
    pbar = tqdm(total=max(0, train_config.epochs - start_epoch), disable=not progress)
    for epoch in range(start_epoch, train_config.epochs):
        state.learning_rate = train_config.learning_rate_at(epoch)
        sums = np.zeros(4)
        cm = ConfusionMatrix(model_config.num_classes)
        first = 0
        if resumed_progress is not None and epoch == start_epoch:
            if len(resumed_progress.order) != len(blocks):
                raise ValidationError(f"The checkpoint was written while training on {len(resumed_progress.order)} "
                                      f"blocks but there are {len(blocks)} blocks")
            order = resumed_progress.order
            first = resumed_progress.position
            sums += resumed_progress.loss_sums
            cm.counts += resumed_progress.confusion_counts
        else:
            order = rng.permutation(len(blocks))
        for position in range(first, len(order)):
            block, cloud = blocks[order[position]]
            sampled = prepare_block(block, cloud, model_config, train_config, rng)
            output = model.forward(features=sampled.features, world_positions=sampled.world_positions, rng=rng)
            report = model.loss(output, sampled.labels, rng)
            if not np.isfinite(report.total):
                dump = _dump_block(sampled, cloud, out_dir)
                raise NumericalError(f"Non-finite loss in block {sampled.block_id} (epoch {epoch}): {report}"
                                     + ("" if dump is None else f"; block written to {dump}"))
            report.value.backward(scale)
            sums += [report.l_class, report.l_pair, report.l_cent, report.total]
            step_losses.append(report.total)
            cm.accumulate(np.argmax(output.logits.data, axis=1), sampled.labels)
            if (position + 1) % train_config.blocks_per_batch == 0 or position == len(order) - 1:
                optimizer_step(model.params, state)
                # A step that ends the epoch is saved below, after the epoch is logged.
                if _step_checkpoint_due(out_dir, train_config, state) and position < len(order) - 1:
                    progress_checkpoint = Checkpoint(model=model, train_config=train_config, optimizer_state=state,
                                                     epoch=epoch, rng_state=get_rng_state(rng), seed=seed,
                                                     epoch_progress=EpochProgress(order=order, position=position + 1,
                                                                                  loss_sums=sums,
                                                                                  confusion_counts=cm.counts))
                    save_checkpoint(progress_checkpoint, out_dir.joinpath(f"step_{state.step:06d}.ckpt"))
        means = sums / len(blocks)
        log = EpochLog(epoch=epoch, l_class=float(means[0]), l_pair=float(means[1]), l_cent=float(means[2]),
                       total=float(means[3]), o_acc=compute_metrics(cm).o_acc, learning_rate=state.learning_rate,
                       steps=state.step)
        logs.append(log)
        logger.info(str(log))
        pbar.update(1)
        if out_dir is not None:
            _append_log(out_dir.joinpath(TRAIN_LOG_NAME), log)
            completed = epoch + 1
            checkpoint = Checkpoint(model=model, train_config=train_config, optimizer_state=state, epoch=completed,
                                    rng_state=get_rng_state(rng), seed=seed)
            if train_config.checkpoint_every > 0 and completed % train_config.checkpoint_every == 0:
                save_checkpoint(checkpoint, out_dir.joinpath(f"epoch_{completed:04d}.ckpt"))
            if _step_checkpoint_due(out_dir, train_config, state):
                save_checkpoint(checkpoint, out_dir.joinpath(f"step_{state.step:06d}.ckpt"))
            if completed == train_config.epochs:
                checkpoint_path = out_dir.joinpath(FINAL_CHECKPOINT_NAME)
                save_checkpoint(checkpoint, checkpoint_path)
    pbar.close()
    return TrainResult(model=model, optimizer_state=state, logs=logs, step_losses=step_losses,
                       checkpoint_path=checkpoint_path)


def train(data_path: Union[str, Path], model_config: ModelConfig, train_config: TrainConfig,
          out_dir: Optional[Union[str, Path]] = None, resume: Optional[Union[str, Path]] = None,
          progress: bool = True) -> TrainResult:
    """
    Train a model on a dataset on disk. See `train_on_clouds()`.

    :param data_path: A point file or a directory of point files.
    :param model_config: The model config.
    :param train_config: The train config.
    :param out_dir: If not None, checkpoints and the training log are written here.
    :param resume: If not None, the path to a checkpoint to continue training from.
    :param progress: If True, show a progress bar.

    :return: A `TrainResult`.
    """

    num_classes = model_config.num_classes if resume is None else load_checkpoint(resume).model.config.num_classes
    clouds = load_dataset(data_path, num_classes=num_classes)
    return train_on_clouds(clouds=clouds, model_config=model_config, train_config=train_config, out_dir=out_dir,
                           resume=resume, progress=progress)


def _step_checkpoint_due(out_dir: Optional[Path], train_config: TrainConfig, state: OptimizerState) -> bool:
    return out_dir is not None and train_config.checkpoint_every_steps > 0 and \
        state.step % train_config.checkpoint_every_steps == 0


def _append_log(path: Path, log: EpochLog) -> None:
    header = not path.exists()
    with path.open("a", encoding="utf-8") as f:
        if header:
            f.write("epoch\tl_class\tl_pair\tl_cent\ttotal\toAcc\tlearning_rate\tsteps\n")
        f.write(f"{log.epoch}\t{log.l_class!r}\t{log.l_pair!r}\t{log.l_cent!r}\t{log.total!r}\t{log.o_acc!r}\t"
                f"{log.learning_rate!r}\t{log.steps}\n")


def _dump_block(sampled: SampledBlock, cloud: PointCloud, out_dir: Optional[Path]) -> Optional[Path]:
    if out_dir is None:
        return None
    path = out_dir.joinpath("nonfinite_" + sampled.block_id.replace(":", "_").replace("/", "_") + ".txt")
    save_point_cloud(PointCloud(positions=sampled.world_positions, labels=sampled.labels, scene_id=sampled.block_id,
                                num_classes=cloud.num_classes, colors=sampled.colors), path)
    return path
