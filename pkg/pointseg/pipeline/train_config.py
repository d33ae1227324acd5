from typing import Dict, List, Optional
from pointseg.constants import INDOOR_BLOCK_SIZE, INDOOR_POINTS_PER_BLOCK, MIN_BLOCK_POINTS, \
    MAX_TRANSLATION_OFFSET, LEARNING_RATE, BETA1, BETA2, EPSILON, EVAL_SEED
from pointseg.errors import ValidationError
from pointseg.util import parse_bool


class TrainConfig:
    """
    Training, sampling, and optimizer settings. The config file keys are the constructor parameter names.
    """

    # Every config file key this class reads.
    KEYS: List[str] = ["epochs", "blocks_per_batch", "points_per_block", "block_size", "stride", "min_block_points",
                       "seed", "augment", "max_offset", "learning_rate", "beta1", "beta2", "epsilon",
                       "lr_decay_rate", "lr_decay_epochs", "checkpoint_every", "eval_seed",
                       "checkpoint_every_steps"]

    def __init__(self, epochs: int = 1, blocks_per_batch: int = 1, points_per_block: int = INDOOR_POINTS_PER_BLOCK,
                 block_size: float = INDOOR_BLOCK_SIZE, stride: Optional[float] = None,
                 min_block_points: int = MIN_BLOCK_POINTS, seed: int = 0, augment: bool = True,
                 max_offset: float = MAX_TRANSLATION_OFFSET, learning_rate: float = LEARNING_RATE,
                 beta1: float = BETA1, beta2: float = BETA2, epsilon: float = EPSILON, lr_decay_rate: float = 1.0,
                 lr_decay_epochs: int = 0, checkpoint_every: int = 0, eval_seed: int = EVAL_SEED,
                 checkpoint_every_steps: int = 0):
        """
        :param epochs: The number of passes over every block.
        :param blocks_per_batch: Gradients of this many blocks are accumulated before each optimizer step.
        :param points_per_block: The number of points sampled per block.
        :param block_size: The ground-plane edge length of a block in meters.
        :param stride: The distance between block origins. If None, equals `block_size`.
        :param min_block_points: Blocks with fewer points are skipped during training.
        :param seed: The seed of model initialization, shuffling, sampling, and augmentation.
        :param augment: If True, apply random ground-plane translations.
        :param max_offset: The maximum translation per axis in meters.
        :param learning_rate: The initial Adam learning rate.
        :param beta1: The Adam first moment decay.
        :param beta2: The Adam second moment decay.
        :param epsilon: The Adam epsilon.
        :param lr_decay_rate: The learning rate is multiplied by this every `lr_decay_epochs` epochs.
        :param lr_decay_epochs: The step decay interval. 0 disables decay.
        :param checkpoint_every: Write a checkpoint every this many epochs. 0 writes only the final checkpoint.
        :param eval_seed: The seed of evaluation sampling and evaluation k-means.
        :param checkpoint_every_steps: Write a checkpoint after every this many optimizer steps, including steps in the middle of an epoch. 0 disables step checkpoints.
        """

        for name, value in [("epochs", epochs), ("blocks_per_batch", blocks_per_batch),
                            ("points_per_block", points_per_block)]:
            if value < 1:
                raise ValidationError(f"Invalid {name}: {value}")
        if block_size <= 0:
            raise ValidationError(f"Invalid block_size: {block_size}")
        if stride is not None and stride <= 0:
            raise ValidationError(f"Invalid stride: {stride}")
        if min_block_points < 1:
            raise ValidationError(f"Invalid min_block_points: {min_block_points}")
        if max_offset < 0:
            raise ValidationError(f"Invalid max_offset: {max_offset}")
        if learning_rate <= 0 or not 0 <= beta1 < 1 or not 0 <= beta2 < 1 or epsilon <= 0:
            raise ValidationError(f"Invalid Adam settings: learning_rate={learning_rate} beta1={beta1} "
                                  f"beta2={beta2} epsilon={epsilon}")
        if lr_decay_rate <= 0 or lr_decay_epochs < 0:
            raise ValidationError(f"Invalid learning rate schedule: lr_decay_rate={lr_decay_rate} "
                                  f"lr_decay_epochs={lr_decay_epochs}")
        if checkpoint_every < 0:
            raise ValidationError(f"Invalid checkpoint_every: {checkpoint_every}")
        if checkpoint_every_steps < 0:
            raise ValidationError(f"Invalid checkpoint_every_steps: {checkpoint_every_steps}")
        """:field
        The number of passes over every block.
        """
        self.epochs: int = epochs
        """:field
        Gradients of this many blocks are accumulated before each optimizer step.
        """
        self.blocks_per_batch: int = blocks_per_batch
        """:field
        The number of points sampled per block.
        """
        self.points_per_block: int = points_per_block
        """:field
        The ground-plane edge length of a block in meters.
        """
        self.block_size: float = block_size
        """:field
        The distance between block origins. If None, equals `block_size`.
        """
        self.stride: Optional[float] = stride
        """:field
        Blocks with fewer points are skipped during training.
        """
        self.min_block_points: int = min_block_points
        """:field
        The seed of model initialization, shuffling, sampling, and augmentation.
        """
        self.seed: int = seed
        """:field
        If True, apply random ground-plane translations.
        """
        self.augment: bool = augment
        """:field
        The maximum translation per axis in meters.
        """
        self.max_offset: float = max_offset
        """:field
        The initial Adam learning rate.
        """
        self.learning_rate: float = learning_rate
        """:field
        The Adam first moment decay.
        """
        self.beta1: float = beta1
        """:field
        The Adam second moment decay.
        """
        self.beta2: float = beta2
        """:field
        The Adam epsilon.
        """
        self.epsilon: float = epsilon
        """:field
        The learning rate is multiplied by this every `lr_decay_epochs` epochs.
        """
        self.lr_decay_rate: float = lr_decay_rate
        """:field
        The step decay interval. 0 disables decay.
        """
        self.lr_decay_epochs: int = lr_decay_epochs
        """:field
        Write a checkpoint every this many epochs. 0 writes only the final checkpoint.
        """
        self.checkpoint_every: int = checkpoint_every
        """:field
        The seed of evaluation sampling and evaluation k-means.
        """
        self.eval_seed: int = eval_seed
        """:field
        Write a checkpoint after every this many optimizer steps. 0 disables step checkpoints.
        """
        self.checkpoint_every_steps: int = checkpoint_every_steps

    def learning_rate_at(self, epoch: int) -> float:
        """
        :param epoch: The zero-based epoch.

        :return: The step-decayed learning rate of that epoch.
        """

        if self.lr_decay_epochs == 0:
            return self.learning_rate
        return self.learning_rate * self.lr_decay_rate ** (epoch // self.lr_decay_epochs)

    def to_dict(self) -> Dict[str, str]:
        """
        :return: Every setting as config file text values.
        """

        values = {"epochs": str(self.epochs),
                  "blocks_per_batch": str(self.blocks_per_batch),
                  "points_per_block": str(self.points_per_block),
                  "block_size": repr(self.block_size),
                  "min_block_points": str(self.min_block_points),
                  "seed": str(self.seed),
                  "augment": str(self.augment).lower(),
                  "max_offset": repr(self.max_offset),
                  "learning_rate": repr(self.learning_rate),
                  "beta1": repr(self.beta1),
                  "beta2": repr(self.beta2),
                  "epsilon": repr(self.epsilon),
                  "lr_decay_rate": repr(self.lr_decay_rate),
                  "lr_decay_epochs": str(self.lr_decay_epochs),
                  "checkpoint_every": str(self.checkpoint_every),
                  "eval_seed": str(self.eval_seed),
                  "checkpoint_every_steps": str(self.checkpoint_every_steps)}
        if self.stride is not None:
            values["stride"] = repr(self.stride)
        return values

    @staticmethod
    def from_dict(values: Dict[str, str]) -> "TrainConfig":
        """
        :param values: Config file values. Missing keys get their defaults.

        :return: A train config.
        """

        unknown = [key for key in values if key not in TrainConfig.KEYS]
        if len(unknown) > 0:
            raise ValidationError(f"Unknown train config key(s): {', '.join(unknown)}")
        kwargs = dict()
        try:
            for key in ["epochs", "blocks_per_batch", "points_per_block", "min_block_points", "seed",
                        "lr_decay_epochs", "checkpoint_every", "eval_seed", "checkpoint_every_steps"]:
                if key in values:
                    kwargs[key] = int(values[key])
            for key in ["block_size", "stride", "max_offset", "learning_rate", "beta1", "beta2", "epsilon",
                        "lr_decay_rate"]:
                if key in values:
                    kwargs[key] = float(values[key])
        except ValueError as e:
            raise ValidationError(f"Invalid number in train config: {e}")
        if "augment" in values:
            kwargs["augment"] = parse_bool(values["augment"])
        return TrainConfig(**kwargs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TrainConfig) and self.to_dict() == other.to_dict()
