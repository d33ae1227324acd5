import logging
import os
import struct
from pathlib import Path
from typing import Dict, Optional, Tuple, Union
import numpy as np
from pointseg.constants import CHECKPOINT_MAGIC, CHECKPOINT_VERSION
from pointseg.diffcore.optimizer_state import OptimizerState
from pointseg.errors import CheckpointError, ValidationError
from pointseg.pipeline.config_file import parse_config_text, write_config_text
from pointseg.pipeline.epoch_progress import EpochProgress
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.segmentation_model import SegmentationModel
from pointseg.pipeline.train_config import TrainConfig

logger = logging.getLogger(__name__)

# Array dtypes that a checkpoint can store, keyed by their code in the file.
_DTYPES: Dict[int, np.dtype] = {0: np.dtype("<f8"), 1: np.dtype("<f4"), 2: np.dtype("<i8"), 3: np.dtype("<u4")}
_DTYPE_CODES: Dict[str, int] = {dtype.str: code for code, dtype in _DTYPES.items()}
_PARAM_PREFIX = "param."
_FIRST_MOMENT_PREFIX = "adam.m."
_SECOND_MOMENT_PREFIX = "adam.v."
_RNG_PREFIX = "rng."
_PROGRESS_ORDER = "progress.order"
_PROGRESS_LOSS_SUMS = "progress.loss_sums"
_PROGRESS_CONFUSION = "progress.confusion"


class Checkpoint:
    """
    Everything needed to rebuild a trained model or resume training.

    File layout (little-endian):

    1. The 8-byte magic string `PSEGCKPT`.
    2. The format version (uint32).
    3. The config text (uint32 byte length, then UTF-8 `key = value` lines).
    4. The number of arrays (uint32), then each array: name (uint16 byte length, then UTF-8), dtype code (uint8), number of dimensions (uint8), the shape (uint64 each), and the raw bytes.
    """

    def __init__(self, model: SegmentationModel, train_config: Optional[TrainConfig] = None,
                 optimizer_state: Optional[OptimizerState] = None, epoch: int = 0,
                 rng_state: Optional[Dict[str, np.ndarray]] = None, seed: int = 0,
                 epoch_progress: Optional[EpochProgress] = None, version: int = CHECKPOINT_VERSION):
        """
        :param model: The model with its parameters.
        :param train_config: The train config, or None.
        :param optimizer_state: The Adam state, or None.
        :param epoch: The number of completed epochs. If `epoch_progress` is not None, this is also the epoch in progress.
        :param rng_state: The state of the training random number generator, or None.
        :param seed: The seed the model was initialized with.
        :param epoch_progress: If not None, the checkpoint was written partway through epoch `epoch` and this is how far it got.
        :param version: The format version.
        """

        """:field
        The model with its parameters.
        """
        self.model: SegmentationModel = model
        """:field
        The train config, or None.
        """
        self.train_config: Optional[TrainConfig] = train_config
        """:field
        The Adam state, or None.
        """
        self.optimizer_state: Optional[OptimizerState] = optimizer_state
        """:field
        The number of completed epochs.
        """
        self.epoch: int = epoch
        """:field
        The state of the training random number generator, or None.
        """
        self.rng_state: Optional[Dict[str, np.ndarray]] = rng_state
        """:field
        The seed the model was initialized with.
        """
        self.seed: int = seed
        """:field
        If not None, the checkpoint was written partway through epoch `epoch` and this is how far it got.
        """
        self.epoch_progress: Optional[EpochProgress] = epoch_progress
        """:field
        The format version.
        """
        self.version: int = version


def save_checkpoint(checkpoint: Checkpoint, path: Union[str, Path]) -> None:
    """
    Write a checkpoint. The file is written to a temporary path first and then renamed, so `path` never holds a partial file.

    :param checkpoint: The checkpoint.
    :param path: The output path.
    """

    path = Path(path)
    values = dict(checkpoint.model.config.to_dict())
    if checkpoint.train_config is not None:
        values.update({f"train.{k}": v for k, v in checkpoint.train_config.to_dict().items()})
    values["epoch"] = str(checkpoint.epoch)
    values["seed"] = str(checkpoint.seed)
    arrays: Dict[str, np.ndarray] = {f"{_PARAM_PREFIX}{name}": data
                                     for name, data in checkpoint.model.params.snapshot().items()}
    state = checkpoint.optimizer_state
    if state is not None:
        values["optimizer.step"] = str(state.step)
        values["optimizer.learning_rate"] = repr(state.learning_rate)
        values["optimizer.beta1"] = repr(state.beta1)
        values["optimizer.beta2"] = repr(state.beta2)
        values["optimizer.epsilon"] = repr(state.epsilon)
        for name, m in state.first_moments.items():
            arrays[f"{_FIRST_MOMENT_PREFIX}{name}"] = m
        for name, v in state.second_moments.items():
            arrays[f"{_SECOND_MOMENT_PREFIX}{name}"] = v
    if checkpoint.rng_state is not None:
        arrays.update(checkpoint.rng_state)
    progress = checkpoint.epoch_progress
    if progress is not None:
        values["epoch.position"] = str(progress.position)
        arrays[_PROGRESS_ORDER] = progress.order
        arrays[_PROGRESS_LOSS_SUMS] = progress.loss_sums
        arrays[_PROGRESS_CONFUSION] = progress.confusion_counts
    config_bytes = write_config_text(values).encode("utf-8")
    chunks = [CHECKPOINT_MAGIC, struct.pack("<I", checkpoint.version), struct.pack("<I", len(config_bytes)),
              config_bytes, struct.pack("<I", len(arrays))]
    for name, array in arrays.items():
        array = np.ascontiguousarray(array)
        stored = array.dtype.newbyteorder("<")
        if stored.str not in _DTYPE_CODES:
            raise ValidationError(f"Can't store array {name} of type {array.dtype}")
        name_bytes = name.encode("utf-8")
        chunks.append(struct.pack("<H", len(name_bytes)))
        chunks.append(name_bytes)
        chunks.append(struct.pack("<BB", _DTYPE_CODES[stored.str], array.ndim))
        chunks.append(struct.pack(f"<{array.ndim}Q", *array.shape))
        chunks.append(array.astype(stored, copy=False).tobytes())
    path.parent.mkdir(parents=True, exist_ok=True)
    temp = path.with_name(path.name + ".tmp")
    temp.write_bytes(b"".join(chunks))
    os.replace(temp, path)
    logger.info(f"Wrote checkpoint: {path} (epoch {checkpoint.epoch})")


class _Reader:
    def __init__(self, data: bytes, path: Path):
        self.data: bytes = data
        self.path: Path = path
        self.offset: int = 0

    def read(self, count: int) -> bytes:
        if self.offset + count > len(self.data):
            raise CheckpointError(f"Truncated checkpoint: {self.path}")
        chunk = self.data[self.offset:self.offset + count]
        self.offset += count
        return chunk

    def unpack(self, fmt: str) -> Tuple:
        return struct.unpack(fmt, self.read(struct.calcsize(fmt)))


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    """
    :param path: The path to a checkpoint written by `save_checkpoint()`.

    :return: The `Checkpoint`. Its model's forward pass is bit-identical to the saved model's.
    """

    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"Checkpoint not found: {path}")
    reader = _Reader(path.read_bytes(), path)
    if reader.read(len(CHECKPOINT_MAGIC)) != CHECKPOINT_MAGIC:
        raise CheckpointError(f"Not a checkpoint: {path}")
    version = reader.unpack("<I")[0]
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"Checkpoint {path} has format version {version} but this version of pointseg "
                              f"reads version {CHECKPOINT_VERSION}")
    config_length = reader.unpack("<I")[0]
    try:
        values = parse_config_text(reader.read(config_length).decode("utf-8"), source=str(path))
    except UnicodeDecodeError:
        raise CheckpointError(f"Corrupt config text in checkpoint: {path}")
    arrays: Dict[str, np.ndarray] = dict()
    num_arrays = reader.unpack("<I")[0]
    for _ in range(num_arrays):
        name = reader.read(reader.unpack("<H")[0]).decode("utf-8")
        code, ndim = reader.unpack("<BB")
        if code not in _DTYPES:
            raise CheckpointError(f"Unknown dtype code {code} for array {name} in checkpoint: {path}")
        shape = reader.unpack(f"<{ndim}Q")
        dtype = _DTYPES[code]
        size = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
        arrays[name] = np.frombuffer(reader.read(size), dtype=dtype).reshape(shape).copy()
    if reader.offset != len(reader.data):
        raise CheckpointError(f"Unexpected trailing bytes in checkpoint: {path}")
    return _to_checkpoint(values, arrays, version)


def _to_checkpoint(values: Dict[str, str], arrays: Dict[str, np.ndarray], version: int) -> Checkpoint:
    model_values = {k: v for k, v in values.items() if k in ModelConfig.KEYS}
    train_values = {k[len("train."):]: v for k, v in values.items() if k.startswith("train.")}
    seed = int(values.get("seed", "0"))
    model = SegmentationModel(config=ModelConfig.from_dict(model_values), seed=seed)
    model.params.restore({k[len(_PARAM_PREFIX):]: v for k, v in arrays.items() if k.startswith(_PARAM_PREFIX)})
    optimizer_state = None
    if "optimizer.step" in values:
        optimizer_state = OptimizerState(learning_rate=float(values["optimizer.learning_rate"]),
                                         beta1=float(values["optimizer.beta1"]),
                                         beta2=float(values["optimizer.beta2"]),
                                         epsilon=float(values["optimizer.epsilon"]))
        optimizer_state.step = int(values["optimizer.step"])
        for k, v in arrays.items():
            if k.startswith(_FIRST_MOMENT_PREFIX):
                optimizer_state.first_moments[k[len(_FIRST_MOMENT_PREFIX):]] = v
            elif k.startswith(_SECOND_MOMENT_PREFIX):
                optimizer_state.second_moments[k[len(_SECOND_MOMENT_PREFIX):]] = v
    rng_state = {k: v for k, v in arrays.items() if k.startswith(_RNG_PREFIX)}
    epoch_progress = None
    if "epoch.position" in values:
        for name in [_PROGRESS_ORDER, _PROGRESS_LOSS_SUMS, _PROGRESS_CONFUSION]:
            if name not in arrays:
                raise CheckpointError(f"Checkpoint has an epoch position but no {name} array")
        epoch_progress = EpochProgress(order=arrays[_PROGRESS_ORDER], position=int(values["epoch.position"]),
                                       loss_sums=arrays[_PROGRESS_LOSS_SUMS],
                                       confusion_counts=arrays[_PROGRESS_CONFUSION])
    return Checkpoint(model=model,
                      train_config=TrainConfig.from_dict(train_values) if len(train_values) > 0 else None,
                      optimizer_state=optimizer_state,
                      epoch=int(values.get("epoch", "0")),
                      rng_state=rng_state if len(rng_state) > 0 else None,
                      seed=seed,
                      epoch_progress=epoch_progress,
                      version=version)


def load_model(path: Union[str, Path]) -> SegmentationModel:
    """
    :param path: The path to a checkpoint.

    :return: The checkpoint's model.
    """

    return load_checkpoint(path).model
