from pathlib import Path
from typing import Dict, Tuple, Union
from pointseg.errors import ValidationError
from pointseg.pipeline.config_file import read_config_file
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.train_config import TrainConfig


def split_config(values: Dict[str, str]) -> Tuple[ModelConfig, TrainConfig]:
    """
    :param values: Config file values with model and train keys mixed.

    :return: Tuple: the model config, the train config.
    """

    unknown = [key for key in values if key not in ModelConfig.KEYS and key not in TrainConfig.KEYS]
    if len(unknown) > 0:
        raise ValidationError(f"Unknown config key(s): {', '.join(unknown)}")
    model_values = {k: v for k, v in values.items() if k in ModelConfig.KEYS}
    train_values = {k: v for k, v in values.items() if k in TrainConfig.KEYS}
    return ModelConfig.from_dict(model_values), TrainConfig.from_dict(train_values)


def load_run_config(path: Union[str, Path]) -> Tuple[ModelConfig, TrainConfig]:
    """
    Read a config file such as one of the presets in `pointseg.paths`.

    :param path: The path to the config file.

    :return: Tuple: the model config, the train config.
    """

    return split_config(read_config_file(path))
