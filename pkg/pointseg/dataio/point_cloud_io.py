import logging
from pathlib import Path
from typing import List, Optional, Union
import numpy as np
from pointseg.dataio.point_cloud import PointCloud
from pointseg.errors import ValidationError

"""
Read and write the text point format: one point per line, `x y z [r g b] label [prediction]`, whitespace-separated.
Everything after a `#` is a comment.
"""

logger = logging.getLogger(__name__)

# Column count -> (has colors, has prediction column).
_LAYOUTS = {4: (False, False),
            5: (False, True),
            7: (True, False),
            8: (True, True)}


def load_point_cloud(path: Union[str, Path], num_classes: int, use_predictions: bool = False) -> PointCloud:
    """
    Load a point cloud. Colors are rescaled from [0, 255] to [0, 1] if any color value is greater than 1.

    :param path: The path to the text file.
    :param num_classes: The number of semantic classes. Labels must be less than this.
    :param use_predictions: If True and the file has a prediction column (see `save_point_cloud()`), use the predictions as labels.

    :return: The point cloud. The scene ID is the file name without its extension.
    """

    path = Path(path)
    if not path.exists():
        raise ValidationError(f"File not found: {path}")
    rows: List[List[str]] = list()
    line_numbers: List[int] = list()
    num_columns: Optional[int] = None
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if len(tokens) == 0:
            continue
        if len(tokens) not in _LAYOUTS:
            raise ValidationError(f"{path}:{line_number}: expected 4, 5, 7, or 8 columns but got {len(tokens)}")
        if num_columns is None:
            num_columns = len(tokens)
        elif len(tokens) != num_columns:
            raise ValidationError(f"{path}:{line_number}: expected {num_columns} columns but got {len(tokens)}")
        rows.append(tokens)
        line_numbers.append(line_number)
    if len(rows) == 0:
        raise ValidationError(f"{path}: empty point cloud")
    has_colors, has_predictions = _LAYOUTS[num_columns]
    num_reals = 6 if has_colors else 3
    reals = np.zeros((len(rows), num_reals), dtype=np.float64)
    labels = np.zeros(len(rows), dtype=np.int64)
    label_column = num_columns - 1 if (has_predictions and use_predictions) else num_reals
    for i, tokens in enumerate(rows):
        try:
            reals[i] = [float(t) for t in tokens[:num_reals]]
            labels[i] = int(tokens[label_column])
        except ValueError:
            raise ValidationError(f"{path}:{line_numbers[i]}: cannot parse `{' '.join(tokens)}`")
        if labels[i] < 0 or labels[i] >= num_classes:
            raise ValidationError(f"{path}:{line_numbers[i]}: label {labels[i]} is not in [0, {num_classes})")
    colors = None
    if has_colors:
        colors = reals[:, 3:6]
        if colors.max() > 1:
            colors = colors / 255.0
    logger.debug(f"Loaded {len(rows)} points from {path}")
    return PointCloud(positions=reals[:, :3], labels=labels, colors=colors, scene_id=path.stem,
                      num_classes=num_classes)


def save_point_cloud(cloud: PointCloud, path: Union[str, Path], predictions: np.ndarray = None) -> None:
    """
    Write a point cloud in the text format. Floats are written with 17 significant digits, so loading the file gives back exactly the same values.

    :param cloud: The point cloud.
    :param path: The output path.
    :param predictions: If not None, N predicted labels written as an extra last column.
    """

    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    if predictions is not None and len(predictions) != len(cloud):
        raise ValidationError(f"{len(predictions)} predictions for {len(cloud)} points")
    lines: List[str] = list()
    for i in range(len(cloud)):
        values = [f"{v:.17g}" for v in cloud.positions[i]]
        if cloud.colors is not None:
            values.extend(f"{v:.17g}" for v in cloud.colors[i])
        values.append(str(int(cloud.labels[i])))
        if predictions is not None:
            values.append(str(int(predictions[i])))
        lines.append(" ".join(values))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_dataset(path: Union[str, Path], num_classes: int, use_predictions: bool = False) -> List[PointCloud]:
    """
    :param path: A text file or a directory of `*.txt` files.
    :param num_classes: The number of semantic classes.
    :param use_predictions: If True, use the prediction column as labels (see `load_point_cloud()`).

    :return: A list of point clouds, sorted by file name.
    """

    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.txt"))
        if len(files) == 0:
            raise ValidationError(f"No *.txt point files in {path}")
    else:
        files = [path]
    return [load_point_cloud(path=f, num_classes=num_classes, use_predictions=use_predictions) for f in files]
