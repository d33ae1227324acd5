import re
from typing import Dict, List, Tuple
from pointseg.dataio.point_cloud import PointCloud
from pointseg.errors import ValidationError


def fold_key(scene_id: str) -> str:
    """
    :param scene_id: A scene ID such as `Area_3_office_1` or `0001_00`.

    :return: The group the scene belongs to: `Area_3` or the first underscore-separated token.
    """

    match = re.match(r"(Area_\d+)", scene_id)
    if match is not None:
        return match.group(1)
    return scene_id.split("_")[0]


def cross_validation_folds(clouds: List[PointCloud], num_folds: int) -> List[Tuple[List[str], List[str]]]:
    """
    Split scenes into cross-validation folds. Scenes of the same group (area or sequence, see `fold_key()`) are always in the same fold.
    Groups are assigned to folds round-robin in sorted order.

    :param clouds: The point clouds.
    :param num_folds: The number of folds.

    :return: A list of (training scene IDs, test scene IDs) per fold. Every scene is in exactly one test fold.
    """

    groups: Dict[str, List[str]] = dict()
    for cloud in clouds:
        groups.setdefault(fold_key(cloud.scene_id), list()).append(cloud.scene_id)
    if num_folds < 2 or num_folds > len(groups):
        raise ValidationError(f"Can't make {num_folds} folds from {len(groups)} scene groups")
    test_sets: List[List[str]] = [list() for _ in range(num_folds)]
    for i, key in enumerate(sorted(groups)):
        test_sets[i % num_folds].extend(groups[key])
    all_ids = [cloud.scene_id for cloud in clouds]
    return [([s for s in all_ids if s not in test], test) for test in test_sets]
