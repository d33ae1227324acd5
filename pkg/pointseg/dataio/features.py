import numpy as np
from pointseg.dataio.feature_mode import FeatureMode
from pointseg.dataio.sampled_block import SampledBlock
from pointseg.errors import ValidationError


def compute_input_features(block: SampledBlock, room_bbox: np.ndarray, mode: FeatureMode) -> np.ndarray:
    """
    Build the per-point input features of a sampled block.
    The normalized coordinates are `(position - room_min) / (room_max - room_min)` per axis; an axis with zero extent maps to 0.5.

    :param block: The sampled block.
    :param room_bbox: A 2×3 array: the minimum and maximum corner of the whole room.
    :param mode: The feature mode.

    :return: An N×D feature matrix where D is 3, 6, or 9.
    """

    positions = block.world_positions
    if mode == FeatureMode.xyz:
        return positions.copy()
    if block.colors is None:
        raise ValidationError(f"Feature mode {mode.name} needs colors but block {block.block_id} has none")
    if mode == FeatureMode.xyzrgb:
        return np.hstack([positions, block.colors])
    room_min = np.asarray(room_bbox[0], dtype=np.float64)
    extent = np.asarray(room_bbox[1], dtype=np.float64) - room_min
    normalized = np.full(positions.shape, 0.5)
    valid = extent > 0
    normalized[:, valid] = (positions[:, valid] - room_min[valid]) / extent[valid]
    return np.hstack([positions, block.colors, np.clip(normalized, 0, 1)])


def augment_translate(block: SampledBlock, rng: np.random.RandomState, max_offset: float) -> SampledBlock:
    """
    Shift the raw positions (feature columns 0 and 1) of every point by one random ground-plane offset.
    Heights, colors, normalized coordinates, and world positions don't change.

    :param block: The sampled block.
    :param rng: The random number generator.
    :param max_offset: Each offset component is uniform in `[-max_offset, max_offset]`.

    :return: The augmented block.
    """

    if max_offset < 0:
        raise ValidationError(f"Invalid max offset: {max_offset}")
    offset = rng.uniform(-max_offset, max_offset, size=2)
    features = block.features.copy()
    if max_offset > 0:
        features[:, :2] += offset
    return block.with_features(features)
