from typing import List
import numpy as np
from pointseg.dataio.block import Block
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.sampled_block import SampledBlock
from pointseg.errors import ValidationError


def _num_cells(extent: float, block_size: float, stride: float) -> int:
    """
    :param extent: The extent of the scene along one ground-plane axis.
    :param block_size: The block edge length.
    :param stride: The distance between block origins.

    :return: The number of block origins needed to cover the extent.
    """

    if extent <= block_size:
        return 1
    return int(np.ceil((extent - block_size) / stride)) + 1


def _cell_members(t: np.ndarray, num_cells: int, span: float) -> List[np.ndarray]:
    """
    :param t: The offset of every point from the scene minimum along one axis, in units of the stride.
    :param num_cells: The number of cells along the axis.
    :param span: The block size in units of the stride.

    :return: For each cell, a boolean mask of the points in it.
    """

    if span == 1:
        # No overlap: integer binning puts every point in exactly one cell.
        cells = np.clip(np.floor(t), 0, num_cells - 1).astype(np.int64)
        return [cells == i for i in range(num_cells)]
    masks: List[np.ndarray] = list()
    for i in range(num_cells):
        if i == num_cells - 1:
            masks.append(t >= i)
        else:
            masks.append((t >= i) & (t < i + span))
    return masks


def split_into_blocks(cloud: PointCloud, block_size: float, stride: float = None, min_points: int = 1) -> List[Block]:
    """
    Split a scene into square cells on the ground (x, y) plane. Cells start at the minimum corner of the scene.
    A point belongs to a cell if `origin <= p < origin + block_size`; the last cell along each axis also includes everything past its origin.
    Boundaries are compared in units of the stride, so neighboring cells share their edges exactly.
    If `stride == block_size`, every point is in exactly one block.

    :param cloud: The point cloud.
    :param block_size: The edge length of a block in meters.
    :param stride: The distance between block origins in meters. If None, this equals `block_size` (no overlap).
    :param min_points: Blocks with fewer points than this are omitted.

    :return: A list of non-empty blocks.
    """

    if stride is None:
        stride = block_size
    if block_size <= 0:
        raise ValidationError(f"Invalid block size: {block_size}")
    if stride <= 0:
        raise ValidationError(f"Invalid stride: {stride}")
    if len(cloud) == 0:
        return []
    scene_min = cloud.positions.min(axis=0)
    scene_max = cloud.positions.max(axis=0)
    extent = scene_max - scene_min
    nx = _num_cells(extent[0], block_size, stride)
    ny = _num_cells(extent[1], block_size, stride)
    span = block_size / stride
    x_masks = _cell_members((cloud.positions[:, 0] - scene_min[0]) / stride, nx, span)
    y_masks = _cell_members((cloud.positions[:, 1] - scene_min[1]) / stride, ny, span)
    blocks: List[Block] = list()
    for i in range(nx):
        if not np.any(x_masks[i]):
            continue
        x0 = scene_min[0] + i * stride
        for j in range(ny):
            indices = np.flatnonzero(x_masks[i] & y_masks[j])
            if indices.shape[0] == 0 or indices.shape[0] < min_points:
                continue
            y0 = scene_min[1] + j * stride
            blocks.append(Block(block_id=f"{cloud.scene_id}:{i}_{j}",
                                point_indices=indices,
                                bbox_min=np.array([x0, y0, scene_min[2]]),
                                bbox_max=np.array([x0 + block_size, y0 + block_size, scene_max[2]]),
                                block_size=block_size))
    return blocks


def sample_block(block: Block, cloud: PointCloud, n_points: int, rng: np.random.RandomState) -> SampledBlock:
    """
    Draw exactly `n_points` points from a block.
    If the block has at least `n_points` points, they are sampled without replacement.
    Otherwise, every point is used once and the remainder is filled by sampling with replacement.

    The features of the returned block are the raw positions (and colors, if any); see `compute_input_features()`.

    :param block: The block.
    :param cloud: The parent point cloud.
    :param n_points: The number of points.
    :param rng: The random number generator.

    :return: A sampled block.
    """

    if n_points <= 0:
        raise ValidationError(f"Invalid number of points: {n_points}")
    count = len(block)
    if count == 0:
        raise ValidationError(f"Block {block.block_id} is empty")
    if count >= n_points:
        chosen = rng.choice(count, size=n_points, replace=False)
    else:
        chosen = np.concatenate([rng.permutation(count), rng.choice(count, size=n_points - count, replace=True)])
    return take_points(block.block_id, cloud, block.point_indices[chosen])


def take_points(block_id: str, cloud: PointCloud, source: np.ndarray) -> SampledBlock:
    """
    :param block_id: The ID of the block.
    :param cloud: The parent point cloud.
    :param source: Indices into the cloud. Can repeat.

    :return: A sampled block of exactly these points, in this order.
    """

    positions = cloud.positions[source]
    colors = None if cloud.colors is None else cloud.colors[source]
    features = positions.copy() if colors is None else np.hstack([positions, colors])
    return SampledBlock(block_id=block_id, features=features, labels=cloud.labels[source].copy(),
                        world_positions=positions.copy(), source_indices=np.asarray(source), colors=colors)
