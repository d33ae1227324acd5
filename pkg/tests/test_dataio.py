import numpy as np
import pytest
from pointseg.dataio.block import Block
from pointseg.dataio.blocks import sample_block, split_into_blocks
from pointseg.dataio.feature_mode import FeatureMode
from pointseg.dataio.features import augment_translate, compute_input_features
from pointseg.dataio.folds import cross_validation_folds, fold_key
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.point_cloud_io import load_dataset, load_point_cloud, save_point_cloud
from pointseg.dataio.primitive import Primitive
from pointseg.dataio.sampled_block import SampledBlock
from pointseg.dataio.scene_spec import SceneSpec
from pointseg.dataio.synthetic import generate_synthetic_scene
from pointseg.errors import ValidationError
from conftest import random_cloud


def _cloud(positions, labels=None, colors=None, num_classes=13, scene_id="scene") -> PointCloud:
    positions = np.asarray(positions, dtype=np.float64)
    if labels is None:
        labels = np.zeros(positions.shape[0], dtype=np.int64)
    return PointCloud(positions=positions, labels=labels, colors=colors, scene_id=scene_id, num_classes=num_classes)


def _sampled(positions: np.ndarray, colors: np.ndarray = None) -> SampledBlock:
    n = positions.shape[0]
    features = positions.copy() if colors is None else np.hstack([positions, colors])
    return SampledBlock(block_id="b", features=features, labels=np.zeros(n, dtype=np.int64),
                        world_positions=positions.copy(), source_indices=np.arange(n), colors=colors)


def test_load_three_points(tmp_path):
    path = tmp_path.joinpath("room.txt")
    path.write_text("# comment\n0 0 0 1 2 3 2\n\n1 1 1 255 0 0 5\n2 2 2 0 0 0 0 # trailing\n")
    cloud = load_point_cloud(path, num_classes=13)
    assert len(cloud) == 3
    assert cloud.labels.tolist() == [2, 5, 0]
    assert cloud.scene_id == "room"
    # Colors above 1 are rescaled from [0, 255].
    assert np.allclose(cloud.colors[1], [1, 0, 0])


def test_load_positions_only(tmp_path):
    path = tmp_path.joinpath("outdoor.txt")
    path.write_text("0 0 0 1\n1 2 3 0\n")
    cloud = load_point_cloud(path, num_classes=2)
    assert not cloud.has_colors
    assert np.array_equal(cloud.positions[1], [1, 2, 3])


def test_load_errors(tmp_path):
    empty = tmp_path.joinpath("empty.txt")
    empty.write_text("# nothing\n")
    with pytest.raises(ValidationError, match="empty point cloud"):
        load_point_cloud(empty, num_classes=13)
    bad_label = tmp_path.joinpath("bad_label.txt")
    bad_label.write_text("0 0 0 0 0 0 1\n0 0 0 0 0 0 13\n")
    with pytest.raises(ValidationError, match=":2:"):
        load_point_cloud(bad_label, num_classes=13)
    bad_number = tmp_path.joinpath("bad_number.txt")
    bad_number.write_text("0 0 zero 0\n")
    with pytest.raises(ValidationError, match=":1:"):
        load_point_cloud(bad_number, num_classes=13)
    bad_columns = tmp_path.joinpath("bad_columns.txt")
    bad_columns.write_text("0 0 0 0 0 0\n")
    with pytest.raises(ValidationError):
        load_point_cloud(bad_columns, num_classes=13)


def test_save_load_fixed_point(tmp_path, rng):
    cloud = random_cloud(rng, 50, 5)
    first = tmp_path.joinpath("first.txt")
    second = tmp_path.joinpath("second.txt")
    save_point_cloud(cloud, first)
    loaded = load_point_cloud(first, num_classes=5)
    assert np.array_equal(loaded.positions, cloud.positions)
    assert np.array_equal(loaded.colors, cloud.colors)
    assert np.array_equal(loaded.labels, cloud.labels)
    save_point_cloud(loaded, second)
    assert first.read_text() == second.read_text()


def test_prediction_column(tmp_path, rng):
    cloud = random_cloud(rng, 10, 4)
    predictions = (cloud.labels + 1) % 4
    path = tmp_path.joinpath("predicted.txt")
    save_point_cloud(cloud, path, predictions=predictions)
    assert len(path.read_text().splitlines()) == 10
    assert np.array_equal(load_point_cloud(path, 4).labels, cloud.labels)
    assert np.array_equal(load_point_cloud(path, 4, use_predictions=True).labels, predictions)


def test_load_dataset_directory(tmp_path, rng):
    for name in ["b_room", "a_room"]:
        save_point_cloud(random_cloud(rng, 5, 3, scene_id=name), tmp_path.joinpath(f"{name}.txt"))
    clouds = load_dataset(tmp_path, num_classes=3)
    assert [c.scene_id for c in clouds] == ["a_room", "b_room"]
    with pytest.raises(ValidationError):
        load_dataset(tmp_path.joinpath("missing"), num_classes=3)


def test_corner_blocks():
    cloud = _cloud([[0, 0, 0], [2, 0, 0], [0, 2, 0], [2, 2, 0]])
    blocks = split_into_blocks(cloud, block_size=1, stride=1)
    assert len(blocks) == 4
    assert all(len(b) == 1 for b in blocks)


def test_single_block(rng):
    cloud = _cloud(rng.uniform(0.1, 0.9, size=(40, 3)))
    blocks = split_into_blocks(cloud, block_size=1)
    assert len(blocks) == 1
    assert np.array_equal(np.sort(blocks[0].point_indices), np.arange(40))


def test_empty_cloud_blocks():
    cloud = _cloud(np.zeros((0, 3)))
    assert split_into_blocks(cloud, block_size=1) == []


def test_block_partition_matches_binning(rng):
    positions = rng.uniform(0, 3, size=(1000, 3))
    positions[0, :2] = [0, 0]
    positions[1, :2] = [3, 3]
    cloud = _cloud(positions)
    blocks = split_into_blocks(cloud, block_size=1, stride=1)
    assert len(blocks) == 9
    # Brute-force binning with the last cell closed at the top.
    cells = np.minimum(np.floor(positions[:, :2]).astype(int), 2)
    for block in blocks:
        i, j = [int(v) for v in block.block_id.split(":")[1].split("_")]
        expected = np.flatnonzero((cells[:, 0] == i) & (cells[:, 1] == j))
        assert np.array_equal(np.sort(block.point_indices), expected)
    counts = np.zeros(1000, dtype=int)
    for block in blocks:
        counts[block.point_indices] += 1
    assert np.all(counts == 1)


@pytest.mark.parametrize("block_size", [0.1, 0.3, 0.7, 1.5])
def test_partition_with_fractional_boundaries(block_size):
    for scene_min in np.linspace(0.05, 5.0, 50):
        # Points on every cell edge, computed the way a scanner export might round them.
        edges = np.array([scene_min + k * block_size for k in range(12)] +
                         [round(scene_min + k * block_size, 3) for k in range(12)])
        positions = np.column_stack([edges, edges[::-1], np.zeros(edges.shape[0])])
        cloud = _cloud(positions)
        counts = np.zeros(len(cloud), dtype=int)
        for block in split_into_blocks(cloud, block_size=block_size):
            counts[block.point_indices] += 1
        assert np.all(counts == 1), f"scene_min={scene_min}"


def test_partition_of_points_on_shifted_edges():
    cloud = _cloud([[0.1, 0, 0], [0.7, 0, 0], [0.75, 0, 0], [1.6, 0, 0]])
    blocks = split_into_blocks(cloud, block_size=0.1)
    counts = np.zeros(4, dtype=int)
    for block in blocks:
        counts[block.point_indices] += 1
    assert counts.tolist() == [1, 1, 1, 1]


def test_overlapping_blocks_share_edges():
    cloud = _cloud([[0.1 + 0.1 * k, 0, 0] for k in range(16)])
    blocks = split_into_blocks(cloud, block_size=0.2, stride=0.1)
    counts = np.zeros(16, dtype=int)
    for block in blocks:
        counts[block.point_indices] += 1
    assert np.all(counts >= 1)
    # Interior points are on the shared edge of two cells.
    assert np.all(counts[2:13] == 2)


def test_min_points(rng):
    positions = np.vstack([rng.uniform(0, 1, size=(20, 3)), [[1.5, 1.5, 0]]])
    cloud = _cloud(positions)
    assert len(split_into_blocks(cloud, block_size=1, min_points=10)) == 1
    assert len(split_into_blocks(cloud, block_size=1)) == 2


def test_overlapping_blocks(rng):
    cloud = _cloud(rng.uniform(0, 2, size=(200, 3)))
    blocks = split_into_blocks(cloud, block_size=1, stride=0.5)
    counts = np.zeros(200, dtype=int)
    for block in blocks:
        counts[block.point_indices] += 1
    assert np.all(counts >= 1)
    assert np.any(counts > 1)


def test_sample_exhaustive(rng):
    cloud = _cloud(rng.uniform(size=(5, 3)))
    block = split_into_blocks(cloud, block_size=2)[0]
    sampled = sample_block(block, cloud, 5, rng)
    assert len(sampled) == 5
    assert sorted(sampled.source_indices.tolist()) == [0, 1, 2, 3, 4]
    assert np.array_equal(sampled.world_positions, cloud.positions[sampled.source_indices])


def test_sample_with_replacement(rng):
    cloud = _cloud([[0, 0, 0], [0.5, 0.5, 0.5]])
    block = split_into_blocks(cloud, block_size=1)[0]
    sampled = sample_block(block, cloud, 4, rng)
    assert len(sampled) == 4
    assert set(sampled.source_indices.tolist()) == {0, 1}


def test_sample_determinism():
    cloud = _cloud(np.random.RandomState(1).uniform(0, 1, size=(10000, 3)))
    block = split_into_blocks(cloud, block_size=1)[0]
    a = sample_block(block, cloud, 4096, np.random.RandomState(7))
    b = sample_block(block, cloud, 4096, np.random.RandomState(7))
    assert np.array_equal(a.source_indices, b.source_indices)
    assert np.array_equal(a.features, b.features)
    assert len(np.unique(a.source_indices)) == 4096


def test_sample_errors(rng):
    cloud = _cloud(rng.uniform(size=(3, 3)))
    block = split_into_blocks(cloud, block_size=1)[0]
    with pytest.raises(ValidationError):
        sample_block(block, cloud, 0, rng)
    empty = Block(block_id="empty", point_indices=np.zeros(0, dtype=np.int64), bbox_min=np.zeros(3),
                  bbox_max=np.ones(3), block_size=1)
    with pytest.raises(ValidationError):
        sample_block(empty, cloud, 4, rng)


def test_normalized_coordinates():
    room = np.array([[0, 0, 0], [2, 4, 2]], dtype=float)
    positions = np.array([[0, 0, 0], [2, 4, 2], [1, 2, 1]], dtype=float)
    features = compute_input_features(_sampled(positions, colors=np.full((3, 3), 0.5)), room, FeatureMode.full9d)
    assert features.shape == (3, 9)
    assert np.array_equal(features[0, 6:], [0, 0, 0])
    assert np.array_equal(features[1, 6:], [1, 1, 1])
    assert np.array_equal(features[2, 6:], [0.5, 0.5, 0.5])
    assert np.array_equal(features[:, :3], positions)


def test_feature_modes(rng):
    positions = rng.uniform(size=(4, 3))
    colors = rng.uniform(size=(4, 3))
    room = np.array([[0, 0, 0], [1, 1, 1]], dtype=float)
    assert compute_input_features(_sampled(positions, colors), room, FeatureMode.xyz).shape == (4, 3)
    assert compute_input_features(_sampled(positions, colors), room, FeatureMode.xyzrgb).shape == (4, 6)
    assert compute_input_features(_sampled(positions), room, FeatureMode.xyz).shape == (4, 3)
    with pytest.raises(ValidationError):
        compute_input_features(_sampled(positions), room, FeatureMode.full9d)


def test_degenerate_axis():
    positions = np.array([[0, 0, 1], [1, 1, 1]], dtype=float)
    room = np.array([[0, 0, 1], [1, 1, 1]], dtype=float)
    features = compute_input_features(_sampled(positions, np.zeros((2, 3))), room, FeatureMode.full9d)
    assert np.all(features[:, 8] == 0.5)


def test_augment_identity(rng):
    block = _sampled(rng.uniform(size=(6, 3)), rng.uniform(size=(6, 3)))
    augmented = augment_translate(block, rng, max_offset=0)
    assert np.array_equal(augmented.features, block.features)


def test_augment_rigid(rng):
    positions = rng.uniform(size=(8, 3))
    room = np.array([[0, 0, 0], [1, 1, 1]], dtype=float)
    block = _sampled(positions, rng.uniform(size=(8, 3)))
    block = block.with_features(compute_input_features(block, room, FeatureMode.full9d))
    augmented = augment_translate(block, rng, max_offset=1)
    before = block.features[:, :3]
    after = augmented.features[:, :3]
    assert np.allclose(np.abs(before[:, None] - before[None]).sum(-1), np.abs(after[:, None] - after[None]).sum(-1))
    assert np.array_equal(after[:, 2], before[:, 2])
    assert np.array_equal(augmented.features[:, 3:], block.features[:, 3:])
    assert np.array_equal(augmented.world_positions, block.world_positions)
    offset = after[0, :2] - before[0, :2]
    assert np.all(np.abs(offset) <= 1)


def test_augment_determinism():
    block = _sampled(np.random.RandomState(3).uniform(size=(5, 3)))
    a = augment_translate(block, np.random.RandomState(11), max_offset=1)
    b = augment_translate(block, np.random.RandomState(11), max_offset=1)
    assert np.array_equal(a.features, b.features)
    with pytest.raises(ValidationError):
        augment_translate(block, np.random.RandomState(11), max_offset=-1)


def test_synthetic_plane():
    floor = Primitive(kind="plane", class_id=0, bbox_min=np.array([0, 0, 0]), bbox_max=np.array([1, 1, 0]),
                      density=100)
    cloud = generate_synthetic_scene(SceneSpec(primitives=[floor], seed=0))
    assert len(cloud) == 100
    assert np.all(cloud.labels == 0)
    assert np.all(cloud.positions[:, 2] == 0)


def test_synthetic_two_classes():
    floor = Primitive(kind="plane", class_id=0, bbox_min=np.array([0, 0, 0]), bbox_max=np.array([2, 2, 0]),
                      density=20)
    box = Primitive(kind="box", class_id=1, bbox_min=np.array([0.5, 0.5, 0.2]), bbox_max=np.array([1, 1, 1]),
                    density=50)
    cloud = generate_synthetic_scene(SceneSpec(primitives=[floor, box], seed=1))
    assert sorted(np.unique(cloud.labels).tolist()) == [0, 1]
    # Box points strictly inside the footprint are on the top face; the bottom face isn't sampled.
    box_points = cloud.positions[cloud.labels == 1]
    inside = (box_points[:, 0] > 0.5) & (box_points[:, 0] < 1) & (box_points[:, 1] > 0.5) & (box_points[:, 1] < 1)
    assert np.any(inside)
    assert np.all(box_points[inside, 2] == 1)


def test_synthetic_disjoint_planes():
    low = Primitive(kind="plane", class_id=0, bbox_min=np.array([0, 0, 0]), bbox_max=np.array([1, 1, 0]), density=50)
    high = Primitive(kind="plane", class_id=1, bbox_min=np.array([0, 0, 2]), bbox_max=np.array([1, 1, 2]), density=50)
    cloud = generate_synthetic_scene(SceneSpec(primitives=[low, high], seed=0))
    a = cloud.positions[cloud.labels == 0]
    b = cloud.positions[cloud.labels == 1]
    distances = np.sqrt(((a[:, None] - b[None]) ** 2).sum(-1))
    assert distances.min() >= 2


def test_three_class_scene(three_class_cloud):
    assert len(three_class_cloud) == 211
    assert sorted(np.unique(three_class_cloud.labels).tolist()) == [0, 1, 2]
    assert three_class_cloud.has_colors


def test_folds():
    clouds = [_cloud([[0, 0, 0]], scene_id=s) for s in ["Area_1_office_1", "Area_1_office_2", "Area_2_hall_1",
                                                         "Area_3_wc_1"]]
    assert fold_key("Area_1_office_2") == "Area_1"
    assert fold_key("0001_00") == "0001"
    folds = cross_validation_folds(clouds, 3)
    assert len(folds) == 3
    tested = [s for _, test in folds for s in test]
    assert sorted(tested) == sorted(c.scene_id for c in clouds)
    for train, test in folds:
        assert set(train).isdisjoint(test)
    assert ["Area_1_office_1", "Area_1_office_2"] in [test for _, test in folds]
    with pytest.raises(ValidationError):
        cross_validation_folds(clouds, 4)


if __name__ == "__main__":
    pytest.main([__file__])
