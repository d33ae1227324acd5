import numpy as np
import pytest
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.paths import THREE_CLASS_SCENE_PATH
from pointseg.pipeline.model_config import ModelConfig


@pytest.fixture
def rng() -> np.random.RandomState:
    return np.random.RandomState(0)


@pytest.fixture(scope="session")
def three_class_cloud() -> PointCloud:
    return generate_synthetic_scene(load_scene_spec(THREE_CLASS_SCENE_PATH), scene_id="three_class")


@pytest.fixture
def tiny_model_config() -> ModelConfig:
    return ModelConfig(feature_blocks=2, width=8, knn_k=3, num_classes=3, kmeans_divisor=8)


def random_cloud(rng: np.random.RandomState, n: int, num_classes: int, extent: float = 3.0,
                 scene_id: str = "random") -> PointCloud:
    positions = rng.uniform(0, extent, size=(n, 3))
    return PointCloud(positions=positions, colors=rng.uniform(size=(n, 3)), labels=rng.randint(0, num_classes, n),
                      scene_id=scene_id, num_classes=num_classes)
