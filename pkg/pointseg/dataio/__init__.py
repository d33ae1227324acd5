from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.block import Block
from pointseg.dataio.sampled_block import SampledBlock
from pointseg.dataio.feature_mode import FeatureMode
from pointseg.dataio.primitive import Primitive
from pointseg.dataio.scene_spec import SceneSpec
from pointseg.dataio.point_cloud_io import load_point_cloud, save_point_cloud, load_dataset
from pointseg.dataio.blocks import split_into_blocks, sample_block, take_points
from pointseg.dataio.features import compute_input_features, augment_translate
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.dataio.folds import cross_validation_folds
