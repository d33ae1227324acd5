from pathlib import Path
from pkg_resources import resource_filename

"""
Paths to data files in this Python module.
"""

# The path to the data files.
DATA_DIRECTORY = Path(resource_filename(__name__, "data"))
# The directory of the preset config files.
CONFIG_DIRECTORY = DATA_DIRECTORY.joinpath("configs")
# S3DIS-style indoor training: 1 m blocks, 4096 points, 9D input.
INDOOR_CONFIG_PATH = CONFIG_DIRECTORY.joinpath("indoor.cfg")
# VKITTI3D-style outdoor training: 9 square meter blocks, 256 points, positions only.
OUTDOOR_CONFIG_PATH = CONFIG_DIRECTORY.joinpath("outdoor.cfg")
# ScanNet-style training: 1024 points, 32 blocks per batch, 20 classes.
SCANNET_CONFIG_PATH = CONFIG_DIRECTORY.joinpath("scannet.cfg")
# The reduced configuration that overfits the synthetic scene.
OVERFIT_CONFIG_PATH = CONFIG_DIRECTORY.joinpath("overfit.cfg")
# The directory of synthetic scene specs.
SCENE_DIRECTORY = DATA_DIRECTORY.joinpath("scenes")
# A floor, a box, and a pole.
THREE_CLASS_SCENE_PATH = SCENE_DIRECTORY.joinpath("three_class.scene")
