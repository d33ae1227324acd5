from typing import List


# The ground-plane edge length of an indoor block in meters.
INDOOR_BLOCK_SIZE: float = 1.0
# The ground-plane edge length of an outdoor block in meters (9 square meters).
OUTDOOR_BLOCK_SIZE: float = 3.0
# The ground-plane edge length of a ScanNet-style block in meters.
SCANNET_BLOCK_SIZE: float = 1.5
# The number of points sampled from an indoor block.
INDOOR_POINTS_PER_BLOCK: int = 4096
# The number of points sampled from an outdoor block.
OUTDOOR_POINTS_PER_BLOCK: int = 256
# The number of points sampled from a ScanNet-style block.
SCANNET_POINTS_PER_BLOCK: int = 1024
# The number of blocks per optimizer step for ScanNet-style data.
SCANNET_BLOCKS_PER_BATCH: int = 32
# Blocks with fewer points than this are skipped during training.
MIN_BLOCK_POINTS: int = 10
# The default maximum translation offset of the augmentation, in meters.
MAX_TRANSLATION_OFFSET: float = 1.0
# The number of feature blocks in the feature network.
FEATURE_BLOCKS: int = 17
# The width of every pathway and MLP layer.
WIDTH: int = 64
# The number of nearest neighbors in feature space.
KNN_K: int = 30
# K = floor(N / KMEANS_DIVISOR).
KMEANS_DIVISOR: int = 52
# The maximum number of k-means iterations.
KMEANS_MAX_ITERS: int = 20
# k-means stops when no center moves more than this.
KMEANS_TOL: float = 1e-4
# The number of stacked feature-space neighborhood modules.
NUM_NF_MODULES: int = 3
# The feature-space module whose distance matrix feeds the pairwise loss (1-based).
PAIR_LOSS_MODULE: int = 2
# The number of output classes.
NUM_CLASSES: int = 13
# The number of ScanNet classes.
SCANNET_NUM_CLASSES: int = 20
# Same-class pairs closer than this are not penalized.
TAU_NEAR: float = 0.2
# Different-class pairs farther than this are not penalized.
TAU_FAR: float = 2.0
# Guards the cosine distance against zero-length features.
COSINE_EPS: float = 1e-8
# The Adam learning rate.
LEARNING_RATE: float = 1e-3
# The Adam first moment decay.
BETA1: float = 0.9
# The Adam second moment decay.
BETA2: float = 0.999
# The Adam epsilon.
EPSILON: float = 1e-8
# Central difference step of the gradient check.
GRAD_CHECK_EPS: float = 1e-5
# Maximum relative error of a passing gradient check.
GRAD_CHECK_TOLERANCE: float = 1e-4
# Denominator floor of the relative error.
GRAD_CHECK_FLOOR: float = 1e-12
# The checkpoint format version.
CHECKPOINT_VERSION: int = 1
# The first bytes of every checkpoint file.
CHECKPOINT_MAGIC: bytes = b"PSEGCKPT"
# The seed of the evaluation sampler and evaluation k-means.
EVAL_SEED: int = 0
# The names of the 13 S3DIS classes.
S3DIS_CLASSES: List[str] = ["ceiling", "floor", "wall", "beam", "column", "window", "door", "table", "chair", "sofa",
                            "bookcase", "board", "clutter"]
# The names of the 13 VKITTI3D classes.
VKITTI3D_CLASSES: List[str] = ["terrain", "tree", "vegetation", "building", "road", "guardrail", "traffic_sign",
                               "traffic_light", "pole", "misc", "truck", "car", "van"]
