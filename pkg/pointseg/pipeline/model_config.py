from typing import Dict, List
import numpy as np
from pointseg.constants import FEATURE_BLOCKS, WIDTH, KNN_K, KMEANS_DIVISOR, KMEANS_MAX_ITERS, KMEANS_TOL, \
    NUM_NF_MODULES, NUM_CLASSES, PAIR_LOSS_MODULE
from pointseg.dataio.feature_mode import FeatureMode
from pointseg.errors import ValidationError
from pointseg.featnet.feature_network_config import FeatureNetworkConfig
from pointseg.featnet.fusion import Fusion
from pointseg.losses.centroid_distance import CentroidDistance
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.pair_reduction import PairReduction
from pointseg.neighbors.kmeans_space import KMeansSpace
from pointseg.util import parse_bool, parse_floats


class ModelConfig:
    """
    The architecture and loss settings of a `SegmentationModel`.

    The config file keys are the constructor parameter names, plus the loss keys `tau_near`, `tau_far`, `pair_reduction`, `pair_samples`, `cent_distance`, and `loss_weights`.
    """

    # Every config file key this class reads.
    KEYS: List[str] = ["feature_mode", "feature_blocks", "fusion", "width", "knn_k", "kmeans_divisor",
                       "kmeans_max_iters", "kmeans_tol", "kmeans_space", "nf_center_concat", "num_nf_modules",
                       "use_nw_module", "num_classes", "pair_loss_module", "dtype", "tau_near", "tau_far",
                       "pair_reduction", "pair_samples", "cent_distance", "loss_weights"]

    def __init__(self, feature_mode: FeatureMode = FeatureMode.full9d, feature_blocks: int = FEATURE_BLOCKS,
                 fusion: Fusion = Fusion.additive, width: int = WIDTH, knn_k: int = KNN_K,
                 kmeans_divisor: int = KMEANS_DIVISOR, kmeans_max_iters: int = KMEANS_MAX_ITERS,
                 kmeans_tol: float = KMEANS_TOL, kmeans_space: KMeansSpace = KMeansSpace.xyz,
                 nf_center_concat: bool = False, num_nf_modules: int = NUM_NF_MODULES, use_nw_module: bool = True,
                 num_classes: int = NUM_CLASSES, pair_loss_module: int = PAIR_LOSS_MODULE,
                 loss: LossConfig = None, dtype: str = "float64"):
        """
        :param feature_mode: The input features.
        :param feature_blocks: The number of feature blocks in the feature network.
        :param fusion: How the feature network combines pathways.
        :param width: The width W of every layer.
        :param knn_k: The number of feature-space neighbors. Clamped to N - 1 for small blocks.
        :param kmeans_divisor: The number of world-space clusters is `floor(N / kmeans_divisor)`.
        :param kmeans_max_iters: The maximum number of k-means iterations.
        :param kmeans_tol: The k-means convergence threshold.
        :param kmeans_space: The space that k-means clusters.
        :param nf_center_concat: If True, the feature-space modules append the center feature to every neighborhood row.
        :param num_nf_modules: The number of stacked feature-space modules. Can be 0.
        :param use_nw_module: If True, add the world-space module.
        :param num_classes: The number of output classes.
        :param pair_loss_module: The 1-based index of the feature-space module whose distance matrix feeds the pairwise loss.
        :param loss: The loss parameters. If None, use the defaults.
        :param dtype: `float64` or `float32`.
        """

        if knn_k < 1:
            raise ValidationError(f"Invalid knn_k: {knn_k}")
        if kmeans_divisor < 1:
            raise ValidationError(f"Invalid kmeans_divisor: {kmeans_divisor}")
        if kmeans_max_iters < 1:
            raise ValidationError(f"Invalid kmeans_max_iters: {kmeans_max_iters}")
        if num_nf_modules < 0:
            raise ValidationError(f"Invalid num_nf_modules: {num_nf_modules}")
        if num_classes < 2:
            raise ValidationError(f"Invalid num_classes: {num_classes}")
        if num_nf_modules > 0 and not 1 <= pair_loss_module <= num_nf_modules:
            raise ValidationError(f"pair_loss_module {pair_loss_module} isn't in [1, {num_nf_modules}]")
        if dtype not in ("float64", "float32"):
            raise ValidationError(f"Invalid dtype: {dtype}")
        """:field
        The input features.
        """
        self.feature_mode: FeatureMode = feature_mode
        """:field
        The number of feature blocks in the feature network.
        """
        self.feature_blocks: int = feature_blocks
        """:field
        How the feature network combines pathways.
        """
        self.fusion: Fusion = fusion
        """:field
        The width W of every layer.
        """
        self.width: int = width
        """:field
        The number of feature-space neighbors.
        """
        self.knn_k: int = knn_k
        """:field
        The number of world-space clusters is `floor(N / kmeans_divisor)`.
        """
        self.kmeans_divisor: int = kmeans_divisor
        """:field
        The maximum number of k-means iterations.
        """
        self.kmeans_max_iters: int = kmeans_max_iters
        """:field
        The k-means convergence threshold.
        """
        self.kmeans_tol: float = kmeans_tol
        """:field
        The space that k-means clusters.
        """
        self.kmeans_space: KMeansSpace = kmeans_space
        """:field
        If True, the feature-space modules append the center feature to every neighborhood row.
        """
        self.nf_center_concat: bool = nf_center_concat
        """:field
        The number of stacked feature-space modules.
        """
        self.num_nf_modules: int = num_nf_modules
        """:field
        If True, the model has a world-space module.
        """
        self.use_nw_module: bool = use_nw_module
        """:field
        The number of output classes.
        """
        self.num_classes: int = num_classes
        """:field
        The 1-based index of the feature-space module whose distance matrix feeds the pairwise loss.
        """
        self.pair_loss_module: int = pair_loss_module
        """:field
        The loss parameters.
        """
        self.loss: LossConfig = LossConfig() if loss is None else loss
        """:field
        `float64` or `float32`.
        """
        self.dtype: str = dtype
        # Raises if the feature network shape is invalid.
        self.featnet

    @property
    def featnet(self) -> FeatureNetworkConfig:
        """
        :return: The feature network config.
        """

        return FeatureNetworkConfig(input_dim=self.feature_mode.value, num_blocks=self.feature_blocks,
                                    fusion=self.fusion, width=self.width)

    @property
    def np_dtype(self) -> np.dtype:
        """
        :return: The numpy floating point type.
        """

        return np.dtype(self.dtype)

    def to_dict(self) -> Dict[str, str]:
        """
        :return: Every setting as config file text values.
        """

        return {"feature_mode": self.feature_mode.name,
                "feature_blocks": str(self.feature_blocks),
                "fusion": self.fusion.name,
                "width": str(self.width),
                "knn_k": str(self.knn_k),
                "kmeans_divisor": str(self.kmeans_divisor),
                "kmeans_max_iters": str(self.kmeans_max_iters),
                "kmeans_tol": repr(self.kmeans_tol),
                "kmeans_space": self.kmeans_space.name,
                "nf_center_concat": str(self.nf_center_concat).lower(),
                "num_nf_modules": str(self.num_nf_modules),
                "use_nw_module": str(self.use_nw_module).lower(),
                "num_classes": str(self.num_classes),
                "pair_loss_module": str(self.pair_loss_module),
                "dtype": self.dtype,
                "tau_near": repr(self.loss.tau_near),
                "tau_far": repr(self.loss.tau_far),
                "pair_reduction": self.loss.pair_reduction.name,
                "pair_samples": str(self.loss.pair_samples),
                "cent_distance": self.loss.cent_distance.name,
                "loss_weights": " ".join(repr(w) for w in self.loss.weights)}

    @staticmethod
    def from_dict(values: Dict[str, str]) -> "ModelConfig":
        """
        :param values: Config file values. Missing keys get their defaults.

        :return: A model config.
        """

        unknown = [key for key in values if key not in ModelConfig.KEYS]
        if len(unknown) > 0:
            raise ValidationError(f"Unknown model config key(s): {', '.join(unknown)}")
        try:
            loss_kwargs = dict()
            if "tau_near" in values:
                loss_kwargs["tau_near"] = float(values["tau_near"])
            if "tau_far" in values:
                loss_kwargs["tau_far"] = float(values["tau_far"])
            if "pair_reduction" in values:
                loss_kwargs["pair_reduction"] = PairReduction[values["pair_reduction"]]
            if "pair_samples" in values:
                loss_kwargs["pair_samples"] = int(values["pair_samples"])
            if "cent_distance" in values:
                loss_kwargs["cent_distance"] = CentroidDistance[values["cent_distance"]]
            if "loss_weights" in values:
                loss_kwargs["weights"] = tuple(parse_floats(values["loss_weights"], count=3))
            kwargs = {"loss": LossConfig(**loss_kwargs)}
            for key in ["feature_blocks", "width", "knn_k", "kmeans_divisor", "kmeans_max_iters", "num_nf_modules",
                        "num_classes", "pair_loss_module"]:
                if key in values:
                    kwargs[key] = int(values[key])
            if "kmeans_tol" in values:
                kwargs["kmeans_tol"] = float(values["kmeans_tol"])
            for key in ["nf_center_concat", "use_nw_module"]:
                if key in values:
                    kwargs[key] = parse_bool(values[key])
            if "feature_mode" in values:
                kwargs["feature_mode"] = FeatureMode[values["feature_mode"]]
            if "fusion" in values:
                kwargs["fusion"] = Fusion[values["fusion"]]
            if "kmeans_space" in values:
                kwargs["kmeans_space"] = KMeansSpace[values["kmeans_space"]]
            if "dtype" in values:
                kwargs["dtype"] = values["dtype"]
        except KeyError as e:
            raise ValidationError(f"Invalid enum value in model config: {e}")
        except ValueError as e:
            raise ValidationError(f"Invalid number in model config: {e}")
        return ModelConfig(**kwargs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModelConfig) and self.to_dict() == other.to_dict()
