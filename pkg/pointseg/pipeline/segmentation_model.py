from typing import List, Optional
import numpy as np
from pointseg.diffcore.mlp import Mlp
from pointseg.diffcore.ops import concat_columns, linear, softmax_cross_entropy
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.featnet.feature_network import FeatureNetwork
from pointseg.losses.centroid_loss import centroid_loss
from pointseg.losses.loss_report import LossReport
from pointseg.losses.pairwise_loss import pairwise_loss
from pointseg.losses.total_loss import total_loss
from pointseg.neighbors.cluster_assignment import ClusterAssignment
from pointseg.neighbors.kmeans import kmeans, kmeans_k
from pointseg.neighbors.kmeans_space import KMeansSpace
from pointseg.neighbors.neighbor_index import NeighborIndex
from pointseg.neighbors.nf_module import NFModule
from pointseg.neighbors.nw_module import NWModule
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.model_output import ModelOutput
from pointseg.util import get_rng


class SegmentationModel:
    """
    The full segmentation network:

    1. The feature network turns input features into learned point features.
    2. A stack of feature-space modules refines them, one neighborhood hop per module.
    3. A world-space module pools the last module's features over k-means clusters of the block. Each point's regional descriptor is appended to the outputs of the last two feature-space modules.
    4. The appended features pass through a 2-layer MLP (the centroid loss is computed here) and a linear layer with one output per class.

    ```python
    import numpy as np
    from pointseg.pipeline.model_config import ModelConfig
    from pointseg.pipeline.segmentation_model import SegmentationModel

    model = SegmentationModel(ModelConfig(feature_blocks=2, width=8, knn_k=3))
    rng = np.random.RandomState(0)
    positions = rng.uniform(size=(64, 3))
    output = model.forward(features=rng.uniform(size=(64, 9)), world_positions=positions, rng=rng)
    print(output.logits.shape) # (64, 13)
    ```
    """

    def __init__(self, config: ModelConfig, seed: int = 0):
        """
        :param config: The model config.
        :param seed: The seed of the weight initialization.
        """

        """:field
        The model config.
        """
        self.config: ModelConfig = config
        """:field
        Every trainable parameter.
        """
        self.params: ParameterSet = ParameterSet(dtype=config.np_dtype)
        rng = get_rng(seed)
        """:field
        The feature network.
        """
        self.featnet: FeatureNetwork = FeatureNetwork(config=config.featnet, params=self.params, rng=rng)
        """:field
        The stacked feature-space modules, in order.
        """
        self.nf_modules: List[NFModule] = list()
        in_dim = self.featnet.output_width
        for i in range(config.num_nf_modules):
            self.nf_modules.append(NFModule(name=f"nf_{i + 1}", in_dim=in_dim, width=config.width, params=self.params,
                                            rng=rng, center_concat=config.nf_center_concat))
            in_dim = config.width
        """:field
        The world-space module, or None.
        """
        self.nw_module: Optional[NWModule] = NWModule(name="nw", in_dim=in_dim, width=config.width,
                                                      params=self.params, rng=rng) if config.use_nw_module else None
        num_taps = min(2, config.num_nf_modules) if config.num_nf_modules > 0 else 1
        tap_width = in_dim + (config.width if config.use_nw_module else 0)
        """:field
        The 2-layer MLP before the classifier.
        """
        self.head: Mlp = Mlp(name="head", in_dim=num_taps * tap_width, width=config.width, params=self.params, rng=rng)
        self._classifier_weights = self.params.weight("classifier.weight", config.width, config.num_classes, rng)
        self._classifier_bias = self.params.bias("classifier.bias", config.num_classes)

    def forward(self, features: np.ndarray, world_positions: np.ndarray, rng: np.random.RandomState,
                neighbors: Optional[List[NeighborIndex]] = None,
                assignment: Optional[ClusterAssignment] = None) -> ModelOutput:
        """
        :param features: The N×D input features of a sampled block, N ≥ 2.
        :param world_positions: The N×3 positions of the points, used by k-means.
        :param rng: The random number generator that seeds k-means.
        :param neighbors: If not None, one fixed neighbor index per feature-space module.
        :param assignment: If not None, fixed world-space clusters instead of running k-means.

        :return: A `ModelOutput`.
        """

        config = self.config
        features = np.asarray(features)
        if features.ndim != 2 or features.shape[1] != config.feature_mode.value:
            raise ValidationError(f"Expected N×{config.feature_mode.value} features, got {features.shape}")
        n = features.shape[0]
        if n < 2:
            raise ValidationError(f"A block needs at least 2 points, got {n}")
        if neighbors is not None and len(neighbors) != len(self.nf_modules):
            raise ValidationError(f"Got {len(neighbors)} neighbor indices for {len(self.nf_modules)} modules")
        x = Value(features.astype(config.np_dtype))
        points, global_feature = self.featnet.forward(x)
        k = min(config.knn_k, n - 1)
        h = points
        nf_outputs: List[Value] = list()
        distance_matrices = list()
        indices: List[NeighborIndex] = list()
        for i, module in enumerate(self.nf_modules):
            h, distances, index = module.forward(h, k, neighbors=None if neighbors is None else neighbors[i])
            nf_outputs.append(h)
            distance_matrices.append(distances)
            indices.append(index)
        taps = nf_outputs[-2:] if len(nf_outputs) > 0 else [points]
        if self.nw_module is not None:
            if assignment is None:
                space = world_positions if config.kmeans_space == KMeansSpace.xyz else features
                assignment = kmeans(np.asarray(space, dtype=np.float64), kmeans_k(n, config.kmeans_divisor), rng,
                                    max_iters=config.kmeans_max_iters, tol=config.kmeans_tol)
            _, regional = self.nw_module.forward(taps[-1], assignment)
            taps = [concat_columns([tap, regional]) for tap in taps]
        else:
            assignment = None
        head_input = taps[0] if len(taps) == 1 else concat_columns(taps)
        centroid_features = self.head(head_input)
        logits = linear(centroid_features, self._classifier_weights, self._classifier_bias)
        pair_distances = distance_matrices[config.pair_loss_module - 1] if len(distance_matrices) > 0 else None
        return ModelOutput(logits=logits, centroid_features=centroid_features, pair_distances=pair_distances,
                           point_features=points, global_feature=global_feature, nf_outputs=nf_outputs,
                           neighbors=indices, assignment=assignment)

    def loss(self, output: ModelOutput, labels: np.ndarray, rng: Optional[np.random.RandomState] = None) -> LossReport:
        """
        :param output: The output of `forward()`.
        :param labels: The N ground-truth labels.
        :param rng: The random number generator of pair sampling. Only used if the loss config samples pairs.

        :return: A `LossReport` whose `value` can be back-propagated.
        """

        loss_config = self.config.loss
        l_class = softmax_cross_entropy(output.logits, labels)
        if output.pair_distances is None:
            l_pair = Value(np.array(0.0, dtype=self.config.np_dtype))
        else:
            l_pair = pairwise_loss(output.pair_distances, labels, loss_config, rng)
        l_cent = centroid_loss(output.centroid_features, labels, loss_config)
        return total_loss(l_class, l_pair, l_cent, loss_config)

    def predict(self, features: np.ndarray, world_positions: np.ndarray, rng: np.random.RandomState) -> np.ndarray:
        """
        :param features: The N×D input features.
        :param world_positions: The N×3 positions.
        :param rng: The random number generator that seeds k-means.

        :return: The N×C class scores as a plain array.
        """

        return self.forward(features=features, world_positions=world_positions, rng=rng).logits.data


def build_model(config: ModelConfig, seed: int = 0) -> SegmentationModel:
    """
    :param config: The model config.
    :param seed: The seed of the weight initialization.

    :return: A freshly initialized `SegmentationModel`.
    """

    return SegmentationModel(config=config, seed=seed)
