import logging
from typing import Callable, Dict, List, Optional, Tuple
import numpy as np
from pointseg.diffcore.grad_check import grad_check
from pointseg.diffcore.grad_check_report import GradCheckReport
from pointseg.diffcore.ops import add, concat_columns, gather_rows, linear, max_pool_groups, max_pool_rows, relu, \
    segment_mean, softmax_cross_entropy, sum_all
from pointseg.diffcore.parameter_set import ParameterSet
from pointseg.diffcore.value import Value
from pointseg.featnet.feature_network import FeatureNetwork
from pointseg.featnet.feature_network_config import FeatureNetworkConfig
from pointseg.featnet.fusion import Fusion
from pointseg.losses.centroid_distance import CentroidDistance
from pointseg.losses.centroid_loss import centroid_loss
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.pairwise_loss import pairwise_loss
from pointseg.neighbors.cluster_assignment import ClusterAssignment
from pointseg.neighbors.distance_matrix import pairwise_l1
from pointseg.neighbors.kmeans import kmeans
from pointseg.neighbors.nf_module import NFModule
from pointseg.neighbors.nw_module import NWModule
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.segmentation_model import SegmentationModel

"""
Finite-difference checks of every differentiable operation, from single ops to a tiny full model.
"""

logger = logging.getLogger(__name__)

# A case builds a scalar-valued closure and the values to check.
GradientCase = Callable[[np.random.RandomState], Tuple[Callable[[], Value], List[Value]]]


def _balanced_labels(n: int, num_classes: int, rng: np.random.RandomState) -> np.ndarray:
    # Every class gets at least 2 points.
    return rng.permutation(np.arange(n) % num_classes)


def _away_from_zero(shape: Tuple[int, ...], rng: np.random.RandomState) -> np.ndarray:
    x = rng.normal(size=shape)
    return x + np.sign(x) * 0.1


def _classifier(params: ParameterSet, in_dim: int, num_classes: int, rng: np.random.RandomState):
    w = params.weight(f"w{len(params)}", in_dim, num_classes, rng)
    b = params.bias(f"b{len(params)}", num_classes)
    b.data = rng.normal(size=num_classes) * 0.1
    return w, b


def _case_linear(rng: np.random.RandomState):
    params = ParameterSet()
    x = Value(rng.normal(size=(4, 3)))
    w = params.weight("w", 3, 2, rng)
    b = params.bias("b", 2)
    b.data = rng.normal(size=2)
    return lambda: sum_all(linear(x, w, b)), [x, w, b]


def _case_relu(rng: np.random.RandomState):
    params = ParameterSet()
    x = Value(_away_from_zero((6, 4), rng))
    w, b = _classifier(params, 4, 3, rng)
    labels = _balanced_labels(6, 3, rng)
    return lambda: softmax_cross_entropy(linear(relu(x), w, b), labels), [x, w, b]


def _case_max_pool_rows(rng: np.random.RandomState):
    params = ParameterSet()
    x = Value(rng.normal(size=(6, 4)))
    w, b = _classifier(params, 4, 3, rng)
    return lambda: softmax_cross_entropy(linear(max_pool_rows(x), w, b), np.array([1])), [x, w, b]


def _case_max_pool_groups(rng: np.random.RandomState):
    params = ParameterSet()
    x = Value(rng.normal(size=(8, 3)))
    groups = np.array([0, 1, 2, 0, 1, 2, 0, 1])
    w, b = _classifier(params, 3, 2, rng)
    labels = np.array([0, 1, 1])
    return lambda: softmax_cross_entropy(linear(max_pool_groups(x, groups, 3), w, b), labels), [x, w, b]


def _case_softmax_cross_entropy(rng: np.random.RandomState):
    logits = Value(rng.normal(size=(5, 4)))
    labels = np.array([0, 3, 1, 1, 2])
    return lambda: softmax_cross_entropy(logits, labels), [logits]


def _case_helper_ops(rng: np.random.RandomState):
    params = ParameterSet()
    a = Value(rng.normal(size=(6, 3)))
    c = Value(rng.normal(size=(6, 3)))
    groups = np.array([0, 1, 0, 2, 1, 2])
    w, b = _classifier(params, 6, 3, rng)
    labels = _balanced_labels(6, 3, rng)

    def forward() -> Value:
        means = gather_rows(segment_mean(add(a, c), groups, 3), groups)
        return softmax_cross_entropy(linear(concat_columns([a, means]), w, b), labels)
    return forward, [a, c, w, b]


def _case_pairwise_l1(rng: np.random.RandomState):
    x = Value(rng.normal(size=(5, 3)))
    labels = np.array([0, 1, 2, 3, 4])
    return lambda: softmax_cross_entropy(pairwise_l1(x).values, labels), [x]


def _case_nf_module(rng: np.random.RandomState):
    params = ParameterSet()
    x = Value(rng.normal(size=(6, 4)))
    module = NFModule(name="nf", in_dim=4, width=4, params=params, rng=rng)
    _, _, neighbors = module.forward(x, k=2)
    w, b = _classifier(params, 4, 3, rng)
    labels = _balanced_labels(6, 3, rng)
    return lambda: softmax_cross_entropy(linear(module.forward(x, k=2, neighbors=neighbors)[0], w, b), labels), \
        [x] + [p for p in params]


def _case_nw_module(rng: np.random.RandomState):
    params = ParameterSet()
    x = Value(rng.normal(size=(6, 4)))
    module = NWModule(name="nw", in_dim=4, width=4, params=params, rng=rng)
    assignment = ClusterAssignment.from_labels(np.array([0, 0, 1, 1, 1, 0]), rng.normal(size=(6, 3)))
    w, b = _classifier(params, 4, 3, rng)
    labels = _balanced_labels(6, 3, rng)
    return lambda: softmax_cross_entropy(linear(module.forward(x, assignment)[1], w, b), labels), \
        [x] + [p for p in params]


def _feature_network_case(fusion: Fusion) -> GradientCase:
    def case(rng: np.random.RandomState):
        params = ParameterSet()
        x = Value(rng.normal(size=(6, 3)))
        network = FeatureNetwork(config=FeatureNetworkConfig(input_dim=3, num_blocks=2, fusion=fusion, width=4),
                                 params=params, rng=rng)
        w, b = _classifier(params, network.output_width, 3, rng)
        labels = _balanced_labels(6, 3, rng)
        return lambda: softmax_cross_entropy(linear(network(x), w, b), labels), [x] + [p for p in params]
    return case


def _case_pairwise_loss(rng: np.random.RandomState):
    x = Value(rng.normal(size=(6, 4)))
    labels = _balanced_labels(6, 3, rng)
    config = LossConfig(tau_near=1.0, tau_far=6.0)
    return lambda: pairwise_loss(pairwise_l1(x), labels, config), [x]


def _centroid_case(distance: CentroidDistance) -> GradientCase:
    def case(rng: np.random.RandomState):
        x = Value(rng.normal(size=(6, 4)))
        labels = _balanced_labels(6, 3, rng)
        config = LossConfig(cent_distance=distance)
        return lambda: centroid_loss(x, labels, config), [x]
    return case


def _case_full_model(rng: np.random.RandomState):
    n = 12
    config = ModelConfig(feature_blocks=2, width=8, knn_k=3, num_classes=4, kmeans_divisor=4,
                         loss=LossConfig(tau_near=0.5, tau_far=3.0))
    model = SegmentationModel(config=config, seed=int(rng.randint(0, 1 << 16)))
    features = rng.uniform(size=(n, 9))
    positions = features[:, :3]
    labels = _balanced_labels(n, 3, rng)
    first = model.forward(features=features, world_positions=positions, rng=rng)
    assignment = kmeans(positions, 3, rng)

    def forward() -> Value:
        output = model.forward(features=features, world_positions=positions, rng=np.random.RandomState(0),
                               neighbors=first.neighbors, assignment=assignment)
        return model.loss(output, labels).value
    return forward, [p for p in model.params]


# Every case, keyed by name.
GRADIENT_CASES: Dict[str, GradientCase] = {"linear": _case_linear,
                                           "relu": _case_relu,
                                           "max_pool_rows": _case_max_pool_rows,
                                           "max_pool_groups": _case_max_pool_groups,
                                           "softmax_cross_entropy": _case_softmax_cross_entropy,
                                           "helper_ops": _case_helper_ops,
                                           "pairwise_l1": _case_pairwise_l1,
                                           "nf_module": _case_nf_module,
                                           "nw_module": _case_nw_module,
                                           "feature_network_additive": _feature_network_case(Fusion.additive),
                                           "feature_network_concat": _feature_network_case(Fusion.concat),
                                           "pairwise_loss": _case_pairwise_loss,
                                           "centroid_loss_cosine": _centroid_case(CentroidDistance.cosine),
                                           "centroid_loss_l1": _centroid_case(CentroidDistance.l1),
                                           "centroid_loss_l2": _centroid_case(CentroidDistance.l2),
                                           "full_model": _case_full_model}


def run_gradient_case(name: str, seed: int = 0, max_coordinates: Optional[int] = None) -> GradCheckReport:
    """
    :param name: The name of a case in `GRADIENT_CASES`.
    :param seed: The random seed of the case's data and weights.
    :param max_coordinates: If not None, check at most this many coordinates per value.

    :return: The gradient check report.
    """

    rng = np.random.RandomState(seed)
    forward, values = GRADIENT_CASES[name](rng)
    return grad_check(forward, values, max_coordinates=max_coordinates, rng=rng)


def run_gradient_suite(seed: int = 0, max_coordinates: Optional[int] = None) -> List[Tuple[str, GradCheckReport]]:
    """
    Run every gradient check case.

    :param seed: The random seed.
    :param max_coordinates: If not None, check at most this many coordinates per value.

    :return: A list of tuples: the case name, the report.
    """

    reports: List[Tuple[str, GradCheckReport]] = list()
    for name in GRADIENT_CASES:
        report = run_gradient_case(name, seed=seed, max_coordinates=max_coordinates)
        logger.info(f"{name}: {report}")
        reports.append((name, report))
    return reports
