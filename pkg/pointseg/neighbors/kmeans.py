import logging
from typing import List, Tuple
import numpy as np
from scipy.spatial.distance import cdist
from pointseg.constants import KMEANS_DIVISOR, KMEANS_MAX_ITERS, KMEANS_TOL
from pointseg.errors import ValidationError
from pointseg.neighbors.cluster_assignment import ClusterAssignment

logger = logging.getLogger(__name__)


def kmeans_k(n: int, divisor: int = KMEANS_DIVISOR) -> int:
    """
    :param n: The number of points per block.
    :param divisor: Points per cluster.

    :return: `floor(n / divisor)`, but at least 1.
    """

    return max(1, n // divisor)


def kmeans(points: np.ndarray, k: int, rng: np.random.RandomState, max_iters: int = KMEANS_MAX_ITERS,
           tol: float = KMEANS_TOL) -> ClusterAssignment:
    """
    Lloyd's algorithm. Centers start at `k` distinct randomly chosen points.
    Each iteration assigns every point to its nearest center (squared L2 distance; ties go to the lower cluster index), then moves every center to the mean of its points.
    If a cluster is empty, the point farthest from its own center moves into it.
    The loop stops when no center moves more than `tol` or after `max_iters` iterations; a final assignment step makes every point belong to its nearest center.

    ```python
    import numpy as np
    from pointseg.neighbors.kmeans import kmeans

    points = np.array([[0, 0], [0.1, 0], [10, 10], [10, 10.1]])
    result = kmeans(points, k=2, rng=np.random.RandomState(0))
    print(result.assignments) # [0 0 1 1]
    ```

    :param points: An N×D array.
    :param k: The number of clusters, `1 <= k <= N`.
    :param rng: The random number generator that chooses the initial centers.
    :param max_iters: The maximum number of iterations.
    :param tol: The center displacement that counts as converged.

    :return: A `ClusterAssignment` with canonical cluster numbering.
    """

    points = np.asarray(points, dtype=np.float64)
    n = points.shape[0]
    if k < 1 or k > n:
        raise ValidationError(f"kmeans(): k={k} but there are {n} points")
    centers = points[rng.choice(n, size=k, replace=False)].copy()
    history: List[float] = list()
    iterations = 0
    for iterations in range(1, max_iters + 1):
        labels, squared = _assign(points, centers)
        labels, squared = _reseed_empty(points, labels, squared, centers)
        history.append(float(squared.sum()))
        new_centers = _means(points, labels, k)
        shift = float(np.max(np.linalg.norm(new_centers - centers, axis=1)))
        centers = new_centers
        if shift < tol:
            break
    labels, squared = _assign(points, centers)
    labels, squared = _reseed_empty(points, labels, squared, centers)
    history.append(float(squared.sum()))
    labels, centers = _canonicalize(labels, centers)
    return ClusterAssignment(assignments=labels, centers=centers, inertia=history[-1], iterations_run=iterations,
                             inertia_history=history)


def _assign(points: np.ndarray, centers: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    :return: Tuple: the nearest center of every point, the squared distance to it.
    """

    squared = cdist(points, centers, metric="sqeuclidean")
    labels = np.argmin(squared, axis=1)
    return labels, squared[np.arange(points.shape[0]), labels]


def _reseed_empty(points: np.ndarray, labels: np.ndarray, squared: np.ndarray,
                  centers: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Move the farthest point into each empty cluster. `centers` is modified in place.

    :return: Tuple: the updated labels, the updated squared distances.
    """

    k = centers.shape[0]
    counts = np.bincount(labels, minlength=k)
    for empty in np.flatnonzero(counts == 0):
        # Only points in clusters with other members can move.
        movable = counts[labels] > 1
        candidates = np.where(movable, squared, -1.0)
        farthest = int(np.argmax(candidates))
        logger.debug(f"Reseeding empty cluster {empty} with point {farthest}")
        counts[labels[farthest]] -= 1
        counts[empty] += 1
        labels[farthest] = empty
        squared[farthest] = 0.0
        centers[empty] = points[farthest]
    return labels, squared


def _means(points: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    sums = np.zeros((k, points.shape[1]))
    np.add.at(sums, labels, points)
    return sums / np.bincount(labels, minlength=k)[:, None]


def _canonicalize(labels: np.ndarray, centers: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Renumber clusters in order of their lowest member index.
    """

    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    mapping = np.empty(centers.shape[0], dtype=np.int64)
    mapping[order] = np.arange(centers.shape[0])
    return mapping[labels], centers[order]
