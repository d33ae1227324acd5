from typing import List
import numpy as np


class ClusterAssignment:
    """
    The result of k-means: one cluster per point, the cluster centers, and how the objective evolved.
    Clusters are numbered in order of their lowest member index.
    """

    def __init__(self, assignments: np.ndarray, centers: np.ndarray, inertia: float, iterations_run: int,
                 inertia_history: List[float] = None):
        """
        :param assignments: N cluster indices in `[0, K)`.
        :param centers: A K×D array of cluster centers.
        :param inertia: The sum of squared distances of every point to its center.
        :param iterations_run: The number of iterations.
        :param inertia_history: The inertia after each assignment step.
        """

        """:field
        N cluster indices in `[0, K)`.
        """
        self.assignments: np.ndarray = assignments
        """:field
        A K×D array of cluster centers.
        """
        self.centers: np.ndarray = centers
        """:field
        The sum of squared distances of every point to its center.
        """
        self.inertia: float = inertia
        """:field
        The number of iterations.
        """
        self.iterations_run: int = iterations_run
        """:field
        The inertia after each assignment step. This never increases.
        """
        self.inertia_history: List[float] = list() if inertia_history is None else inertia_history

    @property
    def num_clusters(self) -> int:
        """
        :return: The number of clusters K.
        """

        return self.centers.shape[0]

    @staticmethod
    def from_labels(assignments: np.ndarray, points: np.ndarray) -> "ClusterAssignment":
        """
        :param assignments: N cluster indices. Every index in `[0, max]` must be used.
        :param points: The N×D points.

        :return: An assignment whose centers are the cluster means.
        """

        assignments = np.asarray(assignments, dtype=np.int64)
        k = int(assignments.max()) + 1
        counts = np.bincount(assignments, minlength=k)
        centers = np.zeros((k, points.shape[1]))
        np.add.at(centers, assignments, points)
        centers /= counts[:, None]
        inertia = float(np.sum((points - centers[assignments]) ** 2))
        return ClusterAssignment(assignments=assignments, centers=centers, inertia=inertia, iterations_run=0)
