from pointseg.neighbors.distance_matrix import DistanceMatrix, pairwise_l1
from pointseg.neighbors.neighbor_index import NeighborIndex, knn_indices
from pointseg.neighbors.cluster_assignment import ClusterAssignment
from pointseg.neighbors.kmeans import kmeans, kmeans_k
from pointseg.neighbors.kmeans_space import KMeansSpace
from pointseg.neighbors.nf_module import NFModule
from pointseg.neighbors.nw_module import NWModule
