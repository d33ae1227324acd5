from pointseg.losses.centroid_distance import CentroidDistance
from pointseg.losses.pair_reduction import PairReduction
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.loss_report import LossReport
from pointseg.losses.row_distance import row_distance
from pointseg.losses.pairwise_loss import pairwise_loss, pair_losses
from pointseg.losses.centroid_loss import centroid_loss
from pointseg.losses.total_loss import total_loss
