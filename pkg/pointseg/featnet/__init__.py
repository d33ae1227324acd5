from pointseg.featnet.fusion import Fusion
from pointseg.featnet.feature_network_config import FeatureNetworkConfig
from pointseg.featnet.feature_block import FeatureBlock
from pointseg.featnet.feature_network import FeatureNetwork
