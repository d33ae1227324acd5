from pointseg.diffcore.ops import weighted_sum
from pointseg.diffcore.value import Value
from pointseg.losses.loss_config import LossConfig
from pointseg.losses.loss_report import LossReport


def total_loss(l_class: Value, l_pair: Value, l_cent: Value, config: LossConfig) -> LossReport:
    """
    :param l_class: The classification loss.
    :param l_pair: The pairwise similarity loss.
    :param l_cent: The centroid loss.
    :param config: The loss parameters. Only the weights are used.

    :return: A `LossReport`. `total` is exactly the weighted sum of the reported components.
    """

    value = weighted_sum([l_class, l_pair, l_cent], config.weights)
    return LossReport(l_class=l_class.item(), l_pair=l_pair.item(), l_cent=l_cent.item(), total=value.item(),
                      value=value)
