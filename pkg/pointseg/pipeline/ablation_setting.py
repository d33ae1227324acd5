from enum import Enum


class AblationSetting(Enum):
    """
    A model variant of the component ablation, from the bare feature network to the full model.
    """

    fn_only = 0  # The feature network and the classifier. Classification loss only.
    fn_nf = 1  # Adds the stacked feature-space modules.
    fn_nf_pair = 2  # Adds the pairwise similarity loss.
    fn_nf_pair_nw = 3  # Adds the world-space module.
    full = 4  # Adds the centroid loss.
