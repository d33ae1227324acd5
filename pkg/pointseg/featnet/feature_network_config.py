from pointseg.constants import FEATURE_BLOCKS, WIDTH
from pointseg.errors import ValidationError
from pointseg.featnet.fusion import Fusion


class FeatureNetworkConfig:
    """
    The shape of a `FeatureNetwork`.
    """

    def __init__(self, input_dim: int, num_blocks: int = FEATURE_BLOCKS, fusion: Fusion = Fusion.additive,
                 width: int = WIDTH):
        """
        :param input_dim: The width D of the input features.
        :param num_blocks: The number of feature blocks.
        :param fusion: How pathways are combined.
        :param width: The width W of every layer.
        """

        if num_blocks < 1:
            raise ValidationError(f"Invalid number of feature blocks: {num_blocks}")
        if width < 1:
            raise ValidationError(f"Invalid width: {width}")
        if input_dim < 1:
            raise ValidationError(f"Invalid input width: {input_dim}")
        """:field
        The width D of the input features.
        """
        self.input_dim: int = input_dim
        """:field
        The number of feature blocks.
        """
        self.num_blocks: int = num_blocks
        """:field
        How pathways are combined.
        """
        self.fusion: Fusion = fusion
        """:field
        The width W of every layer.
        """
        self.width: int = width

    @property
    def output_width(self) -> int:
        """
        :return: The width of the network's point features: W for additive fusion, W × (num_blocks + 1) for concatenation.
        """

        if self.fusion == Fusion.additive:
            return self.width
        return self.width * (self.num_blocks + 1)
