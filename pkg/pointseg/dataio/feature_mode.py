from enum import Enum


class FeatureMode(Enum):
    """
    Which per-point input features a sampled block carries.
    """

    xyz = 3  # Positions only.
    xyzrgb = 6  # Positions and colors.
    full9d = 9  # Positions, colors, and coordinates normalized to the room.
