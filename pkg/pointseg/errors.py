class PointSegError(Exception):
    """
    The base class of every error raised by this package.
    """

    pass


class ValidationError(PointSegError):
    """
    Bad input: a malformed file, an invalid config value, an out-of-range label, or mismatched shapes.
    """

    pass


class NumericalError(PointSegError):
    """
    A non-finite value appeared during training, or a gradient check failed.
    """

    pass


class CheckpointError(ValidationError):
    """
    A checkpoint file is truncated, corrupt, or was written by a different format version.
    """

    pass
