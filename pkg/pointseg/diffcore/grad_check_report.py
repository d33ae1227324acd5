from typing import Dict, Tuple


class GradCheckReport:
    """
    The result of a finite-difference gradient check.
    """

    def __init__(self, max_rel_error: float, errors: Dict[str, float], worst: Tuple[str, int], num_checked: int,
                 tolerance: float):
        """
        :param max_rel_error: The largest relative error over every checked coordinate.
        :param errors: The largest relative error per checked value, keyed by name.
        :param worst: The name and flat index of the coordinate with the largest error.
        :param num_checked: The number of checked coordinates.
        :param tolerance: The tolerance of the check.
        """

        """:field
        The largest relative error over every checked coordinate.
        """
        self.max_rel_error: float = max_rel_error
        """:field
        The largest relative error per checked value, keyed by name.
        """
        self.errors: Dict[str, float] = errors
        """:field
        The name and flat index of the coordinate with the largest error.
        """
        self.worst: Tuple[str, int] = worst
        """:field
        The number of checked coordinates.
        """
        self.num_checked: int = num_checked
        """:field
        The tolerance of the check.
        """
        self.tolerance: float = tolerance

    @property
    def passed(self) -> bool:
        """
        :return: True if the largest relative error is less than the tolerance.
        """

        return self.max_rel_error < self.tolerance

    def __str__(self):
        status = "ok" if self.passed else "FAILED"
        return f"{status}: max relative error {self.max_rel_error:.3e} at {self.worst[0]}[{self.worst[1]}] " \
               f"({self.num_checked} coordinates, tolerance {self.tolerance:.0e})"
