from typing import Dict
import numpy as np
from pointseg.constants import LEARNING_RATE, BETA1, BETA2, EPSILON


class OptimizerState:
    """
    The state of the Adam optimizer: per-parameter moment estimates, the step count, and the hyperparameters.
    """

    def __init__(self, learning_rate: float = LEARNING_RATE, beta1: float = BETA1, beta2: float = BETA2,
                 epsilon: float = EPSILON):
        """
        :param learning_rate: The step size.
        :param beta1: The first moment decay.
        :param beta2: The second moment decay.
        :param epsilon: Added to the denominator.
        """

        """:field
        The step size.
        """
        self.learning_rate: float = learning_rate
        """:field
        The first moment decay.
        """
        self.beta1: float = beta1
        """:field
        The second moment decay.
        """
        self.beta2: float = beta2
        """:field
        Added to the denominator.
        """
        self.epsilon: float = epsilon
        """:field
        The number of optimizer steps so far.
        """
        self.step: int = 0
        """:field
        First moment estimates keyed by parameter name.
        """
        self.first_moments: Dict[str, np.ndarray] = dict()
        """:field
        Second moment estimates keyed by parameter name.
        """
        self.second_moments: Dict[str, np.ndarray] = dict()
