from typing import Iterable
import numpy as np
from pointseg.diffcore.optimizer_state import OptimizerState
from pointseg.diffcore.param import Param


def optimizer_step(params: Iterable[Param], state: OptimizerState) -> None:
    """
    Apply one Adam update with bias-corrected moments, then clear every gradient.
    A parameter whose gradient is all zeros is left unchanged and its moments are not updated.

    :param params: The parameters.
    :param state: The optimizer state. The step count is incremented.
    """

    params = list(params)
    state.step += 1
    t = state.step
    correction1 = 1 - state.beta1 ** t
    correction2 = 1 - state.beta2 ** t
    for param in params:
        grad = param.grad
        if not np.any(grad):
            continue
        m = state.first_moments.get(param.name)
        v = state.second_moments.get(param.name)
        if m is None:
            m = np.zeros_like(param.data)
            v = np.zeros_like(param.data)
        m = state.beta1 * m + (1 - state.beta1) * grad
        v = state.beta2 * v + (1 - state.beta2) * grad * grad
        state.first_moments[param.name] = m
        state.second_moments[param.name] = v
        m_hat = m / correction1
        v_hat = v / correction2
        param.data = (param.data - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)).astype(param.data.dtype)
    for param in params:
        param.zero_grad()
