from typing import Callable, Dict, List, Sequence
import numpy as np
from pointseg.constants import GRAD_CHECK_EPS, GRAD_CHECK_TOLERANCE, GRAD_CHECK_FLOOR
from pointseg.diffcore.grad_check_report import GradCheckReport
from pointseg.diffcore.param import Param
from pointseg.diffcore.value import Value


def grad_check(forward: Callable[[], Value], params: Sequence[Value], eps: float = GRAD_CHECK_EPS,
               tolerance: float = GRAD_CHECK_TOLERANCE, floor: float = GRAD_CHECK_FLOOR,
               max_coordinates: int = None, rng: np.random.RandomState = None) -> GradCheckReport:
    """
    Compare backward-pass gradients against central finite differences.
    The relative error of a coordinate is `|a - n| / max(|a|, |n|, floor)`.

    ```python
    import numpy as np
    from pointseg.diffcore.ops import linear, softmax_cross_entropy
    from pointseg.diffcore.parameter_set import ParameterSet
    from pointseg.diffcore.value import Value
    from pointseg.diffcore.grad_check import grad_check

    rng = np.random.RandomState(0)
    params = ParameterSet()
    w = params.weight("w", 3, 2, rng)
    b = params.bias("b", 2)
    x = Value(rng.normal(size=(4, 3)))

    labels = np.array([0, 1, 1, 0])
    report = grad_check(lambda: softmax_cross_entropy(linear(x, w, b), labels), params=[w, b, x])
    print(report.passed) # True
    ```

    :param forward: A deterministic closure that rebuilds the graph from the current values and returns a scalar.
    :param params: The values to check. They must be leaves of the graph that `forward` builds.
    :param eps: The central difference step.
    :param tolerance: The check passes if every relative error is below this.
    :param floor: The denominator floor of the relative error.
    :param max_coordinates: If not None, check at most this many randomly chosen coordinates per value.
    :param rng: The random number generator that chooses coordinates. Only used if `max_coordinates` is not None.

    :return: A `GradCheckReport`.
    """

    for p in params:
        p.data = np.ascontiguousarray(p.data)
        p.grad = np.zeros_like(p.data)
    forward().backward()
    analytic: List[np.ndarray] = [p.grad.copy() for p in params]
    errors: Dict[str, float] = dict()
    worst_error = 0.0
    worst = ("", -1)
    num_checked = 0
    for i, (p, a) in enumerate(zip(params, analytic)):
        name = p.name if isinstance(p, Param) else f"value_{i}"
        flat = p.data.reshape(-1)
        coordinates = np.arange(flat.shape[0])
        if max_coordinates is not None and coordinates.shape[0] > max_coordinates:
            if rng is None:
                rng = np.random.RandomState(0)
            coordinates = np.sort(rng.choice(coordinates, size=max_coordinates, replace=False))
        a_flat = a.reshape(-1)
        param_error = 0.0
        for j in coordinates:
            original = flat[j]
            flat[j] = original + eps
            f_plus = forward().item()
            flat[j] = original - eps
            f_minus = forward().item()
            flat[j] = original
            numeric = (f_plus - f_minus) / (2 * eps)
            error = abs(a_flat[j] - numeric) / max(abs(a_flat[j]), abs(numeric), floor)
            param_error = max(param_error, error)
            if error > worst_error:
                worst_error = error
                worst = (name, int(j))
            num_checked += 1
        errors[name] = param_error
    for p in params:
        p.grad = np.zeros_like(p.data)
    return GradCheckReport(max_rel_error=worst_error, errors=errors, worst=worst, num_checked=num_checked,
                           tolerance=tolerance)
