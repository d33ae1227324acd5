import numpy as np
from pointseg.constants import COSINE_EPS
from pointseg.diffcore.value import Value
from pointseg.errors import ValidationError
from pointseg.losses.centroid_distance import CentroidDistance


def row_distance(a: Value, b: Value, metric: CentroidDistance = CentroidDistance.cosine,
                 eps: float = COSINE_EPS) -> Value:
    """
    :param a: An N×F value.
    :param b: An N×F value.
    :param metric: The distance.
    :param eps: The lower bound of the norm product in the cosine distance.

    :return: An N value: the distance between each row of `a` and the same row of `b`.
    """

    if a.shape != b.shape or a.data.ndim != 2:
        raise ValidationError(f"row_distance(): shape mismatch: {a.shape} vs. {b.shape}")
    if metric == CentroidDistance.cosine:
        return _cosine(a, b, eps)
    elif metric == CentroidDistance.l1:
        delta = a.data - b.data

        def backward() -> None:
            g = out.grad[:, None] * np.sign(delta)
            a.grad += g
            b.grad -= g

        out = Value(np.abs(delta).sum(axis=1), parents=(a, b), op="row_l1", backward=backward)
        return out
    elif metric == CentroidDistance.l2:
        delta = a.data - b.data
        norms = np.sqrt((delta * delta).sum(axis=1))
        safe = np.where(norms > 0, norms, 1)

        def backward() -> None:
            # The subgradient at a == b is 0.
            g = (out.grad * (norms > 0) / safe)[:, None] * delta
            a.grad += g
            b.grad -= g

        out = Value(norms, parents=(a, b), op="row_l2", backward=backward)
        return out
    else:
        raise ValidationError(f"Unsupported distance: {metric}")


def _cosine(a: Value, b: Value, eps: float) -> Value:
    dots = (a.data * b.data).sum(axis=1)
    norm_a = np.sqrt((a.data * a.data).sum(axis=1))
    norm_b = np.sqrt((b.data * b.data).sum(axis=1))
    products = norm_a * norm_b
    clamped = products <= eps
    denominators = np.where(clamped, eps, products)
    cosines = dots / denominators

    def backward() -> None:
        safe_a = np.where(norm_a > 0, norm_a, 1)
        safe_b = np.where(norm_b > 0, norm_b, 1)
        # Below the clamp the denominator is constant.
        correction_a = np.where(clamped, 0, cosines / (safe_a * safe_a))[:, None]
        correction_b = np.where(clamped, 0, cosines / (safe_b * safe_b))[:, None]
        g = -out.grad[:, None]
        a.grad += g * (b.data / denominators[:, None] - correction_a * a.data)
        b.grad += g * (a.data / denominators[:, None] - correction_b * b.data)

    out = Value(1.0 - cosines, parents=(a, b), op="row_cosine", backward=backward)
    return out
