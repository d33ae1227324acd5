from typing import Dict, List
import numpy as np
from pointseg.errors import ValidationError


def get_rng(seed: int) -> np.random.RandomState:
    """
    :param seed: The random seed.

    :return: A random number generator seeded with `seed`.
    """

    return np.random.RandomState(seed)


def get_rng_state(rng: np.random.RandomState) -> Dict[str, np.ndarray]:
    """
    :param rng: A random number generator.

    :return: The generator's state as named arrays, suitable for a checkpoint.
    """

    name, keys, pos, has_gauss, cached_gaussian = rng.get_state()
    return {"rng.keys": np.asarray(keys, dtype=np.uint32),
            "rng.pos": np.array([pos], dtype=np.int64),
            "rng.has_gauss": np.array([has_gauss], dtype=np.int64),
            "rng.cached_gaussian": np.array([cached_gaussian], dtype=np.float64)}


def set_rng_state(rng: np.random.RandomState, arrays: Dict[str, np.ndarray]) -> None:
    """
    Restore a generator from the arrays returned by `get_rng_state()`.

    :param rng: The random number generator.
    :param arrays: The named arrays.
    """

    rng.set_state(("MT19937",
                   arrays["rng.keys"].astype(np.uint32),
                   int(arrays["rng.pos"][0]),
                   int(arrays["rng.has_gauss"][0]),
                   float(arrays["rng.cached_gaussian"][0])))


def parse_floats(text: str, count: int = None) -> List[float]:
    """
    :param text: Whitespace- or comma-separated numbers.
    :param count: If not None, the required number of values.

    :return: The parsed values.
    """

    try:
        values = [float(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ValidationError(f"Not a list of numbers: {text}")
    if count is not None and len(values) != count:
        raise ValidationError(f"Expected {count} values but got {len(values)}: {text}")
    return values


def parse_bool(text: str) -> bool:
    """
    :param text: `true`/`false`, `yes`/`no`, `on`/`off`, or `1`/`0`.

    :return: The boolean value.
    """

    lowered = text.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    elif lowered in ("false", "no", "off", "0"):
        return False
    raise ValidationError(f"Not a boolean: {text}")
