from pathlib import Path
from typing import Dict, List, Optional, Union
import numpy as np
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.primitive import Primitive
from pointseg.dataio.scene_spec import SceneSpec
from pointseg.errors import ValidationError
from pointseg.util import get_rng, parse_floats

"""
Synthetic scenes built from planes and boxes, for tests and desk-scale experiments.
"""


def generate_synthetic_scene(spec: SceneSpec, scene_id: str = "synthetic") -> PointCloud:
    """
    Sample points uniformly on every primitive's surface. Each rectangle gets `round(area * density)` points.

    ```python
    import numpy as np
    from pointseg.dataio.primitive import Primitive
    from pointseg.dataio.scene_spec import SceneSpec
    from pointseg.dataio.synthetic import generate_synthetic_scene

    floor = Primitive(kind="plane", class_id=0, bbox_min=np.array([0, 0, 0]), bbox_max=np.array([1, 1, 0]), density=100)
    cloud = generate_synthetic_scene(SceneSpec(primitives=[floor], seed=0))
    print(len(cloud)) # 100
    ```

    :param spec: The scene spec.
    :param scene_id: The scene ID of the point cloud.

    :return: A point cloud with colors and labels.
    """

    rng = get_rng(spec.seed)
    positions: List[np.ndarray] = list()
    colors: List[np.ndarray] = list()
    labels: List[np.ndarray] = list()
    for primitive in spec.primitives:
        for lo, hi in primitive.faces():
            extent = hi - lo
            area = float(np.prod(extent[extent > 0]))
            count = int(round(area * primitive.density))
            if count == 0:
                continue
            positions.append(lo + rng.uniform(0, 1, size=(count, 3)) * extent)
            colors.append(np.tile(primitive.color, (count, 1)))
            labels.append(np.full(count, primitive.class_id, dtype=np.int64))
    if len(positions) == 0:
        raise ValidationError("The scene spec produced no points")
    return PointCloud(positions=np.vstack(positions), colors=np.vstack(colors), labels=np.concatenate(labels),
                      scene_id=scene_id, num_classes=spec.num_classes)


def load_scene_spec(path: Union[str, Path]) -> SceneSpec:
    """
    Parse a scene spec file. Top-level `key = value` lines set `seed` and `num_classes`.
    Each `[plane]` or `[box]` header starts a primitive with the keys `class`, `min`, `max`, `density`, and `color` (optional).

    ```
    seed = 0
    [plane]
    class = 0
    min = 0 0 0
    max = 2 2 0
    density = 100
    ```

    :param path: The path to the file.

    :return: A `SceneSpec`.
    """

    path = Path(path)
    if not path.exists():
        raise ValidationError(f"File not found: {path}")
    header: Dict[str, str] = dict()
    sections: List[Dict[str, str]] = list()
    section: Optional[Dict[str, str]] = None
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line == "":
            continue
        if line.startswith("[") and line.endswith("]"):
            section = {"kind": line[1:-1].strip()}
            sections.append(section)
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{line_number}: expected `key = value`")
        key, value = [s.strip() for s in line.split("=", 1)]
        (header if section is None else section)[key] = value
    primitives: List[Primitive] = list()
    for s in sections:
        try:
            primitives.append(Primitive(kind=s["kind"],
                                        class_id=int(s["class"]),
                                        bbox_min=np.array(parse_floats(s["min"], 3)),
                                        bbox_max=np.array(parse_floats(s["max"], 3)),
                                        density=float(s["density"]),
                                        color=np.array(parse_floats(s["color"], 3)) if "color" in s else None))
        except KeyError as e:
            raise ValidationError(f"{path}: [{s['kind']}] is missing {e}")
        except ValueError as e:
            raise ValidationError(f"{path}: [{s['kind']}]: {e}")
    return SceneSpec(primitives=primitives,
                     seed=int(header.get("seed", 0)),
                     num_classes=int(header["num_classes"]) if "num_classes" in header else None)
