from argparse import ArgumentParser
from typing import Dict
from pointseg.dataio.point_cloud import PointCloud
from pointseg.dataio.point_cloud_io import load_dataset
from pointseg.dataio.folds import cross_validation_folds
from pointseg.dataio.scene_spec import SceneSpec
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.metrics.confusion_matrix import ConfusionMatrix
from pointseg.metrics.segmentation_metrics import compute_metrics
from pointseg.paths import OVERFIT_CONFIG_PATH, THREE_CLASS_SCENE_PATH
from pointseg.pipeline.evaluator import evaluate_clouds
from pointseg.pipeline.run_config import load_run_config
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.trainer import train_on_clouds

"""
K-fold cross validation. Scenes of the same area are kept in the same fold; the confusion matrices of all test folds are merged into one report.

Without `--data`, the folds are built from re-seeded copies of the synthetic scene, two per area.
"""


if __name__ == "__main__":
    parser = ArgumentParser()
    parser.add_argument("--config", type=str, default=str(OVERFIT_CONFIG_PATH))
    parser.add_argument("--data", type=str, default=None, help="A directory of point files.")
    parser.add_argument("--folds", type=int, default=3)
    parser.add_argument("--epochs", type=int, default=100)
    args = parser.parse_args()
    model_config, train_config = load_run_config(args.config)
    train_config = TrainConfig.from_dict({**train_config.to_dict(), "epochs": str(args.epochs)})
    if args.data is None:
        spec = load_scene_spec(THREE_CLASS_SCENE_PATH)
        clouds = list()
        for area in range(1, args.folds + 1):
            for room in range(2):
                seeded = SceneSpec(primitives=spec.primitives, seed=area * 10 + room, num_classes=spec.num_classes)
                clouds.append(generate_synthetic_scene(seeded, scene_id=f"Area_{area}_room_{room}"))
    else:
        clouds = load_dataset(args.data, num_classes=model_config.num_classes)
    by_id: Dict[str, PointCloud] = {cloud.scene_id: cloud for cloud in clouds}
    total = ConfusionMatrix(model_config.num_classes)
    for i, (train_ids, test_ids) in enumerate(cross_validation_folds(clouds, args.folds)):
        result = train_on_clouds([by_id[s] for s in train_ids], model_config, train_config, progress=False)
        report = evaluate_clouds(result.model, [by_id[s] for s in test_ids], train_config, progress=False)
        total = total.merge(report.confusion_matrix)
        print(f"fold {i}: test={','.join(test_ids)} oAcc={report.metrics.o_acc:.4f} mIoU={report.metrics.m_iou:.4f}")
    metrics = compute_metrics(total)
    print(metrics.to_text())
    print(metrics.to_table())
