from argparse import ArgumentParser
from pathlib import Path
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.paths import OVERFIT_CONFIG_PATH, THREE_CLASS_SCENE_PATH
from pointseg.pipeline.evaluator import evaluate_clouds
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.run_config import load_run_config
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.trainer import train_on_clouds

"""
Sweep the thresholds of the pairwise similarity loss.
"""


if __name__ == "__main__":
    parser = ArgumentParser()
    parser.add_argument("--config", type=str, default=str(OVERFIT_CONFIG_PATH))
    parser.add_argument("--scene", type=str, default=str(THREE_CLASS_SCENE_PATH))
    parser.add_argument("--near", type=float, nargs="+", default=[0.0, 0.2, 0.5])
    parser.add_argument("--far", type=float, nargs="+", default=[1.0, 2.0, 4.0])
    parser.add_argument("--epochs", type=int, default=100)
    args = parser.parse_args()
    base, train_config = load_run_config(args.config)
    train_config = TrainConfig.from_dict({**train_config.to_dict(), "epochs": str(args.epochs)})
    cloud = generate_synthetic_scene(load_scene_spec(args.scene), scene_id=Path(args.scene).stem)
    print("tau_near\ttau_far\ttrain_oAcc\tmIoU\tl_pair")
    for tau_near in args.near:
        for tau_far in args.far:
            if tau_far <= tau_near:
                continue
            values = base.to_dict()
            values.update(tau_near=repr(tau_near), tau_far=repr(tau_far))
            result = train_on_clouds([cloud], ModelConfig.from_dict(values), train_config, progress=False)
            metrics = evaluate_clouds(result.model, [cloud], train_config, progress=False).metrics
            log = result.logs[-1]
            print(f"{tau_near}\t{tau_far}\t{100 * log.o_acc:.2f}\t{100 * metrics.m_iou:.2f}\t{log.l_pair:.4f}")
