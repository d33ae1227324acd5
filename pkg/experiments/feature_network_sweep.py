from argparse import ArgumentParser
from pathlib import Path
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.featnet.fusion import Fusion
from pointseg.paths import OVERFIT_CONFIG_PATH, THREE_CLASS_SCENE_PATH
from pointseg.pipeline.evaluator import evaluate_clouds
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.run_config import load_run_config
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.trainer import train_on_clouds

"""
Compare feature network depths and pathway fusions. Only the feature network and the classifier are trained: no neighborhood modules and only the classification loss.
"""


if __name__ == "__main__":
    parser = ArgumentParser()
    parser.add_argument("--config", type=str, default=str(OVERFIT_CONFIG_PATH))
    parser.add_argument("--scene", type=str, default=str(THREE_CLASS_SCENE_PATH))
    parser.add_argument("--blocks", type=int, nargs="+", default=[3, 12, 17])
    parser.add_argument("--epochs", type=int, default=100)
    args = parser.parse_args()
    base, train_config = load_run_config(args.config)
    train_config = TrainConfig.from_dict({**train_config.to_dict(), "epochs": str(args.epochs)})
    cloud = generate_synthetic_scene(load_scene_spec(args.scene), scene_id=Path(args.scene).stem)
    print("blocks\tfusion\ttrain_oAcc\toAcc\tmIoU\tparameters")
    for num_blocks in args.blocks:
        for fusion in [Fusion.additive, Fusion.concat]:
            values = base.to_dict()
            values.update(feature_blocks=str(num_blocks), fusion=fusion.name, num_nf_modules="0",
                          use_nw_module="false", loss_weights="1 0 0")
            config = ModelConfig.from_dict(values)
            result = train_on_clouds([cloud], config, train_config, progress=False)
            metrics = evaluate_clouds(result.model, [cloud], train_config, progress=False).metrics
            num_parameters = sum(p.data.size for p in result.model.params)
            print(f"{num_blocks}\t{fusion.name}\t{100 * result.logs[-1].o_acc:.2f}\t{100 * metrics.o_acc:.2f}\t"
                  f"{100 * metrics.m_iou:.2f}\t{num_parameters}")
