from argparse import ArgumentParser
from pathlib import Path
import matplotlib.pyplot as plt
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.paths import OVERFIT_CONFIG_PATH, THREE_CLASS_SCENE_PATH
from pointseg.pipeline.ablation import ablation_table, run_ablation
from pointseg.pipeline.run_config import load_run_config
from pointseg.pipeline.train_config import TrainConfig

"""
Train every component ablation setting on the synthetic scene, print the metrics table, and plot the loss curves.
"""


if __name__ == "__main__":
    parser = ArgumentParser()
    parser.add_argument("--config", type=str, default=str(OVERFIT_CONFIG_PATH))
    parser.add_argument("--scene", type=str, default=str(THREE_CLASS_SCENE_PATH))
    parser.add_argument("--epochs", type=int, default=None, help="Override the number of epochs.")
    parser.add_argument("--out", type=str, default="ablation.png", help="The loss curve image.")
    args = parser.parse_args()
    model_config, train_config = load_run_config(args.config)
    if args.epochs is not None:
        train_config = TrainConfig.from_dict({**train_config.to_dict(), "epochs": str(args.epochs)})
    cloud = generate_synthetic_scene(load_scene_spec(args.scene), scene_id=Path(args.scene).stem)
    rows = run_ablation([cloud], model_config, train_config, progress=True)
    print(ablation_table(rows))
    # One loss curve per setting.
    fig, ax = plt.subplots(figsize=(8, 5))
    for row in rows:
        ax.plot(row.step_losses, label=row.setting.name, linewidth=1)
    ax.set_xlabel("step")
    ax.set_ylabel("total loss")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out)
    print(f"Saved: {Path(args.out).resolve()}")
