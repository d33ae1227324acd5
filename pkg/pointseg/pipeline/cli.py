import logging
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import List, Optional
from pointseg.constants import S3DIS_CLASSES, VKITTI3D_CLASSES
from pointseg.dataio.point_cloud_io import save_point_cloud
from pointseg.dataio.synthetic import generate_synthetic_scene, load_scene_spec
from pointseg.errors import NumericalError, ValidationError
from pointseg.exit_code import ExitCode
from pointseg.pipeline.evaluator import evaluate, predict
from pointseg.pipeline.gradient_suite import run_gradient_suite
from pointseg.pipeline.model_config import ModelConfig
from pointseg.pipeline.run_config import load_run_config
from pointseg.pipeline.train_config import TrainConfig
from pointseg.pipeline.trainer import train

logger = logging.getLogger(__name__)


def _train(args: Namespace) -> None:
    if args.config is None:
        model_config, train_config = ModelConfig(), TrainConfig()
    else:
        model_config, train_config = load_run_config(args.config)
    result = train(data_path=args.data, model_config=model_config, train_config=train_config, out_dir=args.out,
                   resume=args.resume, progress=not args.quiet)
    print(f"checkpoint: {result.checkpoint_path}")
    if len(result.logs) > 0:
        print(result.logs[-1])


def _print_report(report, class_names: Optional[List[str]]) -> None:
    print(report.metrics.to_text())
    print()
    print(report.metrics.to_table(class_names))


def _eval(args: Namespace) -> None:
    report = evaluate(data_path=args.data, checkpoint_path=args.checkpoint, covers=args.covers,
                      progress=not args.quiet)
    _print_report(report, _names(args, report.confusion_matrix.num_classes))


def _predict(args: Namespace) -> None:
    report = predict(data_path=args.data, checkpoint_path=args.checkpoint, out_path=args.out, covers=args.covers,
                     progress=not args.quiet)
    _print_report(report, _names(args, report.confusion_matrix.num_classes))


def _names(args: Namespace, num_classes: int) -> Optional[List[str]]:
    if args.class_names == "s3dis":
        return S3DIS_CLASSES if num_classes == len(S3DIS_CLASSES) else None
    elif args.class_names == "vkitti3d":
        return VKITTI3D_CLASSES if num_classes == len(VKITTI3D_CLASSES) else None
    return None


def _gradcheck(args: Namespace) -> None:
    failed = list()
    for name, report in run_gradient_suite(seed=args.seed, max_coordinates=args.max_coordinates):
        print(f"{name}: {report}")
        if not report.passed:
            failed.append(name)
    if len(failed) > 0:
        raise NumericalError(f"Gradient check failed: {', '.join(failed)}")


def _synth(args: Namespace) -> None:
    spec = load_scene_spec(args.spec)
    cloud = generate_synthetic_scene(spec, scene_id=Path(args.out).stem)
    save_point_cloud(cloud, args.out)
    print(f"{len(cloud)} points written to {args.out}")


def get_parser() -> ArgumentParser:
    """
    :return: The command line parser.
    """

    parser = ArgumentParser(prog="pointseg", description="Point cloud semantic segmentation.")
    parser.add_argument("--verbose", action="store_true", help="Log debug messages.")
    parser.add_argument("--quiet", action="store_true", help="Hide progress bars.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("train", help="Train a model.")
    p.add_argument("--config", type=str, default=None, help="A `key = value` config file.")
    p.add_argument("--data", type=str, required=True, help="A point file or a directory of point files.")
    p.add_argument("--out", type=str, required=True, help="The output directory.")
    p.add_argument("--resume", type=str, default=None, help="A checkpoint to continue training from.")
    p.set_defaults(func=_train)

    for command, func, help_text in [("eval", _eval, "Evaluate a checkpoint."),
                                     ("predict", _predict, "Write predicted labels.")]:
        p = subparsers.add_parser(command, help=help_text)
        p.add_argument("--checkpoint", type=str, required=True, help="The checkpoint file.")
        p.add_argument("--data", type=str, required=True, help="A point file or a directory of point files.")
        if command == "predict":
            p.add_argument("--out", type=str, required=True, help="The output file or directory.")
        p.add_argument("--covers", type=int, default=1, help="The number of sampling covers per block.")
        p.add_argument("--class_names", choices=["s3dis", "vkitti3d", "none"], default="none",
                       help="The class names of the report table.")
        p.set_defaults(func=func)

    p = subparsers.add_parser("gradcheck", help="Run the finite-difference gradient suite.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max_coordinates", type=int, default=None, help="Check at most this many coordinates per array.")
    p.set_defaults(func=_gradcheck)

    p = subparsers.add_parser("synth", help="Generate a synthetic scene.")
    p.add_argument("--spec", type=str, required=True, help="The scene spec file.")
    p.add_argument("--out", type=str, required=True, help="The output point file.")
    p.set_defaults(func=_synth)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    :param argv: The command line arguments. If None, use `sys.argv`.

    :return: The exit code value.
    """

    args = get_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except NumericalError as e:
        logger.error(str(e))
        return ExitCode.numerical_failure.value
    except (ValidationError, OSError) as e:
        logger.error(str(e))
        return ExitCode.validation_error.value
    return ExitCode.success.value
