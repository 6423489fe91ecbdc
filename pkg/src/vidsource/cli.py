"""Command-line pipeline: simulate, extract, select, train, predict,
evaluate.

Every command exits 0 on success.  Failures print exactly one line,
``vidsource: error: <reason>``, to stderr and exit nonzero, so the tool
can be scripted.  All outputs are deterministic functions of their
inputs and the ``--seed`` value.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import classifiers, evaluation, selection
from .camera_sim import default_profile_bank, simulate_clips
from .config import PipelineConfig, load_config
from .dataset import LabeledDataset, read_feature_csv, write_feature_csv
from .errors import VidsourceError
from .features import extract_frame_features, noise_seed, FEATURE_NAMES
from .frame_io import ingest_tree, write_clip

PROG = "vidsource"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise VidsourceError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog=PROG, description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="render the synthetic camera bank")
    p.add_argument("--out", required=True, help="output corpus directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--clips", type=int, default=30,
                   help="clips per camera (default 30)")
    p.add_argument("--frames", type=int, default=20,
                   help="frames per clip (default 20)")
    p.add_argument("--height", type=int, default=128)
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--format", choices=("png", "ppm"), default="png")

    p = sub.add_parser("extract", help="extract per-frame feature vectors")
    p.add_argument("--input", required=True,
                   help="corpus root: <label>/<clip>/frame_NNNNNN.png")
    p.add_argument("--out", required=True, help="output feature CSV")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("select", help="rank features and intersect top-k")
    p.add_argument("--features", required=True, help="training feature CSV")
    p.add_argument("--out", required=True, help="output selection JSON")
    p.add_argument("--k", type=int, default=selection.DEFAULT_TOP_K)

    p = sub.add_parser("train", help="train one classifier")
    p.add_argument("--features", required=True, help="training feature CSV")
    p.add_argument("--classifier", required=True,
                   choices=sorted(classifiers.KIND_ALIASES))
    p.add_argument("--out", required=True, help="output model JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--selection", help="selection JSON to project features")

    p = sub.add_parser("predict", help="label frames and clips")
    p.add_argument("--model", required=True, help="model JSON")
    p.add_argument("--features", required=True, help="feature CSV to label")
    p.add_argument("--out", required=True, help="output predictions CSV")

    p = sub.add_parser("evaluate", help="clip-stratified cross-validation")
    p.add_argument("--features", required=True, help="labeled feature CSV")
    p.add_argument("--classifier", required=True,
                   choices=sorted(classifiers.KIND_ALIASES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--folds", type=int, default=evaluation.DEFAULT_FOLDS)
    p.add_argument("--out-report", required=True, help="output report JSON")
    p.add_argument("--out-csv", help="optional metrics CSV")
    p.add_argument("--selection", help="selection JSON to project features")
    return parser


def _cmd_simulate(args) -> None:
    root = Path(args.out)
    for clip in simulate_clips(default_profile_bank(), args.seed, args.clips,
                               args.frames, args.height, args.width):
        write_clip(clip.frames, root / clip.camera_id / clip.clip_id,
                   image_format=args.format)
    print(f"wrote corpus under {root}")


def _cmd_extract(args) -> None:
    config = load_config(args.config) if args.config else PipelineConfig()
    config.validate()
    tasks = []  # (label, clip_id, frame_index, frame)
    for label, clip_id, frames in ingest_tree(args.input):
        for i, frame in enumerate(frames, start=1):
            tasks.append((label, clip_id, i, frame))

    def run(task):
        label, clip_id, i, frame = task
        seed = noise_seed(args.seed, clip_id, i)
        return extract_frame_features(frame, config.distortion, seed)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            vectors = list(pool.map(run, tasks))
    else:
        vectors = [run(task) for task in tasks]
    dataset = LabeledDataset(
        feature_names=list(FEATURE_NAMES),
        rows=np.asarray(vectors),
        labels=[t[0] for t in tasks],
        clip_ids=[t[1] for t in tasks],
    )
    write_feature_csv(dataset, args.out)
    print(f"extracted {len(tasks)} frame vectors -> {args.out}")


def _cmd_select(args) -> None:
    dataset = read_feature_csv(args.features)
    selected = selection.select_intersection(dataset, k=args.k)
    selection.save_selection(selected, args.out)
    print(f"selected {len(selected.names)} features -> {args.out}")


def _projected(dataset: LabeledDataset, selection_path) -> LabeledDataset:
    if not selection_path:
        return dataset
    selected = selection.load_selection(selection_path)
    return dataset.project(list(selected.names))


def _cmd_train(args) -> None:
    dataset = _projected(read_feature_csv(args.features), args.selection)
    kind = classifiers.KIND_ALIASES[args.classifier]
    model = classifiers.train(kind, dataset, args.seed)
    classifiers.save_model(model, args.out)
    print(f"trained {kind.value} on {dataset.n_rows} rows -> {args.out}")


def _cmd_predict(args) -> None:
    model = classifiers.load_model(args.model)
    dataset = read_feature_csv(args.features).project(
        list(model.feature_subset))
    lines = ["scope,clip_id,frame_index,label"]
    clip_rows = {}
    for clip_id in sorted(dataset.clips()):
        clip_rows[clip_id] = dataset.rows_of_clip(clip_id)
    for clip_id, rows in clip_rows.items():
        for i, label in enumerate(classifiers.predict_rows(model, rows),
                                  start=1):
            lines.append(f"frame,{clip_id},{i},{label}")
    for clip_id, rows in clip_rows.items():
        lines.append(f"clip,{clip_id},,{classifiers.predict_clip(model, rows)}")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"predicted {len(clip_rows)} clips -> {args.out}")


def _cmd_evaluate(args) -> None:
    dataset = _projected(read_feature_csv(args.features), args.selection)
    kind = classifiers.KIND_ALIASES[args.classifier]
    report = evaluation.cross_validate(dataset, kind, args.folds, args.seed)
    with open(args.out_report, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report.to_json())
    if args.out_csv:
        with open(args.out_csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(evaluation.metrics_csv(report))
    acc = report.accuracy("frame")
    print(f"{kind.value}: frame accuracy {acc:.4f}, "
          f"clip accuracy {report.accuracy('clip'):.4f}")


_COMMANDS = {
    "simulate": _cmd_simulate,
    "extract": _cmd_extract,
    "select": _cmd_select,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "evaluate": _cmd_evaluate,
}


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        _COMMANDS[args.command](args)
        return 0
    except VidsourceError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
