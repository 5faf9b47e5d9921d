"""Command-line entry point (``plu`` / ``python -m plu``)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data import make_spiral, save_csv
from .harness.config import TrainConfig
from .harness.experiments import run_experiment
from .harness.export import export_grid
from .harness.gradcheck import gradcheck
from .harness.training import TrainingError, train
from .network import load_checkpoint


def _dump(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def cmd_spiral_gen(args) -> int:
    ds = make_spiral(args.n, args.turns, args.r_max, args.noise, args.seed)
    save_csv(ds, args.out)
    return 0


def cmd_train(args) -> int:
    cfg = TrainConfig.load(args.config)
    out = Path(args.out)
    snap_dir = out.with_name(out.stem + "_snapshots")
    try:
        report = train(cfg, snapshot_dir=snap_dir)
    except TrainingError as exc:
        _dump(exc.report.to_dict(), out)
        print(f"training aborted: {exc}", file=sys.stderr)
        return 1
    _dump(report.to_dict(), out)
    print(f"final loss {report.final_loss:.6f}")
    return 0


def cmd_experiment(args) -> int:
    report = run_experiment(args.id, args.seed, out_dir=args.out_dir)
    for family, loss in report.final_losses().items():
        print(f"{family:>16s}  final loss {loss:.6f}")
    return 0


def cmd_grid(args) -> int:
    m = load_checkpoint(args.checkpoint)
    export_grid(m, args.bounds, args.res, args.out)
    return 0


def cmd_gradcheck(args) -> int:
    arch = [int(a) for a in args.arch.split(",")]
    report = gradcheck(arch, args.act, seed=args.seed, tol=args.tol)
    d = report.to_dict()
    d.pop("seconds")  # keep stdout byte-stable across runs
    print(json.dumps(d, indent=1))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plu", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spiral-gen", help="write a spiral dataset as CSV")
    s.add_argument("--n", type=int, default=200, help="points per class")
    s.add_argument("--turns", type=float, default=1.75)
    s.add_argument("--r-max", type=float, default=1.0)
    s.add_argument("--noise", type=float, default=0.05)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_spiral_gen)

    s = sub.add_parser("train", help="train from a JSON TrainConfig")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True, help="report JSON; snapshots go to <stem>_snapshots/")
    s.set_defaults(func=cmd_train)

    s = sub.add_parser("experiment", help="run a comparative experiment")
    s.add_argument("--id", required=True, choices=["exp1", "exp2", "exp3", "collapse"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-dir", required=True)
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("grid", help="export a probability grid for a checkpoint")
    s.add_argument("--checkpoint", required=True)
    s.add_argument("--res", type=int, default=200)
    s.add_argument("--bounds", type=float, nargs=4, default=[-1.2, 1.2, -1.2, 1.2],
                   metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    s.add_argument("--out", required=True, help="output base; writes <base>.csv and <base>.pgm")
    s.set_defaults(func=cmd_grid)

    s = sub.add_parser("gradcheck", help="check analytic gradients against finite differences")
    s.add_argument("--arch", default="2,4,4,1")
    s.add_argument("--act", default="plu", choices=["plu", "plu-theoretical", "snake", "relu", "gelu"])
    s.add_argument("--tol", type=float, default=1e-5)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gradcheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
