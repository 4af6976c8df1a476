"""Command-line entry point.

    disambig <subcommand> --config pipeline.ini [--set section.key=value ...]

Exit codes: 0 success, 1 usage/config error, 2 stage failure.
"""

from __future__ import annotations

import argparse
import sys

from ..errors import DisambigError, InvalidConfig
from ..render import layout_registry
from . import stages
from .config import load_config

_STAGES = {
    "synth": stages.stage_synth,
    "dedup": stages.stage_dedup,
    "block": stages.stage_block,
    "render": stages.stage_render,
    "train": stages.stage_train,
    "infer": stages.stage_infer,
    "cluster": stages.stage_cluster,
    "evaluate": stages.stage_evaluate,
    "pipeline": stages.run_pipeline,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disambig",
        description="Inventor-name disambiguation via comparison-map images")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("synth", "generate a labeled synthetic corpus"),
        ("dedup", "remove exact-key duplicate records"),
        ("block", "partition records into name-prefix blocks"),
        ("render", "render within-block pairs to comparison-map tensors"),
        ("train", "train the classifier on labeled pairs"),
        ("infer", "score every rendered pair with the trained model"),
        ("cluster", "cluster match probabilities into inventor groups"),
        ("evaluate", "score the assignment against entity labels"),
        ("pipeline", "run every stage in order (supports threshold sweeps)"),
        ("layouts", "list available render layouts"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="INI configuration file")
        cmd.add_argument("--set", dest="overrides", action="append",
                         default=[], metavar="SECTION.KEY=VALUE",
                         help="override one config value (repeatable)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "layouts":
        for name, layout in sorted(layout_registry().items()):
            print(f"{name}: {layout.canvas_width}x{layout.canvas_height} "
                  f"canvas, version {layout.version}")
        return 0

    try:
        cfg = load_config(args.config, args.overrides)
    except InvalidConfig as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        _STAGES[args.command](cfg)
    except DisambigError as exc:
        print(f"{args.command} failed: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{args.command} failed: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
