"""Command-line entry point: parse, compute, export, replay.

Exit codes are a stable contract: 0 success, 1 I/O failure, 2 validation
failure (XML, cross-references, event CSV), 3 replay infeasibility.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .errors import (
    EventListError,
    HfgtError,
    InfeasibleEventError,
    LfesParseError,
    LfesSchemaError,
    MetamodelError,
    ModelValueError,
    PetriModelError,
)
from .export import dof_summary, export_bundle, write_frames, write_replay_csvs
from .ingest import parse_event_list, parse_lfes, validate_raw
from .matrices import compute_bundle
from .metamodel import SystemModel
from .petri import build_petri_network, export_frames, map_events, simulate_token_flow

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3

log = logging.getLogger("hfgt")


def _configure_logging() -> None:
    level_name = os.environ.get("HFGT_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _read_bytes(path: str) -> bytes:
    return Path(path).read_bytes()


def _load_model(input_path: str) -> SystemModel:
    raw = parse_lfes(_read_bytes(input_path))
    diagnostics = validate_raw(raw)
    errors = [d for d in diagnostics if d.severity == "error"]
    for diagnostic in diagnostics:
        print(str(diagnostic), file=sys.stderr)
    if errors:
        raise LfesSchemaError(f"{len(errors)} validation error(s)", "LFES")
    return SystemModel.build(raw)


def _replay(args: argparse.Namespace):
    model = _load_model(args.input)
    bundle = compute_bundle(
        model,
        transpose_ac=args.transpose_ac,
        implicit_controllers=args.implicit_controllers,
    )
    events = parse_event_list(_read_bytes(args.events))
    mapped = map_events(events, model, bundle, local_process_index=args.local_process_index)
    net = build_petri_network(model)
    return simulate_token_flow(net, mapped)


def cmd_build(args: argparse.Namespace) -> int:
    model = _load_model(args.input)
    bundle = compute_bundle(
        model,
        transpose_ac=args.transpose_ac,
        implicit_controllers=args.implicit_controllers,
    )
    manifest = export_bundle(bundle, model, Path(args.output))
    log.info("wrote %d artifacts to %s", len(manifest["artifacts"]), args.output)
    print(dof_summary(bundle))
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    net = _replay(args)
    qb_path, qt_path = write_replay_csvs(net, Path(args.output))
    log.info("wrote %s and %s", qb_path, qt_path)
    return EXIT_OK


def cmd_frames(args: argparse.Namespace) -> int:
    net = _replay(args)
    document = export_frames(net)
    out = Path(args.output)
    if out.is_dir() or not out.suffix:
        out.mkdir(parents=True, exist_ok=True)
        out = out / "frames.json"
    write_frames(document, out, pretty=args.pretty)
    log.info("wrote %s (%d frames)", out, len(document["frames"]))
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    model = _load_model(args.input)
    bundle = compute_bundle(model)
    resources = model.resources
    catalog = model.catalog
    print(f"system: {model.raw.name}" + (f" ({model.raw.type})" if model.raw.type else ""))
    print(
        "resources: "
        f"{resources.num_machines} machines, {resources.num_ind_buffers} independent buffers, "
        f"{resources.num_transporters} transporters ({resources.num_resources} total, "
        f"{resources.num_buffers} buffers)"
    )
    print(
        "processes: "
        f"{catalog.num_transform} transformation, {catalog.num_transport} transportation, "
        f"{catalog.num_holding} holding, {catalog.num_refined} refined transportation"
    )
    print(f"operands: {', '.join(model.operands) if model.operands else '(none)'}")
    print(f"controllers: {resources.num_controllers}; services: {resources.num_services}")
    print(dof_summary(bundle))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hfgt",
        description="Compute hetero-functional graph structures from an LFES XML file "
        "and replay scheduled-event token flows over the induced Petri net.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, events: bool = False) -> None:
        p.add_argument("input", help="LFES XML input file")
        if events:
            p.add_argument("--events", required=True, help="scheduled event list CSV")
        p.add_argument(
            "--transpose-ac",
            action="store_true",
            help="store controller adjacency receiver->sender instead of sender->receiver",
        )
        p.add_argument(
            "--local-process-index",
            action="store_true",
            help="event idxProcess indexes the resource's own method list, not the system process set",
        )
        p.add_argument(
            "--implicit-controllers",
            action="store_true",
            help="give every resource an implicit dependent controller",
        )

    p_build = sub.add_parser("build", help="compute and export every matrix and tensor")
    common(p_build)
    p_build.add_argument("--output", "-o", required=True, help="output directory")
    p_build.set_defaults(func=cmd_build)

    p_replay = sub.add_parser("replay", help="replay an event list; write Qb/Qt CSVs")
    common(p_replay, events=True)
    p_replay.add_argument("--output", "-o", required=True, help="output directory")
    p_replay.set_defaults(func=cmd_replay)

    p_frames = sub.add_parser("frames", help="replay an event list; write viewer frames JSON")
    common(p_frames, events=True)
    p_frames.add_argument("--output", "-o", required=True, help="output file or directory")
    p_frames.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p_frames.set_defaults(func=cmd_frames)

    p_inspect = sub.add_parser("inspect", help="print counts and DOF summary without writing")
    common(p_inspect)
    p_inspect.set_defaults(func=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, IsADirectoryError, PermissionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InfeasibleEventError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (LfesParseError, LfesSchemaError, EventListError, MetamodelError, ModelValueError, PetriModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except HfgtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
