"""Command line interface.

::

    bearingcap sweep run.toml --out results/
    bearingcap fig10 --geometry bearing-6205-c3 --jobs 4
    bearingcap fem-convergence run.toml
    bearingcap bearing-total run.toml
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Union

import msgspec

from . import __version__, analytic2d, config as config_mod, fem2d, report
from ._errors import BearingCapError
from .config import SweepConfig
from .studies import ALIASES, STUDIES
from .geometry import to_dimensionless
from .network import aggregate_bearing, network_from_config
from .result import Method
from .sweep import report_from_columns, run_sweep

__all__ = ("main", "build_parser")

logger = logging.getLogger("bearingcap")


def __dir__():
    return __all__


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bearingcap",
        description="Capacitance of unloaded ball/raceway contacts by closed-form, "
        "semi-analytic, analytic and finite element models.",
    )
    parser.add_argument("--version", action="version", version=f"bearingcap {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required):
        if config_required:
            p.add_argument("config", help="TOML or YAML run configuration")
        else:
            p.add_argument("config", nargs="?", help="TOML or YAML run configuration")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--jobs", type=int, help="worker threads, overrides the config")
        p.add_argument("--geometry", help="geometry preset, overrides the config")

    p = sub.add_parser("sweep", help="all configured methods over the gap grid")
    common(p, True)
    p.add_argument(
        "--ref",
        choices=[m.value for m in Method],
        help="reference method, overrides the config",
    )

    for name, func in STUDIES.items():
        p = sub.add_parser(
            name, aliases=[ALIASES[name]], help=func.__doc__.splitlines()[0]
        )
        common(p, False)
        p.set_defaults(study=name)

    p = sub.add_parser("fem-convergence", help="finite element refinement study per gap")
    common(p, True)

    p = sub.add_parser("bearing-total", help="whole-bearing capacitance")
    common(p, True)
    return parser


def _setup_logging(args) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s"
    )


def _load_config(args) -> SweepConfig:
    cfg = config_mod.load(args.config) if args.config else SweepConfig()
    changes = {}
    if args.jobs is not None:
        changes["jobs"] = args.jobs
    if args.geometry is not None:
        changes["geometry"] = msgspec.structs.replace(cfg.geometry, preset=args.geometry)
    if getattr(args, "ref", None) is not None:
        changes["reference"] = Method(args.ref)
    if not changes:
        return cfg
    # round trip so overrides are validated like the file
    merged = msgspec.structs.replace(cfg, **changes)
    return config_mod.decode(config_mod.encode(merged), "toml")


def _fem_convergence(cfg: SweepConfig):
    n_max = cfg.fem.levels
    data = {f"L{n}": [] for n in range(n_max + 1)}
    data.update(extrapolated=[], order=[], F=[])
    gaps = [float(g) for g in cfg.grid.gaps_um()]
    for gap_um in gaps:
        geom = cfg.contact(gap_um)
        section = to_dimensionless(geom, cfg.plane)
        study = fem2d.convergence_study(
            section, n_max, geom.permittivity, cfg.fem.mesh, cfg.fem.solver
        )
        for level in study.levels:
            data[f"L{level.level}"].append(level.capacitance)
        data["extrapolated"].append(study.extrapolated)
        data["order"].append(study.order)
        data["F"].append(
            analytic2d.capacitance_model_f(
                section, geom.permittivity, analytic2d.theta_limit(section)
            )
        )
    units = {name: "F/m" for name in data}
    units["order"] = "1"
    return report_from_columns(
        f"finite element convergence, {cfg.geometry.ring.value} ring, {cfg.plane.value}",
        gaps,
        data,
        units,
        reference="F",
    )


def _write_outputs(rep, cfg: SweepConfig, out: str, stem: str) -> None:
    paths = report.emit(rep, out, stem)
    json_path = os.path.join(out, f"{stem}.json")
    report.write_json(rep, json_path)
    report.write_atomic(os.path.join(out, f"{stem}.config.toml"), config_mod.encode(cfg))
    for path in [*paths, json_path]:
        logger.info("wrote %s", path)
    sys.stdout.write(report.summary(rep))


def main(argv: Union[List[str], None] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args)
    try:
        cfg = _load_config(args)
        if args.command == "sweep":
            mesh_dir = None
            if cfg.fem.dump_mesh:
                mesh_dir = os.path.join(args.out, "meshes")
                os.makedirs(mesh_dir, exist_ok=True)
            _write_outputs(run_sweep(cfg, mesh_dir=mesh_dir), cfg, args.out, "sweep")
        elif getattr(args, "study", None) is not None:
            _write_outputs(STUDIES[args.study](cfg), cfg, args.out, args.study)
        elif args.command == "fem-convergence":
            _write_outputs(_fem_convergence(cfg), cfg, args.out, "fem-convergence")
        else:
            spec = network_from_config(cfg)
            total = aggregate_bearing(spec)
            os.makedirs(args.out, exist_ok=True)
            report.write_atomic(
                os.path.join(args.out, "bearing-total.json"),
                msgspec.json.format(
                    msgspec.json.encode({"total": total, "network": spec}), indent=2
                ),
            )
            sys.stdout.write(
                f"bearing total: {report.format_number(total)} F "
                f"({spec.n_unloaded} of {spec.n_elements} elements unloaded, "
                f"{len(spec.loaded)} loaded values)\n"
            )
    except BearingCapError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return 1
    except OSError as exc:
        logger.error("%s", exc)
        return 1
    return 0
