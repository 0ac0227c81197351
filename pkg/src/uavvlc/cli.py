"""Command-line front end.

Four modes: ``single`` solves one seeded scenario and writes a JSON record
plus per-user CSVs; ``montecarlo`` aggregates many runs at fixed
thresholds; ``sweep`` tabulates mean power versus the rate threshold for
each height and scheme; ``fig4`` emits per-user rate/illumination tables
for two threshold cases.  Configuration comes from an optional flat
key=value file overridden by flags; everything is deterministic given the
config, so repeated invocations produce byte-identical outputs.

Exit codes: 0 all requested runs feasible, 2 some run infeasible,
1 configuration or usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from .channel import Requirements, VlcParams
from .optimizer import DeploymentSolution
from .scenario import (SCHEMES, ScenarioConfig, generate_scenario,
                       per_user_report, run_monte_carlo, solve_scenario)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2

PER_USER_COLUMNS = ["user_index", "x_m", "y_m", "serving_uav",
                    "achieved_rate_bits", "achieved_illum",
                    "rate_threshold", "illum_threshold"]
SWEEP_COLUMNS = ["axis_name", "axis_value", "scheme", "height_m",
                 "mean_total_power_w", "std_total_power_w", "runs"]
MC_COLUMNS = ["scheme", "height_m", "mean_total_power_w",
              "std_total_power_w", "runs", "infeasible_runs"]


class ConfigError(Exception):
    """Invalid configuration; the message names the offending field."""


@dataclass
class RunConfig:
    mode: str = "single"
    seed: int = 0
    runs: int = 100
    users: int = 16
    area_size: float = 10.0
    grid: tuple[int, int] = (2, 2)
    heights: list[float] = field(default_factory=lambda: [8.0])
    detector_area_m2: float = 1e-4
    refractive_index: float = 1.5
    tx_semi_angle_deg: float = 60.0
    fov_semi_angle_deg: float = 60.0
    noise_std_a: float = 1e-10
    illum_factor: float = 1.0
    rate_threshold_bits: float = 2.0
    illum_threshold: float = 0.1
    cth_sweep: tuple[float, float, float] = (1.0, 3.0, 0.5)
    schemes: list[str] = field(default_factory=lambda: list(SCHEMES))
    out: str = "results"
    max_iters: int = 20
    rel_tol: float = 1e-9

    def params_at(self, height: float) -> VlcParams:
        return VlcParams.from_degrees(
            detector_area=self.detector_area_m2,
            refractive_index=self.refractive_index,
            tx_semi_angle_deg=self.tx_semi_angle_deg,
            fov_semi_angle_deg=self.fov_semi_angle_deg,
            noise_std=self.noise_std_a,
            illum_factor=self.illum_factor,
            uav_height=height)

    def requirements(self) -> Requirements:
        return Requirements(self.rate_threshold_bits, self.illum_threshold)


def _parse_int(field_name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{field_name}: expected an integer, got {raw!r}") from None


def _parse_float(field_name: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{field_name}: expected a number, got {raw!r}") from None


def _parse_grid(raw: str) -> tuple[int, int]:
    parts = raw.lower().split("x")
    if len(parts) != 2:
        raise ConfigError(f"grid: expected KXxKY like 2x2, got {raw!r}")
    gx, gy = (_parse_int("grid", p) for p in parts)
    if gx < 1 or gy < 1:
        raise ConfigError("grid: both dimensions must be >= 1")
    return gx, gy


def _parse_heights(raw: str) -> list[float]:
    values = [_parse_float("heights", p) for p in raw.split(",") if p.strip()]
    if not values:
        raise ConfigError("heights: empty list")
    return values


def _parse_sweep(raw: str) -> tuple[float, float, float]:
    parts = raw.split(":")
    if len(parts) != 3:
        raise ConfigError(f"cth_sweep: expected FROM:TO:STEP, got {raw!r}")
    lo, hi, step = (_parse_float("cth_sweep", p) for p in parts)
    if step <= 0.0 or hi < lo:
        raise ConfigError("cth_sweep: need STEP > 0 and TO >= FROM")
    return lo, hi, step


def _parse_schemes(raw: str) -> list[str]:
    names = [p.strip() for p in raw.split(",") if p.strip()]
    if not names:
        raise ConfigError("schemes: empty list")
    for name in names:
        if name not in SCHEMES:
            raise ConfigError(
                f"schemes: unknown scheme {name!r}; expected from {SCHEMES}")
    return names


# Config-file key -> RunConfig field setter.  Flat key=value format.
_KEY_PARSERS = {
    "mode": lambda cfg, v: setattr(cfg, "mode", v),
    "seed": lambda cfg, v: setattr(cfg, "seed", _parse_int("seed", v)),
    "runs": lambda cfg, v: setattr(cfg, "runs", _parse_int("runs", v)),
    "users": lambda cfg, v: setattr(cfg, "users", _parse_int("users", v)),
    "area_size": lambda cfg, v: setattr(cfg, "area_size", _parse_float("area_size", v)),
    "grid": lambda cfg, v: setattr(cfg, "grid", _parse_grid(v)),
    "heights": lambda cfg, v: setattr(cfg, "heights", _parse_heights(v)),
    "detector_area_m2": lambda cfg, v: setattr(cfg, "detector_area_m2",
                                               _parse_float("detector_area_m2", v)),
    "refractive_index": lambda cfg, v: setattr(cfg, "refractive_index",
                                               _parse_float("refractive_index", v)),
    "tx_semi_angle_deg": lambda cfg, v: setattr(cfg, "tx_semi_angle_deg",
                                                _parse_float("tx_semi_angle_deg", v)),
    "fov_semi_angle_deg": lambda cfg, v: setattr(cfg, "fov_semi_angle_deg",
                                                 _parse_float("fov_semi_angle_deg", v)),
    "noise_std_a": lambda cfg, v: setattr(cfg, "noise_std_a",
                                          _parse_float("noise_std_a", v)),
    "illum_factor": lambda cfg, v: setattr(cfg, "illum_factor",
                                           _parse_float("illum_factor", v)),
    "rate_threshold_bits": lambda cfg, v: setattr(cfg, "rate_threshold_bits",
                                                  _parse_float("rate_threshold_bits", v)),
    "illum_threshold": lambda cfg, v: setattr(cfg, "illum_threshold",
                                              _parse_float("illum_threshold", v)),
    "cth_sweep": lambda cfg, v: setattr(cfg, "cth_sweep", _parse_sweep(v)),
    "schemes": lambda cfg, v: setattr(cfg, "schemes", _parse_schemes(v)),
    "out": lambda cfg, v: setattr(cfg, "out", v),
    "max_iters": lambda cfg, v: setattr(cfg, "max_iters", _parse_int("max_iters", v)),
    "rel_tol": lambda cfg, v: setattr(cfg, "rel_tol", _parse_float("rel_tol", v)),
}


def apply_config_file(cfg: RunConfig, path: str) -> None:
    """Apply key=value lines; '#' starts a comment, blank lines skipped."""
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigError(f"config: cannot read {path!r}: {err}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"config {path}:{lineno}: expected key=value")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KEY_PARSERS:
            raise ConfigError(f"config {path}:{lineno}: unknown key {key!r}")
        _KEY_PARSERS[key](cfg, value)


def validate_config(cfg: RunConfig) -> None:
    if cfg.mode not in ("single", "sweep", "montecarlo", "fig4"):
        raise ConfigError(f"mode: unknown mode {cfg.mode!r}")
    positive = [("runs", cfg.runs), ("users", cfg.users),
                ("area_size", cfg.area_size),
                ("detector_area_m2", cfg.detector_area_m2),
                ("refractive_index", cfg.refractive_index),
                ("noise_std_a", cfg.noise_std_a),
                ("illum_factor", cfg.illum_factor),
                ("max_iters", cfg.max_iters)]
    for name, value in positive:
        if value <= 0:
            raise ConfigError(f"{name}: must be > 0, got {value}")
    if not 0.0 < cfg.tx_semi_angle_deg < 90.0:
        raise ConfigError("tx_semi_angle_deg: must be in (0, 90)")
    if not 0.0 < cfg.fov_semi_angle_deg <= 90.0:
        raise ConfigError("fov_semi_angle_deg: must be in (0, 90]")
    if cfg.rate_threshold_bits < 0.0 or cfg.illum_threshold < 0.0:
        raise ConfigError("thresholds: must be >= 0")
    if cfg.rate_threshold_bits == 0.0 and cfg.illum_threshold == 0.0:
        raise ConfigError("thresholds: at least one of rate_threshold_bits/"
                          "illum_threshold must be > 0")
    if cfg.rel_tol < 0.0:
        raise ConfigError("rel_tol: must be >= 0")
    for h in cfg.heights:
        if h <= 0.0:
            raise ConfigError(f"heights: must be > 0, got {h}")


def workers_from_env() -> int:
    raw = os.environ.get("UAVVLC_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"UAVVLC_THREADS: expected an integer, got {raw!r}") from None
    if workers < 1:
        raise ConfigError("UAVVLC_THREADS: must be >= 1")
    return workers


def _fmt(value: float) -> str:
    # repr of a Python float round-trips exactly (17 significant digits max)
    return repr(float(value))


def _json_safe(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _solution_record(solution: DeploymentSolution) -> dict:
    return {
        "feasible": solution.feasible,
        "total_power_w": solution.total_power,
        "per_uav_power_w": list(solution.per_uav_power),
        "uav_positions": [[p.x, p.y] for p in solution.uav_positions],
        "clusters": [list(c) for c in solution.association.clusters],
        "trace": [[entry.total_power, entry.step]
                  for entry in solution.iterations],
    }


def _config_record(cfg: RunConfig) -> dict:
    record = asdict(cfg)
    record["grid"] = f"{cfg.grid[0]}x{cfg.grid[1]}"
    record["cth_sweep"] = ":".join(repr(v) for v in cfg.cth_sweep)
    return record


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(_json_safe(payload), indent=2, sort_keys=True)
                    + "\n")


def _write_per_user_csv(path: Path, reports, users, reqs) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PER_USER_COLUMNS)
        for rep in reports:
            u = users[rep.user_index]
            writer.writerow([rep.user_index, _fmt(u.x), _fmt(u.y),
                             rep.serving_uav, _fmt(rep.achieved_rate),
                             _fmt(rep.achieved_illum),
                             _fmt(reqs.rate_threshold),
                             _fmt(reqs.illum_threshold)])


def _scenario_config(cfg: RunConfig, height: float,
                     reqs: Optional[Requirements] = None) -> ScenarioConfig:
    return ScenarioConfig(
        area_size=cfg.area_size, grid=cfg.grid, num_users=cfg.users,
        base_seed=cfg.seed, params=cfg.params_at(height),
        reqs=reqs if reqs is not None else cfg.requirements(),
        max_iters=cfg.max_iters, rel_tol=cfg.rel_tol)


def run_single(cfg: RunConfig, out_dir: Path) -> int:
    height = cfg.heights[0]
    scenario = generate_scenario(
        seed=cfg.seed, area_size=cfg.area_size, grid=cfg.grid,
        num_users=cfg.users, params=cfg.params_at(height),
        reqs=cfg.requirements())
    record = {"config": _config_record(cfg), "seed": cfg.seed, "schemes": {}}
    status = EXIT_OK
    for scheme in cfg.schemes:
        solution = solve_scenario(scenario, scheme,
                                  max_iters=cfg.max_iters, rel_tol=cfg.rel_tol)
        record["schemes"][scheme] = _solution_record(solution)
        if not solution.feasible:
            status = EXIT_INFEASIBLE
        print(f"{scheme}: total_power_w={_fmt(solution.total_power)} "
              f"feasible={solution.feasible}")
        if scheme != "sa2" and solution.feasible:
            reports = per_user_report(solution, scenario.users,
                                      scenario.params, scenario.reqs)
            _write_per_user_csv(out_dir / f"per_user_{scheme}.csv",
                                reports, scenario.users, scenario.reqs)
    _write_json(out_dir / "single_result.json", record)
    return status


def run_montecarlo(cfg: RunConfig, out_dir: Path) -> int:
    workers = workers_from_env()
    status = EXIT_OK
    rows = []
    payload = {"config": _config_record(cfg), "heights": {}}
    for height in cfg.heights:
        summary = run_monte_carlo(_scenario_config(cfg, height), cfg.runs,
                                  schemes=cfg.schemes, workers=workers)
        height_record = {"reductions_percent": dict(summary.reductions),
                         "schemes": {}}
        for scheme in cfg.schemes:
            st = summary.stats[scheme]
            rows.append([scheme, _fmt(height), _fmt(st.mean), _fmt(st.std),
                         cfg.runs, st.infeasible_runs])
            height_record["schemes"][scheme] = {
                "mean_total_power_w": st.mean,
                "std_total_power_w": st.std,
                "runs": cfg.runs,
                "infeasible_runs": st.infeasible_runs,
            }
            if st.infeasible_runs:
                status = EXIT_INFEASIBLE
        payload["heights"][_fmt(height)] = height_record
        for scheme, pct in summary.reductions.items():
            print(f"height {height} m: proposed saves {pct:.2f}% vs {scheme}")
    with (out_dir / "montecarlo.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MC_COLUMNS)
        writer.writerows(rows)
    _write_json(out_dir / "montecarlo.json", payload)
    return status


def _sweep_values(sweep: tuple[float, float, float]) -> list[float]:
    lo, hi, step = sweep
    values = []
    k = 0
    while True:
        v = lo + k * step
        if v > hi + 1e-9 * max(1.0, step):
            break
        values.append(v)
        k += 1
    return values


def run_sweep(cfg: RunConfig, out_dir: Path) -> int:
    workers = workers_from_env()
    status = EXIT_OK
    rows = []
    for height in cfg.heights:
        for cth in _sweep_values(cfg.cth_sweep):
            reqs = Requirements(cth, cfg.illum_threshold)
            summary = run_monte_carlo(_scenario_config(cfg, height, reqs),
                                      cfg.runs, schemes=cfg.schemes,
                                      workers=workers)
            for scheme in cfg.schemes:
                st = summary.stats[scheme]
                rows.append(["rate_threshold_bits", _fmt(cth), scheme,
                             _fmt(height), _fmt(st.mean), _fmt(st.std),
                             cfg.runs])
                if st.infeasible_runs:
                    status = EXIT_INFEASIBLE
    with (out_dir / "sweep.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(rows)
    print(f"sweep: wrote {len(rows)} rows")
    return status


def run_fig4(cfg_case1: RunConfig, cfg_case2: RunConfig, out_dir: Path) -> int:
    status = EXIT_OK
    for label, cfg in (("case1", cfg_case1), ("case2", cfg_case2)):
        height = cfg.heights[0]
        scenario = generate_scenario(
            seed=cfg.seed, area_size=cfg.area_size, grid=cfg.grid,
            num_users=cfg.users, params=cfg.params_at(height),
            reqs=cfg.requirements())
        solution = solve_scenario(scenario, "proposed",
                                  max_iters=cfg.max_iters, rel_tol=cfg.rel_tol)
        if not solution.feasible:
            print(f"{label}: infeasible")
            status = EXIT_INFEASIBLE
            continue
        reports = per_user_report(solution, scenario.users, scenario.params,
                                  scenario.reqs)
        _write_per_user_csv(out_dir / f"fig4_{label}.csv", reports,
                            scenario.users, scenario.reqs)
        print(f"{label}: total_power_w={_fmt(solution.total_power)} "
              f"users={len(reports)}")
    return status


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; route through ConfigError
    # instead so usage problems share exit code 1 with config problems.
    def error(self, message):
        raise ConfigError(message)


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="uavvlc",
        description="Minimum-power LED UAV deployment: single runs, "
                    "Monte Carlo aggregates, threshold sweeps, per-user tables.")
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--mode", choices=["single", "sweep", "montecarlo", "fig4"])
    parser.add_argument("--seed", type=int)
    parser.add_argument("--runs", type=int)
    parser.add_argument("--users", type=int)
    parser.add_argument("--height", action="append", type=float,
                        help="UAV height in meters; repeat for several")
    parser.add_argument("--cth-sweep", metavar="FROM:TO:STEP",
                        help="rate-threshold sweep for sweep mode")
    parser.add_argument("--schemes", help="comma list from "
                                          "proposed,uavoo,sa1,sa2")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--case1", help="config overrides for fig4 case 1")
    parser.add_argument("--case2", help="config overrides for fig4 case 2")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        apply_config_file(cfg, args.config)
    if args.mode is not None:
        cfg.mode = args.mode
    if args.seed is not None:
        cfg.seed = args.seed
    if args.runs is not None:
        cfg.runs = args.runs
    if args.users is not None:
        cfg.users = args.users
    if args.height:
        cfg.heights = list(args.height)
    if args.cth_sweep is not None:
        cfg.cth_sweep = _parse_sweep(args.cth_sweep)
    if args.schemes is not None:
        cfg.schemes = _parse_schemes(args.schemes)
    if args.out is not None:
        cfg.out = args.out
    validate_config(cfg)
    return cfg


def _case_config(base: RunConfig, path: Optional[str],
                 rate_threshold: float, illum_threshold: float) -> RunConfig:
    cfg = replace(base, heights=list(base.heights), schemes=list(base.schemes))
    cfg.rate_threshold_bits = rate_threshold
    cfg.illum_threshold = illum_threshold
    if path:
        apply_config_file(cfg, path)
    validate_config(cfg)
    return cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
        cfg = build_config(args)
        out_dir = Path(cfg.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if cfg.mode == "single":
            return run_single(cfg, out_dir)
        if cfg.mode == "montecarlo":
            return run_montecarlo(cfg, out_dir)
        if cfg.mode == "sweep":
            return run_sweep(cfg, out_dir)
        # fig4: threshold pairs where rate (case 1) and illumination
        # (case 2) tend to be the binding constraint, overridable by file
        case1 = _case_config(cfg, args.case1, 1.2, 0.1)
        case2 = _case_config(cfg, args.case2, 1.8, 0.6)
        return run_fig4(case1, case2, out_dir)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
