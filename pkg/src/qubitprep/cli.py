"""Command-line front end: run presets or config files, sweep parameters, verify.

Output layout (one directory per invocation):
    <out>/<name>_stats.csv      t,mean_delta,std_delta,n[,mean_delta_nominal,std_delta_nominal]
    <out>/<name>_paths.csv      t,path_id,delta_true,delta_nominal   (path-mode runs)
    <out>/manifest.json         config echo; feeding it back via --config reproduces the run

All numeric CSV fields use 17 significant digits so byte comparison is a
valid equality test.  Exit codes: 0 success, 1 failed verification,
2 configuration error, 3 integration/positivity failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .dynamics import PositivityError
from .montecarlo import run_ensemble, run_sample_paths
from .presets import (PRESET_NAMES, RunSpec, apply_override, build_preset,
                      run_from_dict, run_to_dict)
from .sde import IntegrationError
from .verify import run_all_checks


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_stats_csv(path: Path, stats) -> None:
    coupled = stats.delta_nominal is not None
    header = "t,mean_delta,std_delta,n"
    if coupled:
        header += ",mean_delta_nominal,std_delta_nominal"
    lines = [header]
    std = stats.delta.std
    nom_std = stats.delta_nominal.std if coupled else None
    for i, t in enumerate(stats.times):
        row = [_fmt(t), _fmt(stats.delta.mean[i]), _fmt(std[i]), str(stats.delta.n)]
        if coupled:
            row += [_fmt(stats.delta_nominal.mean[i]), _fmt(nom_std[i])]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def _write_paths_csv(path: Path, records) -> None:
    lines = ["t,path_id,delta_true,delta_nominal"]
    for rec in records:
        for t, d, dn in zip(rec.times, rec.delta, rec.delta_nominal):
            lines.append(f"{_fmt(t)},{rec.path_id},{_fmt(d)},{_fmt(dn)}")
    path.write_text("\n".join(lines) + "\n")


def _load_runs(args) -> tuple[list[RunSpec], str | None]:
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
        runs = [run_from_dict(d) for d in doc["runs"]]
        return runs, doc.get("preset")
    if args.preset:
        return build_preset(args.preset), args.preset
    raise ValueError("either --preset or --config is required")


_OVERRIDE_FLAGS = {
    "paths": "n_paths",
    "dt": "dt",
    "horizon": "horizon",
    "seed": "seed",
    "stride": "stride",
    "tier": "tier",
}


def _apply_cli_overrides(runs: list[RunSpec], args) -> list[RunSpec]:
    out = []
    for run in runs:
        for flag, field in _OVERRIDE_FLAGS.items():
            value = getattr(args, flag, None)
            if value is not None:
                run = apply_override(run, field, value)
        out.append(run)
    return out


def _execute_runs(runs: list[RunSpec], out_dir: Path, workers: int,
                  preset: str | None, command: str) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest_runs = []
    outputs = []
    for run in runs:
        entry = run_to_dict(run)
        stats = run_ensemble(run.config, workers=workers)
        stats_file = f"{run.name}_stats.csv"
        _write_stats_csv(out_dir / stats_file, stats)
        entry["stats_csv"] = stats_file
        outputs.append(stats_file)
        if run.mode == "paths":
            records = run_sample_paths(run.config, n_show=run.config.n_paths,
                                       stride=run.config.stride)
            paths_file = f"{run.name}_paths.csv"
            _write_paths_csv(out_dir / paths_file, records)
            entry["paths_csv"] = paths_file
            outputs.append(paths_file)
        manifest_runs.append(entry)
    manifest = {
        "artifact": "qubitprep",
        "version": __version__,
        "command": command,
        "preset": preset,
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "runs": manifest_runs,
        "outputs": outputs,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def cmd_run(args) -> int:
    runs, preset = _load_runs(args)
    runs = _apply_cli_overrides(runs, args)
    out_dir = Path(args.out or f"runs/{preset or 'custom'}")
    _execute_runs(runs, out_dir, args.workers, preset, "run")
    print(f"wrote {len(runs)} run(s) to {out_dir}")
    return 0


def cmd_sweep(args) -> int:
    runs, preset = _load_runs(args)
    runs = _apply_cli_overrides(runs, args)
    values = [float(v) for v in args.values.split(",")]
    out_dir = Path(args.out or f"runs/sweep_{args.param}")
    out_dir.mkdir(parents=True, exist_ok=True)
    index = ["param,value,directory"]
    for value in values:
        sub = f"{args.param}={value:g}"
        swept = [apply_override(run, args.param, value) for run in runs]
        _execute_runs(swept, out_dir / sub, args.workers, preset, "sweep")
        index.append(f"{args.param},{_fmt(value)},{sub}")
    (out_dir / "index.csv").write_text("\n".join(index) + "\n")
    print(f"wrote {len(values)} sweep point(s) to {out_dir}")
    return 0


def cmd_verify(args) -> int:
    results = run_all_checks(seed=args.seed or 0)
    width = max(len(r.name) for r in results)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  measured={r.measured:.3e}  "
              f"threshold{r.comparison}{r.threshold:.3e}  {status}")
        ok &= r.passed
    print("all checks passed" if ok else "verification FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubitprep",
        description="Qubit state preparation by adaptive continuous measurement")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_values=False):
        p.add_argument("--preset", choices=PRESET_NAMES)
        p.add_argument("--config", help="JSON config file (or a previous manifest.json)")
        p.add_argument("--paths", type=int, help="override n_paths")
        p.add_argument("--dt", type=float)
        p.add_argument("--horizon", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--stride", type=int)
        p.add_argument("--tier")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", help="output directory")

    run_p = sub.add_parser("run", help="execute a preset or config file")
    add_common(run_p)
    run_p.set_defaults(func=cmd_run)

    sweep_p = sub.add_parser("sweep", help="run a preset across parameter values")
    add_common(sweep_p)
    sweep_p.add_argument("--param", required=True,
                         help="config field to sweep (e.g. Delta_nominal, alpha, dt)")
    sweep_p.add_argument("--values", required=True, help="comma-separated values")
    sweep_p.set_defaults(func=cmd_sweep)

    verify_p = sub.add_parser("verify", help="run built-in verification checks")
    verify_p.add_argument("--seed", type=int, default=0)
    verify_p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (IntegrationError, PositivityError) as exc:
        print(f"integration error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
