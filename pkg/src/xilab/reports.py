"""Run configuration, JSON reports and CSV tables."""
from __future__ import annotations

import copy
import csv
import hashlib
import io
import json
import math
import os
from datetime import datetime, timezone
from pathlib import Path

from .errors import ConfigError
from .suites import DEFAULT_TOLERANCES, SUITES

SCHEMA = 1
CONFIG_ENV = "XILAB_CONFIG"

DEFAULT_CONFIG = {
    "suites": list(SUITES),
    "tolerances": dict(DEFAULT_TOLERANCES),
    "grids": {
        "scan_sigma": [0.25],
        "scan_t2": {"start": 0.5, "stop": 2.0, "num": 4},
        "scan_t0": {"start": -1.0, "stop": 1.0, "num": 5},
        "scan_omega": {"start": 0.0, "stop": 10.0, "num": 21},
    },
    "output_dir": "reports",
    "format": "json",
    "parallelism": 1,
}

_KEYS = set(DEFAULT_CONFIG)


def _finite_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def expand_grid(grid, name="grid"):
    """A grid is a list of numbers or {start, stop, num} (endpoints included)."""
    if isinstance(grid, list):
        if not grid or not all(_finite_number(v) for v in grid):
            raise ConfigError(f"{name}: a list grid needs at least one finite number")
        return [float(v) for v in grid]
    if isinstance(grid, dict) and set(grid) == {"start", "stop", "num"}:
        start, stop, num = grid["start"], grid["stop"], grid["num"]
        if not (_finite_number(start) and _finite_number(stop)) or not isinstance(num, int) or num < 1:
            raise ConfigError(f"{name}: start/stop must be finite and num a positive integer")
        if num == 1:
            return [float(start)]
        step = (stop - start) / (num - 1)
        return [float(start + i * step) for i in range(num - 1)] + [float(stop)]
    raise ConfigError(f"{name}: expected a list or {{start, stop, num}}")


def validate_config(cfg: dict) -> dict:
    if not isinstance(cfg, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(cfg) - _KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    for name in cfg["suites"]:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}")
    for name, tol in cfg["tolerances"].items():
        if name not in SUITES:
            raise ConfigError(f"tolerance given for unknown suite {name!r}")
        if not (_finite_number(tol) and tol > 0):
            raise ConfigError(f"tolerance for {name!r} must be a positive number")
    for name, grid in cfg["grids"].items():
        expand_grid(grid, name)
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError("format must be 'json' or 'csv'")
    par = cfg["parallelism"]
    if not isinstance(par, int) or isinstance(par, bool) or par < 1:
        raise ConfigError("parallelism must be an integer >= 1")
    if not isinstance(cfg["output_dir"], str):
        raise ConfigError("output_dir must be a string")
    return cfg


def merge_config(overrides: dict) -> dict:
    if not isinstance(overrides, dict):
        raise ConfigError("configuration must be a JSON object")
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    for key, value in overrides.items():
        if key in ("tolerances", "grids") and isinstance(value, dict):
            cfg[key].update(value)
        else:
            cfg[key] = value
    return validate_config(cfg)


def load_config(path: str | None = None) -> dict:
    """Defaults, overridden by ``path`` or else by the file named in XILAB_CONFIG."""
    path = path or os.environ.get(CONFIG_ENV) or None
    if path is None:
        return validate_config(copy.deepcopy(DEFAULT_CONFIG))
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return merge_config(data)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(canonical_json(cfg).encode()).hexdigest()[:12]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


def build_report(version: str, cfg: dict, claims, started: datetime, finished: datetime,
                 backend: str, scans=()) -> dict:
    """Timestamps live only in ``header``; ``body`` depends on the config alone."""
    rows = [c.to_dict() for c in claims]
    body = {
        "schema": SCHEMA,
        "tool_version": version,
        "config": cfg,
        "claims": rows,
        "scans": list(scans),
        "summary": {
            "total": len(rows),
            "pass": sum(r["status"] == "pass" for r in rows),
            "fail": sum(r["status"] == "fail" for r in rows),
            "informational": sum(r["status"] == "informational" for r in rows),
        },
    }
    header = {
        "schema": SCHEMA,
        "started_utc": started.isoformat(),
        "finished_utc": finished.isoformat(),
        "elapsed_seconds": (finished - started).total_seconds(),
        "backend": backend,
        "body_sha256": hashlib.sha256(canonical_json(body).encode()).hexdigest(),
    }
    return {"header": header, "body": body}


def report_name(cfg: dict, when: datetime, ext: str = "json") -> str:
    return f"report-{when.strftime('%Y%m%dT%H%M%S%fZ')}-{config_hash(cfg)}.{ext}"


def write_new(path: Path, text: str):
    """Reports are append-only artifacts: never overwrite an existing file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "x", newline="") as fh:
        fh.write(text)


def fmt_real(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_real(v) for v in row])
    return buf.getvalue()


CLAIM_COLUMNS = ["claim_id", "measured", "expected", "tolerance", "status", "kind", "detail"]


def claims_csv(claims) -> str:
    return csv_text(CLAIM_COLUMNS, [[getattr(c, k) for k in CLAIM_COLUMNS] for c in claims])
