"""Sweep and trajectory rows, and their CSV / JSON writers."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .game import (
    STAGE_LABELS,
    WIN_TOL,
    QStrategy,
    StrategyParams,
    play,
    play_batch,
    solve_family,
)

FLOAT_FORMAT = ".17g"
ALL_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class SweepRecord:
    theta: float
    phi: float
    sign_a: int
    c3: int
    p: float
    s3_ga: float
    s3_dm: float
    backend_deviation: float
    passed: bool

    FIELDS = ("theta", "phi", "sign_a", "c3", "p", "s3_ga", "s3_dm", "backend_deviation", "pass")

    def as_row(self) -> dict:
        return dict(zip(self.FIELDS, (self.theta, self.phi, self.sign_a, self.c3, self.p,
                                      self.s3_ga, self.s3_dm, self.backend_deviation, self.passed)))


@dataclass(frozen=True)
class TrajectoryRecord:
    stage: int
    label: str
    x: float
    y: float
    z: float

    FIELDS = ("stage", "label", "x", "y", "z")

    def as_row(self) -> dict:
        return dict(zip(self.FIELDS, (self.stage, self.label, self.x, self.y, self.z)))


def theta_grid(steps: int, lo: float = math.pi / 2, hi: float = 3 * math.pi / 2) -> np.ndarray:
    if steps < 1:
        raise ValueError("theta steps must be >= 1")
    return np.array([0.5 * (lo + hi)]) if steps == 1 else np.linspace(lo, hi, steps)


def phi_grid(steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError("phi steps must be >= 1")
    return np.arange(steps) * (2 * math.pi / steps)


def p_grid(steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError("p steps must be >= 1")
    return np.array([0.0]) if steps == 1 else np.linspace(0.0, 1.0, steps)


def sweep_records(thetas, phis, ps, signs=ALL_SIGNS) -> list[SweepRecord]:
    """One record per (θ, φ, signs, p), in that nesting order.

    All parameters are validated before any evaluation so a bad θ fails fast.
    """
    grid = [StrategyParams(t, f, sa, c3)
            for t, f, (sa, c3) in itertools.product(thetas, phis, signs)]
    ps = np.asarray(ps, dtype=float)
    records = []
    for params in grid:
        st = solve_family(params)
        ga_paths = play_batch(st, ps, "ga")
        dm_paths = play_batch(st, ps, "dm")
        devs = np.abs(ga_paths - dm_paths).max(axis=(1, 2))
        for k, p in enumerate(ps):
            s3_ga = float(ga_paths[k, 3, 2])
            s3_dm = float(dm_paths[k, 3, 2])
            records.append(SweepRecord(
                params.theta, params.phi, params.sign_a, params.c3, float(p),
                s3_ga, s3_dm, float(devs[k]), min(s3_ga, s3_dm) >= 1.0 - WIN_TOL))
    return records


def trajectory_records(strategy: QStrategy, p: float, backend: str) -> list[TrajectoryRecord]:
    transcript, _ = play(strategy, p, backend)
    return [TrajectoryRecord(k, STAGE_LABELS[k], *map(float, transcript.bloch(k)))
            for k in range(4)]


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    return str(value)


def to_csv(records) -> str:
    records = list(records)
    buf = io.StringIO()
    if not records:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(records[0].FIELDS)
    for rec in records:
        writer.writerow([_fmt(v) for v in rec.as_row().values()])
    return buf.getvalue()


def to_json(records) -> str:
    # json writes floats with repr, which round-trips doubles exactly
    return json.dumps([rec.as_row() for rec in records], indent=1)


def serialize(records, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(records)
    if fmt == "json":
        return to_json(records)
    raise ValueError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> list[dict]:
    """Read back a CSV written by to_csv with numeric fields as numbers."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        parsed = {}
        for key, value in row.items():
            if value in ("true", "false"):
                parsed[key] = value == "true"
            elif key in ("label",):
                parsed[key] = value
            elif key in ("sign_a", "c3", "stage"):
                parsed[key] = int(value)
            else:
                parsed[key] = float(value)
        rows.append(parsed)
    return rows
