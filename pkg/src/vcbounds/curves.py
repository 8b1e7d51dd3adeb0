"""Bound evaluation tables: single queries and grid sweeps with stable
CSV/JSON serialization.

CSV schema: header ``grid_value,method,rate``, values at 12 significant
digits, LF line endings. Row values are quantized to 12 significant digits
when rows are built, so writing and re-parsing a curve reproduces it
exactly and repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .cw_lower import cwc_rate
from .markov_lower import r_ma
from .numeric import DEFAULT_CONFIG, DomainError, ToleranceConfig
from .upper import BoundQuery, Method, haussler_rate, r_lp, sauer_shelah_rate, shortening_rate

__all__ = [
    "ALL_METHODS",
    "bound_rate",
    "CurveRow",
    "BoundCurve",
    "SweepRequest",
    "grid_values",
    "run_sweep",
    "evaluate_query",
]

ALL_METHODS = tuple(Method)

# Which query axes each method actually reads.
_REQUIRED_AXES = {
    Method.MRRW: ("delta",),
    Method.SAUER_SHELAH: ("d",),
    Method.HAUSSLER: ("d", "delta"),
    Method.SHORTENING: ("d", "delta"),
    Method.CWC: ("d", "delta"),
    Method.MARKOV: ("d", "delta"),
}


def required_axes(method: Method) -> tuple[str, ...]:
    return _REQUIRED_AXES[method]


def bound_rate(
    method: Method, d: float, delta: float, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> float:
    """Evaluate one bound family at (d, delta) and return its rate."""
    if method is Method.MRRW:
        return r_lp(delta, cfg).rate
    if method is Method.SAUER_SHELAH:
        return sauer_shelah_rate(d, cfg).rate
    q = BoundQuery(d, delta)
    if method is Method.HAUSSLER:
        return haussler_rate(q, cfg).rate
    if method is Method.SHORTENING:
        return shortening_rate(q, cfg).rate
    if method is Method.CWC:
        return cwc_rate(q, cfg).rate
    if method is Method.MARKOV:
        return r_ma(q, cfg).rate
    raise DomainError(f"unknown method {method!r}")


def quantize(value: float) -> float:
    """Round to 12 significant digits (the file precision)."""
    return float(f"{float(value):.12g}")


@dataclass(frozen=True)
class CurveRow:
    grid_value: float
    method: Method
    rate: float


def make_row(grid_value: float, method: Method, rate: float) -> CurveRow:
    rate = quantize(rate)
    if not (0.0 <= rate <= 1.0):
        raise DomainError(f"rate {rate} outside [0, 1]")
    return CurveRow(quantize(grid_value), method, rate)


@dataclass(frozen=True)
class BoundCurve:
    """Rows sorted by (method, grid_value)."""

    rows: tuple[CurveRow, ...]

    @classmethod
    def from_rows(cls, rows) -> "BoundCurve":
        ordered = sorted(rows, key=lambda r: (r.method.value, r.grid_value))
        return cls(tuple(ordered))

    def to_csv_text(self) -> str:
        lines = ["grid_value,method,rate"]
        for row in self.rows:
            lines.append(f"{row.grid_value:.12g},{row.method.value},{row.rate:.12g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv_text(cls, text: str) -> "BoundCurve":
        lines = [ln for ln in text.split("\n") if ln]
        if not lines or lines[0] != "grid_value,method,rate":
            raise DomainError("missing or malformed CSV header")
        rows = []
        for ln in lines[1:]:
            parts = ln.split(",")
            if len(parts) != 3:
                raise DomainError(f"malformed CSV row: {ln!r}")
            rows.append(
                make_row(float(parts[0]), Method.from_name(parts[1]), float(parts[2]))
            )
        return cls.from_rows(rows)

    def to_json_text(self, meta: dict) -> str:
        payload = {
            "meta": meta,
            "rows": [
                {
                    "grid_value": row.grid_value,
                    "method": row.method.value,
                    "rate": row.rate,
                }
                for row in self.rows
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def write(self, path: str, fmt: str, meta: dict) -> None:
        text = self.to_csv_text() if fmt == "csv" else self.to_json_text(meta)
        with open(path, "w", newline="\n") as handle:
            handle.write(text)


@dataclass(frozen=True)
class SweepRequest:
    """One axis fixed, the other swept over an inclusive arithmetic grid."""

    fixed_axis: str                      # "d" or "delta"
    fixed_value: float
    grid: tuple[float, float, float]     # (start, stop, step)
    methods: tuple[Method, ...]
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        if self.fixed_axis not in ("d", "delta"):
            raise DomainError(f"fixed_axis must be 'd' or 'delta', got {self.fixed_axis!r}")
        if not (0.0 <= self.fixed_value <= 0.5):
            raise DomainError(f"fixed_value must lie in [0, 1/2], got {self.fixed_value}")
        start, stop, step = self.grid
        if not (step > 0.0):
            raise DomainError(f"grid step must be positive, got {step}")
        if start > stop:
            raise DomainError(f"grid start {start} exceeds stop {stop}")
        if not self.methods:
            raise DomainError("at least one method is required")
        if len(set(self.methods)) != len(self.methods):
            raise DomainError("duplicate methods in request")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"output format must be csv or json, got {self.output_format!r}")

    def meta(self, cfg: ToleranceConfig) -> dict:
        return {
            "fixed_axis": self.fixed_axis,
            "fixed_value": self.fixed_value,
            "grid": {"start": self.grid[0], "stop": self.grid[1], "step": self.grid[2]},
            "methods": [m.value for m in self.methods],
            "tolerance": {
                "abs_tol": cfg.abs_tol,
                "grid_points": cfg.grid_points,
                "max_refinements": cfg.max_refinements,
            },
        }


def grid_values(grid: tuple[float, float, float]) -> list[float]:
    """Inclusive arithmetic grid; the stop point is included when it is an
    integral number of steps from start (up to round-off)."""
    start, stop, step = grid
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _axis_ok(value: float) -> bool:
    return -1e-12 <= value <= 0.5 + 1e-12


def evaluate_query(
    d: float,
    delta: float,
    methods,
    cfg: ToleranceConfig = DEFAULT_CONFIG,
) -> list[tuple[Method, float]]:
    """Rates of the requested methods at one (d, delta) query."""
    return [(m, bound_rate(m, d, delta, cfg)) for m in methods]


def run_sweep(
    req: SweepRequest, cfg: ToleranceConfig = DEFAULT_CONFIG
) -> tuple[BoundCurve, int]:
    """Evaluate the sweep; returns the curve and a count of omitted rows.

    A (grid point, method) row is omitted when an axis the method reads
    falls outside [0, 1/2]; these are counted rather than raising so that a
    grid extending past the boundary degrades gracefully.
    """
    rows = []
    skipped = 0
    for value in grid_values(req.grid):
        if req.fixed_axis == "d":
            d, delta = req.fixed_value, value
        else:
            d, delta = value, req.fixed_value
        for method in req.methods:
            axes = {"d": d, "delta": delta}
            if not all(_axis_ok(axes[a]) for a in required_axes(method)):
                skipped += 1
                continue
            rows.append(make_row(value, method, bound_rate(method, d, delta, cfg)))
    return BoundCurve.from_rows(rows), skipped
