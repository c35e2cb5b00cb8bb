"""Phase-diagram sweeps: evaluate quantities over a (mu, delta) grid.

Grid points are independent; they are farmed out to a process pool and
reassembled in deterministic order (mu index, then delta index, then the
quantity's position in the request), so the output is identical for any
worker count.  Values are stored linearly; any logarithmic presentation
is the consumer's concern.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    ZERO_MODE_TOL,
    _fidelity_pure_mixed_detail,
    _overlap_pure_detail,
    canonical_form,
    ground_state_covariance,
    majorana_coupling,
    product_embed,
    reduce,
    spectral_gap,
    thermal_covariance,
)
from .models import ModelParams, ModelTag, build_model, prefix_hamiltonian
from .pipeline import (
    ScalingStudy,
    _half_pair,
    complexity_estimate,
    half_half_series,
    site_by_site_series,
)
from .schmidt import entanglement_spectrum, largest_schmidt

QUANTITIES = (
    "gap",
    "eta_site",
    "eta_half",
    "lambda1_site",
    "lambda1_half",
    "cost_site",
    "cost_half",
)
_HALF_QUANTITIES = {"eta_half", "lambda1_half", "cost_half"}
CSV_HEADER = ("model", "n", "t", "mu", "delta", "quantity", "value", "flags")

FLAG_DEGENERATE = "degenerate_gap"
FLAG_UNDERFLOW = "underflow_clamped"
FLAG_INFINITE = "infinite_cost"


@dataclass(frozen=True)
class SweepSpec:
    """Grid description: mu_range/delta_range are (lo, hi, steps) triples."""

    model_tag: ModelTag
    n_sites: int
    t: float
    mu_range: tuple[float, float, int]
    delta_range: tuple[float, float, int]
    quantities: tuple[str, ...]
    epsilon: float = 1e-3
    beta: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "quantities", tuple(self.quantities))
        for rng in (self.mu_range, self.delta_range):
            lo, hi, steps = rng
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"bad range {rng}")
            if not (isinstance(steps, int) and steps >= 1):
                raise ValueError("range steps must be a positive integer")
        if not self.quantities:
            raise ValueError("quantities must be nonempty")
        if len(set(self.quantities)) != len(self.quantities):
            raise ValueError("quantities must be unique")
        for q in self.quantities:
            if q not in QUANTITIES:
                raise ValueError(f"unknown quantity {q!r}")
        if self.n_sites < 1 or not math.isfinite(self.t):
            raise ValueError("invalid model size or hopping")
        if self.model_tag is ModelTag.SQUARE_LATTICE_2D:
            side = math.isqrt(self.n_sites)
            if side * side != self.n_sites:
                raise ValueError("2D sweeps need a square site count")
            if side % 2 and _HALF_QUANTITIES & set(self.quantities):
                raise ValueError("half-scheme quantities need an even side")
        elif self.n_sites % 2 and _HALF_QUANTITIES & set(self.quantities):
            raise ValueError("half-scheme quantities need an even site count")
        if self.n_sites < 2 and set(self.quantities) != {"gap"}:
            raise ValueError("state quantities need at least two sites")
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError("epsilon must be in (0, 1]")
        if self.beta is not None and not self.beta > 0:
            raise ValueError("beta must be positive when given")

    @property
    def mu_values(self) -> np.ndarray:
        lo, hi, steps = self.mu_range
        return np.linspace(lo, hi, steps)

    @property
    def delta_values(self) -> np.ndarray:
        lo, hi, steps = self.delta_range
        return np.linspace(lo, hi, steps)


@dataclass(frozen=True)
class SweepRow:
    mu: float
    delta: float
    quantity: str
    value: float
    flags: tuple[str, ...]


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple[SweepRow, ...]

    def __post_init__(self) -> None:
        expected = self.spec.mu_range[2] * self.spec.delta_range[2] * len(self.spec.quantities)
        if len(self.rows) != expected:
            raise ValueError(f"expected {expected} rows, got {len(self.rows)}")


def _evaluate_point(spec: SweepSpec, mu: float, delta: float) -> list[SweepRow]:
    """All requested quantities at one grid point, with their flags."""
    params = ModelParams(mu, spec.t, delta)
    h = build_model(spec.model_tag, spec.n_sites, params)
    decomp = None

    def full_decomp():
        nonlocal decomp
        if decomp is None:
            decomp = canonical_form(majorana_coupling(h))
        return decomp

    rows = []
    for q in spec.quantities:
        flags: list[str] = []
        if q == "gap":
            value = spectral_gap(full_decomp())
            if value < ZERO_MODE_TOL:
                flags.append(FLAG_DEGENERATE)
        elif q in ("lambda1_site", "lambda1_half"):
            d = full_decomp()
            cut_len = spec.n_sites - 1 if q == "lambda1_site" else spec.n_sites // 2
            spectrum = entanglement_spectrum(ground_state_covariance(d), range(cut_len))
            value = largest_schmidt(spectrum)
            if d.zero_mode_flags.any():
                flags.append(FLAG_DEGENERATE)
        elif q in ("eta_site", "eta_half"):
            d = full_decomp()
            src_len = spec.n_sites - 1 if q == "eta_site" else spec.n_sites // 2
            if q == "eta_site":
                h_src = prefix_hamiltonian(h, src_len)
            else:
                h_src, _ = _half_pair(spec.model_tag, params, spec.n_sites)
            d_src = canonical_form(majorana_coupling(h_src))
            g_src = ground_state_covariance(d_src)
            degenerate = bool(d.zero_mode_flags.any() or d_src.zero_mode_flags.any())
            if q == "eta_site":
                if spec.beta is None:
                    target = reduce(ground_state_covariance(d), range(src_len))
                else:
                    target = reduce(thermal_covariance(d, spec.beta), range(src_len))
                fid, clamped = _fidelity_pure_mixed_detail(g_src, target)
                value = math.sqrt(fid)
            else:
                joined = product_embed(g_src, g_src)
                if spec.beta is None:
                    value, clamped = _overlap_pure_detail(joined, ground_state_covariance(d))
                else:
                    fid, clamped = _fidelity_pure_mixed_detail(
                        joined, thermal_covariance(d, spec.beta)
                    )
                    value = math.sqrt(fid)
            if degenerate:
                flags.append(FLAG_DEGENERATE)
            if clamped:
                flags.append(FLAG_UNDERFLOW)
        else:
            if q == "cost_site":
                series = site_by_site_series(spec.model_tag, params, 1, spec.n_sites)
            else:
                series = half_half_series(spec.model_tag, params, spec.n_sites)
            value = complexity_estimate(series, spec.epsilon).total_cost
            if series.degenerate_flags.any():
                flags.append(FLAG_DEGENERATE)
            if math.isinf(value):
                flags.append(FLAG_INFINITE)
        rows.append(SweepRow(float(mu), float(delta), q, float(value), tuple(flags)))
    return rows


def _point_task(args: tuple[SweepSpec, float, float]) -> list[SweepRow]:
    return _evaluate_point(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate the grid with the given worker count.

    The row order and every value are independent of `workers`; a single
    worker runs inline without a pool.
    """
    if not workers >= 1:
        raise ValueError("workers must be >= 1")
    tasks = [
        (spec, float(mu), float(delta)) for mu in spec.mu_values for delta in spec.delta_values
    ]
    if workers == 1:
        chunks = [_point_task(t) for t in tasks]
    else:
        chunksize = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_point_task, tasks, chunksize=chunksize))
    rows = tuple(row for chunk in chunks for row in chunk)
    return SweepResult(spec, rows)


def _format_row(spec: SweepSpec, row: SweepRow) -> list[str]:
    return [
        spec.model_tag.value,
        str(spec.n_sites),
        repr(float(spec.t)),
        repr(row.mu),
        repr(row.delta),
        row.quantity,
        repr(row.value),
        ";".join(row.flags),
    ]


def _atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(result: SweepResult, path) -> None:
    """UTF-8 CSV, header model,n,t,mu,delta,quantity,value,flags; atomic."""
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow(_format_row(result.spec, row))
    _atomic_write(path, buf.getvalue())


def write_scaling_csv(study: ScalingStudy, params: ModelParams, path) -> int:
    """Scaling table in the sweep column layout, one row per (size, quantity).

    Sizes vary down the n column while mu and delta stay fixed, so the
    same schema serves both grid and scaling consumers.  Undefined
    entries (NaN columns such as eta_half at odd sizes) are skipped.
    Returns the number of data rows written.
    """
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for q, column in study.columns.items():
        for i, n in enumerate(study.sizes):
            value = float(column[i])
            if math.isnan(value):
                continue
            writer.writerow(
                [
                    study.model_tag.value,
                    str(n),
                    repr(float(params.t)),
                    repr(float(params.mu)),
                    repr(float(params.delta)),
                    q,
                    repr(value),
                    "",
                ]
            )
            count += 1
    _atomic_write(path, buf.getvalue())
    return count


def write_json(result: SweepResult, path) -> None:
    """Same schema as the CSV, as {"spec": ..., "rows": [...]}; atomic."""
    spec = result.spec
    payload = {
        "spec": {
            "model": spec.model_tag.value,
            "n": spec.n_sites,
            "t": spec.t,
            "mu_range": list(spec.mu_range),
            "delta_range": list(spec.delta_range),
            "quantities": list(spec.quantities),
            "epsilon": spec.epsilon,
            "beta": spec.beta,
        },
        "rows": [
            {
                "model": spec.model_tag.value,
                "n": spec.n_sites,
                "t": spec.t,
                "mu": row.mu,
                "delta": row.delta,
                "quantity": row.quantity,
                "value": row.value,
                "flags": list(row.flags),
            }
            for row in result.rows
        ],
    }
    _atomic_write(path, json.dumps(payload, indent=2) + "\n")
