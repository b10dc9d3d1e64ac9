"""Seeded parameter sweeps and scaling-law fits.

A sweep enumerates a parameter grid, runs seeded trials per cell,
and emits one CSV row per trial plus per-cell mean footer rows. Trial
seeds derive from the cell's parameters (not its position), so editing
the grid never changes the data of cells that stay in it. Output is
byte-deterministic for a given spec regardless of worker count; wall
times are measured but only written when explicitly requested, since
they are the one nondeterministic field.

``fit_exponent`` fits the free constants of the theoretical bound to
sweep output: the average-bound constant c (with a multiplicative
leading constant, fitted in log space by least squares on cell means)
and the lower-envelope constant c2 (the smallest implied value over the
calibration trials).
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bases import stem_base
from .bounds import (ContextBoundParams, almost_sure_lower_exponent,
                     avg_pp_exponent, d_of_alpha, total_base_bound_log10)
from .hypergraph import _transversal_masks
from .randctx import MultiParamSpec, SingleParamSpec, gen_multi, gen_single

CSV_SCHEMA = 1
CSV_COLUMNS = [
    "row", "cell", "trial", "seed", "model", "objects", "attributes", "p",
    "u_size", "r_size", "x", "f_prob",
    "mt_min", "mt_mean", "mt_max", "pp_pairs", "pp_premises", "stem_count",
    "avg_exponent", "lower_exponent", "total_log10",
    "gen_ms", "dual_ms", "stem_ms", "error",
]

DEFAULT_MAX_PROPER_ATTRIBUTES = 64
DEFAULT_MAX_STEM_ATTRIBUTES = 24


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition for one sweep.

    For the single model the grid is objects x attributes x p_values;
    for the multi model it is objects x attributes x u_sizes x r_sizes
    with shared x and f_prob.
    """

    model: str
    objects: tuple[int, ...]
    attributes: tuple[int, ...]
    p_values: tuple[float, ...] = (0.5,)
    u_sizes: tuple[int, ...] = (0,)
    r_sizes: tuple[int, ...] = (0,)
    x: float = 2.0
    f_prob: float = 0.5
    trials: int = 1
    base_seed: int = 0
    with_stem: bool = False
    c: float = 1.0
    c2: float = 0.0
    max_proper_attributes: int = DEFAULT_MAX_PROPER_ATTRIBUTES
    max_stem_attributes: int = DEFAULT_MAX_STEM_ATTRIBUTES

    def __post_init__(self) -> None:
        if self.model not in ("single", "multi"):
            raise ValueError(f"model must be 'single' or 'multi', got {self.model!r}")
        if not self.objects or not self.attributes:
            raise ValueError("grid must be nonempty")
        if self.model == "single" and not self.p_values:
            raise ValueError("grid must be nonempty")
        if self.model == "multi" and (not self.u_sizes or not self.r_sizes):
            raise ValueError("grid must be nonempty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def cells(self) -> list[dict]:
        """Grid cells in deterministic enumeration order."""
        out = []
        if self.model == "single":
            for m in self.objects:
                for n in self.attributes:
                    for p in self.p_values:
                        out.append({"model": "single", "objects": m,
                                    "attributes": n, "p": p})
        else:
            for m in self.objects:
                for n in self.attributes:
                    for u in self.u_sizes:
                        for r in self.r_sizes:
                            out.append({"model": "multi", "objects": m,
                                        "attributes": n, "u_size": u,
                                        "r_size": r, "x": self.x,
                                        "f_prob": self.f_prob})
        return out


@dataclass
class TrialRecord:
    cell: int
    trial: int
    seed: int
    params: dict
    mt_min: int | None = None
    mt_mean: float | None = None
    mt_max: int | None = None
    pp_pairs: int | None = None
    pp_premises: int | None = None
    stem_count: int | None = None
    avg_exponent: float | None = None
    lower_exponent: float | None = None
    total_log10: float | None = None
    gen_ms: float | None = None
    dual_ms: float | None = None
    stem_ms: float | None = None
    error: str | None = None


def derive_trial_seed(base_seed: int, cell_params: dict, trial: int) -> int:
    """Stable 64-bit seed from (base seed, cell parameters, trial index).

    Keyed on the cell's parameter values so that growing the grid leaves
    existing cells' trials untouched.
    """
    canonical = ";".join(f"{k}={cell_params[k]!r}" for k in sorted(cell_params))
    digest = hashlib.sha256(canonical.encode()).digest()
    cell_key = int.from_bytes(digest[:8], "big")
    seq = np.random.SeedSequence(base_seed, spawn_key=(cell_key, trial))
    return int(seq.generate_state(1, np.uint64)[0])


def _dualize_all(ctx) -> tuple[list[int], int, int]:
    """Per-attribute minimal-transversal counts plus proper-premise
    totals (pairs and distinct premises)."""
    n = ctx.n_attributes
    full = (1 << n) - 1
    counts = []
    pairs = 0
    premises: set[int] = set()
    for a in range(n):
        abit = 1 << a
        edges = [full & ~row for row in ctx.row_masks if not (row & abit)]
        masks = _transversal_masks(n, edges)
        counts.append(len(masks))
        for mask in masks:
            if mask != abit:
                pairs += 1
                premises.add(mask)
    return counts, pairs, len(premises)


def run_trial(spec: SweepSpec, cell_index: int, cell_params: dict,
              trial: int) -> TrialRecord:
    seed = derive_trial_seed(spec.base_seed, cell_params, trial)
    rec = TrialRecord(cell=cell_index, trial=trial, seed=seed, params=cell_params)
    try:
        n = cell_params["attributes"]
        if n > spec.max_proper_attributes:
            raise ValueError(
                f"refusing proper-premise computation for {n} attributes "
                f"(guard {spec.max_proper_attributes})")
        t0 = time.monotonic()
        if cell_params["model"] == "single":
            ctx = gen_single(SingleParamSpec(
                n_objects=cell_params["objects"], n_attributes=n,
                p=cell_params["p"], seed=seed))
        else:
            ctx = gen_multi(MultiParamSpec(
                n_objects=cell_params["objects"], n_attributes=n,
                u_size=cell_params["u_size"], r_size=cell_params["r_size"],
                x=cell_params["x"], f_prob=cell_params["f_prob"], seed=seed))
        t1 = time.monotonic()
        counts, pairs, n_premises = _dualize_all(ctx)
        t2 = time.monotonic()
        rec.gen_ms = (t1 - t0) * 1000.0
        rec.dual_ms = (t2 - t1) * 1000.0
        rec.mt_min = min(counts) if counts else 0
        rec.mt_max = max(counts) if counts else 0
        rec.mt_mean = sum(counts) / len(counts) if counts else 0.0
        rec.pp_pairs = pairs
        rec.pp_premises = n_premises
        if spec.with_stem:
            if n > spec.max_stem_attributes:
                raise ValueError(
                    f"refusing stem-base computation for {n} attributes "
                    f"(guard {spec.max_stem_attributes})")
            t3 = time.monotonic()
            rec.stem_count = len(stem_base(ctx))
            rec.stem_ms = (time.monotonic() - t3) * 1000.0
        if cell_params["model"] == "single":
            p = cell_params["p"]
            if 0.0 < p < 1.0 and cell_params["objects"] * (1.0 - p) >= 3.0:
                params = ContextBoundParams(n, cell_params["objects"], p, spec.c)
                rec.avg_exponent = avg_pp_exponent(params)
                rec.total_log10 = total_base_bound_log10(params)
                rec.lower_exponent = almost_sure_lower_exponent(
                    n, cell_params["objects"], p, spec.c2).exponent
    except Exception as exc:  # per-trial failures become error rows
        rec.error = str(exc)
    return rec


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[TrialRecord]:
    """All trial records, ordered by (cell index, trial index).

    Worker count affects scheduling only; records are identical for any
    value because each trial is a pure function of its derived seed.
    """
    cells = spec.cells()
    tasks = [(ci, params, t)
             for ci, params in enumerate(cells)
             for t in range(spec.trials)]
    if workers <= 1:
        records = [run_trial(spec, ci, params, t) for ci, params, t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(
                lambda args: run_trial(spec, *args), tasks))
    records.sort(key=lambda r: (r.cell, r.trial))
    return records


# -- CSV rendering -------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _param_fields(params: dict) -> dict:
    return {
        "model": params.get("model", ""),
        "objects": params.get("objects", ""),
        "attributes": params.get("attributes", ""),
        "p": _fmt(params.get("p")),
        "u_size": params.get("u_size", ""),
        "r_size": params.get("r_size", ""),
        "x": _fmt(params.get("x")),
        "f_prob": _fmt(params.get("f_prob")),
    }


def render_csv(spec: SweepSpec, records: Sequence[TrialRecord],
               include_timings: bool = False) -> str:
    """Schema-versioned CSV: '#' header comments, one row per trial,
    per-cell mean footer rows. LF line endings throughout."""
    buf = io.StringIO()
    buf.write(f"# schema={CSV_SCHEMA}\n")
    buf.write(f"# model={spec.model}\n")
    buf.write(f"# base_seed={spec.base_seed}\n")
    buf.write(f"# trials={spec.trials}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)

    def write_record(rec: TrialRecord) -> None:
        fields = {
            "row": "trial", "cell": rec.cell, "trial": rec.trial,
            "seed": rec.seed,
            **_param_fields(rec.params),
            "mt_min": _fmt(rec.mt_min), "mt_mean": _fmt(rec.mt_mean),
            "mt_max": _fmt(rec.mt_max), "pp_pairs": _fmt(rec.pp_pairs),
            "pp_premises": _fmt(rec.pp_premises),
            "stem_count": _fmt(rec.stem_count),
            "avg_exponent": _fmt(rec.avg_exponent),
            "lower_exponent": _fmt(rec.lower_exponent),
            "total_log10": _fmt(rec.total_log10),
            "gen_ms": _fmt(rec.gen_ms) if include_timings else "",
            "dual_ms": _fmt(rec.dual_ms) if include_timings else "",
            "stem_ms": _fmt(rec.stem_ms) if include_timings else "",
            "error": rec.error or "",
        }
        writer.writerow([fields[c] for c in CSV_COLUMNS])

    by_cell: dict[int, list[TrialRecord]] = {}
    for rec in records:
        write_record(rec)
        by_cell.setdefault(rec.cell, []).append(rec)

    for cell in sorted(by_cell):
        good = [r for r in by_cell[cell] if r.error is None]
        if not good:
            continue

        def mean(attr: str) -> float | None:
            vals = [getattr(r, attr) for r in good]
            if any(v is None for v in vals):
                return None
            return sum(vals) / len(vals)

        fields = {
            "row": "cell_mean", "cell": cell, "trial": len(good), "seed": "",
            **_param_fields(good[0].params),
            "mt_min": _fmt(mean("mt_min")), "mt_mean": _fmt(mean("mt_mean")),
            "mt_max": _fmt(mean("mt_max")), "pp_pairs": _fmt(mean("pp_pairs")),
            "pp_premises": _fmt(mean("pp_premises")),
            "stem_count": _fmt(mean("stem_count")),
            "avg_exponent": _fmt(good[0].avg_exponent),
            "lower_exponent": _fmt(good[0].lower_exponent),
            "total_log10": _fmt(good[0].total_log10),
            "gen_ms": "", "dual_ms": "", "stem_ms": "",
            "error": "",
        }
        writer.writerow([fields[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    """Rows of a sweep CSV as dicts; '#' comment lines skipped."""
    lines = [l for l in text.split("\n") if l and not l.startswith("#")]
    reader = csv.DictReader(lines)
    return list(reader)


# -- fitting --------------------------------------------------------------------


class FitError(ValueError):
    """Fit cannot be performed (too few cells or singular design)."""


@dataclass
class CellStat:
    attributes: int
    objects: int
    p: float
    mean_count: float
    fitted_count: float = 0.0
    residual_ln: float = 0.0
    relative_residual: float = 0.0


@dataclass
class FitResult:
    c: float
    log_k: float            # natural log of the multiplicative constant
    c2: float | None        # lower-envelope constant; None without trial data
    cells: list[CellStat] = field(default_factory=list)

    @property
    def max_relative_residual(self) -> float:
        return max((s.relative_residual for s in self.cells), default=0.0)


def _bound_terms(n: int, m_objects: int, p: float) -> tuple[float, float]:
    """Fixed term A and c-coefficient B of ln(bound) = A + c*B."""
    mq = m_objects * (1.0 - p)
    if mq < 3.0:
        raise FitError(f"cell objects*q={mq} below ln ln guard")
    ln_n = math.log(n)
    alpha = math.log(mq) / ln_n
    a_term = d_of_alpha(alpha) * (math.log(mq) / math.log(1.0 / p)) * ln_n
    b_term = math.log(math.log(mq)) * ln_n
    return a_term, b_term


def fit_exponent(rows: Iterable[dict | TrialRecord]) -> FitResult:
    """Least-squares fit of the average-bound constants to sweep data.

    Model: ln(mean per-attribute count) = log_k + A(n, m, p) + c * B(n, m, p)
    with A, B the fixed and c-linear parts of the theoretical exponent
    times ln(n). Also computes the lower-envelope constant c2 as the
    minimum implied value over individual trials, so the corresponding
    lower bound sits at or below every calibration trial.
    """
    trials: list[tuple[int, int, float, float]] = []  # (n, m, p, mt_mean)
    for row in rows:
        if isinstance(row, TrialRecord):
            if row.error is not None or row.mt_mean is None:
                continue
            params = row.params
            if params.get("model") != "single":
                continue
            trials.append((params["attributes"], params["objects"],
                           params["p"], row.mt_mean))
        else:
            if row.get("row") != "trial" or row.get("error"):
                continue
            if row.get("model") != "single" or not row.get("mt_mean"):
                continue
            trials.append((int(row["attributes"]), int(row["objects"]),
                           float(row["p"]), float(row["mt_mean"])))
    cells: dict[tuple[int, int, float], list[float]] = {}
    for n, m, p, count in trials:
        cells.setdefault((n, m, p), []).append(count)
    if len(cells) < 3:
        raise FitError(
            f"singular fit: need >= 3 distinct grid cells, got {len(cells)}")

    keys = sorted(cells)
    a_terms, b_terms, y = [], [], []
    for n, m, p in keys:
        a_t, b_t = _bound_terms(n, m, p)
        mean_count = sum(cells[(n, m, p)]) / len(cells[(n, m, p)])
        if mean_count <= 0:
            raise FitError("cell mean count must be positive to fit in log space")
        a_terms.append(a_t)
        b_terms.append(b_t)
        y.append(math.log(mean_count))
    design = np.column_stack([np.ones(len(keys)), np.array(b_terms)])
    target = np.array(y) - np.array(a_terms)
    solution, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 2:
        raise FitError("singular fit: design matrix is rank-deficient")
    log_k, c = float(solution[0]), float(solution[1])

    stats = []
    for i, (n, m, p) in enumerate(keys):
        mean_count = sum(cells[(n, m, p)]) / len(cells[(n, m, p)])
        fitted_ln = log_k + a_terms[i] + c * b_terms[i]
        fitted = math.exp(fitted_ln)
        stats.append(CellStat(
            attributes=n, objects=m, p=p, mean_count=mean_count,
            fitted_count=fitted,
            residual_ln=y[i] - fitted_ln,
            relative_residual=abs(fitted - mean_count) / mean_count,
        ))

    c2 = fit_lower_envelope(trials)
    return FitResult(c=c, log_k=log_k, c2=c2, cells=stats)


def fit_lower_envelope(
        trials: Sequence[tuple[int, int, float, float]]) -> float | None:
    """Smallest implied c2 over per-trial counts: with this constant the
    lower bound n^(log_{1/p}(mq) + c2*lnln(mq)) does not exceed any
    calibration trial."""
    implied = []
    for n, m, p, count in trials:
        mq = m * (1.0 - p)
        if mq < 3.0 or count <= 0:
            continue
        lnln = math.log(math.log(mq))
        base_term = math.log(mq) / math.log(1.0 / p)
        implied.append((math.log(count) / math.log(n) - base_term) / lnln)
    return min(implied) if implied else None
