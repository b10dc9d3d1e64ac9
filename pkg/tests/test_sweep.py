import math

import pytest

from implbases import (FitError, SweepSpec, derive_trial_seed, fit_exponent,
                       fit_lower_envelope, parse_csv, render_csv, run_sweep)
from implbases.sweep import CSV_COLUMNS


def small_spec(**overrides):
    kwargs = dict(model="single", objects=(5,), attributes=(5,),
                  p_values=(0.5,), trials=1, base_seed=7)
    kwargs.update(overrides)
    return SweepSpec(**kwargs)


def test_spec_validation():
    with pytest.raises(ValueError):
        small_spec(model="other")
    with pytest.raises(ValueError):
        small_spec(objects=())
    with pytest.raises(ValueError):
        small_spec(trials=0)


def test_single_cell_schema():
    spec = small_spec()
    records = run_sweep(spec)
    assert len(records) == 1
    csv_text = render_csv(spec, records)
    rows = parse_csv(csv_text)
    assert list(rows[0].keys()) == CSV_COLUMNS
    assert len(rows) == 2  # one trial row + one footer
    assert rows[0]["row"] == "trial"
    assert rows[1]["row"] == "cell_mean"
    assert csv_text.startswith("# schema=1\n")


def test_csv_byte_deterministic_and_worker_independent():
    spec = small_spec(objects=(5, 8), attributes=(5, 6), trials=3)
    a = render_csv(spec, run_sweep(spec, workers=1))
    b = render_csv(spec, run_sweep(spec, workers=4))
    c = render_csv(spec, run_sweep(spec, workers=1))
    assert a == b == c


def test_timings_excluded_by_default_included_on_request():
    spec = small_spec()
    records = run_sweep(spec)
    assert records[0].gen_ms is not None  # measured in memory
    plain = parse_csv(render_csv(spec, records))
    assert plain[0]["gen_ms"] == ""
    timed = parse_csv(render_csv(spec, records, include_timings=True))
    assert float(timed[0]["gen_ms"]) >= 0.0


def test_trial_seeds_keyed_on_cell_parameters():
    """Growing the grid must not change the data of existing cells."""
    short = SweepSpec(model="single", objects=(10,), attributes=(10, 15),
                      p_values=(0.5,), trials=2, base_seed=3)
    longer = SweepSpec(model="single", objects=(10, 20), attributes=(10, 15, 20),
                       p_values=(0.3, 0.5), trials=2, base_seed=3)
    by_key_short = {(r.params["objects"], r.params["attributes"],
                     r.params["p"], r.trial): r.seed for r in run_sweep(short)}
    by_key_long = {(r.params["objects"], r.params["attributes"],
                    r.params["p"], r.trial): r.seed for r in run_sweep(longer)}
    for key, seed in by_key_short.items():
        assert by_key_long[key] == seed


def test_derive_trial_seed_stable_values():
    params = {"model": "single", "objects": 10, "attributes": 10, "p": 0.5}
    a = derive_trial_seed(1, params, 0)
    assert a == derive_trial_seed(1, params, 0)
    assert a != derive_trial_seed(1, params, 1)
    assert a != derive_trial_seed(2, params, 0)


def test_records_sorted_and_counts_consistent():
    spec = small_spec(objects=(5, 6), trials=2)
    records = run_sweep(spec)
    assert [(r.cell, r.trial) for r in records] == [
        (0, 0), (0, 1), (1, 0), (1, 1)]
    for r in records:
        assert r.error is None
        assert r.stem_count is None  # stem off by default
        assert r.mt_min <= r.mt_mean <= r.mt_max
        assert r.pp_premises <= r.pp_pairs


def test_stem_toggle_and_invariant():
    spec = small_spec(with_stem=True, trials=3)
    for r in run_sweep(spec):
        assert r.error is None
        assert r.stem_count is not None
        assert r.stem_count <= r.pp_premises


def test_guard_produces_error_row_and_sweep_continues():
    spec = SweepSpec(model="single", objects=(5,), attributes=(5, 30),
                     p_values=(0.5,), trials=1, base_seed=1,
                     max_proper_attributes=20)
    records = run_sweep(spec)
    assert records[0].error is None
    assert records[1].error is not None and "guard" in records[1].error
    rows = parse_csv(render_csv(spec, records))
    error_rows = [r for r in rows if r["error"]]
    assert len(error_rows) == 1
    assert error_rows[0]["mt_mean"] == ""


def test_multi_model_sweep():
    spec = SweepSpec(model="multi", objects=(8,), attributes=(6,),
                     u_sizes=(0, 2), r_sizes=(0, 3), x=2.0, f_prob=0.5,
                     trials=2, base_seed=11)
    records = run_sweep(spec)
    assert len(records) == 8
    assert all(r.error is None for r in records)
    # bound columns only apply to the single model
    assert all(r.avg_exponent is None for r in records)


def test_theoretical_exponent_columns():
    spec = small_spec(objects=(20,), attributes=(10,), trials=1)
    rec = run_sweep(spec)[0]
    assert rec.avg_exponent == pytest.approx(
        math.log2(10) + math.log(math.log(10)), abs=1e-12)
    assert rec.lower_exponent == pytest.approx(math.log2(10), abs=1e-12)
    # degenerate-dense cell leaves bound columns empty instead of failing
    spec = small_spec(objects=(5,), attributes=(5,), p_values=(0.9,))
    rec = run_sweep(spec)[0]
    assert rec.error is None and rec.avg_exponent is None


# -- fitting -----------------------------------------------------------------------


def synthetic_rows(c, log_k=0.0, p=0.5):
    rows = []
    for nm in (10, 15, 20, 25, 30):
        mq = nm * (1 - p)
        exponent = (math.log(mq) / math.log(1 / p)
                    + c * math.log(math.log(mq)))
        count = math.exp(log_k) * nm ** exponent
        rows.append({"row": "trial", "error": "", "model": "single",
                     "attributes": str(nm), "objects": str(nm), "p": repr(p),
                     "mt_mean": repr(count)})
    return rows


def test_fit_round_trip_recovers_constant():
    result = fit_exponent(synthetic_rows(c=2.0))
    assert result.c == pytest.approx(2.0, abs=1e-6)
    assert result.log_k == pytest.approx(0.0, abs=1e-6)
    assert result.max_relative_residual < 1e-9


def test_fit_round_trip_with_leading_constant():
    result = fit_exponent(synthetic_rows(c=-1.25, log_k=0.7))
    assert result.c == pytest.approx(-1.25, abs=1e-6)
    assert result.log_k == pytest.approx(0.7, abs=1e-6)


def test_fit_requires_three_distinct_cells():
    rows = synthetic_rows(c=1.0)[:2]
    with pytest.raises(FitError):
        fit_exponent(rows)
    # constant rows: many trials of one cell is still a single cell
    with pytest.raises(FitError):
        fit_exponent(synthetic_rows(c=1.0)[:1] * 10)


def test_fit_skips_error_and_footer_rows():
    rows = synthetic_rows(c=1.5)
    rows.append({"row": "cell_mean", "error": "", "model": "single",
                 "attributes": "99", "objects": "99", "p": "0.5",
                 "mt_mean": "123456.0"})
    rows.append({"row": "trial", "error": "boom", "model": "single",
                 "attributes": "40", "objects": "40", "p": "0.5",
                 "mt_mean": ""})
    result = fit_exponent(rows)
    assert result.c == pytest.approx(1.5, abs=1e-6)


def test_fit_accepts_trial_records():
    spec = SweepSpec(model="single", objects=(10, 14, 18), attributes=(10, 14, 18),
                     p_values=(0.5,), trials=2, base_seed=77)
    result = fit_exponent(run_sweep(spec))
    assert math.isfinite(result.c) and math.isfinite(result.log_k)
    assert result.c2 is not None


def test_lower_envelope_sits_below_all_calibration_trials():
    trials = [(nm, nm, 0.5, count)
              for nm, count in ((10, 12.0), (15, 60.0), (20, 220.0))]
    c2 = fit_lower_envelope(trials)
    for n, m, p, count in trials:
        mq = m * (1 - p)
        bound = n ** (math.log(mq) / math.log(1 / p)
                      + c2 * math.log(math.log(mq)))
        assert bound <= count * (1 + 1e-9)
    # at least one trial sits exactly on the envelope
    assert any(
        abs(n ** (math.log(m * (1 - p)) / math.log(1 / p)
                  + c2 * math.log(math.log(m * (1 - p)))) - count) < 1e-6
        for n, m, p, count in trials)


def test_lower_envelope_empty_when_no_usable_trials():
    assert fit_lower_envelope([(10, 4, 0.5, 3.0)]) is None
