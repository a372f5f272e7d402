"""Campaign orchestration: realization batches in, CSV artifacts out.

Each runner owns one artifact set inside the campaign's output
directory:

* `run_outcome`      -> records.csv, outcome_hist.csv, report.txt
* `run_absorptivity` -> records.csv, absorptivity_map.csv, report.txt
* `run_predict`      -> prediction.csv (needs a bivariate map)
* `run_compare`      -> comparison.csv, report.txt (needs prediction + histogram)
* `run_grid_dump`    -> grid_points.csv

records.csv is append-only and keyed by (mode, point, realization), so
an interrupted campaign resumes by skipping keys already present, and
reruns with the same seed are byte-identical regardless of chunking.
"""
from __future__ import annotations

import csv
import math
import os

import numpy as np

from . import engine
from .classify import build_params, is_chaotic_escape
from .config import CampaignConfig
from .flux import boundary_corrected_histogram, flux_marginal, normalize_by_median, ratio_band
from .grids import LinearInterpolator2D, bivariate_points, combined_disk_grid
from .records import read_records, row_to_record, write_records
from .scattering import (GenerationError, draw_absorptivity_state,
                         draw_outcome_state, l_b_max, realization_rng)

__all__ = [
    "absorptivity_points",
    "run_outcome",
    "run_absorptivity",
    "run_predict",
    "run_compare",
    "run_grid_dump",
]


def _outdir(cfg: CampaignConfig) -> str:
    os.makedirs(cfg.output_dir, exist_ok=True)
    return cfg.output_dir


def _records_path(cfg) -> str:
    return os.path.join(cfg.output_dir, "records.csv")


def _pack(state) -> np.ndarray:
    y = np.empty(engine.NDIM)
    y[0:9] = state.positions.ravel()
    y[9:18] = state.velocities.ravel()
    y[18] = state.time
    return y


def _existing(path: str, mode: str) -> set[tuple[int, int]]:
    if not os.path.exists(path):
        return set()
    return {(r["point"], r["realization"])
            for r in read_records(path) if r["mode"] == mode}


def _chunks(seq, size):
    for i in range(0, len(seq), size):
        yield seq[i:i + size]


def _write_report(cfg, lines: dict) -> None:
    path = os.path.join(cfg.output_dir, "report.txt")
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in lines.items():
            fh.write(f"{key}: {value}\n")


def _hist_edges(cfg):
    h = cfg.histogram
    eps_edges = np.linspace(h.eps_range[0], h.eps_range[1], h.eps_bins + 1)
    l_edges = np.linspace(h.l_range[0], h.l_range[1], h.l_bins + 1)
    return eps_edges, l_edges


# ---------------------------------------------------------------- outcome

def run_outcome(cfg: CampaignConfig) -> dict:
    _outdir(cfg)
    charges = cfg.physics.charges()
    masses = np.array(cfg.physics.masses)
    pr = build_params(cfg.integrator, cfg.classifier)
    path = _records_path(cfg)
    n = cfg.outcome.realizations
    done = _existing(path, "outcome")
    todo = [r for r in range(n) if (0, r) not in done]
    written = n - len(todo)
    for chunk in _chunks(todo, cfg.outcome.chunk):
        y0s = np.empty((len(chunk), engine.NDIM))
        for i, r in enumerate(chunk):
            rng = realization_rng(cfg.seed, 0, r)
            state = draw_outcome_state(charges, cfg.physics.binary_semi_axis,
                                       cfg.physics.single_distance, rng)
            y0s[i] = _pack(state)
        rows = np.empty((len(chunk), engine.NCOL))
        engine.run_batch(masses, y0s, engine.MODE_OUTCOME, pr, rows)
        write_records(path, [
            row_to_record("outcome", 0, r, {}, rows[i])
            for i, r in enumerate(chunk)
        ])
        written += len(chunk)
        print(f"[outcome] {written} of {n} realizations on disk", flush=True)

    recs = [r for r in read_records(path) if r["mode"] == "outcome"
            and r["realization"] < n]
    n_total = len(recs)
    decided = [r for r in recs if r["status"] == "decided"]
    chaotic = [r for r in decided
               if is_chaotic_escape(r["lifetime"], r["nd_seg"], cfg.classifier)]
    esc_counts = {s: sum(1 for r in decided if r["escaper"] == s) for s in (1, 2, 3)}
    e_drifts = np.array([r["e_drift"] for r in recs if math.isfinite(r["e_drift"])])

    eps_edges, l_edges = _hist_edges(cfg)
    hist = boundary_corrected_histogram(
        [r["eps_B"] for r in chaotic], [r["l_B"] for r in chaotic],
        eps_edges, l_edges, charges.binary_k, charges.energy)
    hist_path = os.path.join(cfg.output_dir, "outcome_hist.csv")
    with open(hist_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eps_lo", "eps_hi", "l_lo", "l_hi", "count", "area", "density"])
        for i in range(len(eps_edges) - 1):
            for j in range(len(l_edges) - 1):
                dens = hist.density[i, j]
                writer.writerow([
                    repr(float(eps_edges[i])), repr(float(eps_edges[i + 1])),
                    repr(float(l_edges[j])), repr(float(l_edges[j + 1])),
                    int(hist.counts[i, j]), repr(float(hist.areas[i, j])),
                    repr(float(dens)) if math.isfinite(dens) else "",
                ])

    summary = {
        "campaign": "outcome",
        "realizations": n_total,
        "decided": len(decided),
        "undecided_fraction": (n_total - len(decided)) / n_total if n_total else math.nan,
        "chaotic": len(chaotic),
        "chaotic_fraction": len(chaotic) / len(decided) if decided else math.nan,
        "escaper_1_fraction": esc_counts[1] / len(decided) if decided else math.nan,
        "escaper_2_fraction": esc_counts[2] / len(decided) if decided else math.nan,
        "escaper_3_fraction": esc_counts[3] / len(decided) if decided else math.nan,
        "e_drift_max": float(e_drifts.max()) if e_drifts.size else math.nan,
        "e_drift_median": float(np.median(e_drifts)) if e_drifts.size else math.nan,
        "hist_samples": hist.n_samples,
    }
    _write_report(cfg, summary)
    return summary


# ----------------------------------------------------------- absorptivity

def absorptivity_points(cfg: CampaignConfig) -> list[dict]:
    """Stable-order target list; the point index is the list position."""
    charges = cfg.physics.charges()
    ab = cfg.absorptivity
    points = []
    if ab.variant == "bivariate":
        grid = cfg.absorptivity.bivariate
        eps_levels = np.linspace(grid.eps_min, grid.eps_max, grid.eps_count)
        for eps, l in bivariate_points(eps_levels, grid.l_values,
                                       charges.binary_k, charges.energy,
                                       grid.include_boundary):
            points.append({"eps": float(eps), "lb": float(l),
                           "lbx": float(l), "lby": 0.0})
    else:
        grid = cfg.absorptivity.trivariate
        for eps in grid.eps_levels:
            lmax = l_b_max(eps, charges.binary_k)
            disk = combined_disk_grid(grid.chebyshev_n, lmax,
                                      grid.inner_radius_frac,
                                      grid.inner_spacing_frac)
            for x, y in disk.points:
                points.append({"eps": float(eps), "lb": float(math.hypot(x, y)),
                               "lbx": float(x), "lby": float(y)})
    for idx, p in enumerate(points):
        p["point"] = idx
    return points


def run_absorptivity(cfg: CampaignConfig) -> dict:
    _outdir(cfg)
    charges = cfg.physics.charges()
    masses = np.array(cfg.physics.masses)
    pr = build_params(cfg.integrator, cfg.classifier)
    ab = cfg.absorptivity
    fixed_l_f = ab.variant == "trivariate"
    path = _records_path(cfg)
    points = absorptivity_points(cfg)
    done = _existing(path, ab.variant)
    n_per = ab.realizations_per_point

    for p in points:
        todo = [r for r in range(n_per) if (p["point"], r) not in done]
        if not todo:
            continue
        targets = {"eps": p["eps"], "lb": p["lb"], "lbx": p["lbx"], "lby": p["lby"]}
        for chunk in _chunks(todo, ab.chunk):
            live = []
            y0s = np.empty((len(chunk), engine.NDIM))
            for i, r in enumerate(chunk):
                # point index offset by one so streams never collide with the
                # outcome campaign at the same seed
                rng = realization_rng(cfg.seed, p["point"] + 1, r)
                try:
                    state = draw_absorptivity_state(
                        charges, p["eps"], p["lbx"], p["lby"], rng,
                        fixed_l_f=fixed_l_f, start_factor=ab.start_factor)
                except GenerationError:
                    continue
                y0s[len(live)] = _pack(state)
                live.append(i)
            rows = np.empty((len(live), engine.NCOL))
            if live:
                engine.run_batch(masses, y0s[:len(live)], engine.MODE_ABSORB, pr, rows)
            by_index = dict(zip(live, rows))
            recs = []
            for i, r in enumerate(chunk):
                if i in by_index:
                    recs.append(row_to_record(ab.variant, p["point"], r, targets,
                                              by_index[i]))
                else:
                    recs.append({
                        "mode": ab.variant, "point": p["point"], "realization": r,
                        "eps_target": targets["eps"], "lb_target": targets["lb"],
                        "lbx_target": targets["lbx"], "lby_target": targets["lby"],
                        "status": "genfail",
                    })
            write_records(path, recs)
        print(f"[absorptivity] point {p['point'] + 1} of {len(points)} done", flush=True)

    recs = [r for r in read_records(path) if r["mode"] == ab.variant]
    by_point: dict[int, list] = {}
    for r in recs:
        if r["realization"] < n_per:
            by_point.setdefault(r["point"], []).append(r)
    map_path = os.path.join(cfg.output_dir, "absorptivity_map.csv")
    n_undecided_total = 0
    with open(map_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["variant", "point", "eps", "lb", "lbx", "lby",
                         "n_total", "n_decided", "n_absorbed", "n_undecided",
                         "absorptivity", "stderr"])
        for p in points:
            plist = by_point.get(p["point"], [])
            n_dec = sum(1 for r in plist if r["status"] == "decided")
            n_abs = sum(1 for r in plist
                        if r["status"] == "decided" and r["verdict"] == "absorbed")
            n_und = len(plist) - n_dec
            n_undecided_total += n_und
            if n_dec > 0:
                value = n_abs / n_dec
                err = math.sqrt(value * (1.0 - value) / n_dec)
                val_s, err_s = repr(value), repr(err)
            else:
                val_s, err_s = "", ""
            writer.writerow([ab.variant, p["point"], repr(p["eps"]), repr(p["lb"]),
                             repr(p["lbx"]), repr(p["lby"]), len(plist), n_dec,
                             n_abs, n_und, val_s, err_s])
    n_recs = sum(len(v) for v in by_point.values())
    summary = {
        "campaign": f"absorptivity/{ab.variant}",
        "points": len(points),
        "realizations_per_point": n_per,
        "records": n_recs,
        "undecided_fraction": n_undecided_total / n_recs if n_recs else math.nan,
    }
    _write_report(cfg, summary)
    return summary


def read_absorptivity_map(path: str) -> list[dict]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({
                "variant": row["variant"], "point": int(row["point"]),
                "eps": float(row["eps"]), "lb": float(row["lb"]),
                "lbx": float(row["lbx"]), "lby": float(row["lby"]),
                "n_total": int(row["n_total"]), "n_decided": int(row["n_decided"]),
                "n_absorbed": int(row["n_absorbed"]),
                "n_undecided": int(row["n_undecided"]),
                "absorptivity": float(row["absorptivity"]) if row["absorptivity"] else math.nan,
                "stderr": float(row["stderr"]) if row["stderr"] else math.nan,
            })
    return out


# ---------------------------------------------------------------- predict

def run_predict(cfg: CampaignConfig, map_path: str | None = None) -> dict:
    _outdir(cfg)
    charges = cfg.physics.charges()
    map_path = map_path or os.path.join(cfg.output_dir, "absorptivity_map.csv")
    rows = [r for r in read_absorptivity_map(map_path) if r["variant"] == "bivariate"]
    rows = [r for r in rows if math.isfinite(r["absorptivity"])]
    if len(rows) < 3:
        raise ValueError(f"{map_path} holds no usable bivariate measurements")
    pts = np.array([[r["eps"], r["lb"]] for r in rows])
    vals = np.array([r["absorptivity"] for r in rows])
    interp = LinearInterpolator2D(pts, vals, clamp=(0.0, 1.0))

    eps_edges, l_edges = _hist_edges(cfg)
    eps_centers = 0.5 * (eps_edges[:-1] + eps_edges[1:])
    l_centers = 0.5 * (l_edges[:-1] + l_edges[1:])
    out_path = os.path.join(cfg.output_dir, "prediction.csv")
    n_covered = 0
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eps_center", "l_center", "absorptivity", "flux",
                         "predicted_density"])
        for ec in eps_centers:
            for lc in l_centers:
                flux = float(flux_marginal(ec, lc, charges.binary_k, charges.energy))
                query = np.array([[ec, lc]])
                if flux > 0.0 and bool(interp.inside(query)[0]):
                    absv = float(interp(query)[0])
                    pred = absv * flux
                    n_covered += 1
                    writer.writerow([repr(float(ec)), repr(float(lc)),
                                     repr(absv), repr(flux), repr(pred)])
                else:
                    writer.writerow([repr(float(ec)), repr(float(lc)), "", "", ""])
    summary = {"campaign": "predict", "cells": len(eps_centers) * len(l_centers),
               "covered": n_covered}
    return summary


# ---------------------------------------------------------------- compare

def _read_prediction(path: str) -> list[dict]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({
                "eps_center": float(row["eps_center"]),
                "l_center": float(row["l_center"]),
                "predicted": float(row["predicted_density"])
                if row["predicted_density"] else math.nan,
            })
    return out


def _read_hist(path: str) -> list[dict]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({
                "eps_center": 0.5 * (float(row["eps_lo"]) + float(row["eps_hi"])),
                "l_center": 0.5 * (float(row["l_lo"]) + float(row["l_hi"])),
                "count": int(row["count"]),
                "density": float(row["density"]) if row["density"] else math.nan,
            })
    return out


def run_compare(cfg: CampaignConfig, prediction_path: str | None = None,
                hist_path: str | None = None) -> dict:
    _outdir(cfg)
    prediction_path = prediction_path or os.path.join(cfg.output_dir, "prediction.csv")
    hist_path = hist_path or os.path.join(cfg.output_dir, "outcome_hist.csv")
    pred = _read_prediction(prediction_path)
    hist = _read_hist(hist_path)
    if len(pred) != len(hist):
        raise ValueError("prediction and histogram grids have different sizes")
    for a, b in zip(pred, hist):
        if (abs(a["eps_center"] - b["eps_center"]) > 1e-9 * max(1, abs(b["eps_center"]))
                or abs(a["l_center"] - b["l_center"]) > 1e-9 * max(1, abs(b["l_center"]))):
            raise ValueError("prediction and histogram grids disagree; "
                             "rebuild both from one configuration")

    (e0, e1), (l0, l1) = cfg.compare.eps_range, cfg.compare.l_range
    min_count = cfg.histogram.min_count
    measured = np.array([h["density"] for h in hist])
    predicted = np.array([p["predicted"] for p in pred])
    counts = np.array([h["count"] for h in hist])
    eps_c = np.array([h["eps_center"] for h in hist])
    l_c = np.array([h["l_center"] for h in hist])
    in_region = (eps_c >= e0) & (eps_c <= e1) & (l_c >= l0) & (l_c <= l1)
    mask = (in_region & np.isfinite(measured) & np.isfinite(predicted)
            & (predicted > 0.0) & (counts >= min_count))
    if mask.sum() < 2:
        raise ValueError("fewer than two usable cells in the comparison region")
    meas_scaled = normalize_by_median(measured, mask)
    pred_scaled = normalize_by_median(predicted, mask)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(mask, pred_scaled / meas_scaled, math.nan)
    band_lo, band_hi = ratio_band(ratio[mask])

    out_path = os.path.join(cfg.output_dir, "comparison.csv")
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["eps_center", "l_center", "measured", "predicted",
                         "measured_scaled", "predicted_scaled", "ratio",
                         "count", "included"])
        for i in range(len(hist)):
            def fmt(x):
                return repr(float(x)) if math.isfinite(x) else ""
            writer.writerow([
                repr(float(eps_c[i])), repr(float(l_c[i])),
                fmt(measured[i]), fmt(predicted[i]),
                fmt(meas_scaled[i]) if mask[i] else "",
                fmt(pred_scaled[i]) if mask[i] else "",
                fmt(ratio[i]), int(counts[i]), int(mask[i]),
            ])
    summary = {
        "campaign": "compare",
        "cells": len(hist),
        "included_cells": int(mask.sum()),
        "ratio_median": float(np.median(ratio[mask])),
        "ratio_p16": band_lo,
        "ratio_p84": band_hi,
    }
    _write_report(cfg, summary)
    return summary


# --------------------------------------------------------------- grid dump

def run_grid_dump(cfg: CampaignConfig) -> dict:
    _outdir(cfg)
    points = absorptivity_points(cfg)
    path = os.path.join(cfg.output_dir, "grid_points.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["variant", "point", "eps", "lb", "lbx", "lby"])
        for p in points:
            writer.writerow([cfg.absorptivity.variant, p["point"], repr(p["eps"]),
                             repr(p["lb"]), repr(p["lbx"]), repr(p["lby"])])
    return {"campaign": "grid-dump", "points": len(points)}
