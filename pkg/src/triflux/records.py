"""Realization record schema and CSV round-tripping.

One record per integrated realization, keyed by (mode, point,
realization); the key makes campaigns resumable and every realization
independently reproducible.  Floats are written with `repr`, the
shortest digit string that round-trips, so rewriting a file is
byte-stable.  Missing values (for example breakup elements of a run
that never broke up) are empty fields.
"""
from __future__ import annotations

import csv
import math
import os

from . import engine

__all__ = [
    "RECORD_COLUMNS",
    "STATUS_NAMES",
    "EJECTION_NAMES",
    "row_to_record",
    "write_records",
    "read_records",
    "existing_keys",
]

RECORD_COLUMNS = [
    "mode", "point", "realization",
    "eps_target", "lb_target", "lbx_target", "lby_target",
    "status", "verdict", "ejection", "escaper",
    "eps_B", "l_Bx", "l_By", "l_B", "eps_F", "l_F",
    "lifetime", "nd_seg", "nd_total", "excursions",
    "e_drift", "l_drift", "end_time", "steps", "rejected",
]

STATUS_NAMES = {
    engine.STATUS_DECIDED: "decided",
    engine.STATUS_TIMEOUT: "timeout",
    engine.STATUS_ALARM: "alarm",
    engine.STATUS_STEPFAIL: "stepfail",
}

EJECTION_NAMES = {
    engine.EJ_EXCURSION: "excursion",
    engine.EJ_ESCAPE: "escape",
    engine.EJ_ND_STOP: "nd_threshold",
}

_INT_FIELDS = {"point", "realization", "nd_seg", "nd_total", "excursions",
               "steps", "rejected"}
_STR_FIELDS = {"mode", "status", "verdict", "ejection"}


def row_to_record(mode: str, point: int, realization: int, targets: dict,
                  row) -> dict:
    """Convert one compiled-driver output row into a record dict."""
    status = STATUS_NAMES[int(row[engine.R_STATUS])]
    verdict = ""
    if row[engine.R_VERDICT] == 1.0:
        verdict = "absorbed"
    elif row[engine.R_VERDICT] == 0.0:
        verdict = "regular"
    ejection = EJECTION_NAMES.get(int(row[engine.R_EJKIND]), "")
    escaper = int(row[engine.R_ESCAPER])
    rec = {
        "mode": mode,
        "point": point,
        "realization": realization,
        "eps_target": targets.get("eps", math.nan),
        "lb_target": targets.get("lb", math.nan),
        "lbx_target": targets.get("lbx", math.nan),
        "lby_target": targets.get("lby", math.nan),
        "status": status,
        "verdict": verdict,
        "ejection": ejection,
        "escaper": escaper + 1 if escaper >= 0 else None,
        "eps_B": row[engine.R_EPSB],
        "l_Bx": row[engine.R_LBX],
        "l_By": row[engine.R_LBY],
        "l_B": row[engine.R_LB],
        "eps_F": row[engine.R_EPSF],
        "l_F": row[engine.R_LF],
        "lifetime": row[engine.R_LIFETIME],
        "nd_seg": int(row[engine.R_NDSEG]),
        "nd_total": int(row[engine.R_NDTOT]),
        "excursions": int(row[engine.R_EXC]),
        "e_drift": row[engine.R_EDRIFT],
        "l_drift": row[engine.R_LDRIFT],
        "end_time": row[engine.R_ENDTIME],
        "steps": int(row[engine.R_STEPS]),
        "rejected": int(row[engine.R_NREJ]),
    }
    return rec


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        # builtin repr; numpy scalars would stringify as np.float64(...)
        return repr(float(value))
    return str(value)


def write_records(path: str, records, append: bool = True) -> None:
    """Append records; the header is written when the file starts empty."""
    fresh = not (os.path.exists(path) and os.path.getsize(path) > 0)
    mode = "a" if append else "w"
    with open(path, mode, encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if fresh or not append:
            writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow([_format(rec.get(col)) for col in RECORD_COLUMNS])


def _parse(col: str, text: str):
    if col in _STR_FIELDS:
        return text
    if text == "":
        return None if col in _INT_FIELDS or col == "escaper" else math.nan
    if col in _INT_FIELDS or col == "escaper":
        return int(text)
    return float(text)


def read_records(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        if header != RECORD_COLUMNS:
            raise ValueError(f"unexpected record columns in {path}")
        return [
            {col: _parse(col, text) for col, text in zip(RECORD_COLUMNS, line)}
            for line in reader if line
        ]


def existing_keys(path: str) -> set[tuple[int, int]]:
    """Keys (point, realization) already present, for resuming."""
    if not os.path.exists(path):
        return set()
    try:
        return {(rec["point"], rec["realization"]) for rec in read_records(path)}
    except (ValueError, KeyError):
        raise ValueError(
            f"{path} exists but is not a valid records file; move it away "
            "or choose another output directory")
