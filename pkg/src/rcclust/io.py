"""CSV readers and writers for the file formats the toolkit exchanges.

Formats:

* dataset: header row, numeric feature columns, optional final integer
  column named ``label`` carrying ground truth;
* partitions: header-less, one row per point, one column per view;
* samples: header ``entity_id,value``, one row per observation;
* forecast ground truth: header ``entity_id,total_supply,win_rate,
  ecpm_cost,true_impressions,true_spend``.
"""

from __future__ import annotations

import csv
from importlib import resources
from pathlib import Path

import numpy as np

from .metrics import ForecastInput, forecast
from .partitions import dense_labels


class DataFormatError(ValueError):
    """A file does not conform to its declared schema."""


def _open_rows(path):
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"{path}: file not found")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return [row for row in rows if row and any(field.strip() for field in row)]


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def load_dataset(path) -> tuple[np.ndarray, np.ndarray | None]:
    """Load a dataset CSV; returns ``(features, labels-or-None)``.

    The header is optional for pure-feature files; a ground-truth column
    must be the last one and be named ``label`` in the header.  Malformed or
    non-numeric rows raise :class:`DataFormatError` with the line number.
    """
    rows = _open_rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    header = rows[0]
    has_header = any(not _is_number(tok) for tok in header)
    label_col = None
    if has_header:
        names = [tok.strip().lower() for tok in header]
        if "label" in names:
            if names.index("label") != len(names) - 1:
                raise DataFormatError(f"{path}: label column must be last")
            label_col = len(names) - 1
        rows = rows[1:]
    if not rows:
        raise DataFormatError(f"{path}: no data rows")

    width = len(rows[0])
    feats = []
    labels = []
    for lineno, row in enumerate(rows, start=2 if has_header else 1):
        if len(row) != width:
            raise DataFormatError(
                f"{path}:{lineno}: expected {width} fields, got {len(row)}"
            )
        body = row[:label_col] if label_col is not None else row
        try:
            feats.append([float(tok) for tok in body])
        except ValueError:
            raise DataFormatError(f"{path}:{lineno}: non-numeric feature value") from None
        if label_col is not None:
            labels.append(row[label_col].strip())
    x = np.asarray(feats, dtype=float)
    if x.shape[1] == 0:
        raise DataFormatError(f"{path}: no feature columns")
    if label_col is None:
        return x, None
    y, _ = dense_labels(np.asarray(labels))
    return x, y


def write_dataset(path, x, y=None) -> None:
    x = np.asarray(x, dtype=float)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        header = [f"f{i}" for i in range(x.shape[1])]
        if y is not None:
            header.append("label")
        w.writerow(header)
        for i, row in enumerate(x):
            out = [format(v, ".12g") for v in row]
            if y is not None:
                out.append(int(y[i]))
            w.writerow(out)


def load_partitions(path) -> np.ndarray:
    """Load a header-less partitions CSV (n rows, one column per view) as (n_views, n).

    Label tokens are remapped per view to dense ids in order of first
    appearance.
    """
    rows = _open_rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    width = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DataFormatError(
                f"{path}:{lineno}: expected {width} fields, got {len(row)}"
            )
    columns = np.asarray(rows, dtype=object).T
    views = [dense_labels(col)[0] for col in columns]
    return np.vstack(views)


def write_partitions(path, views) -> None:
    views = np.asarray(views)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in views.T:
            w.writerow([int(v) for v in row])


def load_samples(path) -> tuple[list[str], list[np.ndarray]]:
    """Load per-entity observations; returns entity ids (sorted) and their sample arrays."""
    rows = _open_rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    start = 0
    if rows[0][0].strip().lower() == "entity_id":
        start = 1
    per_entity: dict[str, list[float]] = {}
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if len(row) != 2:
            raise DataFormatError(f"{path}:{lineno}: expected entity_id,value")
        try:
            value = float(row[1])
        except ValueError:
            raise DataFormatError(f"{path}:{lineno}: non-numeric value") from None
        per_entity.setdefault(row[0].strip(), []).append(value)
    ids = sorted(per_entity)
    return ids, [np.asarray(per_entity[e]) for e in ids]


def write_samples(path, entity_ids, samples) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["entity_id", "value"])
        for eid, values in zip(entity_ids, samples):
            for v in values:
                w.writerow([eid, format(float(v), ".12g")])


def load_forecast_truth(path) -> tuple[list[str], list[ForecastInput], np.ndarray, np.ndarray]:
    """Load the forecast ground-truth file.

    Returns ``(entity_ids, inputs, true_impressions, true_spend)`` with
    entities in file order.
    """
    rows = _open_rows(path)
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    expected = ["entity_id", "total_supply", "win_rate", "ecpm_cost", "true_impressions", "true_spend"]
    if [t.strip().lower() for t in rows[0]] != expected:
        raise DataFormatError(f"{path}: expected header {','.join(expected)}")
    ids, inputs, imps, spends = [], [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 6:
            raise DataFormatError(f"{path}:{lineno}: expected 6 fields")
        try:
            ids.append(row[0].strip())
            inputs.append(
                ForecastInput(
                    total_supply=float(row[1]),
                    win_rate=float(row[2]),
                    ecpm_cost=float(row[3]),
                )
            )
            imps.append(float(row[4]))
            spends.append(float(row[5]))
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: {exc}") from None
    return ids, inputs, np.asarray(imps), np.asarray(spends)


def write_forecast_truth(path, entity_ids, inputs) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["entity_id", "total_supply", "win_rate", "ecpm_cost", "true_impressions", "true_spend"])
        for eid, inp in zip(entity_ids, inputs):
            imp, spend = forecast(inp)
            w.writerow(
                [
                    eid,
                    format(inp.total_supply, ".12g"),
                    format(inp.win_rate, ".12g"),
                    format(inp.ecpm_cost, ".12g"),
                    format(imp, ".12g"),
                    format(spend, ".12g"),
                ]
            )


def bundled_path(name: str) -> Path:
    """Path to a bundled demo dataset: iris, wine, soybean_small or zoo."""
    ref = resources.files("rcclust").joinpath(f"data/{name}.csv")
    if not ref.is_file():
        raise ValueError(f"no bundled dataset named {name!r}")
    return Path(str(ref))
