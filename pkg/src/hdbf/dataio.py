"""CSV input for datasets and CSV round-tripping of result tables.

Two dataset layouts are understood:

``two-files``
    one CSV per group, rows are observations (``transpose=True`` accepts the
    variables-by-samples layout common for expression exports).
``labeled``
    one CSV whose ``label_column`` names the group of each row; every other
    column is a variable. Exactly two distinct labels are required; group 1
    is the label that sorts first unless ``group_labels`` is given.

All numbers use '.' as the decimal separator; the delimiter is configurable.
"""
import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError
from .traces import TwoSampleData

__all__ = ["Layout", "DatasetFile", "load_dataset", "write_results_csv", "read_results_csv"]


class Layout(str, enum.Enum):
    TWO_FILES = "two-files"
    LABELED = "labeled"


@dataclass(frozen=True)
class DatasetFile:
    paths: tuple
    layout: Layout = Layout.TWO_FILES
    delimiter: str = ","
    has_header: bool = True
    label_column: object = None
    group_labels: tuple | None = None
    transpose: bool = False
    min_per_group: int = 3
    skip_columns: tuple = field(default_factory=tuple)

    def __post_init__(self):
        paths = (self.paths,) if isinstance(self.paths, (str, Path)) else tuple(self.paths)
        object.__setattr__(self, "paths", tuple(Path(p) for p in paths))
        object.__setattr__(self, "layout", Layout(self.layout))
        if self.layout is Layout.TWO_FILES and len(self.paths) != 2:
            raise ParseError(f"two-files layout needs exactly 2 paths, got {len(self.paths)}")
        if self.layout is Layout.LABELED:
            if len(self.paths) != 1:
                raise ParseError(f"labeled layout needs exactly 1 path, got {len(self.paths)}")
            if self.label_column is None:
                raise ParseError("labeled layout needs a label column")


def _read_rows(path, delimiter):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [(i, row) for i, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1)]
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    except (UnicodeDecodeError, csv.Error) as exc:
        raise ParseError(f"{path}: {exc}") from None
    rows = [(i, r) for i, r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError(f"{path}: file is empty")
    return rows


def _to_float(cell, path, line, col):
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"{path}: non-numeric value {cell!r} in column {col + 1}", line=line) from None
    if not math.isfinite(value):
        raise ParseError(f"{path}: non-finite value {cell!r} in column {col + 1}", line=line)
    return value


def _numeric_matrix(rows, path, skip=()):
    width = None
    out = []
    for line, row in rows:
        cells = [c for j, c in enumerate(row) if j not in skip]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"{path}: expected {width} fields, found {len(cells)}", line=line)
        out.append([_to_float(c, path, line, j) for j, c in enumerate(cells)])
    return np.array(out, dtype=float)


def _check_size(matrix, what, minimum):
    if matrix.shape[0] < minimum:
        raise ParseError(f"{what}: need at least {minimum} observations, got {matrix.shape[0]}")


def load_dataset(spec):
    """Parse a :class:`DatasetFile` into :class:`~hdbf.traces.TwoSampleData`."""
    if spec.layout is Layout.TWO_FILES:
        mats = []
        for path in spec.paths:
            rows = _read_rows(path, spec.delimiter)
            if spec.has_header:
                rows = rows[1:]
            skip = set(spec.skip_columns)
            m = _numeric_matrix(rows, path, skip)
            if m.size == 0:
                raise ParseError(f"{path}: no data rows")
            mats.append(m.T if spec.transpose else m)
        for m, path in zip(mats, spec.paths):
            _check_size(m, str(path), spec.min_per_group)
        if mats[0].shape[1] != mats[1].shape[1]:
            raise ParseError(
                f"groups disagree on dimension: {mats[0].shape[1]} vs {mats[1].shape[1]} variables")
        return TwoSampleData(mats[0], mats[1])
    return _load_labeled(spec)


def _load_labeled(spec):
    path = spec.paths[0]
    rows = _read_rows(path, spec.delimiter)
    header = None
    if spec.has_header:
        header = rows[0][1]
        rows = rows[1:]
    col = spec.label_column
    if isinstance(col, str) and not col.lstrip("-").isdigit():
        if header is None:
            raise ParseError("a named label column needs a header row")
        names = [h.strip() for h in header]
        if col not in names:
            raise ParseError(f"{path}: label column {col!r} not in header", line=1)
        col = names.index(col)
    else:
        col = int(col)
    width = None
    labels, values = [], []
    for line, row in rows:
        if width is None:
            width = len(row)
            if not -width <= col < width:
                raise ParseError(f"{path}: label column {col} out of range", line=line)
            col = col % width
        elif len(row) != width:
            raise ParseError(f"{path}: expected {width} fields, found {len(row)}", line=line)
        labels.append(row[col].strip())
        values.append([_to_float(c, path, line, j) for j, c in enumerate(row) if j != col])
    distinct = sorted(set(labels))
    if len(distinct) != 2:
        raise ParseError(f"{path}: expected exactly 2 group labels, found {len(distinct)}: {distinct[:5]}")
    order = list(spec.group_labels) if spec.group_labels else distinct
    if sorted(order) != distinct:
        raise ParseError(f"{path}: group_labels {order} do not match file labels {distinct}")
    mat = np.array(values, dtype=float)
    lab = np.array(labels)
    groups = [mat[lab == g] for g in order]
    for g, m in zip(order, groups):
        _check_size(m, f"{path} group {g!r}", spec.min_per_group)
    return TwoSampleData(groups[0], groups[1])


def write_results_csv(path, rows, fieldnames):
    """Write dict rows; floats use repr so a read-back reproduces them exactly."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=fieldnames)
        w.writeheader()
        for row in rows:
            w.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v)
                        for k, v in row.items()})


def read_results_csv(path):
    """Read a results CSV; numeric-looking cells come back as int or float."""
    def conv(cell):
        for typ in (int, float):
            try:
                return typ(cell)
            except ValueError:
                pass
        return cell

    with open(path, newline="", encoding="utf-8") as fh:
        return [{k: conv(v) for k, v in row.items()} for row in csv.DictReader(fh)]
