"""Reading time series and gridded values, spatial box averaging, random
timestep subsampling, and sufficient statistics.

File formats (documented, strict by default):

* time-series CSV: header ``time,value``; ISO-8601 UTC timestamps; decimal
  point, no thousands separators.
* grid CSV: header ``time,lat,lon,value``, one row per point per time.

Readers reject unknown columns unless ``lenient=True``.  Native model
output formats are out of scope; convert to these schemas first.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import IngestError, NumericError
from .posterior import SampleStats
from .rng import derive_key, uniform01

_SUBSAMPLE_LABEL = "subsample"


def parse_iso_utc(text: str) -> datetime:
    """Parse an ISO-8601 timestamp as UTC.

    Accepts a trailing ``Z``, an explicit offset, or a naive timestamp
    (taken to be UTC).  Raises ValueError on anything else.
    """
    raw = text.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_iso_utc(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A labelled series of (UTC timestamp, deg C) observations.

    Times are strictly increasing and values finite; both are immutable
    after construction.
    """

    times: tuple
    values: np.ndarray
    label: str

    def __post_init__(self) -> None:
        times = tuple(self.times)
        values = np.array(self.values, dtype=float)
        if len(times) != values.size:
            raise IngestError(f"series {self.label!r}: {len(times)} times vs {values.size} values")
        for earlier, later in zip(times, times[1:]):
            if not earlier < later:
                raise IngestError(f"series {self.label!r}: times not strictly increasing at {format_iso_utc(later)}")
        if values.size and not np.all(np.isfinite(values)):
            raise IngestError(f"series {self.label!r}: non-finite values present")
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True, eq=False)
class GridSlice:
    """All grid-point values at one timestamp, as parallel arrays."""

    time: datetime
    lats: np.ndarray
    lons: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        lats = np.array(self.lats, dtype=float)
        lons = np.array(self.lons, dtype=float)
        values = np.array(self.values, dtype=float)
        if not (lats.size == lons.size == values.size):
            raise IngestError("grid slice arrays must have equal lengths")
        if lats.size < 1:
            raise IngestError(f"grid slice at {format_iso_utc(self.time)} has no points")
        if np.any(lats < -90.0) or np.any(lats > 90.0):
            raise IngestError(f"latitude outside [-90, 90] at {format_iso_utc(self.time)}")
        if np.any(lons < -180.0) or np.any(lons >= 360.0):
            raise IngestError(f"longitude outside [-180, 360) at {format_iso_utc(self.time)}")
        if not np.all(np.isfinite(values)):
            raise IngestError(f"non-finite grid value at {format_iso_utc(self.time)}")
        for arr in (lats, lons, values):
            arr.setflags(write=False)
        object.__setattr__(self, "lats", lats)
        object.__setattr__(self, "lons", lons)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class GeoBox:
    """A latitude/longitude rectangle; all four edges are inclusive."""

    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float

    def __post_init__(self) -> None:
        if not self.lat_min < self.lat_max:
            raise NumericError(f"lat_min must be < lat_max, got ({self.lat_min}, {self.lat_max})")
        if not self.lon_min < self.lon_max:
            raise NumericError(f"lon_min must be < lon_max, got ({self.lon_min}, {self.lon_max})")


def _read_header(row: Sequence[str], required: Sequence[str], path, lenient: bool) -> list[int]:
    """Validate a header row and return the column index of each required
    name."""
    names = [cell.strip() for cell in row]
    missing = [name for name in required if name not in names]
    if missing:
        raise IngestError(f"{path}: header must contain {','.join(required)}; missing {missing}")
    extras = [name for name in names if name not in required]
    if extras and not lenient:
        raise IngestError(f"{path}: unknown columns {extras} (pass lenient to ignore)")
    return [names.index(name) for name in required]


def _parse_float(cell: str, path, lineno: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise IngestError(f"{path}:{lineno}: non-numeric {column} {cell!r}") from None
    if not math.isfinite(value):
        raise IngestError(f"{path}:{lineno}: non-finite {column} {cell!r}")
    return value


def _parse_time(cell: str, path, lineno: int) -> datetime:
    try:
        return parse_iso_utc(cell)
    except ValueError:
        raise IngestError(f"{path}:{lineno}: malformed timestamp {cell!r}") from None


def read_timeseries_csv(path, label: str, lenient: bool = False) -> TimeSeries:
    """Read a ``time,value`` CSV into a TimeSeries.

    Errors name the offending line: malformed rows, non-numeric values,
    non-monotonic or duplicated timestamps.  A file with a header but no
    data rows is an error of its own.
    """
    path = Path(path)
    if not path.exists():
        raise IngestError(f"input file not found: {path}")
    times: list[datetime] = []
    values: list[float] = []
    with open(path, newline="", encoding="utf-8") as handle:
        rows = csv.reader(handle)
        header = next(rows, None)
        if header is None:
            raise IngestError(f"{path}: empty file, expected 'time,value' header")
        t_col, v_col = _read_header(header, ("time", "value"), path, lenient)
        for lineno, row in enumerate(rows, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) <= max(t_col, v_col):
                raise IngestError(f"{path}:{lineno}: malformed row {row!r}")
            stamp = _parse_time(row[t_col], path, lineno)
            if times and not times[-1] < stamp:
                raise IngestError(
                    f"{path}:{lineno}: timestamp {format_iso_utc(stamp)} not after previous row"
                )
            times.append(stamp)
            values.append(_parse_float(row[v_col], path, lineno, "value"))
    if not times:
        raise IngestError(f"{path}: empty series (header only)")
    return TimeSeries(tuple(times), np.array(values), label)


def read_grid_csv(path, lenient: bool = False) -> list[GridSlice]:
    """Read a ``time,lat,lon,value`` CSV into per-timestamp slices, sorted
    chronologically."""
    path = Path(path)
    if not path.exists():
        raise IngestError(f"input file not found: {path}")
    groups: dict[datetime, list[tuple[float, float, float]]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        rows = csv.reader(handle)
        header = next(rows, None)
        if header is None:
            raise IngestError(f"{path}: empty file, expected 'time,lat,lon,value' header")
        cols = _read_header(header, ("time", "lat", "lon", "value"), path, lenient)
        for lineno, row in enumerate(rows, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) <= max(cols):
                raise IngestError(f"{path}:{lineno}: malformed row {row!r}")
            stamp = _parse_time(row[cols[0]], path, lineno)
            lat = _parse_float(row[cols[1]], path, lineno, "lat")
            lon = _parse_float(row[cols[2]], path, lineno, "lon")
            value = _parse_float(row[cols[3]], path, lineno, "value")
            if not -90.0 <= lat <= 90.0:
                raise IngestError(f"{path}:{lineno}: latitude {lat} outside [-90, 90]")
            if not -180.0 <= lon < 360.0:
                raise IngestError(f"{path}:{lineno}: longitude {lon} outside [-180, 360)")
            groups.setdefault(stamp, []).append((lat, lon, value))
    if not groups:
        raise IngestError(f"{path}: empty grid (header only)")
    slices = []
    for stamp in sorted(groups):
        lats, lons, values = zip(*groups[stamp])
        slices.append(GridSlice(stamp, np.array(lats), np.array(lons), np.array(values)))
    return slices


def box_average(slices: Iterable[GridSlice], box: GeoBox, label: str = "box") -> TimeSeries:
    """Spatially average each slice over a lat/lon box (inclusive edges).

    The mean is the unweighted arithmetic mean of the in-box point values;
    no area weighting is applied.  A slice with no point inside the box is
    an error naming its timestamp.
    """
    times = []
    means = []
    for item in slices:
        mask = (
            (item.lats >= box.lat_min)
            & (item.lats <= box.lat_max)
            & (item.lons >= box.lon_min)
            & (item.lons <= box.lon_max)
        )
        if not np.any(mask):
            raise IngestError(f"no grid points inside box at {format_iso_utc(item.time)}")
        times.append(item.time)
        means.append(float(np.mean(item.values[mask])))
    return TimeSeries(tuple(times), np.array(means), label)


def filter_months(series: TimeSeries, months: Iterable[tuple[int, int]]) -> TimeSeries:
    """Keep only observations whose (year, month) is in ``months``."""
    wanted = {(int(y), int(m)) for y, m in months}
    keep = [i for i, t in enumerate(series.times) if (t.year, t.month) in wanted]
    times = tuple(series.times[i] for i in keep)
    return TimeSeries(times, series.values[keep], series.label)


def subsample(series: TimeSeries, n: int, seed: int) -> TimeSeries:
    """Select ``n`` distinct timesteps uniformly without replacement,
    returned in chronological order; deterministic given the seed.

    Selection is by bottom-n of per-index Philox uniforms, which is uniform
    over n-subsets and independent of the series length's chunking.
    """
    if n < 1:
        raise NumericError(f"subsample size must be >= 1, got {n}")
    total = len(series)
    if n > total:
        raise NumericError(f"cannot subsample {n} timesteps from a series of length {total}")
    key = derive_key(seed, _SUBSAMPLE_LABEL)
    scores = uniform01(key, np.arange(total, dtype=np.uint64), np.zeros(total, dtype=np.uint64))
    chosen = np.sort(np.argsort(scores, kind="stable")[:n])
    times = tuple(series.times[i] for i in chosen)
    return TimeSeries(times, series.values[chosen], series.label)


def compute_stats(series: TimeSeries) -> SampleStats:
    """Sufficient statistics of a series: size, mean, (n-1)-denominator
    variance.

    Two-pass algorithm: the mean first (pairwise summation), then the sum
    of squared deviations.  A constant series short-circuits to its exact
    mean and zero variance so cancellation noise cannot produce a spurious
    spread.  The variance is omitted for a single observation.
    """
    n = len(series)
    if n == 0:
        raise NumericError(f"series {series.label!r} is empty; no statistics to compute")
    values = series.values
    if n == 1:
        return SampleStats(n=1, y_bar=float(values[0]))
    lo, hi = float(np.min(values)), float(np.max(values))
    if lo == hi:
        return SampleStats(n=n, y_bar=lo, s_sq=0.0)
    mean = float(np.mean(values))
    s_sq = float(np.sum((values - mean) ** 2) / (n - 1))
    return SampleStats(n=n, y_bar=mean, s_sq=s_sq)
