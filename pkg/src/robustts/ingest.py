"""CSV ingestion for the four supported file formats.

Formats (all comma-separated, parsed with the stdlib csv module):

* counts:  ``Province/State,Country/Region,Lat,Long,<M/D/YY>,...`` wide file,
  one row per province, cumulative non-negative values; provinces are summed
  into one series per country.
* prices:  ``Date,Open,High,Low,Close,Adj Close,Volume`` with ISO dates; the
  adjusted close is used and empty/``null`` rows are skipped.
* rates:   ``date,rate_pct`` with ISO dates, annual percent.
* factors: ``date,Mkt.RF,SMB,HML,MOM,RMW,CMA,RF`` with ISO dates, values in
  percent per period, converted to fractions on ingest.

Every parse failure raises :class:`~robustts.errors.DataError` naming the
file, line and field.
"""

from __future__ import annotations

import csv
from datetime import date as Date
from datetime import datetime

import numpy as np

from .errors import DataError
from .regression import FactorPanel
from .series import Series

__all__ = ["ingest_counts", "ingest_prices", "ingest_rates", "ingest_factors"]

COUNTS_FIXED_COLUMNS = ("Province/State", "Country/Region", "Lat", "Long")
PRICES_HEADER = ("Date", "Open", "High", "Low", "Close", "Adj Close", "Volume")
RATES_HEADER = ("date", "rate_pct")
FACTORS_HEADER = ("date", "Mkt.RF", "SMB", "HML", "MOM", "RMW", "CMA", "RF")


def _read_rows(path) -> list[list[str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return list(csv.reader(fh))
    except OSError as exc:
        raise DataError(str(exc), path=path) from exc


def _parse_date(raw: str, fmt: str, path, line: int, field: str) -> Date:
    try:
        return datetime.strptime(raw.strip(), fmt).date()
    except ValueError as exc:
        raise DataError(f"unparseable date {raw!r}", path=path, line=line, field=field) from exc


def _parse_number(raw: str, path, line: int, field: str) -> float:
    try:
        value = float(raw)
    except ValueError as exc:
        raise DataError(f"unparseable number {raw!r}", path=path, line=line, field=field) from exc
    if not np.isfinite(value):
        raise DataError(f"non-finite number {raw!r}", path=path, line=line, field=field)
    return value


def _check_increasing(dates: list[Date], path, line: int) -> None:
    for prev, cur in zip(dates, dates[1:]):
        if cur <= prev:
            raise DataError(
                f"date columns out of order ({prev} then {cur})", path=path, line=line
            )


def ingest_counts(path) -> dict[str, Series]:
    """Read a wide cumulative-counts file into one Series per country."""
    rows = _read_rows(path)
    if not rows:
        raise DataError("empty file", path=path)
    header = rows[0]
    if tuple(header[:4]) != COUNTS_FIXED_COLUMNS:
        raise DataError(
            f"malformed header, expected leading columns {','.join(COUNTS_FIXED_COLUMNS)}",
            path=path,
            line=1,
            field=",".join(header[:4]),
        )
    if len(header) < 5:
        raise DataError("no date columns", path=path, line=1)
    dates = [
        _parse_date(raw, "%m/%d/%y", path, 1, f"column {i + 5}")
        for i, raw in enumerate(header[4:])
    ]
    _check_increasing(dates, path, 1)

    totals: dict[str, np.ndarray] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(
                f"expected {len(header)} fields, got {len(row)}", path=path, line=line_no
            )
        country = row[1].strip()
        if not country:
            raise DataError("empty country name", path=path, line=line_no, field="Country/Region")
        values = np.array(
            [
                _parse_number(raw, path, line_no, header[4 + i])
                for i, raw in enumerate(row[4:])
            ]
        )
        if np.any(values < 0):
            bad = int(np.argmax(values < 0))
            raise DataError(
                f"negative cumulative count {values[bad]}",
                path=path,
                line=line_no,
                field=header[4 + bad],
            )
        if country in totals:
            totals[country] = totals[country] + values
        else:
            totals[country] = values
    if not totals:
        raise DataError("no data rows", path=path)
    return {country: Series(tuple(dates), vals) for country, vals in sorted(totals.items())}


def ingest_prices(path) -> Series:
    """Read adjusted closes from a Yahoo-style daily price file."""
    rows = _read_rows(path)
    if not rows:
        raise DataError("empty file", path=path)
    if tuple(rows[0]) != PRICES_HEADER:
        raise DataError(
            f"malformed header, expected {','.join(PRICES_HEADER)}",
            path=path,
            line=1,
            field=",".join(rows[0]),
        )
    dates: list[Date] = []
    values: list[float] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(PRICES_HEADER):
            raise DataError(
                f"expected {len(PRICES_HEADER)} fields, got {len(row)}", path=path, line=line_no
            )
        adj = row[5].strip()
        if adj == "" or adj.lower() == "null":
            continue
        d = _parse_date(row[0], "%Y-%m-%d", path, line_no, "Date")
        if dates and d <= dates[-1]:
            raise DataError(
                f"dates out of order ({dates[-1]} then {d})", path=path, line=line_no, field="Date"
            )
        dates.append(d)
        values.append(_parse_number(adj, path, line_no, "Adj Close"))
    if not dates:
        raise DataError("no usable price rows", path=path)
    return Series(tuple(dates), np.array(values))


def ingest_rates(path) -> Series:
    """Read an annual-percent policy rate file."""
    rows = _read_rows(path)
    if not rows:
        raise DataError("empty file", path=path)
    if tuple(rows[0]) != RATES_HEADER:
        raise DataError(
            f"malformed header, expected {','.join(RATES_HEADER)}",
            path=path,
            line=1,
            field=",".join(rows[0]),
        )
    dates: list[Date] = []
    values: list[float] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 2:
            raise DataError(f"expected 2 fields, got {len(row)}", path=path, line=line_no)
        d = _parse_date(row[0], "%Y-%m-%d", path, line_no, "date")
        if dates and d <= dates[-1]:
            raise DataError(
                f"dates out of order ({dates[-1]} then {d})", path=path, line=line_no, field="date"
            )
        dates.append(d)
        values.append(_parse_number(row[1], path, line_no, "rate_pct"))
    if not dates:
        raise DataError("no rate rows", path=path)
    return Series(tuple(dates), np.array(values))


def ingest_factors(path) -> FactorPanel:
    """Read a daily factor panel; percent values become fractions."""
    rows = _read_rows(path)
    if not rows:
        raise DataError("empty file", path=path)
    if tuple(rows[0]) != FACTORS_HEADER:
        raise DataError(
            f"malformed header, expected {','.join(FACTORS_HEADER)}",
            path=path,
            line=1,
            field=",".join(rows[0]),
        )
    dates: list[Date] = []
    columns: dict[str, list[float]] = {name: [] for name in FACTORS_HEADER[1:]}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(FACTORS_HEADER):
            raise DataError(
                f"expected {len(FACTORS_HEADER)} fields, got {len(row)}", path=path, line=line_no
            )
        d = _parse_date(row[0], "%Y-%m-%d", path, line_no, "date")
        if dates and d <= dates[-1]:
            raise DataError(
                f"dates out of order ({dates[-1]} then {d})", path=path, line=line_no, field="date"
            )
        dates.append(d)
        for name, raw in zip(FACTORS_HEADER[1:], row[1:]):
            columns[name].append(_parse_number(raw, path, line_no, name) / 100.0)
    if not dates:
        raise DataError("no factor rows", path=path)
    return FactorPanel(
        dates=tuple(dates),
        columns={name: np.array(vals) for name, vals in columns.items()},
    )
