"""Deterministic table model and the csv/md/tex renderers.

Tables are plain grids of pre-formatted strings.  Stacked cells (a statistic
with its bracketed p-value beneath, or a coefficient with several t-statistic
lines) are realised as extra physical rows whose label column is empty, the
same two-line row shape the reference tables use.  Rendering the same report
twice yields identical bytes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .bootstrap import UnitRootReport
from .regression import InferenceReport, PredictiveInference
from .tailindex import TailCurve

__all__ = [
    "Table",
    "render_table",
    "unitroot_table",
    "predict_table",
    "factor_table",
    "emit_tail_curve",
    "STAT_COLUMNS",
]

STAT_COLUMNS = ("LR", "MZa", "MSB", "MZt", "MPt", "ADF")

# bracket styles cycle over the configured scheme list
_BRACKETS = ("[{}]", "({})", "{{{}}}")


@dataclass(frozen=True)
class Table:
    title: str
    headers: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "headers", tuple(self.headers))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        for r in self.rows:
            if len(r) != len(self.headers):
                raise ValueError(f"row width {len(r)} != header width {len(self.headers)}")


def render_table(table: Table, fmt: str) -> bytes:
    """Render a table to csv, markdown or latex bytes (utf-8, LF endings)."""
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(table.headers)
        writer.writerows(table.rows)
        return out.getvalue().encode("utf-8")
    if fmt == "md":
        lines = [f"## {table.title}", ""]
        lines.append("| " + " | ".join(table.headers) + " |")
        lines.append("| " + " | ".join("---" for _ in table.headers) + " |")
        for r in table.rows:
            lines.append("| " + " | ".join(r) + " |")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "tex":
        lines = [f"% {table.title}"]
        lines.append("\\begin{tabular}{l" + "c" * (len(table.headers) - 1) + "}")
        lines.append("\\hline")
        lines.append(" & ".join(_tex_escape(h) for h in table.headers) + " \\\\")
        lines.append("\\hline")
        for r in table.rows:
            lines.append(" & ".join(_tex_escape(c) for c in r) + " \\\\")
        lines.append("\\hline")
        lines.append("\\end{tabular}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _tex_escape(s: str) -> str:
    for ch in ("&", "%", "#", "_", "{", "}"):
        s = s.replace(ch, "\\" + ch)
    return s


def unitroot_table(entries: list[tuple[str, UnitRootReport]], title: str) -> Table:
    """Two physical rows per series: the six statistics, p-values in brackets."""
    rows = []
    for label, report in entries:
        stats = report.stats.as_dict()
        rows.append((label,) + tuple(f"{stats[c]:.2f}" for c in STAT_COLUMNS))
        p = report.p_values
        rows.append(("",) + tuple(f"({p[c]:.3f})" if c in p else "" for c in STAT_COLUMNS))
    return Table(title=title, headers=("series",) + STAT_COLUMNS, rows=tuple(rows))


def predict_table(entries: list[tuple[str, PredictiveInference]], qs, title: str) -> Table:
    """One row per (index, regressor): T, grouped t per q, starred HAC t."""
    headers = ("series", "T") + tuple(f"q={q}" for q in qs) + ("HAC",)
    rows = []
    for label, inf in entries:
        cells = [label, str(inf.T)]
        for q in qs:
            cells.append(f"{inf.grouped[q].t_stat:.2f}")
        cells.append(f"{inf.hac_t:.2f}{inf.hac_stars}")
        rows.append(tuple(cells))
    return Table(title=title, headers=headers, rows=tuple(rows))


def factor_table(reports: list[InferenceReport], schemes: list[str], title: str) -> Table:
    """Factor rows plus Alpha; per cell the estimate with stacked t-statistics.

    ``schemes`` is an ordered list drawn from ``classical``, ``hac`` and
    ``grouped-<q>``; each renders one bracketed line under the estimate (stars
    are attached to the HAC line only).
    """
    headers = ("",) + tuple(_model_header(r.model) for r in reports)
    row_names = []
    for r in reports:
        for c in r.coefficients:
            if c.name not in row_names and c.name != "Alpha":
                row_names.append(c.name)
    row_names.append("Alpha")

    rows = []
    for name in row_names:
        value_cells, scheme_cells = [], [[] for _ in schemes]
        for r in reports:
            try:
                c = r.coefficient(name)
            except KeyError:
                value_cells.append("")
                for lines in scheme_cells:
                    lines.append("")
                continue
            value_cells.append(f"{c.estimate:.3f}")
            for i, scheme in enumerate(schemes):
                scheme_cells[i].append(_scheme_cell(c, scheme, _BRACKETS[i % len(_BRACKETS)]))
        rows.append((name,) + tuple(value_cells))
        for lines in scheme_cells:
            rows.append(("",) + tuple(lines))
    return Table(title=title, headers=headers, rows=tuple(rows))


def _model_header(name: str) -> str:
    return name if name == "CAPM" else f"{name[:-1]}-{name[-1]}"


def _scheme_cell(coef, scheme: str, bracket: str) -> str:
    if scheme == "classical":
        return bracket.format(f"{coef.classical_t:.3f}")
    if scheme == "hac":
        return bracket.format(f"{coef.hac_t:.3f}") + coef.hac_stars
    if scheme.startswith("grouped-"):
        q = int(scheme.split("-", 1)[1])
        return bracket.format(f"{coef.grouped[q].t_stat:.3f}")
    raise ValueError(f"unknown inference scheme {scheme!r}")


def emit_tail_curve(curve: TailCurve) -> bytes:
    """Curve records ``k,frac,zeta,se,ci_lo,ci_hi``, the data behind the plots."""
    lines = ["k,frac,zeta,se,ci_lo,ci_hi"]
    for p in curve.points:
        lines.append(
            f"{p.k},{p.k / curve.n:.6f},{p.zeta:.6f},{p.se:.6f},{p.ci95[0]:.6f},{p.ci95[1]:.6f}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")
