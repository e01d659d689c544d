"""Deterministic CSV/summary output for a simulation run."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .simulator import SimulationReport

CSV_HEADER = "index,category,resource,admitted,total_after,color,category_count"


def fmt(x: float) -> str:
    """Nine significant digits, '.' separator, no locale."""
    text = f"{x:.9g}"
    return "0" if text == "-0" else text


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def arrivals_csv(report: SimulationReport) -> str:
    lines = [CSV_HEADER]
    for r in report.records:
        lines.append(
            ",".join(
                [
                    str(r.index),
                    str(r.category),
                    fmt(r.resource),
                    "1" if r.admitted else "0",
                    fmt(r.total_after),
                    "" if r.color is None else str(r.color),
                    str(r.category_count),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def summary_text(report: SimulationReport) -> str:
    vb = report.variance
    rows = [("slice_capacity", str(report.slice_capacity))]
    rows += [(f"capacity.{c.category}", str(c.admitted)) for c in report.capacities]
    rows += [(f"colors_used.{m}", str(n)) for m, n in enumerate(report.colors_used)]
    rows += [
        ("service_cap", str(report.service_cap)),
        ("admitted", str(report.admitted_count)),
        ("rejected", str(len(report.records) - report.admitted_count)),
        ("total_allocated", fmt(report.total_allocated)),
        ("u_effective", fmt(vb.u_effective)),
        ("variance_term_sigma", fmt(vb.term_sigma)),
        ("variance_term_cov", fmt(vb.term_cov)),
        ("variance_term_mean", fmt(vb.term_mean)),
        ("variance_bound", fmt(vb.total)),
        ("mean_load", fmt(report.mean_load)),
        ("sla_lower_bound", fmt(report.sla_lower_bound)),
    ]
    if report.mc_variance is not None:
        rows += [
            ("mc_samples", str(report.mc_variance.n_samples)),
            ("mc_load_variance", fmt(report.mc_variance.variance)),
            ("mc_load_variance_se", fmt(report.mc_variance.std_error)),
            ("mc_sla_probability", fmt(report.mc_sla.mean)),
            ("mc_sla_probability_se", fmt(report.mc_sla.std_error)),
        ]
    rows.append(("seed", str(report.seed)))
    return "".join(f"{k}={v}\n" for k, v in rows)


def emit_report(report: SimulationReport, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "arrivals.csv"
    summary_path = out / "summary.txt"
    csv_text = arrivals_csv(report)
    summary = summary_text(report)
    _atomic_write(csv_path, csv_text)
    _atomic_write(summary_path, summary)
    return [csv_path, summary_path]
