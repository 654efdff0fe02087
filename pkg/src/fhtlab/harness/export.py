"""Result persistence: summary CSV, structured report, plot-ready series.

All files are UTF-8 with LF line endings and '.' decimals; reals are
written with full round-trip precision (repr).  Nothing here embeds
timestamps or machine identifiers, so equal batches export byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

from fhtlab.harness.consistency import ConsistencyReport, PairCheck
from fhtlab.harness.experiment import BatchResult

SUMMARY_HEADER = "n,t0_hat,t_max,k_hat,alpha_hat,avg_bound,worst_bound,klow_theoretical,runs"


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(path: Path, lines: list[str]) -> Path:
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc
    return path


def _pair_doc(pair: PairCheck) -> dict:
    return {
        "first": pair.first,
        "second": pair.second,
        "correlation": pair.correlation,
        "ordering_holds_per_n": {str(n): ok for n, ok in pair.ordering},
        "verdict": pair.verdict,
    }


def report_document(batch: BatchResult, report: ConsistencyReport) -> dict:
    """The JSON-compatible structured report for one verified batch."""
    cfg = batch.config
    return {
        "config": {
            "problem": cfg.problem,
            "n_min": cfg.n_min,
            "n_max": cfg.n_max,
            "mu": cfg.mu,
            "lambda": cfg.lambda_,
            "runs_per_n": cfg.runs_per_n,
            "base_seed": cfg.base_seed,
            "poisson_lambda": cfg.poisson_lambda,
            "max_generations": cfg.max_generations,
            "k_source": cfg.k_source,
        },
        "rows": [asdict(row) for row in report.rows],
        "correlations": {
            "avg": report.avg.correlation,
            "worst": report.worst.correlation,
            "k": report.k.correlation,
        },
        "orderings": {p.name: _pair_doc(p) for p in report.pairs},
        "verdicts": {
            "avg": report.avg.verdict,
            "worst": report.worst.verdict,
            "k": report.k.verdict,
            "overall": "consistent" if report.overall_consistent else "inconsistent",
        },
        "thresholds": {"r_min": report.r_min},
    }


def export_results(batch: BatchResult, report: ConsistencyReport | None,
                   out_dir: str | Path, include_traces: bool = False) -> list[Path]:
    """Write summary.csv, report.json, the three figure series, and
    optionally the per-generation trace CSV; returns the written paths.

    Single-point batches have no correlations, so they pass report None and
    skip report.json.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    rows = report.rows if report is not None else batch.rows

    lines = [SUMMARY_HEADER]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in (
            row.n, row.t0_hat, row.t_max, row.k_hat, row.alpha_hat,
            row.avg_bound, row.worst_bound, row.klow_theoretical, row.runs)))
    files.append(_write(out / "summary.csv", lines))

    if report is not None:
        files.append(_write(out / "report.json",
                            [json.dumps(report_document(batch, report), indent=2, sort_keys=True)]))

    series = [
        ("series_efht_average.csv", "n,avg_bound,t0_hat",
         [(r.n, r.avg_bound, r.t0_hat) for r in rows]),
        ("series_efht_worst.csv", "n,worst_bound,t_max",
         [(r.n, r.worst_bound, r.t_max) for r in rows]),
        ("series_klow.csv", "n,k_hat,klow_theoretical",
         [(r.n, r.k_hat, r.klow_theoretical) for r in rows]),
    ]
    for name, header, rows in series:
        files.append(_write(out / name, [header] + [",".join(_fmt(v) for v in r) for r in rows]))

    if include_traces:
        lines = ["run_id,t,potential,gain"]
        for point in batch.points:
            for idx, trace in enumerate(point.traces):
                run_id = f"{point.n}:{idx}"
                for t in range(trace.fht + 1):
                    gain = trace.gains[t] if t < trace.fht else None
                    lines.append(f"{run_id},{t},{trace.potentials[t]},{_fmt(gain)}")
        files.append(_write(out / "traces.csv", lines))
    return files
