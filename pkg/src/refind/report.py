"""Report rendering: JSON, aligned text tables, per-episode CSV, figures.

A benchmark run is written as a small report directory:

    report.json    full metrics, machine-readable
    report.txt     aligned-column table, human-readable
    episodes.csv   one row per episode
    figures/*.png  matplotlib renderings of the headline metrics

All text outputs are byte-deterministic for a deterministic run.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .simulate import BenchmarkRun, SplitComparison, classify_difficult

_PNG_METADATA = {"Software": "refind"}


def to_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def render_table(rows: list[tuple], headers: tuple) -> str:
    """Align columns: first column left, the rest right."""
    table = [tuple(_fmt(cell) for cell in row) for row in [headers, *rows]]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    lines = []
    for r, row in enumerate(table):
        cells = [row[0].ljust(widths[0])]
        cells += [row[i].rjust(widths[i]) for i in range(1, len(row))]
        lines.append("  ".join(cells).rstrip())
        if r == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def benchmark_table(run: BenchmarkRun) -> str:
    nnign = run.nnign.to_dict()
    baseline = run.baseline.to_dict()
    rows = [(key, nnign[key], baseline[key]) for key in nnign]
    rows.append(("mrr_ratio", run.mrr_ratio, None))
    return render_table(rows, headers=("metric", "nnign", "random_baseline"))


def episodes_csv(run: BenchmarkRun) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        "task_id", "target_grade", "survivor_count", "target_survived",
        "target_rank", "baseline_rank", "wall_time_s", "difficult",
        "T_a", "P_s", "P_e",
    ])
    policy = run.config.make_policy()
    for result, baseline_rank in zip(run.episodes, run.baseline_ranks):
        writer.writerow([
            result.task_id,
            f"{result.target_grade:.4f}",
            result.survivor_count,
            int(result.target_survived),
            result.target_rank if result.target_rank is not None else "",
            baseline_rank if baseline_rank is not None else "",
            f"{result.wall_time_s:.2f}",
            int(classify_difficult(result, policy)),
            f"{result.metrics.T_a:.3f}",
            f"{result.metrics.P_s:.4f}",
            f"{result.metrics.P_e:.4f}",
        ])
    return buf.getvalue()


def _save(fig, path: Path) -> None:
    fig.savefig(path, dpi=110, metadata=_PNG_METADATA)
    plt.close(fig)


def render_benchmark_figures(run: BenchmarkRun, figures_dir: Path) -> list[Path]:
    figures_dir.mkdir(parents=True, exist_ok=True)
    paths = []

    # Headline comparison: MRR and success@k for both rankers.
    keys = ["mrr"] + [f"success_at_{k}" for k in sorted(run.nnign.success_at)]
    nnign = run.nnign.to_dict()
    baseline = run.baseline.to_dict()
    x = range(len(keys))
    width = 0.38
    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.bar([i - width / 2 for i in x], [nnign[k] for k in keys], width, label="NNiGN")
    ax.bar([i + width / 2 for i in x], [baseline[k] for k in keys], width,
           label="random baseline", color="#b0b0b0")
    ax.set_xticks(list(x))
    ax.set_xticklabels(keys, rotation=20)
    ax.set_ylabel("value")
    ax.set_title("Ranking quality vs random shuffle")
    ax.legend()
    fig.tight_layout()
    path = figures_dir / "ranking_quality.png"
    _save(fig, path)
    paths.append(path)

    # Survivor counts after filtering.
    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.hist([r.survivor_count for r in run.episodes], bins=30, color="#4878a8")
    ax.set_xlabel("survivors after filtering")
    ax.set_ylabel("episodes")
    ax.set_title("Candidate set size at ranking time")
    fig.tight_layout()
    path = figures_dir / "survivor_counts.png"
    _save(fig, path)
    paths.append(path)

    # Where the target lands, relative to the list length.
    nnign_rel = [(r.target_rank - 1) / max(1, r.survivor_count - 1)
                 for r in run.episodes if r.target_survived]
    base_rel = [(br - 1) / max(1, r.survivor_count - 1)
                for r, br in zip(run.episodes, run.baseline_ranks)
                if r.target_survived and br is not None]
    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.hist([nnign_rel, base_rel], bins=10, label=["NNiGN", "random baseline"],
            color=["#4878a8", "#b0b0b0"])
    ax.set_xlabel("relative rank of target (0 = first)")
    ax.set_ylabel("episodes")
    ax.set_title("Target position among survivors")
    ax.legend()
    fig.tight_layout()
    path = figures_dir / "target_relative_rank.png"
    _save(fig, path)
    paths.append(path)

    # Wizard wall time against the difficulty budget.
    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.hist([r.wall_time_s for r in run.episodes], bins=30, color="#4878a8")
    ax.axvline(run.config.time_budget_s, color="#c04040", linestyle="--",
               label=f"budget T = {run.config.time_budget_s:g} s")
    ax.set_xlabel("wizard wall time (s)")
    ax.set_ylabel("episodes")
    ax.set_title("Episode duration")
    ax.legend()
    fig.tight_layout()
    path = figures_dir / "wall_time.png"
    _save(fig, path)
    paths.append(path)
    return paths


def write_benchmark_outputs(run: BenchmarkRun, out_dir) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = {}

    json_path = out_dir / "report.json"
    json_path.write_text(to_json(run.report_dict()), encoding="utf-8")
    outputs["json"] = json_path

    table_path = out_dir / "report.txt"
    table_path.write_text(benchmark_table(run), encoding="utf-8")
    outputs["table"] = table_path

    csv_path = out_dir / "episodes.csv"
    csv_path.write_text(episodes_csv(run), encoding="utf-8")
    outputs["csv"] = csv_path

    for i, path in enumerate(render_benchmark_figures(run, out_dir / "figures")):
        outputs[f"figure_{i}"] = path
    return outputs


def splits_table(comparison: SplitComparison) -> str:
    rows = [
        ("mean threshold", comparison.mean_threshold, comparison.mean_accuracy),
        ("median threshold", comparison.median_threshold, comparison.median_accuracy),
    ]
    table = render_table(rows, headers=("classifying parameter", "pages", "accuracy"))
    return table + f"answers scored: {comparison.n_answers}\n"


def render_splits_figure(comparison: SplitComparison, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(["mean", "median"],
           [comparison.mean_accuracy, comparison.median_accuracy],
           color=["#4878a8", "#b0b0b0"], width=0.55)
    ax.set_ylim(0, 1)
    ax.set_ylabel("fraction of correct answers")
    ax.set_title("Page-question accuracy by classifying parameter")
    for i, v in enumerate([comparison.mean_accuracy, comparison.median_accuracy]):
        ax.text(i, v + 0.02, f"{v:.3f}", ha="center")
    fig.tight_layout()
    _save(fig, path)
    return path


def write_splits_outputs(comparison: SplitComparison, out_dir) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = {}
    json_path = out_dir / "splits.json"
    json_path.write_text(to_json(comparison.to_dict()), encoding="utf-8")
    outputs["json"] = json_path
    table_path = out_dir / "splits.txt"
    table_path.write_text(splits_table(comparison), encoding="utf-8")
    outputs["table"] = table_path
    figures_dir = out_dir / "figures"
    figures_dir.mkdir(parents=True, exist_ok=True)
    outputs["figure"] = render_splits_figure(comparison, figures_dir / "split_accuracy.png")
    return outputs
