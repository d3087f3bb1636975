"""Assessment report model and emission to JSON, CSV, and SVG.

report.json is canonical (sorted keys, 9-significant-digit numbers) so a
rerun on identical inputs is byte-identical. The two CSV tables mirror the
weight table (main / local / global weights with ranks) and the score
table (score, share, rank per alternative). Charts are self-contained SVG
bar charts written without a plotting library to keep output deterministic.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ValidationError
from .io import canonical_json, canonical_number, write_decision_matrix, write_float_matrix
from .saw import DecisionMatrix, NormalizedMatrix, ScoreTable, WeightedMatrix

SCHEMA_VERSION = 1

FORMATS = ("json", "csv", "svg")


@dataclass
class RiskReport:
    """Everything a run produced: weights, verdicts, matrices, scores."""

    goal_label: str
    alternatives: tuple
    weights_main: dict
    weights_local: dict
    weights_global: dict
    consistency: list
    warnings: list
    scores: ScoreTable
    top_criteria: list
    imputation_flags: list
    normalization: str
    imputation: str
    inputs: dict
    weighted: WeightedMatrix
    normalized: Optional[NormalizedMatrix] = None
    decision: Optional[DecisionMatrix] = None
    local_parent: dict = field(default_factory=dict)

    @property
    def most_risky(self) -> str:
        return self.scores.order()[0]

    @property
    def least_risky(self) -> str:
        return self.scores.order()[-1]


def _matrix_dict(alternative_ids, criterion_ids, grid) -> dict:
    return {
        "criteria": list(criterion_ids),
        "rows": {aid: [float(v) for v in row] for aid, row in zip(alternative_ids, grid)},
    }


def report_to_dict(r: RiskReport) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "goal": r.goal_label,
        "alternatives": list(r.alternatives),
        "weights": {
            "main": dict(r.weights_main),
            "local": dict(r.weights_local),
            "global": dict(r.weights_global),
        },
        "consistency": list(r.consistency),
        "warnings": list(r.warnings),
        "score_table": {
            "V": dict(zip(r.scores.alternative_ids, r.scores.V)),
            "A": dict(zip(r.scores.alternative_ids, r.scores.A)),
            "rank": dict(zip(r.scores.alternative_ids, r.scores.rank)),
            "order": r.scores.order(),
        },
        "most_risky": r.most_risky,
        "least_risky": r.least_risky,
        "top_criteria": [{"id": cid, "global_weight": w} for cid, w in r.top_criteria],
        "imputation_flags": list(r.imputation_flags),
        "normalization": r.normalization,
        "imputation": r.imputation,
        "matrices": {},
        "inputs": dict(r.inputs),
    }
    if r.decision is not None:
        doc["matrices"]["decision"] = _matrix_dict(
            r.decision.alternative_ids, r.decision.criterion_ids, r.decision.x)
    if r.normalized is not None:
        doc["matrices"]["normalized"] = _matrix_dict(
            r.normalized.alternative_ids, r.normalized.criterion_ids, r.normalized.r)
    doc["matrices"]["weighted"] = _matrix_dict(
        r.weighted.alternative_ids, r.weighted.criterion_ids, r.weighted.v)
    return doc


def _fmt(x: float) -> str:
    return f"{canonical_number(x):.9g}"


def _ranks(values: list) -> list:
    """1-based ranks, largest first, ties by input order."""
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    ranks = [0] * len(values)
    for position, i in enumerate(order, start=1):
        ranks[i] = position
    return ranks


def weights_csv(r: RiskReport) -> str:
    """Weight table mirror: one row per leaf criterion, with ranks."""
    leaf_ids = list(r.weights_global.keys())
    global_rank = dict(zip(leaf_ids, _ranks([r.weights_global[c] for c in leaf_ids])))
    by_parent = {}
    for leaf in leaf_ids:
        by_parent.setdefault(r.local_parent.get(leaf, ""), []).append(leaf)
    local_rank = {}
    for siblings in by_parent.values():
        for leaf, rk in zip(siblings, _ranks([r.weights_local.get(c, 1.0) for c in siblings])):
            local_rank[leaf] = rk
    lines = ["main,main_weight,criterion,local_weight,local_rank,global_weight,global_rank"]
    for leaf in leaf_ids:
        parent = r.local_parent.get(leaf, "")
        lines.append(",".join([
            parent,
            _fmt(r.weights_main.get(parent, 1.0)),
            leaf,
            _fmt(r.weights_local.get(leaf, 1.0)),
            str(local_rank[leaf]),
            _fmt(r.weights_global[leaf]),
            str(global_rank[leaf]),
        ]))
    return "\n".join(lines) + "\n"


def scores_csv(r: RiskReport) -> str:
    """Score table mirror: score, share, and rank per alternative."""
    lines = ["alternative,score,share,rank"]
    for aid, v, a, rk in zip(
        r.scores.alternative_ids, r.scores.V, r.scores.A, r.scores.rank
    ):
        lines.append(f"{aid},{_fmt(v)},{_fmt(a)},{rk}")
    return "\n".join(lines) + "\n"


def svg_bar_chart(title: str, labels, values, unit: str = "") -> str:
    """Horizontal bar chart as a standalone SVG document."""
    labels = list(labels)
    values = [float(v) for v in values]
    if len(labels) != len(values):
        raise ValidationError("chart labels and values differ in length")
    bar_h, gap, label_w, value_w = 22, 6, 120, 90
    chart_w = 480
    width = label_w + chart_w + value_w + 20
    top = 40
    height = top + len(labels) * (bar_h + gap) + 20
    peak = max(values) if values and max(values) > 0 else 1.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="13">',
        f"  <title>{title}</title>",
        f'  <text x="10" y="24" font-size="16" font-weight="bold">{title}</text>',
    ]
    for idx, (label, value) in enumerate(zip(labels, values)):
        y = top + idx * (bar_h + gap)
        bar = int(round(chart_w * value / peak)) if peak else 0
        shown = _fmt(value) + (f" {unit}" if unit else "")
        parts.append('  <g>')
        parts.append(
            f'    <text x="{label_w - 8}" y="{y + bar_h - 6}" text-anchor="end">{label}</text>'
        )
        parts.append(
            f'    <rect x="{label_w}" y="{y}" width="{bar}" height="{bar_h}" '
            f'fill="#4472a8" data-label="{label}" data-value="{_fmt(value)}">'
            f"<title>{label}: {shown}</title></rect>"
        )
        parts.append(
            f'    <text x="{label_w + bar + 6}" y="{y + bar_h - 6}">{shown}</text>'
        )
        parts.append("  </g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_report(r: RiskReport, formats, output_dir) -> dict:
    """Write the requested formats into output_dir.

    Returns {artifact name: path}. An empty format set writes nothing.
    """
    formats = set(formats)
    unknown = formats - set(FORMATS)
    if unknown:
        raise ValidationError(f"unknown report formats: {sorted(unknown)}")
    out = Path(output_dir)
    written = {}

    def emit(name, text):
        path = out / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        written[name] = str(path)

    if "json" in formats:
        emit("report.json", canonical_json(report_to_dict(r)))
    if "csv" in formats:
        emit("weights.csv", weights_csv(r))
        emit("scores.csv", scores_csv(r))
        if r.decision is not None:
            out.mkdir(parents=True, exist_ok=True)
            write_decision_matrix(r.decision, out / "decision-matrix.csv")
            written["decision-matrix.csv"] = str(out / "decision-matrix.csv")
        if r.normalized is not None:
            write_float_matrix(
                out / "normalized-matrix.csv",
                r.normalized.alternative_ids, r.normalized.criterion_ids, r.normalized.r)
            written["normalized-matrix.csv"] = str(out / "normalized-matrix.csv")
        write_float_matrix(
            out / "weighted-matrix.csv",
            r.weighted.alternative_ids, r.weighted.criterion_ids, r.weighted.v)
        written["weighted-matrix.csv"] = str(out / "weighted-matrix.csv")
    if "svg" in formats:
        if r.weights_main:
            emit("charts/main-weights.svg", svg_bar_chart(
                "Main criteria weights", r.weights_main.keys(), r.weights_main.values()))
        if r.weights_global:
            emit("charts/global-weights.svg", svg_bar_chart(
                "Global criterion weights", r.weights_global.keys(), r.weights_global.values()))
        emit("charts/alternative-scores.svg", svg_bar_chart(
            "Alternative shares", r.scores.alternative_ids, r.scores.A))
    return written
