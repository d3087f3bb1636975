"""File formats: hierarchy, questionnaires, weights, directions, matrices.

All JSON emitted for reports is canonical: keys sorted, floats rounded to
9 significant digits (round-half-even, the platform default), so repeated
runs produce byte-identical files. Decision-matrix CSV uses repr() for
observed cells (floats round-trip exactly) and an empty field for
undefined cells, which the loader fills per the imputation policy.
"""

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .ahp import WeightVector
from .errors import IoError, ValidationError
from .hierarchy import (
    Direction,
    Hierarchy,
    hierarchy_from_dict,
    hierarchy_to_dict,
    parse_judgment_value,
)
from .ratios import ImputationPolicy, impute_grid, statement_year_from_dict
from .saw import DecisionMatrix, WeightedMatrix


def canonical_number(x: float) -> float:
    """Round to 9 significant digits; -0.0 collapses to 0.0."""
    out = float(f"{float(x):.9g}")
    return 0.0 if out == 0 else out


def _canonicalize(obj):
    if isinstance(obj, dict):
        return {str(k): _canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonicalize(v) for v in obj]
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        if not np.isfinite(obj):
            raise ValidationError(f"non-finite number in canonical output: {obj!r}")
        return canonical_number(obj)
    return obj


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, canonical numbers, newline end."""
    return json.dumps(_canonicalize(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def sha256_of(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise IoError(f"{path} is not valid JSON: {exc}") from None


def write_text(path, text: str):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def load_hierarchy(path) -> Hierarchy:
    return hierarchy_from_dict(load_json(path))


def save_hierarchy(h: Hierarchy, path):
    write_text(path, canonical_json(hierarchy_to_dict(h)))


@dataclass(frozen=True)
class Expert:
    """Respondent metadata carried with each questionnaire."""

    name: str
    experience_years: float = 0.0
    degree: str = ""


@dataclass(frozen=True)
class Questionnaire:
    """One expert's upper-triangle judgments per comparison node."""

    expert: Expert
    judgments: dict = field(default_factory=dict)


def questionnaire_from_dict(doc: dict) -> Questionnaire:
    try:
        expert_doc = doc["expert"]
        expert = Expert(
            name=str(expert_doc["name"]),
            experience_years=float(expert_doc.get("experience_years", 0)),
            degree=str(expert_doc.get("degree", "")),
        )
        judgments = {}
        for node_id, entries in doc.get("judgments", {}).items():
            pairs = {}
            for entry in entries:
                i, j = int(entry["i"]), int(entry["j"])
                if not 0 <= i < j:
                    raise ValidationError(f"judgment pair ({i},{j}) must satisfy 0 <= i < j")
                pairs[(i, j)] = parse_judgment_value(entry["value"])
            judgments[str(node_id)] = pairs
        return Questionnaire(expert=expert, judgments=judgments)
    except (KeyError, TypeError) as exc:
        raise IoError(f"malformed questionnaire document: {exc!r}") from None


def questionnaire_to_dict(q: Questionnaire) -> dict:
    out_judgments = {}
    for node_id, pairs in q.judgments.items():
        entries = []
        for (i, j), value in sorted(pairs.items()):
            v = Fraction(value)
            entries.append({
                "i": i,
                "j": j,
                "value": v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}",
            })
        out_judgments[node_id] = entries
    return {
        "expert": {
            "name": q.expert.name,
            "experience_years": q.expert.experience_years,
            "degree": q.expert.degree,
        },
        "judgments": out_judgments,
    }


def load_questionnaire(path) -> Questionnaire:
    return questionnaire_from_dict(load_json(path))


def load_directions(path) -> dict:
    """directions.json: {criterion_id: "max" | "min"}."""
    doc = load_json(path)
    out = {}
    for cid, value in doc.items():
        try:
            out[str(cid)] = Direction(value)
        except ValueError:
            raise ValidationError(
                f"bad direction {value!r} for criterion {cid} in {path}") from None
    return out


def save_directions(directions: dict, path):
    write_text(
        path,
        canonical_json({cid: d.value for cid, d in directions.items()}),
    )


def weight_vector_from_mapping(mapping: dict, renormalize: bool = True) -> WeightVector:
    """Build a WeightVector from an id -> weight mapping (insertion order).

    Published tables carry rounded weights whose sums drift from 1 by a
    few 1e-6; renormalization restores the unit-sum invariant.
    """
    ids = tuple(mapping.keys())
    w = np.array([float(mapping[k]) for k in ids])
    if (w < 0).any():
        raise ValidationError("weights must be nonnegative")
    total = w.sum()
    if total <= 0:
        raise ValidationError("weights must have a positive sum")
    if renormalize:
        w = w / total
    return WeightVector(item_ids=ids, w=tuple(float(x) for x in w))


def load_weights_doc(path) -> dict:
    """weights.json document: per_expert, averaged {main, local, global}, consistency."""
    doc = load_json(path)
    if "averaged" not in doc or "global" not in doc.get("averaged", {}):
        raise ValidationError(f"{path} lacks averaged.global weights")
    return doc


def global_weights_from_doc(doc: dict, renormalize: bool = True) -> dict:
    vec = weight_vector_from_mapping(doc["averaged"]["global"], renormalize=renormalize)
    return vec.as_dict()


def read_matrix_csv(path):
    """Read a matrix CSV: header of criterion ids, first column alternative id.

    Returns (alternative_ids, criterion_ids, grid) where grid cells are
    floats or None for empty (undefined) fields.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    if not rows or len(rows[0]) < 2:
        raise ValidationError(f"{path} is not a matrix CSV (need a header and data columns)")
    criterion_ids = tuple(c.strip() for c in rows[0][1:])
    if len(set(criterion_ids)) != len(criterion_ids):
        raise ValidationError(f"{path} has duplicate criterion columns")
    alternative_ids = []
    grid = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) != len(criterion_ids) + 1:
            raise ValidationError(f"{path}:{line_no}: expected {len(criterion_ids) + 1} fields")
        alternative_ids.append(row[0].strip())
        cells = []
        for cid, cell in zip(criterion_ids, row[1:]):
            cell = cell.strip()
            if not cell:
                cells.append(None)
                continue
            try:
                cells.append(float(cell))
            except ValueError:
                raise ValidationError(
                    f"{path}:{line_no}: bad number {cell!r} in column {cid}") from None
        grid.append(cells)
    if not grid:
        raise ValidationError(f"{path} has no data rows")
    return tuple(alternative_ids), criterion_ids, grid


def read_decision_matrix(path, directions: dict,
                         policy: ImputationPolicy = ImputationPolicy.WORST_OBSERVED) -> DecisionMatrix:
    """Load a decision matrix, filling empty cells per the imputation policy."""
    alternative_ids, criterion_ids, grid = read_matrix_csv(path)
    missing = [c for c in criterion_ids if c not in directions]
    if missing:
        raise ValidationError(f"no direction for criteria: {', '.join(missing)}")
    x, imputed = impute_grid(grid, directions, policy, alternative_ids, criterion_ids)
    return DecisionMatrix(
        alternative_ids=alternative_ids,
        criterion_ids=criterion_ids,
        x=x,
        imputed=imputed,
    )


def read_weighted_matrix(path) -> WeightedMatrix:
    """Load an already-weighted matrix (no empty cells allowed)."""
    alternative_ids, criterion_ids, grid = read_matrix_csv(path)
    for i, row in enumerate(grid):
        for j, cell in enumerate(row):
            if cell is None:
                raise ValidationError(
                    f"{path}: empty cell ({alternative_ids[i]}, {criterion_ids[j]}) "
                    "in a weighted matrix"
                )
    return WeightedMatrix(
        alternative_ids=alternative_ids,
        criterion_ids=criterion_ids,
        v=np.array(grid, dtype=float),
    )


def decision_matrix_csv(D: DecisionMatrix) -> str:
    """Render a decision matrix as CSV text; imputed cells become empty fields."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("alternative",) + D.criterion_ids)
    for i, aid in enumerate(D.alternative_ids):
        row = [aid]
        for j in range(len(D.criterion_ids)):
            row.append("" if (i, j) in D.imputed else repr(float(D.x[i, j])))
        writer.writerow(row)
    return buf.getvalue()


def write_decision_matrix(D: DecisionMatrix, path):
    """Write a decision matrix; imputed cells become empty fields."""
    write_text(path, decision_matrix_csv(D))


def write_float_matrix(path, alternative_ids, criterion_ids, grid):
    """Write a plain float matrix CSV with repr() cells."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("alternative",) + tuple(criterion_ids))
            for aid, row in zip(alternative_ids, np.asarray(grid)):
                writer.writerow([aid] + [repr(float(v)) for v in row])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def load_statements(path) -> list:
    """Load statement years from statements.json or the CSV alternative.

    The CSV form has columns year, line_item, value with one row per item.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _statements_from_csv(path)
    doc = load_json(path)
    if "years" not in doc:
        raise IoError(f"{path} lacks a years list")
    return [statement_year_from_dict(entry) for entry in doc["years"]]


def _statements_from_csv(path) -> list:
    from .ratios import LINE_ITEM_GROUPS

    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            rows = list(reader)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    if not rows:
        raise IoError(f"{path} has no data rows")
    by_year = {}
    for line_no, row in enumerate(rows, start=2):
        try:
            year, item, value = row["year"], row["line_item"], row["value"]
        except KeyError:
            raise IoError(f"{path} needs columns year, line_item, value") from None
        group = LINE_ITEM_GROUPS.get(item)
        if group is None:
            raise IoError(f"{path}:{line_no}: unknown line item {item!r}")
        try:
            numeric = float(value)
        except (TypeError, ValueError):
            raise IoError(f"{path}:{line_no}: bad value {value!r}") from None
        by_year.setdefault(str(year), {"balance": {}, "income": {}, "cashflow": {}})
        by_year[str(year)][group][item] = numeric
    return [
        statement_year_from_dict({"year": year, **groups})
        for year, groups in by_year.items()
    ]
