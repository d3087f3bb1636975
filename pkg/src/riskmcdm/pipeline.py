"""Assessment orchestration: questionnaires to weights to scored ranking.

A run enters at exactly one of three stages: raw statements (ratios are
computed), a decision matrix (normalization starts there), or an
already-weighted matrix (scoring starts there). Weights come either from
expert questionnaires (derived per expert, averaged, propagated to global
weights) or from a weights document. Every loaded file is digested into
the report so a result can be traced back to its exact inputs.

An expert whose judgments fail the CR < 0.10 gate produces a warning and
the run continues; interactive elicitation is where enforcement lives.
"""

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import ahp
from .errors import ConfigError, IncompleteJudgments, IoError, RiskMcdmError, ValidationError
from .hierarchy import Hierarchy, validate_hierarchy
from .io import (
    global_weights_from_doc,
    load_directions,
    load_hierarchy,
    load_questionnaire,
    load_statements,
    load_weights_doc,
    read_decision_matrix,
    read_weighted_matrix,
    sha256_of,
    weight_vector_from_mapping,
)
from .ratios import RATIOS_BY_ID, ImputationPolicy, build_decision_matrix
from .report import RiskReport, emit_report
from .saw import MAX_MIN, NORMALIZATION_SCHEMES, apply_weights, normalize, rank, score

log = logging.getLogger("riskmcdm.pipeline")

__all__ = ["AssessmentConfig", "run_assessment", "emit_report", "top_risk_criteria"]


@dataclass(frozen=True)
class AssessmentConfig:
    """Validated description of one assessment run."""

    hierarchy_path: str
    questionnaire_paths: tuple = ()
    statements_path: Optional[str] = None
    decision_matrix_path: Optional[str] = None
    weighted_matrix_path: Optional[str] = None
    weights_path: Optional[str] = None
    directions_path: Optional[str] = None
    normalization: str = MAX_MIN
    imputation: ImputationPolicy = ImputationPolicy.WORST_OBSERVED
    output_dir: str = "out"

    def __post_init__(self):
        entries = [
            p for p in (self.statements_path, self.decision_matrix_path,
                        self.weighted_matrix_path)
            if p is not None
        ]
        if len(entries) != 1:
            raise ConfigError(
                "exactly one entry point required: statements, decision matrix, "
                "or weighted matrix"
            )
        if self.normalization not in NORMALIZATION_SCHEMES:
            raise ConfigError(f"unknown normalization scheme: {self.normalization!r}")
        if self.questionnaire_paths and self.weights_path:
            raise ConfigError("give either questionnaires or a weights file, not both")
        if not self.questionnaire_paths and not self.weights_path:
            raise ConfigError("no weight source: give questionnaires or a weights file")
        if not self.hierarchy_path:
            raise ConfigError("a hierarchy file is required")


_CONFIG_KEYS = {
    "hierarchy", "questionnaires", "statements", "decision_matrix",
    "weighted_matrix", "weights", "directions", "normalization",
    "imputation", "output_dir",
}


def config_from_dict(doc: dict, base_dir=".") -> AssessmentConfig:
    """Build a config from its JSON form, resolving input paths.

    Input paths resolve relative to the config file's directory;
    output_dir resolves relative to the working directory.
    """
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    base = Path(base_dir)

    def resolve(name):
        value = doc.get(name)
        return None if value is None else str(base / value)

    imputation = doc.get("imputation", ImputationPolicy.WORST_OBSERVED.value)
    try:
        policy = ImputationPolicy(imputation)
    except ValueError:
        raise ConfigError(f"unknown imputation policy: {imputation!r}") from None
    return AssessmentConfig(
        hierarchy_path=resolve("hierarchy"),
        questionnaire_paths=tuple(str(base / q) for q in doc.get("questionnaires", [])),
        statements_path=resolve("statements"),
        decision_matrix_path=resolve("decision_matrix"),
        weighted_matrix_path=resolve("weighted_matrix"),
        weights_path=resolve("weights"),
        directions_path=resolve("directions"),
        normalization=doc.get("normalization", MAX_MIN),
        imputation=policy,
        output_dir=str(doc.get("output_dir", "out")),
    )


def load_config(path) -> AssessmentConfig:
    from .io import load_json

    return config_from_dict(load_json(path), base_dir=Path(path).parent)


def _wrap(exc: RiskMcdmError, message: str) -> RiskMcdmError:
    """Rewrap preserving the error family (subclasses may have custom
    constructors, so never re-instantiate the concrete type)."""
    if isinstance(exc, IoError):
        return IoError(message)
    if isinstance(exc, ValidationError):
        return ValidationError(message)
    return RiskMcdmError(message)


@contextmanager
def _stage(name: str):
    """Prefix any error escaping a pipeline stage with the stage name."""
    log.info("stage %s", name)
    try:
        yield
    except RiskMcdmError as exc:
        raise _wrap(exc, f"stage {name}: {exc}") from exc


def _trivial_consistency(n: int) -> ahp.ConsistencyReport:
    return ahp.ConsistencyReport(
        n=n, lambda_max=float(n), ci=0.0, ri=ahp.random_index(n), cr=0.0,
        column_sums=(1.0,) * n, verdict=ahp.ACCEPTABLE,
    )


def derive_expert_node_weights(h: Hierarchy, questionnaire) -> tuple:
    """Weight vector and consistency report per comparison node.

    Returns ({node_id: WeightVector}, {node_id: ConsistencyReport}).
    Single-item nodes need no judgments and are trivially consistent.
    """
    vectors, reports = {}, {}
    for node_id, items in h.comparison_nodes():
        n = len(items)
        if n == 1:
            vectors[node_id] = ahp.WeightVector(item_ids=tuple(items), w=(1.0,))
            reports[node_id] = _trivial_consistency(1)
            continue
        pairs = questionnaire.judgments.get(node_id)
        if pairs is None:
            raise IncompleteJudgments(
                [(i, j) for i in range(n) for j in range(i + 1, n)]
            )
        M = ahp.complete_reciprocal(pairs, n, items)
        vectors[node_id] = ahp.derive_weights(M)
        reports[node_id] = ahp.consistency(M)
    return vectors, reports


def _consistency_entry(expert_name: str, node_id: str, rep: ahp.ConsistencyReport) -> dict:
    return {
        "expert": expert_name,
        "node_id": node_id,
        "n": rep.n,
        "lambda_max": rep.lambda_max,
        "ci": rep.ci,
        "ri": rep.ri,
        "cr": rep.cr,
        "verdict": rep.verdict,
    }


def _weights_from_questionnaires(h, questionnaire_paths):
    questionnaires = [load_questionnaire(p) for p in questionnaire_paths]
    per_node_vectors = {}
    consistency, warnings, per_expert = [], [], {}
    for path, q in zip(questionnaire_paths, questionnaires):
        name = q.expert.name or Path(path).stem
        try:
            vectors, reports = derive_expert_node_weights(h, q)
        except RiskMcdmError as exc:
            raise _wrap(exc, f"questionnaire {path}: {exc}") from exc
        per_expert[name] = {node: vec.as_dict() for node, vec in vectors.items()}
        for node_id, rep in reports.items():
            consistency.append(_consistency_entry(name, node_id, rep))
            if not rep.acceptable:
                warnings.append(
                    f"expert {name} node {node_id}: CR {rep.cr:.6g} exceeds 0.10"
                )
            per_node_vectors.setdefault(node_id, []).append(vectors[node_id])
    averaged = {
        node_id: ahp.aggregate_experts(vectors)
        for node_id, vectors in per_node_vectors.items()
    }
    weights_global = ahp.global_weights(h, averaged)
    weights_main = averaged["goal"].as_dict()
    weights_local = {}
    for main in h.main_criteria:
        if main.children:
            weights_local.update(averaged[main.id].as_dict())
        else:
            weights_local[main.id] = 1.0
    return weights_main, weights_local, weights_global, consistency, warnings, per_expert


def _weights_from_doc(cfg, h):
    doc = load_weights_doc(cfg.weights_path)
    averaged = doc["averaged"]
    main_doc = averaged.get("main", {})
    local_doc = averaged.get("local", {})
    main_ids = [m.id for m in h.main_criteria]
    if set(main_doc) != set(main_ids):
        raise ValidationError("weights file main criteria do not match the hierarchy")
    weights_main = weight_vector_from_mapping(
        {m: main_doc[m] for m in main_ids}).as_dict()
    weights_local = {}
    for main in h.main_criteria:
        if not main.children:
            weights_local[main.id] = 1.0
            continue
        child_ids = [c.id for c in main.children]
        missing = [c for c in child_ids if c not in local_doc]
        if missing:
            raise ValidationError(f"weights file lacks local weights: {', '.join(missing)}")
        weights_local.update(
            weight_vector_from_mapping({c: local_doc[c] for c in child_ids}).as_dict()
        )
    leaf_ids = h.leaf_ids()
    global_doc = averaged["global"]
    missing = [c for c in leaf_ids if c not in global_doc]
    if missing:
        raise ValidationError(f"weights file lacks global weights: {', '.join(missing)}")
    weights_global = weight_vector_from_mapping(
        {c: global_doc[c] for c in leaf_ids}).as_dict()
    consistency = list(doc.get("consistency", []))
    warnings = [
        f"expert {e.get('expert')} node {e.get('node_id')}: CR {e.get('cr')} exceeds 0.10"
        for e in consistency
        if e.get("verdict") == ahp.NEEDS_REVISION
    ]
    return weights_main, weights_local, weights_global, consistency, warnings, doc.get(
        "per_expert", {})


def build_weights_doc(h: Hierarchy, questionnaire_paths) -> dict:
    """Derive a weights document (the weights.json shape) from questionnaires."""
    (weights_main, weights_local, weights_global,
     consistency, warnings, per_expert) = _weights_from_questionnaires(
        h, questionnaire_paths)
    doc = {
        "per_expert": per_expert,
        "averaged": {
            "main": weights_main,
            "local": weights_local,
            "global": {leaf: weights_global[leaf] for leaf in h.leaf_ids()},
        },
        "consistency": consistency,
    }
    if warnings:
        doc["warnings"] = warnings
    return doc


def _resolve_directions(cfg, h):
    if cfg.directions_path:
        return load_directions(cfg.directions_path)
    directions = h.directions()
    missing = [leaf.id for leaf in h.leaves() if leaf.id not in directions]
    if missing:
        raise ValidationError(
            f"no direction for criteria: {', '.join(missing)} (give a directions file)"
        )
    return directions


def _reorder_matrix(mat_cls, alternative_ids, criterion_ids, grid, h, imputed=frozenset()):
    """Align a loaded matrix with the hierarchy's leaf and alternative order."""
    import numpy as np

    leaf_ids = h.leaf_ids()
    if set(criterion_ids) != set(leaf_ids):
        missing = sorted(set(leaf_ids) - set(criterion_ids))
        extra = sorted(set(criterion_ids) - set(leaf_ids))
        raise ValidationError(
            f"matrix columns do not match hierarchy leaves"
            f"{'; missing: ' + ', '.join(missing) if missing else ''}"
            f"{'; extra: ' + ', '.join(extra) if extra else ''}"
        )
    if set(alternative_ids) != set(h.alternatives):
        raise ValidationError("matrix rows do not match the hierarchy's alternatives")
    col = {c: k for k, c in enumerate(criterion_ids)}
    row = {a: k for k, a in enumerate(alternative_ids)}
    grid = np.asarray(grid, dtype=float)
    x = grid[[row[a] for a in h.alternatives]][:, [col[c] for c in leaf_ids]]
    remapped = frozenset(
        (list(h.alternatives).index(alternative_ids[i]), leaf_ids.index(criterion_ids[j]))
        for i, j in imputed
    )
    return mat_cls, tuple(h.alternatives), tuple(leaf_ids), x, remapped


def run_assessment(cfg: AssessmentConfig) -> RiskReport:
    """Execute the configured run and return the assembled report."""
    inputs = {}

    def digest(role, path):
        if path:
            try:
                inputs[role] = {"path": str(path), "sha256": sha256_of(path)}
            except OSError as exc:
                raise IoError(f"cannot read {path}: {exc}") from None

    with _stage("hierarchy"):
        h = load_hierarchy(cfg.hierarchy_path)
        violations = validate_hierarchy(h)
        if violations:
            raise ValidationError("invalid hierarchy: " + "; ".join(violations))
        digest("hierarchy", cfg.hierarchy_path)

    with _stage("weights"):
        if cfg.questionnaire_paths:
            (weights_main, weights_local, weights_global,
             consistency, warnings, per_expert) = _weights_from_questionnaires(
                h, cfg.questionnaire_paths)
            for k, path in enumerate(cfg.questionnaire_paths):
                digest(f"questionnaire:{k}", path)
        else:
            (weights_main, weights_local, weights_global,
             consistency, warnings, per_expert) = _weights_from_doc(cfg, h)
            digest("weights", cfg.weights_path)

    decision = normalized = None
    applied_normalization = None
    applied_imputation = None
    with _stage("matrix"):
        if cfg.statements_path:
            years = load_statements(cfg.statements_path)
            digest("statements", cfg.statements_path)
            by_year = {y.year: y for y in years}
            if set(by_year) != set(h.alternatives):
                raise ValidationError(
                    "statement years do not match the hierarchy's alternatives"
                )
            defs = []
            for leaf in h.leaves():
                ref = leaf.ratio_formula_ref or leaf.id
                if ref not in RATIOS_BY_ID:
                    raise ValidationError(
                        f"leaf {leaf.id} has no ratio definition (ref {ref!r})"
                    )
                defs.append(RATIOS_BY_ID[ref])
            ordered_years = [by_year[a] for a in h.alternatives]
            decision = build_decision_matrix(ordered_years, defs, cfg.imputation)
            # matrix columns carry leaf ids, not formula refs
            decision = type(decision)(
                alternative_ids=decision.alternative_ids,
                criterion_ids=tuple(h.leaf_ids()),
                x=decision.x,
                imputed=decision.imputed,
            )
            applied_imputation = cfg.imputation.value
        elif cfg.decision_matrix_path:
            directions = _resolve_directions(cfg, h)
            raw = read_decision_matrix(cfg.decision_matrix_path, directions, cfg.imputation)
            digest("decision_matrix", cfg.decision_matrix_path)
            cls, alts, cols, x, imputed = _reorder_matrix(
                type(raw), raw.alternative_ids, raw.criterion_ids, raw.x, h, raw.imputed)
            decision = cls(alternative_ids=alts, criterion_ids=cols, x=x, imputed=imputed)
            applied_imputation = cfg.imputation.value
        else:
            raw = read_weighted_matrix(cfg.weighted_matrix_path)
            digest("weighted_matrix", cfg.weighted_matrix_path)
            cls, alts, cols, v, _ = _reorder_matrix(
                type(raw), raw.alternative_ids, raw.criterion_ids, raw.v, h)
            weighted = cls(alternative_ids=alts, criterion_ids=cols, v=v)
        if cfg.directions_path:
            digest("directions", cfg.directions_path)

    if decision is not None:
        with _stage("normalize"):
            directions = _resolve_directions(cfg, h)
            normalized = normalize(decision, directions, cfg.normalization)
            applied_normalization = cfg.normalization
        with _stage("weigh"):
            weighted = apply_weights(normalized, weights_global)

    with _stage("score"):
        table = rank(score(weighted), weighted.alternative_ids)

    with _stage("report"):
        ordered_global = {leaf: weights_global[leaf] for leaf in h.leaf_ids()}
        k = min(4, len(ordered_global))
        top = top_risk_criteria(ordered_global, k)
        local_parent = {}
        for main in h.main_criteria:
            if main.children:
                for leaf in main.children:
                    local_parent[leaf.id] = main.id
            else:
                local_parent[main.id] = main.id
        flags = [
            {
                "alternative": weighted.alternative_ids[i],
                "criterion": weighted.criterion_ids[j],
            }
            for i, j in sorted(weighted.imputed)
        ]
        return RiskReport(
            goal_label=h.goal_label,
            alternatives=tuple(h.alternatives),
            weights_main=weights_main,
            weights_local=weights_local,
            weights_global=ordered_global,
            consistency=consistency,
            warnings=warnings,
            scores=table,
            top_criteria=top,
            imputation_flags=flags,
            normalization=applied_normalization,
            imputation=applied_imputation,
            inputs=inputs,
            weighted=weighted,
            normalized=normalized,
            decision=decision,
            local_parent=local_parent,
        )


def top_risk_criteria(weights: dict, k: int) -> list:
    """The k criteria with the largest weights, as (id, weight) pairs.

    Ties keep the mapping's own order, so pass weights in canonical
    symbol order.
    """
    if k > len(weights):
        raise ValidationError(f"k={k} exceeds the {len(weights)} available criteria")
    order = {cid: idx for idx, cid in enumerate(weights)}
    ranked = sorted(weights.items(), key=lambda kv: (-kv[1], order[kv[0]]))
    return ranked[:k]
