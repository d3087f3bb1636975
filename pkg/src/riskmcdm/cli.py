"""Command-line front end: ahp, ratios, saw, pipeline, and serve.

Exit codes: 0 success, 1 validation problem (bad data, bad flags), 2 I/O
problem. Human diagnostics go to stderr; machine output goes to files or
stdout. The RISKMCDM_LOG environment variable (error, warn, info, debug)
controls logging verbosity.
"""

import argparse
import dataclasses
import logging
import os
import sys

from . import __version__
from .errors import IoError, RiskMcdmError, ValidationError
from .hierarchy import validate_hierarchy
from .io import (
    canonical_json,
    canonical_number,
    decision_matrix_csv,
    load_directions,
    load_hierarchy,
    load_json,
    load_statements,
    read_decision_matrix,
    read_matrix_csv,
    write_text,
)
from .pipeline import AssessmentConfig, build_weights_doc, load_config, run_assessment
from .ratios import ImputationPolicy, build_decision_matrix, direction_of
from .report import FORMATS, emit_report, scores_csv
from .saw import MAX_MIN, NORMALIZATION_SCHEMES, apply_weights, normalize, rank, score

log = logging.getLogger("riskmcdm.cli")

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


class _UsageError(ValidationError):
    """Bad command line; reported with usage on exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _imputation(value: str) -> ImputationPolicy:
    try:
        return ImputationPolicy(value)
    except ValueError:
        raise _UsageError(
            f"unknown imputation policy {value!r} "
            f"(choose from {', '.join(p.value for p in ImputationPolicy)})"
        ) from None


def build_parser() -> _Parser:
    parser = _Parser(prog="riskmcdm", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_ahp = sub.add_parser(
        "ahp", help="derive weights and consistency from questionnaires")
    p_ahp.add_argument("--hierarchy", required=True, help="hierarchy JSON file")
    p_ahp.add_argument("--questionnaire", action="append", required=True,
                       metavar="FILE", help="questionnaire JSON (repeat per expert)")
    p_ahp.add_argument("--out", help="weights JSON output (default stdout)")

    p_ratios = sub.add_parser(
        "ratios", help="compute the ratio decision matrix from statements")
    p_ratios.add_argument("--statements", required=True, help="statements JSON or CSV")
    p_ratios.add_argument("--hierarchy",
                          help="restrict columns to the hierarchy's leaf criteria")
    p_ratios.add_argument("--imputation", default=ImputationPolicy.WORST_OBSERVED.value,
                          help="worst-observed, zero, or fail")
    p_ratios.add_argument("--out", help="decision matrix CSV output (default stdout)")

    p_saw = sub.add_parser(
        "saw", help="normalize, weigh, score, and rank a decision matrix")
    p_saw.add_argument("--matrix", required=True, help="decision matrix CSV")
    p_saw.add_argument("--weights", required=True,
                       help="weights JSON (weights document or flat id-to-weight map)")
    p_saw.add_argument("--directions",
                       help="directions JSON (default: the built-in ratio catalogue)")
    p_saw.add_argument("--normalization", default=MAX_MIN,
                       choices=NORMALIZATION_SCHEMES)
    p_saw.add_argument("--imputation", default=ImputationPolicy.WORST_OBSERVED.value)
    p_saw.add_argument("--out", help="score table CSV output (default stdout)")

    p_pipe = sub.add_parser("pipeline", help="run a full assessment")
    p_pipe.add_argument("--config", help="assessment config JSON")
    p_pipe.add_argument("--hierarchy")
    p_pipe.add_argument("--questionnaire", action="append", metavar="FILE")
    p_pipe.add_argument("--statements")
    p_pipe.add_argument("--matrix", help="decision matrix CSV entry point")
    p_pipe.add_argument("--weighted-matrix", help="weighted matrix CSV entry point")
    p_pipe.add_argument("--weights")
    p_pipe.add_argument("--directions")
    p_pipe.add_argument("--normalization")
    p_pipe.add_argument("--imputation")
    p_pipe.add_argument("--out", help="output directory (overrides the config)")
    p_pipe.add_argument("--formats", default=",".join(FORMATS),
                        help="comma-separated subset of json,csv,svg")

    p_serve = sub.add_parser("serve", help="start the judgment elicitation service")
    p_serve.add_argument("--hierarchy",
                         help="hierarchy JSON to serve (default: the bundled model)")
    p_serve.add_argument("--out", default="sessions",
                         help="directory for session event logs")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--bind", default="127.0.0.1")
    return parser


def _emit(text: str, out):
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _cmd_ahp(args) -> int:
    h = load_hierarchy(args.hierarchy)
    violations = validate_hierarchy(h)
    if violations:
        raise ValidationError("invalid hierarchy: " + "; ".join(violations))
    doc = build_weights_doc(h, tuple(args.questionnaire))
    for entry in doc["consistency"]:
        print(
            f"{entry['expert']} {entry['node_id']}: "
            f"CR={entry['cr']:.6g} {entry['verdict']}",
            file=sys.stderr,
        )
    _emit(canonical_json(doc), args.out)
    return 0


def _cmd_ratios(args) -> int:
    years = load_statements(args.statements)
    defs = None
    if args.hierarchy:
        from .ratios import RATIOS_BY_ID

        h = load_hierarchy(args.hierarchy)
        defs = []
        for leaf in h.leaves():
            ref = leaf.ratio_formula_ref or leaf.id
            if ref not in RATIOS_BY_ID:
                raise ValidationError(f"leaf {leaf.id} has no ratio definition")
            defs.append(RATIOS_BY_ID[ref])
    D = build_decision_matrix(years, defs, _imputation(args.imputation))
    _emit(decision_matrix_csv(D), args.out)
    flagged = len(D.imputed)
    if flagged:
        print(f"{flagged} undefined cell(s) filled by {args.imputation}", file=sys.stderr)
    return 0


def _saw_weights(path: str) -> dict:
    doc = load_json(path)
    if isinstance(doc, dict) and "averaged" in doc:
        weights = {str(k): float(v) for k, v in doc["averaged"].get("global", {}).items()}
        if not weights:
            raise ValidationError(f"{path} lacks averaged.global weights")
        return weights
    if isinstance(doc, dict):
        return {str(k): float(v) for k, v in doc.items()}
    raise ValidationError(f"{path} is not a weights mapping")


def _cmd_saw(args) -> int:
    weights = _saw_weights(args.weights)
    directions = load_directions(args.directions) if args.directions else {}
    _, criterion_ids, _ = read_matrix_csv(args.matrix)
    for cid in criterion_ids:
        if cid not in directions:
            directions[cid] = direction_of(cid)
    D = read_decision_matrix(args.matrix, directions, _imputation(args.imputation))
    table = rank(
        score(apply_weights(normalize(D, directions, args.normalization), weights)),
        D.alternative_ids,
    )
    lines = ["alternative,score,share,rank"]
    for aid, v, a, rk in zip(table.alternative_ids, table.V, table.A, table.rank):
        lines.append(f"{aid},{canonical_number(v):.9g},{canonical_number(a):.9g},{rk}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_pipeline(args) -> int:
    cfg = load_config(args.config) if args.config else None
    overrides = {}
    if args.hierarchy:
        overrides["hierarchy_path"] = args.hierarchy
    if args.questionnaire:
        overrides["questionnaire_paths"] = tuple(args.questionnaire)
    if args.statements:
        overrides["statements_path"] = args.statements
    if args.matrix:
        overrides["decision_matrix_path"] = args.matrix
    if args.weighted_matrix:
        overrides["weighted_matrix_path"] = args.weighted_matrix
    if args.weights:
        overrides["weights_path"] = args.weights
    if args.directions:
        overrides["directions_path"] = args.directions
    if args.normalization:
        overrides["normalization"] = args.normalization
    if args.imputation:
        overrides["imputation"] = _imputation(args.imputation)
    if args.out:
        overrides["output_dir"] = args.out
    if cfg is None:
        cfg = AssessmentConfig(
            hierarchy_path=overrides.pop("hierarchy_path", None),
            **overrides,
        )
    elif overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    formats = [f for f in args.formats.split(",") if f]
    report = run_assessment(cfg)
    written = emit_report(report, formats, cfg.output_dir)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    for name in sorted(written):
        print(f"wrote {written[name]}", file=sys.stderr)
    if not written:
        sys.stdout.write(scores_csv(report))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from . import fixtures
    from .service import create_app

    hierarchy_path = args.hierarchy or fixtures.path("case-hierarchy.json")
    app = create_app(hierarchy_path=hierarchy_path, sessions_dir=args.out)
    uvicorn.run(app, host=args.bind, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "ahp": _cmd_ahp,
    "ratios": _cmd_ratios,
    "saw": _cmd_saw,
    "pipeline": _cmd_pipeline,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    level = os.environ.get("RISKMCDM_LOG", "warn").lower()
    logging.basicConfig(
        level=_LOG_LEVELS.get(level, logging.WARNING),
        stream=sys.stderr,
        format="%(name)s %(levelname)s %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help(sys.stderr)
            return 1
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except IoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RiskMcdmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
