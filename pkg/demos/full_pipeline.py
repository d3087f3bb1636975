"""Run the complete assessment pipeline on the bundled ten-year case.

Equivalent to `riskmcdm pipeline --config <case-config>`: loads the
hierarchy, weights, and weighted matrix, scores the years, and writes
the report bundle (JSON, CSV tables, SVG charts) into ./out.
"""

from riskmcdm import fixtures
from riskmcdm.pipeline import load_config, run_assessment
from riskmcdm.report import emit_report


def main():
    cfg = load_config(fixtures.path("case-config.json"))
    report = run_assessment(cfg)

    print(f"Goal: {report.goal_label}")
    print(f"Most risky year by composite score: rank 1 = {report.most_risky}")
    print()
    print("Top risk criteria by global weight:")
    for cid, w in report.top_criteria:
        print(f"  {cid:<5} {w:.4f}")
    print()

    written = emit_report(report, ("json", "csv", "svg"), "out")
    print("Artifacts:")
    for name in sorted(written):
        print(f"  {written[name]}")


if __name__ == "__main__":
    main()
