"""Compute a ratio decision matrix from raw financial statements.

Uses the small synthetic three-year model: one cell (2022 CFR8) has a
zero denominator, so the imputation policy visibly kicks in.
"""

from riskmcdm import fixtures
from riskmcdm.io import load_hierarchy, load_statements
from riskmcdm.ratios import RATIOS_BY_ID, ImputationPolicy, build_decision_matrix


def main():
    years = load_statements(fixtures.path("synthetic/statements.json"))
    h = load_hierarchy(fixtures.path("synthetic/hierarchy.json"))
    defs = [RATIOS_BY_ID[leaf.ratio_formula_ref or leaf.id] for leaf in h.leaves()]

    print("Ratio definitions in play:")
    for rd in defs:
        print(f"  {rd.id:<5} {rd.numerator} / {rd.denominator} "
              f"({rd.direction.value} is better)")
    print()

    D = build_decision_matrix(years, defs, ImputationPolicy.WORST_OBSERVED)
    header = ["year"] + list(D.criterion_ids)
    print("  ".join(f"{c:>8}" for c in header))
    for i, year in enumerate(D.alternative_ids):
        cells = []
        for j in range(len(D.criterion_ids)):
            mark = "*" if (i, j) in D.imputed else " "
            cells.append(f"{D.x[i, j]:>7.4f}{mark}")
        print(f"{year:>8}  " + "  ".join(cells))
    print()
    print("* imputed: the cell was undefined (zero denominator) and was")
    print("  filled with the worst observed value in its column.")
    for i, j in sorted(D.imputed):
        print(f"  -> {D.alternative_ids[i]} {D.criterion_ids[j]}")


if __name__ == "__main__":
    main()
