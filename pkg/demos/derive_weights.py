"""Derive criterion weights from the five bundled expert questionnaires.

Walks the full weight-derivation path: per-expert pairwise matrices,
consistency screening, arithmetic-mean aggregation, and propagation of
local weights into global ones.
"""

from riskmcdm import fixtures
from riskmcdm.io import load_hierarchy
from riskmcdm.pipeline import build_weights_doc


def main():
    h = load_hierarchy(fixtures.path("case-hierarchy.json"))
    questionnaires = [
        fixtures.path(f"questionnaires/expert{k}.json") for k in range(1, 6)]
    doc = build_weights_doc(h, questionnaires)

    print(f"Goal: {h.goal_label}")
    print(f"Experts: {len(doc['per_expert'])}, "
          f"comparison nodes per expert: {len(list(h.comparison_nodes()))}")
    print()

    print("Consistency screening (CR < 0.10 required):")
    for entry in doc["consistency"]:
        print(f"  {entry['expert']:<9} {entry['node_id']:<5} "
              f"n={entry['n']:<3} CR={entry['cr']:.4f}  {entry['verdict']}")
    print()

    avg = doc["averaged"]
    print("Averaged main-criteria weights:")
    for cid, w in avg["main"].items():
        print(f"  {cid:<4} {w:.5f}")
    print()

    print("Global leaf weights (local x parent), heaviest first:")
    ranked = sorted(avg["global"].items(), key=lambda kv: -kv[1])
    for cid, w in ranked[:8]:
        print(f"  {cid:<6} {w:.5f}")
    print(f"  ... {len(ranked) - 8} more")
    total = sum(avg["global"].values())
    print(f"  sum = {total:.12f}")


if __name__ == "__main__":
    main()
