"""Rank the ten fiscal years of the bundled case by composite risk score.

Starts from the bundled weighted matrix (normalized ratios already scaled
by global weights), so this is the pure scoring-and-ranking slice.
"""

from riskmcdm import fixtures
from riskmcdm.io import read_weighted_matrix
from riskmcdm.saw import rank, score


def main():
    W = read_weighted_matrix(fixtures.path("case-weighted-matrix.csv"))
    table = rank(score(W), W.alternative_ids)

    print(f"{len(W.alternative_ids)} alternatives x "
          f"{len(W.criterion_ids)} criteria")
    print()
    print(f"{'year':<6} {'V':>10} {'A':>8} {'rank':>5}")
    for year, v, a, rk in zip(table.alternative_ids, table.V, table.A, table.rank):
        print(f"{year:<6} {v:>10.6f} {a:>8.4f} {rk:>5}")
    print()
    print(f"Best composite score:  {table.order()[0]}")
    print(f"Worst composite score: {table.order()[-1]}")
    print("A higher V means the year scored better across the risk "
          "criteria; rank 1 is the best year.")


if __name__ == "__main__":
    main()
