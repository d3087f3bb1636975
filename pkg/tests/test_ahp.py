import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riskmcdm.ahp import (
    ACCEPTABLE,
    CR_THRESHOLD,
    NEEDS_REVISION,
    RANDOM_INDEX,
    PairwiseMatrix,
    WeightVector,
    aggregate_experts,
    complete_reciprocal,
    consistency,
    derive_weights,
    global_weights,
    lambda_max,
    principal_eigenvector,
    random_index,
    triad_discrepancy,
    worst_triad,
)
from riskmcdm.errors import (
    DimensionError,
    IncompleteJudgments,
    UnsupportedOrder,
    ValidationError,
)
from riskmcdm.io import load_hierarchy

from conftest import consistent_matrix

saaty_value = st.one_of(
    st.integers(min_value=1, max_value=9).map(Fraction),
    st.integers(min_value=2, max_value=9).map(lambda k: Fraction(1, k)),
)


@st.composite
def random_upper(draw, min_n=3, max_n=9):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    upper = {
        (i, j): draw(saaty_value)
        for i in range(n) for j in range(i + 1, n)
    }
    return n, upper


class TestMatrixConstruction:
    def test_complete_reciprocal_fills_exact_reciprocals(self):
        M = complete_reciprocal({(0, 1): 2, (0, 2): Fraction(1, 2), (1, 2): Fraction(1, 4)}, 3)
        assert M.a[1, 0] == 0.5
        assert M.a[2, 0] == 2.0
        assert M.a[2, 1] == 4.0
        assert np.all(np.diag(M.a) == 1.0)

    def test_missing_pair_lists_the_gap(self):
        with pytest.raises(IncompleteJudgments) as err:
            complete_reciprocal({(0, 1): 2}, 3)
        assert (0, 2) in err.value.missing and (1, 2) in err.value.missing

    def test_bad_pair_indices_rejected(self):
        with pytest.raises(ValidationError):
            complete_reciprocal({(1, 0): 2, (0, 2): 1, (1, 2): 1}, 3)
        with pytest.raises(ValidationError):
            complete_reciprocal({(0, 3): 2}, 3)

    def test_nonreciprocal_matrix_rejected(self):
        a = np.array([[1.0, 2.0], [0.4, 1.0]])
        with pytest.raises(ValidationError):
            PairwiseMatrix(item_ids=("a", "b"), a=a)

    @given(random_upper())
    def test_reciprocity_exact(self, n_upper):
        n, upper = n_upper
        M = complete_reciprocal(upper, n)
        prod = M.a * M.a.T
        assert np.all(np.abs(prod - 1.0) <= 1e-12)


class TestWeights:
    def test_two_item_weights(self):
        M = complete_reciprocal({(0, 1): 3}, 2)
        w = derive_weights(M)
        assert w.w == pytest.approx((0.75, 0.25), abs=1e-15)

    def test_frozen_three_item_estimate(self):
        # goal matrix:1 vs 2 = 2, 1 vs 3 = 1/2, 2 vs 3 = 1/4
        M = complete_reciprocal(
            {(0, 1): 2, (0, 2): Fraction(1, 2), (1, 2): Fraction(1, 4)}, 3)
        w = derive_weights(M)
        assert w.w == pytest.approx((2 / 7, 1 / 7, 4 / 7), abs=1e-12)
        rep = consistency(M)
        assert rep.lambda_max == pytest.approx(3.0, abs=1e-12)
        assert rep.cr == pytest.approx(0.0, abs=1e-15)
        assert rep.verdict == ACCEPTABLE

    def test_frozen_inconsistent_estimate(self):
        # goal matrix: 1 vs 2 = 1, 1 vs 3 = 1/3, 2 vs 3 = 1/2
        M = complete_reciprocal(
            {(0, 1): 1, (0, 2): Fraction(1, 3), (1, 2): Fraction(1, 2)}, 3)
        w = derive_weights(M)
        assert w.w == pytest.approx(
            (0.210606060606, 0.240909090909, 0.548484848485), abs=1e-12)
        rep = consistency(M)
        assert rep.lambda_max == pytest.approx(3.022222222222, abs=1e-12)
        assert rep.cr == pytest.approx(0.019157088123, abs=1e-12)
        assert rep.verdict == ACCEPTABLE

    def test_lambda_uses_original_column_sums(self):
        M = complete_reciprocal({(0, 1): 1, (0, 2): 3, (1, 2): 9}, 3)
        w = derive_weights(M)
        lam = lambda_max(M, w)
        s = M.a.sum(axis=0)
        assert lam == pytest.approx(float(np.dot(w.w, s)), abs=0)
        assert lam == pytest.approx(3.183792815371763, abs=1e-12)
        rep = consistency(M)
        assert rep.cr == pytest.approx(0.15844208221703684, abs=1e-12)
        assert rep.verdict == NEEDS_REVISION

    def test_weight_vector_requires_unit_sum(self):
        with pytest.raises(ValidationError):
            WeightVector(item_ids=("a", "b"), w=(0.6, 0.6))

    @given(random_upper())
    def test_weights_positive_and_sum_to_one(self, n_upper):
        n, upper = n_upper
        w = derive_weights(complete_reciprocal(upper, n))
        assert all(x > 0 for x in w.w)
        assert math.fsum(w.w) == pytest.approx(1.0, abs=1e-12)

    @given(random_upper(min_n=3, max_n=7), st.randoms(use_true_random=False))
    def test_permutation_equivariance(self, n_upper, rng):
        n, upper = n_upper
        M = complete_reciprocal(upper, n)
        perm = list(range(n))
        rng.shuffle(perm)
        a = M.a[np.ix_(perm, perm)]
        Mp = PairwiseMatrix(item_ids=tuple(str(k) for k in perm), a=a)
        w = derive_weights(M).w
        wp = derive_weights(Mp).w
        assert wp == pytest.approx(tuple(w[p] for p in perm), abs=1e-12)


class TestConsistency:
    def test_random_index_table(self):
        expected = (0.00, 0.00, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41,
                    1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.59)
        assert RANDOM_INDEX == expected
        for n in range(1, 16):
            assert random_index(n) == expected[n - 1]

    def test_random_index_rejects_unsupported(self):
        for bad in (0, 16, -3):
            with pytest.raises(UnsupportedOrder):
                random_index(bad)

    def test_orders_one_and_two_always_consistent(self):
        M = complete_reciprocal({(0, 1): 9}, 2)
        rep = consistency(M)
        assert rep.cr == 0.0 and rep.verdict == ACCEPTABLE

    def test_consistent_matrices_have_lambda_n(self):
        for n in range(2, 10):
            w = np.linspace(1, 2, n)
            M = PairwiseMatrix(
                item_ids=tuple(str(k) for k in range(n)), a=consistent_matrix(w))
            rep = consistency(M)
            assert rep.lambda_max == pytest.approx(n, abs=1e-9)
            assert rep.ci == pytest.approx(0.0, abs=1e-9)
            assert rep.cr == pytest.approx(0.0, abs=1e-9)

    @given(random_upper())
    def test_lambda_at_least_n_and_verdict_matches_threshold(self, n_upper):
        n, upper = n_upper
        rep = consistency(complete_reciprocal(upper, n))
        assert rep.lambda_max >= n - 1e-9
        assert rep.ci >= -1e-12
        assert (rep.verdict == ACCEPTABLE) == (rep.cr < CR_THRESHOLD)

    def test_principal_eigenvector_agrees_on_consistent_matrix(self):
        w_true = (0.5, 0.3, 0.2)
        M = PairwiseMatrix(item_ids=("a", "b", "c"), a=consistent_matrix(w_true))
        w, lam = principal_eigenvector(M)
        assert w.w == pytest.approx(w_true, abs=1e-10)
        assert lam == pytest.approx(3.0, abs=1e-10)

    def test_principal_eigenvector_near_estimate_when_consistentish(self):
        M = complete_reciprocal(
            {(0, 1): 1, (0, 2): Fraction(1, 3), (1, 2): Fraction(1, 2)}, 3)
        w_est = derive_weights(M)
        w_eig, lam = principal_eigenvector(M)
        # order-3 closed form: 1 + t^(1/3) + t^(-1/3), t = a01*a12/a02
        t = 1.5
        assert lam == pytest.approx(1 + t ** (1 / 3) + t ** (-1 / 3), abs=1e-8)
        assert max(abs(a - b) for a, b in zip(w_est.w, w_eig.w)) < 0.05


class TestAggregation:
    def test_mean_of_experts(self):
        a = WeightVector(item_ids=("x", "y"), w=(0.75, 0.25))
        b = WeightVector(item_ids=("x", "y"), w=(0.5, 0.5))
        agg = aggregate_experts([a, b])
        assert agg.w == pytest.approx((0.625, 0.375), abs=1e-15)

    def test_item_mismatch_rejected(self):
        a = WeightVector(item_ids=("x", "y"), w=(0.75, 0.25))
        b = WeightVector(item_ids=("y", "x"), w=(0.5, 0.5))
        with pytest.raises(DimensionError):
            aggregate_experts([a, b])

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            aggregate_experts([])

    @given(st.lists(
        st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=3, max_size=3),
        min_size=1, max_size=5))
    def test_aggregate_sums_to_one(self, raw):
        vectors = []
        for row in raw:
            total = sum(row)
            vectors.append(WeightVector(
                item_ids=("a", "b", "c"), w=tuple(x / total for x in row)))
        assert math.fsum(aggregate_experts(vectors).w) == pytest.approx(1.0, abs=1e-12)


class TestGlobalWeights:
    def test_two_level_product(self, synthetic_dir):
        h = load_hierarchy(f"{synthetic_dir}/hierarchy.json")
        local = {
            "goal": WeightVector(item_ids=("CSR", "LR", "CFR"), w=(0.2, 0.3, 0.5)),
            "CSR": WeightVector(item_ids=("CSR1", "CSR6"), w=(0.75, 0.25)),
            "LR": WeightVector(item_ids=("LR1",), w=(1.0,)),
            "CFR": WeightVector(item_ids=("CFR5", "CFR8"), w=(0.4, 0.6)),
        }
        g = global_weights(h, local)
        assert g["CSR1"] == pytest.approx(0.15, abs=1e-15)
        assert g["CSR6"] == pytest.approx(0.05, abs=1e-15)
        assert g["LR1"] == pytest.approx(0.3, abs=1e-15)
        assert g["CFR5"] == pytest.approx(0.2, abs=1e-15)
        assert g["CFR8"] == pytest.approx(0.3, abs=1e-15)
        assert math.fsum(g.values()) == pytest.approx(1.0, abs=1e-12)

    def test_missing_node_vector_rejected(self, synthetic_dir):
        h = load_hierarchy(f"{synthetic_dir}/hierarchy.json")
        with pytest.raises(ValidationError):
            global_weights(h, {})


class TestTriads:
    def test_consistent_triples_have_zero_discrepancy(self):
        M = PairwiseMatrix(
            item_ids=("a", "b", "c"), a=consistent_matrix((0.5, 0.3, 0.2)))
        assert triad_discrepancy(M, 0, 1, 2) == pytest.approx(0.0, abs=1e-12)
        assert worst_triad(M)[3] == pytest.approx(0.0, abs=1e-12)

    def test_cyclic_triple_frozen_value(self):
        M = complete_reciprocal(
            {(0, 1): 3, (0, 2): Fraction(1, 3), (1, 2): 3}, 3)
        i, j, k, d = worst_triad(M)
        assert (i, j, k) == (0, 1, 2)
        assert d == pytest.approx(3.295836866004329, abs=1e-12)
        rep = consistency(M)
        assert rep.cr == pytest.approx(1.1494252873563218, abs=1e-12)

    def test_worst_triad_found_by_brute_force(self):
        upper = {(0, 1): 2, (0, 2): 4, (0, 3): 1, (1, 2): 2, (1, 3): 9, (2, 3): 1}
        M = complete_reciprocal(upper, 4)
        best = worst_triad(M)
        from itertools import combinations

        expected = max(
            ((i, j, k, triad_discrepancy(M, i, j, k))
             for i, j, k in combinations(range(4), 3)),
            key=lambda t: t[3],
        )
        assert best == expected

    def test_small_orders_have_no_triads(self):
        M = complete_reciprocal({(0, 1): 5}, 2)
        assert worst_triad(M) is None

    @given(random_upper(min_n=3, max_n=6))
    def test_zero_worst_triad_iff_lambda_is_n(self, n_upper):
        n, upper = n_upper
        M = complete_reciprocal(upper, n)
        rep = consistency(M)
        _, _, _, d = worst_triad(M)
        assert (d < 1e-9) == (abs(rep.lambda_max - n) < 1e-9)
