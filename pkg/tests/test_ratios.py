import math

import pytest

from riskmcdm.errors import (
    ColumnUnavailable,
    MissingLineItem,
    UnknownCriterion,
    ValidationError,
)
from riskmcdm.hierarchy import Direction
from riskmcdm.ratios import (
    RATIO_DEFINITIONS,
    RATIO_IDS,
    RATIOS_BY_ID,
    UNDEFINED,
    ImputationPolicy,
    StatementYear,
    build_decision_matrix,
    compute_ratio,
    direction_of,
    statement_year_from_dict,
)

BALANCE = {
    "total_debt": 400.0,
    "short_term_debt": 150.0,
    "long_term_debt": 250.0,
    "equity": 600.0,
    "retained_earnings": 120.0,
    "total_assets": 1000.0,
    "net_fixed_assets": 500.0,
    "fixed_assets": 550.0,
    "invested_funds": 700.0,
    "current_assets": 450.0,
    "inventory": 110.0,
    "cash_and_equivalents": 90.0,
    "current_liabilities": 300.0,
}
INCOME = {
    "sales": 2000.0,
    "gross_profit": 800.0,
    "net_profit": 260.0,
    "net_profit_before_interest": 300.0,
    "ebit": 330.0,
    "interest_expense": 40.0,
    "net_profit_after_interest_tax": 240.0,
}
CASHFLOW = {
    "operating_net": 310.0,
    "investing_net": -95.0,
    "financing_net": -55.0,
    "capital_expenditures": 130.0,
    "operating_inflows": 1900.0,
    "initial_cash_requirements": 820.0,
    "cash_distributions": 70.0,
}


def year(tag="2020", balance=None, income=None, cashflow=None):
    return StatementYear(
        year=tag,
        balance=dict(BALANCE if balance is None else balance),
        income=dict(INCOME if income is None else income),
        cashflow=dict(CASHFLOW if cashflow is None else cashflow),
    )


def value_of(ratio_id, y):
    return compute_ratio(RATIOS_BY_ID[ratio_id], y)


EXPECTED = {
    "CSR1": 400 / 600,
    "CSR2": 150 / 600,
    "CSR3": 250 / 600,
    "CSR4": 120 / 1000,
    "CSR5": 250 / 1000,
    "CSR6": 400 / 1000,
    "CSR7": 250 / 400,
    "CSR8": 600 / 500,
    "CSR9": 700 / 500,
    "CSR10": 1000 / 600,
    "CSR11": (450 - 300) / 600,
    "LR1": 450 / 300,
    "LR2": (450 - 110) / 300,
    "LR3": 90 / 300,
    "IR1": 300 / 240,
    "IR2": 800 / 2000,
    "IR3": 260 / 2000,
    "IR4": 240 / 2000,
    "IR5": (260 + 40) / 1000,
    "IR6": 260 / 600,
    "CFR1": 310 / (95 + 55),
    "CFR2": 310 / 2000,
    "CFR3": 310 / 130,
    "CFR4": 310 / 300,
    "CFR5": 310 / 260,
    "CFR6": 310 / 1000,
    "CFR7": 310 / 600,
    "CFR8": 310 / 250,
    "CFR9": 1900 / 820,
    "CFR10": 310 / 550,
    "CFR11": 310 / 400,
    "CFR12": 310 / 70,
    "CFR13": 310 / 95,
    "CFR14": 310 / 55,
}

MIN_IS_BETTER = {"CSR1", "CSR2", "CSR3", "CSR5", "CSR6", "CSR7", "IR1", "IR5", "IR6"}


class TestCatalogue:
    def test_exactly_34_ratios(self):
        assert len(RATIO_DEFINITIONS) == 34
        assert len(RATIO_IDS) == 34
        assert set(EXPECTED) == set(RATIO_IDS)

    def test_every_formula(self):
        y = year()
        for rid, expected in EXPECTED.items():
            assert value_of(rid, y) == pytest.approx(expected, rel=1e-12), rid

    def test_directions(self):
        for rid in RATIO_IDS:
            want = Direction.COST if rid in MIN_IS_BETTER else Direction.BENEFIT
            assert direction_of(rid) is want, rid

    def test_unknown_criterion(self):
        with pytest.raises(UnknownCriterion):
            direction_of("XYZ")

    @pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
    def test_homogeneity_under_uniform_scaling(self, c):
        y1 = year()
        y2 = StatementYear(
            year="2020",
            balance={k: v * c for k, v in BALANCE.items()},
            income={k: v * c for k, v in INCOME.items()},
            cashflow={k: v * c for k, v in CASHFLOW.items()},
        )
        for d in RATIO_DEFINITIONS:
            a, b = compute_ratio(d, y1), compute_ratio(d, y2)
            assert a is not UNDEFINED and b is not UNDEFINED
            assert b == pytest.approx(a, rel=1e-12), d.id

    def test_absolute_values_in_flow_denominators(self):
        y = year(cashflow={**CASHFLOW,
                           "operating_net": 10.0,
                           "investing_net": -4.0,
                           "financing_net": -1.0})
        assert value_of("CFR1", y) == pytest.approx(2.0, abs=1e-15)
        assert value_of("CFR13", y) == pytest.approx(2.5, abs=1e-15)
        assert value_of("CFR14", y) == pytest.approx(10.0, abs=1e-15)

    def test_zero_denominator_is_undefined(self):
        y = year(balance={**BALANCE, "long_term_debt": 0.0})
        assert value_of("CFR8", y) is UNDEFINED
        assert value_of("CSR7", y) == 0.0
        y2 = year(balance={**BALANCE, "total_debt": 0.0})
        assert value_of("CSR7", y2) is UNDEFINED
        assert value_of("CFR11", y2) is UNDEFINED

    def test_derived_working_capital(self):
        y = year()
        assert y.item("net_working_capital") == pytest.approx(150.0)

    def test_missing_line_item(self):
        y = year(balance={k: v for k, v in BALANCE.items() if k != "equity"})
        with pytest.raises(MissingLineItem):
            value_of("CSR1", y)


class TestStatementValidation:
    def test_unknown_item_rejected(self):
        with pytest.raises(ValidationError):
            year(balance={**BALANCE, "goodwill": 5.0})

    def test_negative_total_assets_rejected(self):
        with pytest.raises(ValidationError):
            year(balance={**BALANCE, "total_assets": -1.0})

    def test_inventory_exceeding_current_assets_rejected(self):
        with pytest.raises(ValidationError):
            year(balance={**BALANCE, "inventory": 460.0})

    def test_cash_exceeding_current_assets_rejected(self):
        with pytest.raises(ValidationError):
            year(balance={**BALANCE, "cash_and_equivalents": 460.0})

    def test_from_dict_roundtrip(self):
        y = statement_year_from_dict({
            "year": 2020, "balance": BALANCE, "income": INCOME,
            "cashflow": CASHFLOW,
        })
        assert y.year == "2020"
        assert value_of("LR1", y) == pytest.approx(1.5)


class TestDecisionMatrixAssembly:
    def test_all_observed(self):
        D = build_decision_matrix([year("2020"), year("2021")])
        assert D.alternative_ids == ("2020", "2021")
        assert D.criterion_ids == tuple(RATIO_IDS)
        assert D.imputed == frozenset()

    def test_worst_observed_fills_column_worst(self):
        good = year("2020")
        bad = year("2021", balance={**BALANCE, "total_debt": 0.0,
                                    "short_term_debt": 0.0, "long_term_debt": 0.0})
        other = year("2022", balance={**BALANCE, "long_term_debt": 125.0,
                                      "total_debt": 275.0})
        D = build_decision_matrix([good, bad, other])
        j = D.criterion_ids.index("CFR11")
        assert (1, j) in D.imputed
        # CFR11 is benefit: worst observed is the column minimum
        assert D.x[1, j] == pytest.approx(min(D.x[0, j], D.x[2, j]))
        jc = D.criterion_ids.index("CSR7")
        assert (1, jc) in D.imputed
        # CSR7 is cost: worst observed is the column maximum
        assert D.x[1, jc] == pytest.approx(max(D.x[0, jc], D.x[2, jc]))

    def test_zero_policy(self):
        good = year("2020")
        bad = year("2021", balance={**BALANCE, "long_term_debt": 0.0})
        D = build_decision_matrix([good, bad], policy=ImputationPolicy.ZERO)
        j = D.criterion_ids.index("CFR8")
        assert D.x[1, j] == 0.0
        assert (1, j) in D.imputed

    def test_fail_policy(self):
        good = year("2020")
        bad = year("2021", balance={**BALANCE, "long_term_debt": 0.0})
        with pytest.raises(ValidationError):
            build_decision_matrix([good, bad], policy=ImputationPolicy.FAIL)

    def test_fully_undefined_column_unavailable(self):
        years = [
            year("2020", balance={**BALANCE, "long_term_debt": 0.0}),
            year("2021", balance={**BALANCE, "long_term_debt": 0.0}),
        ]
        with pytest.raises(ColumnUnavailable):
            build_decision_matrix(years)

    def test_duplicate_years_rejected(self):
        with pytest.raises(ValidationError):
            build_decision_matrix([year("2020"), year("2020")])
