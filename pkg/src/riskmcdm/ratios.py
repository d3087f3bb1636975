"""Financial statement model and the 34-ratio criterion catalogue.

Statement years carry balance-sheet, income-statement, and cash-flow line
items; each ratio is a quotient of line items (net_working_capital is
derived as current_assets - current_liabilities, never stored). A ratio
with a zero denominator is Undefined for that year and gets filled by the
imputation policy when the decision matrix is built.

Ratio formulas, by symbol:

- CSR1  total_debt / equity                         (min)
- CSR2  short_term_debt / equity                    (min)
- CSR3  long_term_debt / equity                     (min)
- CSR4  retained_earnings / total_assets            (max)
- CSR5  long_term_debt / total_assets               (min)
- CSR6  total_debt / total_assets                   (min)
- CSR7  long_term_debt / total_debt                 (min)
- CSR8  equity / net_fixed_assets                   (max)
- CSR9  invested_funds / net_fixed_assets           (max)
- CSR10 total_assets / equity                       (max)
- CSR11 net_working_capital / equity                (max)
- LR1   current_assets / current_liabilities        (max)
- LR2   (current_assets - inventory) / current_liabilities  (max)
- LR3   cash_and_equivalents / current_liabilities  (max)
- IR1   net_profit_before_interest / net_profit_after_interest_tax  (min)
- IR2   gross_profit / sales                        (max)
- IR3   net_profit / sales                          (max)
- IR4   net_profit_after_interest_tax / sales       (max)
- IR5   (net_profit + interest_expense) / total_assets  (min)
- IR6   net_profit / equity                         (min)
- CFR1  operating_net / (|investing_net| + |financing_net|)  (max)
- CFR2  operating_net / sales                       (max)
- CFR3  operating_net / capital_expenditures        (max)
- CFR4  operating_net / current_liabilities         (max)
- CFR5  operating_net / net_profit                  (max)
- CFR6  operating_net / total_assets                (max)
- CFR7  operating_net / equity                      (max)
- CFR8  operating_net / long_term_debt              (max)
- CFR9  operating_inflows / initial_cash_requirements  (max)
- CFR10 operating_net / fixed_assets                (max)
- CFR11 operating_net / total_debt                  (max)
- CFR12 operating_net / cash_distributions          (max)
- CFR13 operating_net / |investing_net|             (max)
- CFR14 operating_net / |financing_net|             (max)

CFR1, CFR13, and CFR14 take the denominator's absolute value because
investing and financing net flows are usually negative; the ratio sign
should reflect the operating flow only.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ColumnUnavailable, MissingLineItem, UnknownCriterion, ValidationError
from .hierarchy import Direction
from .saw import DecisionMatrix


class _Undefined:
    """Singleton marker for a ratio with a zero denominator."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"


UNDEFINED = _Undefined()


class ImputationPolicy(Enum):
    """Rule for filling Undefined decision-matrix cells."""

    WORST_OBSERVED = "worst-observed"
    ZERO = "zero"
    FAIL = "fail"


BALANCE_ITEMS = (
    "total_debt", "short_term_debt", "long_term_debt", "equity",
    "retained_earnings", "total_assets", "net_fixed_assets", "fixed_assets",
    "invested_funds", "current_assets", "inventory", "cash_and_equivalents",
    "current_liabilities",
)
INCOME_ITEMS = (
    "sales", "gross_profit", "net_profit", "net_profit_before_interest",
    "ebit", "interest_expense", "net_profit_after_interest_tax",
)
CASHFLOW_ITEMS = (
    "operating_net", "investing_net", "financing_net", "capital_expenditures",
    "operating_inflows", "initial_cash_requirements", "cash_distributions",
)

LINE_ITEM_GROUPS = {
    **{name: "balance" for name in BALANCE_ITEMS},
    **{name: "income" for name in INCOME_ITEMS},
    **{name: "cashflow" for name in CASHFLOW_ITEMS},
}


@dataclass(frozen=True)
class StatementYear:
    """One fiscal year of statements; absent line items stay None."""

    year: str
    balance: dict
    income: dict
    cashflow: dict

    def __post_init__(self):
        for group_name, allowed in (
            ("balance", BALANCE_ITEMS), ("income", INCOME_ITEMS), ("cashflow", CASHFLOW_ITEMS),
        ):
            group = getattr(self, group_name)
            unknown = set(group) - set(allowed)
            if unknown:
                raise ValidationError(
                    f"unknown {group_name} line items in year {self.year}: {sorted(unknown)}"
                )
        b = self.balance
        if b.get("total_assets") is not None and b["total_assets"] < 0:
            raise ValidationError(f"total_assets negative in year {self.year}")
        ca, inv = b.get("current_assets"), b.get("inventory")
        if inv is not None and inv < 0:
            raise ValidationError(f"inventory negative in year {self.year}")
        if ca is not None and inv is not None and ca < inv:
            raise ValidationError(f"current_assets below inventory in year {self.year}")
        cash = b.get("cash_and_equivalents")
        if ca is not None and cash is not None and cash > ca:
            raise ValidationError(f"cash above current_assets in year {self.year}")

    def item(self, name: str) -> float:
        """Look up a line item; net_working_capital is derived."""
        if name == "net_working_capital":
            return self.item("current_assets") - self.item("current_liabilities")
        group_name = LINE_ITEM_GROUPS.get(name)
        if group_name is None:
            raise MissingLineItem(name)
        value = getattr(self, group_name).get(name)
        if value is None:
            raise MissingLineItem(name)
        return float(value)


@dataclass(frozen=True)
class RatioDefinition:
    """One criterion: numerator and denominator over statement line items."""

    id: str
    numerator: str
    denominator: str
    direction: Direction
    num_fn: callable
    den_fn: callable


def _defs():
    B = Direction.BENEFIT
    C = Direction.COST

    def item(name):
        return lambda y: y.item(name)

    def d(rid, num, den, direction, num_fn, den_fn):
        return RatioDefinition(rid, num, den, direction, num_fn, den_fn)

    return (
        d("CSR1", "total_debt", "equity", C, item("total_debt"), item("equity")),
        d("CSR2", "short_term_debt", "equity", C, item("short_term_debt"), item("equity")),
        d("CSR3", "long_term_debt", "equity", C, item("long_term_debt"), item("equity")),
        d("CSR4", "retained_earnings", "total_assets", B,
          item("retained_earnings"), item("total_assets")),
        d("CSR5", "long_term_debt", "total_assets", C,
          item("long_term_debt"), item("total_assets")),
        d("CSR6", "total_debt", "total_assets", C, item("total_debt"), item("total_assets")),
        d("CSR7", "long_term_debt", "total_debt", C, item("long_term_debt"), item("total_debt")),
        d("CSR8", "equity", "net_fixed_assets", B, item("equity"), item("net_fixed_assets")),
        d("CSR9", "invested_funds", "net_fixed_assets", B,
          item("invested_funds"), item("net_fixed_assets")),
        d("CSR10", "total_assets", "equity", B, item("total_assets"), item("equity")),
        d("CSR11", "net_working_capital", "equity", B,
          item("net_working_capital"), item("equity")),
        d("LR1", "current_assets", "current_liabilities", B,
          item("current_assets"), item("current_liabilities")),
        d("LR2", "current_assets - inventory", "current_liabilities", B,
          lambda y: y.item("current_assets") - y.item("inventory"),
          item("current_liabilities")),
        d("LR3", "cash_and_equivalents", "current_liabilities", B,
          item("cash_and_equivalents"), item("current_liabilities")),
        d("IR1", "net_profit_before_interest", "net_profit_after_interest_tax", C,
          item("net_profit_before_interest"), item("net_profit_after_interest_tax")),
        d("IR2", "gross_profit", "sales", B, item("gross_profit"), item("sales")),
        d("IR3", "net_profit", "sales", B, item("net_profit"), item("sales")),
        d("IR4", "net_profit_after_interest_tax", "sales", B,
          item("net_profit_after_interest_tax"), item("sales")),
        d("IR5", "net_profit + interest_expense", "total_assets", C,
          lambda y: y.item("net_profit") + y.item("interest_expense"), item("total_assets")),
        d("IR6", "net_profit", "equity", C, item("net_profit"), item("equity")),
        d("CFR1", "operating_net", "abs(investing_net) + abs(financing_net)", B,
          item("operating_net"),
          lambda y: abs(y.item("investing_net")) + abs(y.item("financing_net"))),
        d("CFR2", "operating_net", "sales", B, item("operating_net"), item("sales")),
        d("CFR3", "operating_net", "capital_expenditures", B,
          item("operating_net"), item("capital_expenditures")),
        d("CFR4", "operating_net", "current_liabilities", B,
          item("operating_net"), item("current_liabilities")),
        d("CFR5", "operating_net", "net_profit", B, item("operating_net"), item("net_profit")),
        d("CFR6", "operating_net", "total_assets", B,
          item("operating_net"), item("total_assets")),
        d("CFR7", "operating_net", "equity", B, item("operating_net"), item("equity")),
        d("CFR8", "operating_net", "long_term_debt", B,
          item("operating_net"), item("long_term_debt")),
        d("CFR9", "operating_inflows", "initial_cash_requirements", B,
          item("operating_inflows"), item("initial_cash_requirements")),
        d("CFR10", "operating_net", "fixed_assets", B,
          item("operating_net"), item("fixed_assets")),
        d("CFR11", "operating_net", "total_debt", B, item("operating_net"), item("total_debt")),
        d("CFR12", "operating_net", "cash_distributions", B,
          item("operating_net"), item("cash_distributions")),
        d("CFR13", "operating_net", "abs(investing_net)", B,
          item("operating_net"), lambda y: abs(y.item("investing_net"))),
        d("CFR14", "operating_net", "abs(financing_net)", B,
          item("operating_net"), lambda y: abs(y.item("financing_net"))),
    )


RATIO_DEFINITIONS = _defs()
RATIO_IDS = tuple(rd.id for rd in RATIO_DEFINITIONS)
RATIOS_BY_ID = {rd.id: rd for rd in RATIO_DEFINITIONS}


def direction_of(criterion_id: str) -> Direction:
    """Optimization direction of one of the 34 catalogue criteria."""
    rd = RATIOS_BY_ID.get(criterion_id)
    if rd is None:
        raise UnknownCriterion(f"unknown criterion symbol: {criterion_id!r}")
    return rd.direction


def compute_ratio(definition: RatioDefinition, year: StatementYear):
    """Evaluate one ratio for one year; UNDEFINED on a zero denominator."""
    num = definition.num_fn(year)
    den = definition.den_fn(year)
    if den == 0:
        return UNDEFINED
    return num / den


def impute_grid(grid, directions, policy: ImputationPolicy, alternative_ids, criterion_ids):
    """Fill None cells of a row-major grid per policy.

    Returns (float array, frozenset of imputed (row, col) indices). A
    column with no observed value cannot be filled and raises
    ColumnUnavailable regardless of policy.
    """
    m, k = len(alternative_ids), len(criterion_ids)
    x = np.empty((m, k))
    imputed = set()
    for j, cid in enumerate(criterion_ids):
        observed = [grid[i][j] for i in range(m) if grid[i][j] is not None]
        if not observed:
            raise ColumnUnavailable(cid)
        worst = min(observed) if directions[cid] == Direction.BENEFIT else max(observed)
        for i in range(m):
            value = grid[i][j]
            if value is None:
                if policy == ImputationPolicy.FAIL:
                    raise ValidationError(
                        f"undefined cell ({alternative_ids[i]}, {cid}) with fail policy"
                    )
                value = 0.0 if policy == ImputationPolicy.ZERO else worst
                imputed.add((i, j))
            x[i, j] = value
    return x, frozenset(imputed)


def build_decision_matrix(
    years: list,
    defs: Optional[list] = None,
    policy: ImputationPolicy = ImputationPolicy.WORST_OBSERVED,
) -> DecisionMatrix:
    """Compute the alternatives x ratios matrix from statement years."""
    if not years:
        raise ValidationError("no statement years")
    if defs is None:
        defs = list(RATIO_DEFINITIONS)
    if not defs:
        raise ValidationError("no ratio definitions")
    grid = [
        [None if (v := compute_ratio(rd, y)) is UNDEFINED else v for rd in defs]
        for y in years
    ]
    alternative_ids = tuple(y.year for y in years)
    criterion_ids = tuple(rd.id for rd in defs)
    directions = {rd.id: rd.direction for rd in defs}
    x, imputed = impute_grid(grid, directions, policy, alternative_ids, criterion_ids)
    return DecisionMatrix(
        alternative_ids=alternative_ids,
        criterion_ids=criterion_ids,
        x=x,
        imputed=imputed,
    )


def statement_year_from_dict(doc: dict) -> StatementYear:
    """Build a StatementYear from one entry of statements.json."""
    if "year" not in doc:
        raise ValidationError("statement entry lacks a year label")
    return StatementYear(
        year=str(doc["year"]),
        balance=dict(doc.get("balance", {})),
        income=dict(doc.get("income", {})),
        cashflow=dict(doc.get("cashflow", {})),
    )
