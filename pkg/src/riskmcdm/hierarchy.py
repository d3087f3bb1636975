"""Decision hierarchy model: goal, criteria tree, alternatives.

The hierarchy is goal -> main criteria -> optional sub-criteria, scored
against a flat list of alternatives. Each leaf criterion carries a
direction: "max" (benefit, larger raw values are better) or "min" (cost).
Depth is capped at two criterion levels; weight propagation is only
defined as local x parent.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import InvalidIntensity, IoError


class Direction(Enum):
    """Optimization direction of a leaf criterion."""

    BENEFIT = "max"
    COST = "min"


SAATY_CODES = tuple(range(1, 10))


def saaty_intensity(code: int, reciprocal: bool = False) -> Fraction:
    """Return the judgment intensity for a 1..9 scale code.

    With reciprocal=True the favored item is the second of the pair and
    the stored value is 1/code.
    """
    if not isinstance(code, int) or isinstance(code, bool) or code not in SAATY_CODES:
        raise InvalidIntensity(f"scale code must be an integer in 1..9, got {code!r}")
    return Fraction(1, code) if reciprocal else Fraction(code)


def parse_judgment_value(value) -> Fraction:
    """Parse a judgment value from a number or a fraction string like "1/7".

    Any strictly positive rational is accepted here; the Saaty-scale
    restriction is enforced where judgments are captured interactively.
    """
    try:
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            out = Fraction(value)
        elif isinstance(value, float):
            out = Fraction(value).limit_denominator(10**9)
        elif isinstance(value, str):
            out = Fraction(value.strip())
        else:
            raise ValueError(f"unsupported type {type(value).__name__}")
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise InvalidIntensity(f"cannot parse judgment value {value!r}: {exc}") from None
    if out <= 0:
        raise InvalidIntensity(f"judgment value must be positive, got {value!r}")
    return out


def is_saaty_value(value: Fraction) -> bool:
    """True when value is an integer 1..9 or the reciprocal of one."""
    f = Fraction(value)
    return (f.denominator == 1 and 1 <= f.numerator <= 9) or (
        f.numerator == 1 and 1 <= f.denominator <= 9
    )


@dataclass(frozen=True)
class CriterionNode:
    """One criterion: a main criterion (with children) or a leaf."""

    id: str
    label: str = ""
    children: tuple = ()
    direction: Optional[Direction] = None
    ratio_formula_ref: Optional[str] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Hierarchy:
    """Full decision model: goal label, criteria tree, alternatives."""

    goal_label: str
    main_criteria: tuple = ()
    alternatives: tuple = ()

    def leaves(self) -> list:
        """All leaf criteria in document order."""
        out = []

        def walk(node):
            if node.is_leaf:
                out.append(node)
            else:
                for child in node.children:
                    walk(child)

        for main in self.main_criteria:
            walk(main)
        return out

    def leaf_ids(self) -> list:
        return [leaf.id for leaf in self.leaves()]

    def node(self, node_id: str) -> Optional[CriterionNode]:
        """Find a criterion node by id, or None."""

        def walk(nodes):
            for n in nodes:
                if n.id == node_id:
                    return n
                found = walk(n.children)
                if found is not None:
                    return found
            return None

        return walk(self.main_criteria)

    def comparison_nodes(self) -> list:
        """Pairwise-comparison nodes as (node_id, item_ids) pairs.

        The goal node compares the main criteria; each main criterion
        with children compares its own children. Nodes with one item
        need no judgments (their weight vector is trivially (1,)).
        """
        nodes = [("goal", [m.id for m in self.main_criteria])]
        for main in self.main_criteria:
            if main.children:
                nodes.append((main.id, [c.id for c in main.children]))
        return nodes

    def directions(self) -> dict:
        """Leaf id -> Direction for all leaves that carry one."""
        return {leaf.id: leaf.direction for leaf in self.leaves() if leaf.direction}


def validate_hierarchy(h: Hierarchy) -> list:
    """Check structural invariants; return a list of violation messages.

    An empty list means the hierarchy is valid. The input is never
    mutated and nothing is raised: violations are data.
    """
    violations = []
    if not h.main_criteria:
        violations.append("no main criteria")
    if not h.alternatives:
        violations.append("no alternatives")
    seen_alts = set()
    for alt in h.alternatives:
        if alt in seen_alts:
            violations.append(f"duplicate alternative id: {alt}")
        seen_alts.add(alt)

    seen_ids = set()

    def walk(node, depth):
        if node.id in seen_ids:
            violations.append(f"duplicate id: {node.id}")
        seen_ids.add(node.id)
        if node.is_leaf:
            if node.direction is None:
                violations.append(f"missing direction on leaf: {node.id}")
        else:
            if node.direction is not None:
                violations.append(f"direction on non-leaf: {node.id}")
            if depth >= 2:
                violations.append(f"criterion nesting too deep at: {node.id}")
            for child in node.children:
                walk(child, depth + 1)
        if node.ratio_formula_ref is not None:
            from .ratios import RATIO_IDS

            if node.ratio_formula_ref not in RATIO_IDS:
                violations.append(f"unknown ratio reference on {node.id}: {node.ratio_formula_ref}")

    for main in h.main_criteria:
        walk(main, 1)
    return violations


def _node_from_dict(obj: dict) -> CriterionNode:
    direction = obj.get("direction")
    if direction is not None:
        try:
            direction = Direction(direction)
        except ValueError:
            raise IoError(f"bad direction {direction!r} on criterion {obj.get('id')!r}") from None
    children = tuple(_node_from_dict(c) for c in obj.get("children", []))
    return CriterionNode(
        id=str(obj["id"]),
        label=str(obj.get("label", "")),
        children=children,
        direction=direction,
        ratio_formula_ref=obj.get("ratio_formula_ref"),
    )


def _node_to_dict(node: CriterionNode) -> dict:
    out = {"id": node.id, "label": node.label}
    if node.direction is not None:
        out["direction"] = node.direction.value
    if node.ratio_formula_ref is not None:
        out["ratio_formula_ref"] = node.ratio_formula_ref
    if node.children:
        out["children"] = [_node_to_dict(c) for c in node.children]
    return out


def hierarchy_from_dict(doc: dict) -> Hierarchy:
    """Build a Hierarchy from the hierarchy.json document shape."""
    try:
        return Hierarchy(
            goal_label=str(doc["goal"]),
            main_criteria=tuple(_node_from_dict(c) for c in doc["criteria"]),
            alternatives=tuple(str(a) for a in doc["alternatives"]),
        )
    except KeyError as exc:
        raise IoError(f"hierarchy document missing key: {exc}") from None


def hierarchy_to_dict(h: Hierarchy) -> dict:
    return {
        "goal": h.goal_label,
        "criteria": [_node_to_dict(m) for m in h.main_criteria],
        "alternatives": list(h.alternatives),
    }
