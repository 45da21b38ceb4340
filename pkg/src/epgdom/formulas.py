"""Closed-form domination values for proper enhanced power graphs of
nilpotent groups, evaluated from the Sylow profile.

Every branch records which structural case fired and which inputs it
consumed.  The branch tagged ``Thm-Zn-m1`` (a single non-cyclic factor
times a coprime cyclic part) is evaluated as printed in the source
theorem even though it is inconsistent with the component count, so it
carries a discrepancy flag; the verification harness reports the conflict
against the exact solver instead of hiding it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ProfileInvalid
from .groups import FiniteGroup, NilpotentProfile, SylowClass

NO_TOTAL_DOMINATING_SET = "no_total_dominating_set"
NOT_COVERED = "not_covered"


@dataclass(frozen=True)
class FormulaOutcome:
    value: int | None               # set iff the outcome is a number
    special: str | None             # NO_TOTAL_DOMINATING_SET | NOT_COVERED | None
    case_tag: str
    inputs_used: dict
    discrepancy: bool = False
    reason: str | None = None

    @property
    def is_number(self) -> bool:
        return self.value is not None

    def to_json_dict(self) -> dict:
        out: dict = {"case_tag": self.case_tag, "inputs_used": self.inputs_used,
                     "discrepancy_flag": self.discrepancy}
        if self.value is not None:
            out["value"] = self.value
        else:
            out["special"] = self.special
            if self.reason:
                out["reason"] = self.reason
        return out


def _number(value: int, tag: str, inputs: dict, discrepancy: bool = False) -> FormulaOutcome:
    return FormulaOutcome(value=value, special=None, case_tag=tag,
                          inputs_used=inputs, discrepancy=discrepancy)


def _special(which: str, tag: str, inputs: dict, reason: str | None = None) -> FormulaOutcome:
    return FormulaOutcome(value=None, special=which, case_tag=tag,
                          inputs_used=inputs, reason=reason)


def _validate(profile: NilpotentProfile) -> None:
    order = 1
    quats = 0
    for f in profile.factors:
        order *= f.order
        if f.r < 1 or f.num_order_p != f.r * (f.p - 1):
            raise ProfileInvalid(f"factor p={f.p} has inconsistent census")
        if f.classification is SylowClass.GENERALIZED_QUATERNION:
            quats += 1
            if f.p != 2 or f.k is None or f.k < 3:
                raise ProfileInvalid("generalized quaternion factor must be a 2-group with k >= 3")
    if quats > 1:
        raise ProfileInvalid("at most one Sylow factor can be generalized quaternion")
    if order != profile.order:
        raise ProfileInvalid("factor orders do not multiply to the group order")
    if profile.m != len(profile.neither_factors):
        raise ProfileInvalid("m does not count the non-cyclic non-quaternion factors")
    if tuple(sorted(profile.r_sorted)) != profile.r_sorted:
        raise ProfileInvalid("r_sorted must be nondecreasing")


def total_dom_existence(profile: NilpotentProfile, group: FiniteGroup) -> bool:
    """False exactly when the proper graph has an isolated vertex: the group
    is a 2-group that is neither cyclic nor generalized quaternion and some
    involution is a power of no element of order >= 4.

    Cyclic and quaternion 2-groups always pass: their involution is a
    dominating vertex of the full graph, hence not a vertex at all.
    """
    _validate(profile)
    if group.order != profile.order:
        raise ProfileInvalid("profile does not describe this group")
    if len(profile.factors) != 1:
        return True
    factor = profile.factors[0]
    if factor.p != 2 or factor.classification is not SylowClass.NEITHER:
        return True
    return not factor.isolated_involution


def _structure_inputs(profile: NilpotentProfile) -> dict:
    quat = profile.quaternion_factor
    return {
        "m": profile.m,
        "r": list(profile.r_sorted),
        "k": quat.k if quat else None,
        "n_cyclic": profile.n_cyclic,
        "has_quaternion": profile.has_quaternion,
    }


def strong_domination_formula(profile: NilpotentProfile) -> FormulaOutcome:
    """Total (strong) domination number of the proper graph, by structure.

    Exactly one branch fires per profile; selection depends only on the
    classification multiset, the r values and the quaternion parameter.
    """
    _validate(profile)
    inputs = _structure_inputs(profile)
    neither = profile.neither_factors
    quat = profile.quaternion_factor
    has_cyclic = any(f.classification is SylowClass.CYCLIC for f in profile.factors)

    if quat is None:
        if not neither:
            # all Sylow factors cyclic (or the trivial group): empty graph
            return _number(0, "Zn", inputs)
        if not has_cyclic:
            if len(neither) == 1:
                factor = neither[0]
                if factor.p == 2 and factor.isolated_involution:
                    return _special(NO_TOTAL_DOMINATING_SET, "p-group-nonexistent", inputs)
                return _number(2 * factor.r, "p-group", inputs)
            return _number(min(profile.r_sorted) + 1, "G1", inputs)
        # non-cyclic factors times a coprime cyclic part
        if len(neither) == 1:
            # printed value; conflicts with the component count (r components,
            # each needing two members) -- flagged, not corrected
            return _number(min(profile.r_sorted) + 1, "Thm-Zn-m1", inputs,
                           discrepancy=True)
        return _number(min(profile.r_sorted) + 1, "Thm-Zn", inputs)

    k = quat.k
    if not neither:
        return _number(2 ** (k - 1) + 2, "Q", inputs)
    return _number(min(min(profile.r_sorted), 2 ** (k - 2) + 1) + 1, "G1-Q", inputs)


def domination_formula(profile: NilpotentProfile) -> FormulaOutcome:
    """Domination number branch: stated only for groups with a generalized
    quaternion Sylow factor."""
    _validate(profile)
    inputs = _structure_inputs(profile)
    quat = profile.quaternion_factor
    if quat is None:
        return _special(
            NOT_COVERED, "dom-not-covered", inputs,
            reason="domination number for quaternion-free groups is cited from prior work",
        )
    k = quat.k
    if not profile.neither_factors:
        return _number(2 ** (k - 2) + 1, "Q-dom", inputs)
    return _number(min(min(profile.r_sorted), 2 ** (k - 2) + 1), "G1-Q-dom", inputs)


def component_count_prediction(profile: NilpotentProfile) -> FormulaOutcome:
    """Component count of the proper graph where a closed form is known:
    one non-cyclic factor (alone or times a cyclic part) gives r components;
    a plain generalized quaternion group gives 2^{k-2}+1."""
    _validate(profile)
    inputs = _structure_inputs(profile)
    neither = profile.neither_factors
    quat = profile.quaternion_factor
    has_cyclic = any(f.classification is SylowClass.CYCLIC for f in profile.factors)
    if quat is None and len(neither) == 1:
        tag = "p-group-components" if not has_cyclic else "p-group-cyclic-components"
        return _number(neither[0].r, tag, inputs)
    if quat is not None and len(profile.factors) == 1:
        return _number(2 ** (quat.k - 2) + 1, "quaternion-components", inputs)
    return _special(NOT_COVERED, "components-not-covered", inputs,
                    reason="no component lemma for this shape")
