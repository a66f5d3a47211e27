"""
Regime Classification

Decides which exit-equilibrium regime a model is in from closed-form
conditions evaluated in log space, and reports what that regime implies for
the Externality mechanism's voluntary participation and the Pivotal
mechanism's budget.
"""

import math
from typing import Dict, List, Tuple

import numpy as np

from analysis.types import ConditionCheck, RegimeVerdict, TwoClassExitConditions, Verdict
from core.domain.game_model import Dominant, SelfDependence, TwoClass
from core.errors import InvalidInputError
from solver.root_finding import solve_exponential_sum

# case -> (Externality VP, Pivotal BB, exit pattern)
SELF_DEPENDENCE_TABLE: Dict[str, Tuple[Verdict, Verdict, str]] = {
    "alpha": (Verdict.NEVER, Verdict.NEVER, "outlier free-rides, participants invest"),
    "beta": (Verdict.NEVER, Verdict.NEVER, "outlier and participants invest"),
    "gamma": (Verdict.NEVER, Verdict.NEVER, "outlier free-rides, participants invest"),
    "omega": (Verdict.ALWAYS, Verdict.ALWAYS, "outlier invests, participants free-ride"),
    "zeta": (Verdict.ALWAYS, Verdict.ALWAYS, "outlier and participants invest"),
}

DOMINANT_TABLE: Dict[str, Tuple[Verdict, Verdict, str]] = {
    "dominant-alpha": (Verdict.NEVER, Verdict.NEVER, "dominant outlier free-rides, others invest"),
    "dominant-beta": (Verdict.NEVER, Verdict.NEVER, "dominant outlier invests alone"),
}


def _verdict(table: Dict[str, Tuple[Verdict, Verdict, str]], label: str,
             conditions: List[ConditionCheck], parameters: Dict, shared: bool = False) -> RegimeVerdict:
    vp, bb, pattern = table[label]
    return RegimeVerdict(case_label=label, conditions=conditions, vp_externality=vp,
                         bb_pivotal=bb, exit_pattern=pattern, shared_condition=shared,
                         parameters=parameters)


def classify_self_dependence(a: float, n: int, c: float) -> List[RegimeVerdict]:
    """
    Regimes of SelfDependence(a, n, c).

    a >= 1 yields exactly one of alpha/beta; a < 1 always yields gamma, plus
    omega and zeta when they exist. Omega and zeta share one condition and
    are flagged as such.

    Raises:
        InvalidInputError: If the parameters violate c < a or n >= 3
    """
    model = SelfDependence(a, n, c)
    if model.n < 3:
        raise InvalidInputError("regime analysis needs at least 3 users")
    parameters = model.parameters()
    gain = math.log(a / c)
    spread = math.log1p((n - 2) / a)

    if a >= 1:
        lhs, rhs = (n - 1) * spread, (a - 1) * gain
        check = ConditionCheck(name="outlier free-rides", lhs=lhs, rhs=rhs, relation=">",
                               holds=lhs > rhs)
        label = "alpha" if check.holds else "beta"
        return [_verdict(SELF_DEPENDENCE_TABLE, label, [check], parameters)]

    found = [_verdict(SELF_DEPENDENCE_TABLE, "gamma", [
        ConditionCheck(name="a < 1", lhs=a, rhs=1.0, relation="<", holds=True),
    ], parameters)]
    lhs, rhs = a * spread, (1 - a) * gain
    check = ConditionCheck(name="participants free-ride", lhs=lhs, rhs=rhs, relation="<=",
                           holds=lhs <= rhs)
    if check.holds:
        found.append(_verdict(SELF_DEPENDENCE_TABLE, "omega", [check], parameters, shared=True))
        found.append(_verdict(SELF_DEPENDENCE_TABLE, "zeta", [check], parameters, shared=True))
    return found


def classify_dominant(a: float, n: int, c: float) -> RegimeVerdict:
    """dominant-alpha when a < n - 1, dominant-beta otherwise (ties go to beta)."""
    model = Dominant(a, n, c)
    check = ConditionCheck(name="a < N - 1", lhs=a, rhs=float(n - 1), relation="<", holds=a < n - 1)
    label = "dominant-alpha" if check.holds else "dominant-beta"
    return _verdict(DOMINANT_TABLE, label, [check], model.parameters())


def two_class_exit_conditions(a1: float, a2: float, n1: int, n2: int, c: float) -> TwoClassExitConditions:
    """
    Existence flags of the two-class exit equilibria.

    The reliant outlier can invest alone iff log(a1 + N - 2) - log c <= log(a2/c)/a2;
    a self-dependent outlier can free-ride iff
    (a1 + N1 - 2)(c/a1)^((a1-1)/(N1-1)) + N2 >= a1.
    """
    model = TwoClass(a1, a2, n1, n2, c)
    n = model.n_users

    lhs = math.log(a1 + n - 2) - math.log(c)
    rhs = math.log(a2 / c) / a2
    reliant_invests = ConditionCheck(name="reliant outlier invests alone", lhs=lhs, rhs=rhs,
                                     relation="<=", holds=lhs <= rhs)

    lhs = float(np.logaddexp(math.log(a1 + n1 - 2) + (a1 - 1) / (n1 - 1) * math.log(c / a1),
                             math.log(n2)))
    rhs = math.log(a1)
    free_rides = ConditionCheck(name="self-dependent outlier free-rides", lhs=lhs, rhs=rhs,
                                relation=">=", holds=lhs >= rhs)

    class_weight = a1 + n1 - 1
    level = solve_exponential_sum([class_weight, n2 - 1], [class_weight, n1], c)
    reliant_free_rides = a2 * math.exp(-n1 * level) <= c

    return TwoClassExitConditions(
        reliant_outlier_invests=reliant_invests,
        self_dependent_outlier_free_rides=free_rides,
        reliant_outlier_free_rides=reliant_free_rides,
        self_dependent_outlier_invests=not free_rides.holds,
        parameters=model.parameters(),
    )
