"""Norm checkers over raven priors, and the backward-induction solver.

Each checker returns a NormVerdict whose Holds/Fails outcome is backed by an
exact computation or an explicit witness; Undetermined arises only from
explicit-head tails whose bounds straddle the decision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .credence import (
    ONE,
    ZERO,
    DivisionByInfinitesimal,
    ExplicitHead,
    FiniteThenGeometric,
    Geometric,
    HyperReal,
    RavenPrior,
    TailSequence,
    Undetermined,
)
from .raven import ALL_BLACK, Evidence, Hypothesis, World, all_black_prefix, first_nonblack_at, nonblack_at
from .update import ZeroEvidence, first_prefix_exceeding, posterior_limit

OPEN_MINDEDNESS_BAR = Fraction(1, 2)


class NormStatus(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDETERMINED = "Undetermined"


class InfeasiblePrior(ValueError):
    """No admissible p* exists for the requested constraint."""


@dataclass(frozen=True)
class NormVerdict:
    norm: str
    status: NormStatus
    witness: World | Evidence | None = None
    constraint: str | None = None
    trace: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status is NormStatus.HOLDS

    def to_json_dict(self) -> dict:
        return {
            "norm": self.norm,
            "status": self.status.value,
            "witness": None if self.witness is None else str(self.witness),
            "constraint": self.constraint,
            "trace": self.trace,
        }


def _first_positive_branch(branches: TailSequence) -> int | None:
    """Least k with p_k > 0; None if all terms are zero; Undetermined if unknowable."""
    if isinstance(branches, Geometric):
        return branches.start if branches.a > ZERO else None
    if isinstance(branches, FiniteThenGeometric):
        for i, t in enumerate(branches.head):
            if t > ZERO:
                return i + 1
        return branches.tail.start if branches.tail.a > ZERO else None
    if isinstance(branches, ExplicitHead):
        for i, t in enumerate(branches.head):
            if t > ZERO:
                return i + 1
        if branches.tail_upper_bound == 0:
            return None
        raise Undetermined("branch positivity beyond the explicit head is unknown")
    raise TypeError(f"unknown tail sequence family: {type(branches).__name__}")


def check_regularity(p: RavenPrior) -> NormVerdict:
    """Every world consistent with null evidence must carry positive credence.

    Infinitesimal masses count as positive: the order on the ring puts eps
    strictly above zero.
    """
    constraint = "p* > 0 and p_k > 0 for every k"
    if p.p_star == ZERO:
        return NormVerdict(
            norm="Regularity",
            status=NormStatus.FAILS,
            witness=ALL_BLACK,
            constraint=constraint,
            trace={"p_star": p.p_star.to_text()},
        )
    try:
        k0 = p.branches.first_zero_index()
    except Undetermined as exc:
        return NormVerdict(
            norm="Regularity",
            status=NormStatus.UNDETERMINED,
            constraint=constraint,
            trace={"reason": str(exc)},
        )
    if k0 is not None:
        return NormVerdict(
            norm="Regularity",
            status=NormStatus.FAILS,
            witness=first_nonblack_at(k0),
            constraint=constraint,
            trace={"zero_branch": k0},
        )
    return NormVerdict(
        norm="Regularity",
        status=NormStatus.HOLDS,
        constraint=constraint,
        trace={"p_star": p.p_star.to_text(), "branch_terms": "all positive by family parameters"},
    )


def check_open_mindedness(p: RavenPrior) -> dict[Hypothesis, NormVerdict]:
    """Each hypothesis must have possible evidence pushing its posterior above 1/2."""
    return {
        Hypothesis.YES: _open_mindedness_yes(p),
        Hypothesis.NO: _open_mindedness_no(p),
    }


def _open_mindedness_yes(p: RavenPrior) -> NormVerdict:
    constraint = "exists n: Pr(Yes | n black ravens in a row) > 1/2"
    try:
        n = first_prefix_exceeding(p, OPEN_MINDEDNESS_BAR)
    except Undetermined as exc:
        return NormVerdict(
            norm="Open-Mindedness[Yes]",
            status=NormStatus.UNDETERMINED,
            constraint=constraint,
            trace={"reason": str(exc)},
        )
    if n is not None:
        return NormVerdict(
            norm="Open-Mindedness[Yes]",
            status=NormStatus.HOLDS,
            witness=all_black_prefix(n),
            constraint=constraint,
            trace={"first_stage_above_bar": n},
        )
    trace: dict = {"p_star": p.p_star.to_text()}
    if p.p_star == ZERO:
        trace["note"] = "posterior in Yes is identically 0"
    elif p.p_star.is_pure_infinitesimal:
        trace["note"] = (
            "p* is a pure infinitesimal while a real amount of branch mass "
            "remains at every finite stage; the posterior in Yes stays "
            "infinitesimal for all n"
        )
    return NormVerdict(
        norm="Open-Mindedness[Yes]",
        status=NormStatus.FAILS,
        constraint=constraint,
        trace=trace,
    )


def _open_mindedness_no(p: RavenPrior) -> NormVerdict:
    constraint = "exists evidence E: Pr(No | E) > 1/2"
    try:
        k = _first_positive_branch(p.branches)
    except Undetermined as exc:
        # a counterexample world beyond the head may or may not carry mass;
        # the null-evidence route can still settle the verdict
        if ONE - p.p_star > HyperReal(OPEN_MINDEDNESS_BAR):
            return NormVerdict(
                norm="Open-Mindedness[No]",
                status=NormStatus.HOLDS,
                witness=all_black_prefix(0),
                constraint=constraint,
                trace={"posterior_no_on_null_evidence": (ONE - p.p_star).to_text()},
            )
        return NormVerdict(
            norm="Open-Mindedness[No]",
            status=NormStatus.UNDETERMINED,
            constraint=constraint,
            trace={"reason": str(exc)},
        )
    if k is not None:
        return NormVerdict(
            norm="Open-Mindedness[No]",
            status=NormStatus.HOLDS,
            witness=nonblack_at(k, k),
            constraint=constraint,
            trace={"posterior": "1 (the counterexample entails No)"},
        )
    # no counterexample world carries mass, so only null-style evidence can
    # favor No: Pr(No | n black in a row) is maximal at n = 0, where it is
    # 1 - p*
    if ONE - p.p_star > HyperReal(OPEN_MINDEDNESS_BAR):
        return NormVerdict(
            norm="Open-Mindedness[No]",
            status=NormStatus.HOLDS,
            witness=all_black_prefix(0),
            constraint=constraint,
            trace={"posterior_no_on_null_evidence": (ONE - p.p_star).to_text()},
        )
    return NormVerdict(
        norm="Open-Mindedness[No]",
        status=NormStatus.FAILS,
        constraint=constraint,
        trace={
            "note": "all counterexample branches have zero mass and 1 - p* <= 1/2",
            "p_star": p.p_star.to_text(),
        },
    )


def check_simple_convergence(p: RavenPrior) -> NormVerdict:
    """In every world with a positive-probability evidence stream, the posterior
    in the true hypothesis must tend to 1; worlds whose streams hit probability
    zero count as failures (conditioning is undefined there).
    """
    constraint = "p* + sum_k p_k = 1, p* > 0, and every p_k > 0"
    trace: dict = {}

    try:
        trace["limit"] = str(posterior_limit(p))
    except ZeroEvidence as exc:
        return NormVerdict(
            norm="Simple Convergence",
            status=NormStatus.FAILS,
            witness=ALL_BLACK,
            constraint=constraint,
            trace={"note": f"undefined conditioning on the all-black stream: {exc}"},
        )
    except DivisionByInfinitesimal:
        trace["limit"] = None

    total = p.total_mass()
    trace["total_mass"] = str(total)
    mass_is_one = total.eq(ONE)
    if mass_is_one is False:
        return NormVerdict(
            norm="Simple Convergence",
            status=NormStatus.FAILS,
            witness=ALL_BLACK,
            constraint=constraint,
            trace=trace | {"note": "mass leaks past every finite stage; the limit falls short of 1"},
        )
    if mass_is_one is None:
        return NormVerdict(
            norm="Simple Convergence",
            status=NormStatus.UNDETERMINED,
            constraint=constraint,
            trace=trace,
        )
    if p.p_star == ZERO:
        return NormVerdict(
            norm="Simple Convergence",
            status=NormStatus.FAILS,
            witness=ALL_BLACK,
            constraint=constraint,
            trace=trace | {"note": "p* = 0: the posterior in Yes is identically 0 in the all-black world"},
        )
    try:
        k0 = p.branches.first_zero_index()
    except Undetermined as exc:
        return NormVerdict(
            norm="Simple Convergence",
            status=NormStatus.UNDETERMINED,
            constraint=constraint,
            trace=trace | {"reason": str(exc)},
        )
    if k0 is not None:
        return NormVerdict(
            norm="Simple Convergence",
            status=NormStatus.FAILS,
            witness=first_nonblack_at(k0),
            constraint=constraint,
            trace=trace
            | {"note": f"world {first_nonblack_at(k0)} has a zero-probability evidence stream"},
        )
    if p.p_star.std == 0:
        pure = p.branches.pure_tail_from()
        coeff = pure[1] if pure is not None else None
        if coeff is None or coeff.std != 0:
            return NormVerdict(
                norm="Simple Convergence",
                status=NormStatus.FAILS,
                witness=ALL_BLACK,
                constraint=constraint,
                trace=trace
                | {
                    "note": "p* is a pure infinitesimal against real-sized remaining "
                    "branch mass: the posterior in Yes stays infinitesimal at every "
                    "finite stage and has no limit in the ring"
                },
            )
        # everything past the head is infinitesimal-sized: the posterior is a
        # ratio of eps-coefficients and climbs to 1
        trace["note"] = "posterior rises through ratios of infinitesimal coefficients"
    trace["limit"] = "1"
    return NormVerdict(
        norm="Simple Convergence",
        status=NormStatus.HOLDS,
        constraint=constraint,
        trace=trace,
    )


def check_local_countable_additivity(p: RavenPrior) -> NormVerdict:
    """The branch masses of the tree, p* included, must sum to exactly 1."""
    constraint = "p* + sum_k p_k = 1"
    total = p.total_mass()
    verdict = total.eq(ONE)
    trace = {"total_mass": str(total)}
    if verdict is True:
        status = NormStatus.HOLDS
    elif verdict is False:
        status = NormStatus.FAILS
        trace["deficit"] = str(1 - total)
    else:
        status = NormStatus.UNDETERMINED
    return NormVerdict(
        norm="Local Countable Additivity",
        status=status,
        constraint=constraint,
        trace=trace,
    )


def backward_induce_pstar(branches: TailSequence) -> HyperReal:
    """The unique p* making the all-black posterior limit equal 1: p* = 1 - sum_k p_k.

    Solves the limit constraint only; branches with zero mass still leave
    their own worlds without defined conditioning. Raises InfeasiblePrior
    when the branch masses already sum to 1 (then p* = 0 and the limit
    degenerates), and Undetermined for bounded tails.
    """
    s = branches.total().exact_value()
    if s > ONE:
        raise ValueError(f"branch masses sum above 1: {s}")
    if s == ONE:
        raise InfeasiblePrior(
            "branch masses sum to exactly 1: p* = 0 and the posterior in Yes "
            "is identically 0, so no prior on these branches converges"
        )
    return ONE - s


@dataclass(frozen=True)
class ImplicationReport:
    """One instance of the convergence-to-additivity implication."""

    simple_convergence: NormVerdict
    local_countable_additivity: NormVerdict

    @property
    def implication_holds(self) -> bool | None:
        sc = self.simple_convergence.status
        ca = self.local_countable_additivity.status
        if NormStatus.UNDETERMINED in (sc, ca):
            return None
        if sc is NormStatus.HOLDS:
            return ca is NormStatus.HOLDS
        return True  # vacuous

    def to_json_dict(self) -> dict:
        return {
            "simple_convergence": self.simple_convergence.to_json_dict(),
            "local_countable_additivity": self.local_countable_additivity.to_json_dict(),
            "implication_holds": self.implication_holds,
        }


def derive_ca_from_convergence(p: RavenPrior) -> ImplicationReport:
    """Evaluate both checkers and report the implication instance for this prior."""
    return ImplicationReport(
        simple_convergence=check_simple_convergence(p),
        local_countable_additivity=check_local_countable_additivity(p),
    )
