"""Exact conditionalization on the raven tree: posteriors, limits, threshold solving.

Threshold questions ("is the posterior ever above t?") are decided without
division: for positive evidence probability D, Pr(Yes|E) > t iff p* > t*D,
and the right-hand comparison is exact in the first-order infinitesimal ring
even where the quotient itself is not representable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .credence import (
    ONE,
    ZERO,
    ExactOrBounds,
    ExplicitHead,
    FiniteThenGeometric,
    Geometric,
    HyperReal,
    Rational,
    RavenPrior,
    TailSequence,
    Undetermined,
    _as_fraction,
)
from .raven import ALL_BLACK, Evidence, Hypothesis, World, first_nonblack_at

_SEARCH_SAFETY_CAP = 1_000_000


class ZeroEvidence(ValueError):
    """Conditioning on evidence of probability zero is undefined."""


def evidence_probability(p: RavenPrior, e: Evidence) -> ExactOrBounds:
    """Prior probability of an evidence event, forced by finite additivity."""
    if e.is_all_black_prefix:
        return p.prefix_probability(e.n)
    return ExactOrBounds.exact(p.branch_mass(e.nonblack_at))


def posterior(p: RavenPrior, e: Evidence, h: Hypothesis) -> HyperReal:
    """Pr(h | e) = Pr(h and e) / Pr(e), exact in the ring.

    Raises ZeroEvidence when Pr(e) = 0, Undetermined when a bounded tail
    leaves Pr(e) unpinned, and DivisionByInfinitesimal when the quotient
    leaves the representable ring.
    """
    pr_e = evidence_probability(p, e).exact_value()
    if pr_e == ZERO:
        raise ZeroEvidence(f"evidence {e} has prior probability 0")
    if e.is_all_black_prefix:
        joint = p.p_star if h is Hypothesis.YES else pr_e - p.p_star
    else:
        joint = ZERO if h is Hypothesis.YES else pr_e
    return joint / pr_e


def posterior_limit(p: RavenPrior) -> ExactOrBounds:
    """Limit of Pr(Yes | n black ravens in a row) as n grows without bound.

    Exact value p* / (1 - sum_k p_k) where representable; bounds for
    explicit-head tails. Raises ZeroEvidence if some finite prefix already
    has probability 0, DivisionByInfinitesimal when the limiting denominator
    is a nonzero pure infinitesimal (the ratio leaves the ring).
    """
    n0 = _first_zero_prefix(p)
    if n0 is not None:
        raise ZeroEvidence(f"evidence 'n black ravens in a row' has probability 0 from n = {n0}")
    if p.p_star == ZERO:
        return ExactOrBounds.exact(ZERO)
    denom = 1 - p.branches.total()
    if denom.is_exact:
        return ExactOrBounds.exact(p.p_star / denom.exact_value())
    # true denominator is at least p*, whatever the unknown tail does
    lo = denom.lower if denom.lower > p.p_star else p.p_star
    hi = denom.upper
    limit_lower = p.p_star / hi
    limit_upper = ONE if lo.std == 0 else p.p_star / lo
    if limit_upper > ONE:
        limit_upper = ONE
    return ExactOrBounds.bounds(limit_lower, limit_upper)


def _first_zero_prefix(p: RavenPrior) -> int | None:
    """Least n with Pr(n black ravens in a row) = 0, or None."""
    pure = p.branches.pure_tail_from()
    scan_to = pure[0] if pure is not None else _explicit_head_len(p.branches)
    for n in range(scan_to + 1):
        d = p.prefix_probability(n)
        if d.is_exact and d.exact_value() == ZERO:
            return n
    # pure geometric tails keep every later prefix probability strictly above
    # the limit; explicit heads leave later stages only bounded, which cannot
    # certify an exact zero
    return None


def _explicit_head_len(branches: TailSequence) -> int:
    assert isinstance(branches, ExplicitHead)
    return len(branches.head)


def first_prefix_exceeding(p: RavenPrior, t: Rational) -> int | None:
    """Least n >= 0 with Pr(Yes | n black ravens in a row) > t, else None.

    t is an exact rational threshold, 0 <= t. The posterior sequence is
    nondecreasing, so the returned n is also the least N with the posterior
    above t for every later stage. Decided via p* > t * D_n, which stays
    exact even for infinitesimal-valued priors. Raises Undetermined when an
    explicit-head tail leaves the answer open.
    """
    t = _as_fraction(t)
    if t < 0:
        raise ValueError(f"threshold must be >= 0, got {t}")
    if p.p_star == ZERO:
        return None

    pure = p.branches.pure_tail_from()
    scan_to = pure[0] if pure is not None else _explicit_head_len(p.branches)
    for n in range(scan_to + 1):
        d = p.prefix_probability(n).exact_value()
        if d == ZERO:
            return None  # conditioning undefined from here on
        if p.p_star > t * d:
            return n

    if pure is None:
        return _explicit_tail_verdict(p, t)

    n0, coeff, r = pure
    # for n >= n0: D_n = D_inf + coeff * r^n
    d_inf = (1 - p.branches.total()).exact_value()
    margin = p.p_star - t * d_inf
    if margin <= ZERO:
        return None
    shrinking = t * coeff
    if shrinking == ZERO:
        return n0  # constant denominator; already caught in the scan
    if margin.std == 0 and shrinking.std > 0:
        # the gap to the threshold is infinitesimal but the remaining branch
        # mass is real-sized at every finite stage: no finite witness
        return None
    n = n0
    gap = shrinking * r**n
    steps = 0
    while margin - gap <= ZERO:
        n += 1
        gap = gap * r
        steps += 1
        if steps > _SEARCH_SAFETY_CAP:
            raise RuntimeError("threshold search failed to terminate")
    return n


def _explicit_tail_verdict(p: RavenPrior, t: Fraction) -> int | None:
    branches = p.branches
    assert isinstance(branches, ExplicitHead)
    if branches.tail_upper_bound == 0:
        return None  # denominator is constant beyond the head; scan was exhaustive
    head_end = len(branches.head)
    d_floor = 1 - branches.partial_sum(head_end).exact_value() - HyperReal(branches.tail_upper_bound)
    if d_floor < p.p_star:
        d_floor = p.p_star
    if p.p_star > t * d_floor:
        raise Undetermined(
            "threshold may be crossed beyond the explicit head, at an unknown stage"
        )
    return None


def least_threshold_n(p: RavenPrior, t: Rational) -> int | None:
    """Least N with Pr(Yes | n black in a row) > t for all n >= N; None if there is none.

    Requires a real-valued prior (no infinitesimal parts); by monotonicity
    the least such N is the first stage whose posterior exceeds t.
    """
    t = _as_fraction(t)
    if not 0 <= t < 1:
        raise ValueError(f"threshold must lie in [0, 1), got {t}")
    if not is_real_valued(p):
        raise ValueError("least_threshold_n requires a prior with zero infinitesimal parts")
    return first_prefix_exceeding(p, t)


def is_real_valued(p: RavenPrior) -> bool:
    """True when p* and every branch parameter have zero infinitesimal part."""
    if p.p_star.inf != 0:
        return False
    b = p.branches
    if isinstance(b, Geometric):
        return b.a.inf == 0
    if isinstance(b, FiniteThenGeometric):
        return all(h.inf == 0 for h in b.head) and b.tail.a.inf == 0
    if isinstance(b, ExplicitHead):
        return all(h.inf == 0 for h in b.head)
    raise TypeError(f"unknown tail sequence family: {type(b).__name__}")


@dataclass(frozen=True)
class PosteriorDistribution:
    """Renormalized masses of the worlds surviving some evidence.

    ``entries`` lists worlds up to the requested branch depth; ``residual``
    carries the remaining posterior mass (deeper branches plus any mass the
    prior leaks past all finite stages), so entries + residual sum to 1.
    """

    evidence: Evidence
    entries: tuple[tuple[World, HyperReal], ...]
    residual: HyperReal

    def mass_of(self, w: World) -> HyperReal:
        for world, mass in self.entries:
            if world == w:
                return mass
        return ZERO

    def check_normalized(self) -> bool:
        s = self.residual
        for _, mass in self.entries:
            s = s + mass
        return s == ONE


def posterior_distribution(p: RavenPrior, e: Evidence, depth: int) -> PosteriorDistribution:
    """Posterior over worlds up to branch ``depth``, with exact residual tail mass."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    pr_e = evidence_probability(p, e).exact_value()
    if pr_e == ZERO:
        raise ZeroEvidence(f"evidence {e} has prior probability 0")
    entries: list[tuple[World, HyperReal]] = []
    if e.is_all_black_prefix:
        entries.append((ALL_BLACK, p.p_star / pr_e))
        for k in range(e.n + 1, depth + 1):
            entries.append((first_nonblack_at(k), p.branch_mass(k) / pr_e))
    elif e.nonblack_at <= depth:
        entries.append((first_nonblack_at(e.nonblack_at), ONE))
    reported = ZERO
    for _, mass in entries:
        reported = reported + mass
    return PosteriorDistribution(
        evidence=e, entries=tuple(entries), residual=ONE - reported
    )


def condition_on_prefix(p: RavenPrior, n: int) -> RavenPrior:
    """The prior updated on "n black ravens in a row", as a prior in its own right.

    Branches up to n drop to zero; every surviving mass is divided by the
    evidence probability. Useful for chaining checks: updating on n and then
    on n + m agrees with updating once on n + m.
    """
    if n == 0:
        return p
    d = p.prefix_probability(n).exact_value()
    if d == ZERO:
        raise ZeroEvidence(f"evidence AllBlackPrefix({n}) has prior probability 0")
    b = p.branches
    new_star = p.p_star / d
    if isinstance(b, Geometric):
        cut = max(n, b.start - 1)
        head = tuple(ZERO if k <= n else b.term(k) / d for k in range(1, cut + 1))
        new_branches: TailSequence = FiniteThenGeometric(
            head=head, tail=Geometric(a=b.a / d, r=b.r, start=cut + 1)
        )
    elif isinstance(b, FiniteThenGeometric):
        cut = max(n, len(b.head))
        head = tuple(ZERO if k <= n else b.term(k) / d for k in range(1, cut + 1))
        new_branches = FiniteThenGeometric(
            head=head, tail=Geometric(a=b.tail.a / d, r=b.tail.r, start=cut + 1)
        )
    elif isinstance(b, ExplicitHead):
        if d.inf != 0:
            raise Undetermined("cannot rescale a bounded tail by a non-real renormalizer")
        cut = max(n, len(b.head))
        head = tuple(ZERO if k <= n else b.term(k) / d for k in range(1, cut + 1))
        new_branches = ExplicitHead(
            head=head, tail_upper_bound=b.tail_upper_bound / d.std
        )
    else:
        raise TypeError(f"unknown tail sequence family: {type(b).__name__}")
    return RavenPrior(p_star=new_star, branches=new_branches)
