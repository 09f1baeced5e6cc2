"""Norm checking and convergence experiments for Bayesian priors.

Two halves:

* an exact engine for the raven world tree (rationals extended by a
  first-order infinitesimal), with checkers for Regularity, Open-Mindedness,
  Simple Convergence, and local Countable Additivity, plus backward induction
  of the prior mass those norms force;
* a seeded Monte Carlo study of posterior concentration in nonparametric
  step-function regression, with closed-form conjugate evidence, and a
  three-level hierarchy of convergence modes.
"""

__version__ = "0.1.0"

from .credence import (
    EPSILON,
    ONE,
    ZERO,
    DivisionByInfinitesimal,
    ExactOrBounds,
    ExplicitHead,
    FiniteThenGeometric,
    Geometric,
    HyperReal,
    RavenPrior,
    Undetermined,
    half_geometric_prior,
    regular_infinitesimal_prior,
    total_mass,
)
from .norms import (
    ImplicationReport,
    InfeasiblePrior,
    NormStatus,
    NormVerdict,
    backward_induce_pstar,
    check_local_countable_additivity,
    check_open_mindedness,
    check_regularity,
    check_simple_convergence,
    derive_ca_from_convergence,
)
from .raven import (
    ALL_BLACK,
    Evidence,
    Hypothesis,
    World,
    all_black_prefix,
    evidence_prefix_of,
    first_nonblack_at,
    nonblack_at,
    true_hypothesis,
    world_satisfies,
)
from .update import (
    PosteriorDistribution,
    ZeroEvidence,
    condition_on_prefix,
    evidence_probability,
    first_prefix_exceeding,
    least_threshold_n,
    posterior,
    posterior_distribution,
    posterior_limit,
)

__all__ = [
    "EPSILON",
    "ONE",
    "ZERO",
    "DivisionByInfinitesimal",
    "ExactOrBounds",
    "ExplicitHead",
    "FiniteThenGeometric",
    "Geometric",
    "HyperReal",
    "RavenPrior",
    "Undetermined",
    "half_geometric_prior",
    "regular_infinitesimal_prior",
    "total_mass",
    "ImplicationReport",
    "InfeasiblePrior",
    "NormStatus",
    "NormVerdict",
    "backward_induce_pstar",
    "check_local_countable_additivity",
    "check_open_mindedness",
    "check_regularity",
    "check_simple_convergence",
    "derive_ca_from_convergence",
    "ALL_BLACK",
    "Evidence",
    "Hypothesis",
    "World",
    "all_black_prefix",
    "evidence_prefix_of",
    "first_nonblack_at",
    "nonblack_at",
    "true_hypothesis",
    "world_satisfies",
    "PosteriorDistribution",
    "ZeroEvidence",
    "condition_on_prefix",
    "evidence_probability",
    "first_prefix_exceeding",
    "least_threshold_n",
    "posterior",
    "posterior_distribution",
    "posterior_limit",
]
