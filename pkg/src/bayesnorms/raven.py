"""Worlds, hypotheses, and evidence events for the all-ravens-are-black problem.

The world set is coarse-grained by the position of the first nonblack raven:
either every observation is black forever, or the first counterexample shows
up at some position k >= 1. Observations after a counterexample carry no
information, so nothing finer is represented.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Hypothesis(enum.Enum):
    """Answers to "are all ravens black?"."""

    YES = "Yes"
    NO = "No"


@dataclass(frozen=True)
class World:
    """A possible world: ``first_nonblack is None`` means all ravens are black."""

    first_nonblack: int | None = None

    def __post_init__(self) -> None:
        if self.first_nonblack is not None and self.first_nonblack < 1:
            raise ValueError(f"first nonblack position must be >= 1, got {self.first_nonblack}")

    @property
    def is_all_black(self) -> bool:
        return self.first_nonblack is None

    def __str__(self) -> str:
        if self.is_all_black:
            return "AllBlack"
        return f"FirstNonBlackAt({self.first_nonblack})"


ALL_BLACK = World()


def first_nonblack_at(k: int) -> World:
    return World(first_nonblack=k)


@dataclass(frozen=True)
class Evidence:
    """An observed color record of length ``n``.

    ``nonblack_at is None`` encodes "n black ravens in a row"; otherwise the
    first nonblack raven was seen at position ``nonblack_at <= n``.
    """

    n: int
    nonblack_at: int | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"evidence length must be >= 0, got {self.n}")
        if self.nonblack_at is not None and not 1 <= self.nonblack_at <= self.n:
            raise ValueError(f"nonblack position {self.nonblack_at} outside 1..{self.n}")

    @property
    def is_all_black_prefix(self) -> bool:
        return self.nonblack_at is None

    def __str__(self) -> str:
        if self.is_all_black_prefix:
            return f"AllBlackPrefix({self.n})"
        return f"NonBlackAt({self.nonblack_at}, {self.n})"


def all_black_prefix(n: int) -> Evidence:
    """The event "n black ravens in a row"; n = 0 is the trivial event."""
    return Evidence(n=n)


def nonblack_at(j: int, n: int) -> Evidence:
    """The event "first nonblack raven at position j, within n observations"."""
    return Evidence(n=n, nonblack_at=j)


def true_hypothesis(w: World) -> Hypothesis:
    """The answer that is true in world ``w``."""
    return Hypothesis.YES if w.is_all_black else Hypothesis.NO


def world_satisfies(w: World, e: Evidence) -> bool:
    """Whether world ``w`` would produce the observation record ``e``."""
    if e.is_all_black_prefix:
        return w.is_all_black or w.first_nonblack > e.n
    return w.first_nonblack == e.nonblack_at


def evidence_prefix_of(w: World, n: int) -> Evidence:
    """The unique length-``n`` evidence true in ``w``."""
    if n < 0:
        raise ValueError(f"evidence length must be >= 0, got {n}")
    if w.is_all_black or w.first_nonblack > n:
        return all_black_prefix(n)
    return nonblack_at(w.first_nonblack, n)
