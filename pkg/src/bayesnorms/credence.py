"""Exact credence arithmetic: rationals extended by a first-order infinitesimal.

Every quantity that feeds a norm verdict is computed in the ring
{a + b*eps : a, b rational} with eps^2 truncated to 0, ordered
lexicographically, so eps is a genuine positive infinitesimal. Branch masses
of an infinite prior are given by tail-summable sequence families whose
infinite sums have closed forms, so totals and limits are exact rather than
approximated.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction


class DivisionByInfinitesimal(ArithmeticError):
    """Raised when a quotient leaves the first-order ring (divisor has zero standard part)."""


class Undetermined(Exception):
    """Raised when a bounded-tail sequence cannot support an exact answer."""


Rational = Fraction | int


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True)
class HyperReal:
    """a + b*eps with exact rational parts; ordered lexicographically.

    The order makes eps positive yet smaller than every positive rational:
    a + b*eps < c + d*eps iff a < c, or a == c and b < d.
    """

    std: Fraction = Fraction(0)
    inf: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "std", _as_fraction(self.std))
        object.__setattr__(self, "inf", _as_fraction(self.inf))

    @staticmethod
    def coerce(x: "HyperReal | Rational") -> "HyperReal":
        if isinstance(x, HyperReal):
            return x
        return HyperReal(_as_fraction(x))

    @property
    def is_pure_infinitesimal(self) -> bool:
        return self.std == 0 and self.inf != 0

    # ring operations (eps^2 truncated to 0)

    def __add__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return HyperReal(self.std + o.std, self.inf + o.inf)

    __radd__ = __add__

    def __neg__(self):
        return HyperReal(-self.std, -self.inf)

    def __sub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return HyperReal(self.std - o.std, self.inf - o.inf)

    def __rsub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return HyperReal(self.std * o.std, self.std * o.inf + self.inf * o.std)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        if o.std == 0:
            raise DivisionByInfinitesimal(f"cannot divide by {o}: standard part is zero")
        return HyperReal(
            self.std / o.std,
            (self.inf * o.std - self.std * o.inf) / (o.std * o.std),
        )

    def __rtruediv__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return o / self

    # lexicographic total order

    def _key(self) -> tuple[Fraction, Fraction]:
        return (self.std, self.inf)

    def __eq__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self._key() == o._key()

    def __lt__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self._key() < o._key()

    def __le__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self._key() <= o._key()

    def __gt__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self._key() > o._key()

    def __ge__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self._key() >= o._key()

    def __hash__(self):
        return hash(self._key())

    def __bool__(self):
        return self.std != 0 or self.inf != 0

    def __float__(self):
        # standard part only; the infinitesimal part has no float image
        return float(self.std)

    # text form: "num/den + num/den*eps", bit-exact round trip

    def to_text(self) -> str:
        a, b = self.std, self.inf
        return f"{a.numerator}/{a.denominator} + {b.numerator}/{b.denominator}*eps"

    @classmethod
    def from_text(cls, text: str) -> "HyperReal":
        return parse_hyperreal(text)

    def __str__(self) -> str:
        if self.inf == 0:
            return str(self.std)
        if self.std == 0:
            return f"{self.inf}*eps"
        sign = "+" if self.inf > 0 else "-"
        return f"{self.std} {sign} {abs(self.inf)}*eps"

    def __repr__(self) -> str:
        return f"HyperReal({self.std!r}, {self.inf!r})"


def _maybe(x) -> HyperReal | None:
    if isinstance(x, HyperReal):
        return x
    if isinstance(x, (int, Fraction)):
        return HyperReal(Fraction(x))
    return None


ZERO = HyperReal()
ONE = HyperReal(Fraction(1))
EPSILON = HyperReal(Fraction(0), Fraction(1))

_RAT = r"[+-]?\d+(?:/\d+)?"
_RE_PLAIN = re.compile(rf"^({_RAT})$")
_RE_EPS_ONLY = re.compile(rf"^({_RAT})\*eps$")
_RE_FULL = re.compile(rf"^({_RAT})\s*([+-])\s*({_RAT})\*eps$")


def parse_hyperreal(text: str) -> HyperReal:
    """Parse "a + b*eps" (rationals as num/den or integers); also accepts "a", "b*eps", "eps"."""
    s = text.strip()
    if s == "eps":
        return EPSILON
    if s == "-eps":
        return -EPSILON
    m = _RE_PLAIN.match(s)
    if m:
        return HyperReal(Fraction(m.group(1)))
    m = _RE_EPS_ONLY.match(s)
    if m:
        return HyperReal(Fraction(0), Fraction(m.group(1)))
    m = _RE_FULL.match(s)
    if m:
        sign = 1 if m.group(2) == "+" else -1
        return HyperReal(Fraction(m.group(1)), sign * Fraction(m.group(3)))
    raise ValueError(f"cannot parse hyperreal text: {text!r}")


@dataclass(frozen=True)
class ExactOrBounds:
    """Either an exact ring value or an inclusive interval certainly containing it."""

    lower: HyperReal
    upper: HyperReal

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", HyperReal.coerce(self.lower))
        object.__setattr__(self, "upper", HyperReal.coerce(self.upper))
        if self.lower > self.upper:
            raise ValueError(f"empty interval: [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, v: HyperReal | Rational) -> "ExactOrBounds":
        v = HyperReal.coerce(v)
        return cls(v, v)

    @classmethod
    def bounds(cls, lower, upper) -> "ExactOrBounds":
        return cls(HyperReal.coerce(lower), HyperReal.coerce(upper))

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def exact_value(self) -> HyperReal:
        if not self.is_exact:
            raise Undetermined(f"value only bounded: [{self.lower}, {self.upper}]")
        return self.lower

    # three-valued comparisons: True / False when certain, None otherwise

    def eq(self, x) -> bool | None:
        x = HyperReal.coerce(x)
        if self.is_exact:
            return self.lower == x
        if x < self.lower or x > self.upper:
            return False
        return None

    def gt(self, x) -> bool | None:
        x = HyperReal.coerce(x)
        if self.lower > x:
            return True
        if self.upper <= x:
            return False
        return None

    def lt(self, x) -> bool | None:
        x = HyperReal.coerce(x)
        if self.upper < x:
            return True
        if self.lower >= x:
            return False
        return None

    def __add__(self, other):
        if isinstance(other, ExactOrBounds):
            return ExactOrBounds(self.lower + other.lower, self.upper + other.upper)
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return ExactOrBounds(self.lower + o, self.upper + o)

    __radd__ = __add__

    def __rsub__(self, other):
        # x - [lo, hi] = [x - hi, x - lo]
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return ExactOrBounds(o - self.upper, o - self.lower)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lower)
        return f"[{self.lower}, {self.upper}]"


class TailSequence(ABC):
    """A branch-mass sequence p_1, p_2, ... with analytically summable tails."""

    @abstractmethod
    def term(self, k: int) -> HyperReal:
        """p_k; raises Undetermined where the family does not pin the term down."""

    @abstractmethod
    def partial_sum(self, n: int) -> ExactOrBounds:
        """Sum of p_1..p_n."""

    @abstractmethod
    def tail_sum(self, from_k: int) -> ExactOrBounds:
        """Sum of p_k for k >= from_k, evaluated in closed form."""

    @abstractmethod
    def first_zero_index(self) -> int | None:
        """Least k with p_k == 0, or None if every term is positive.

        Raises Undetermined when the family leaves term positivity open.
        """

    def total(self) -> ExactOrBounds:
        return self.tail_sum(1)

    def pure_tail_from(self) -> tuple[int, HyperReal, Fraction] | None:
        """(n0, A, r) with sum_{k>n} p_k == A * r**n for every n >= n0, if available."""
        return None


def _check_nonnegative_terms(terms, what: str) -> tuple[HyperReal, ...]:
    out = []
    for i, t in enumerate(terms):
        t = HyperReal.coerce(t)
        if t < ZERO:
            raise ValueError(f"{what} term {i + 1} is negative: {t}")
        out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class Geometric(TailSequence):
    """p_k = a * r**k for k >= start; zero below start."""

    a: HyperReal
    r: Fraction
    start: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", HyperReal.coerce(self.a))
        object.__setattr__(self, "r", _as_fraction(self.r))
        if not 0 < self.r < 1:
            raise ValueError(f"geometric ratio must be in (0, 1), got {self.r}")
        if self.start < 1:
            raise ValueError(f"start index must be >= 1, got {self.start}")
        if self.a < ZERO:
            raise ValueError(f"geometric coefficient is negative: {self.a}")

    def term(self, k: int) -> HyperReal:
        if k < self.start:
            return ZERO
        return self.a * self.r**k

    def partial_sum(self, n: int) -> ExactOrBounds:
        if n < self.start:
            return ExactOrBounds.exact(ZERO)
        # a * (r^start - r^(n+1)) / (1 - r)
        s = self.a * ((self.r**self.start - self.r ** (n + 1)) / (1 - self.r))
        return ExactOrBounds.exact(s)

    def tail_sum(self, from_k: int) -> ExactOrBounds:
        m = max(from_k, self.start)
        return ExactOrBounds.exact(self.a * (self.r**m / (1 - self.r)))

    def first_zero_index(self) -> int | None:
        if self.start > 1 or self.a == ZERO:
            return 1
        return None

    def pure_tail_from(self) -> tuple[int, HyperReal, Fraction]:
        coeff = self.a * (self.r / (1 - self.r))
        return (self.start - 1, coeff, self.r)


@dataclass(frozen=True)
class FiniteThenGeometric(TailSequence):
    """Explicit head p_1..p_m followed by a geometric tail starting at m + 1."""

    head: tuple[HyperReal, ...]
    tail: Geometric

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", _check_nonnegative_terms(self.head, "head"))
        if self.tail.start != len(self.head) + 1:
            raise ValueError(
                f"geometric tail must start at {len(self.head) + 1}, got {self.tail.start}"
            )

    def term(self, k: int) -> HyperReal:
        if k <= len(self.head):
            return self.head[k - 1]
        return self.tail.term(k)

    def partial_sum(self, n: int) -> ExactOrBounds:
        s = ZERO
        for t in self.head[:n]:
            s = s + t
        return self.tail.partial_sum(n) + s

    def tail_sum(self, from_k: int) -> ExactOrBounds:
        s = ZERO
        for k in range(from_k, len(self.head) + 1):
            s = s + self.head[k - 1]
        return self.tail.tail_sum(max(from_k, self.tail.start)) + s

    def first_zero_index(self) -> int | None:
        for i, t in enumerate(self.head):
            if t == ZERO:
                return i + 1
        if self.tail.a == ZERO:
            return len(self.head) + 1
        return None

    def pure_tail_from(self) -> tuple[int, HyperReal, Fraction]:
        n0, coeff, r = self.tail.pure_tail_from()
        return (max(n0, len(self.head)), coeff, r)


@dataclass(frozen=True)
class ExplicitHead(TailSequence):
    """Explicit head p_1..p_m; beyond it only sum_{k>m} p_k <= tail_upper_bound is known."""

    head: tuple[HyperReal, ...]
    tail_upper_bound: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", _check_nonnegative_terms(self.head, "head"))
        object.__setattr__(self, "tail_upper_bound", _as_fraction(self.tail_upper_bound))
        if self.tail_upper_bound < 0:
            raise ValueError(f"tail upper bound is negative: {self.tail_upper_bound}")

    def term(self, k: int) -> HyperReal:
        if k <= len(self.head):
            return self.head[k - 1]
        if self.tail_upper_bound == 0:
            return ZERO
        raise Undetermined(f"term {k} lies beyond the explicit head")

    def partial_sum(self, n: int) -> ExactOrBounds:
        s = ZERO
        for t in self.head[:n]:
            s = s + t
        if n <= len(self.head) or self.tail_upper_bound == 0:
            return ExactOrBounds.exact(s)
        return ExactOrBounds.bounds(s, s + HyperReal(self.tail_upper_bound))

    def tail_sum(self, from_k: int) -> ExactOrBounds:
        s = ZERO
        for k in range(from_k, len(self.head) + 1):
            s = s + self.head[k - 1]
        if self.tail_upper_bound == 0:
            return ExactOrBounds.exact(s)
        return ExactOrBounds.bounds(s, s + HyperReal(self.tail_upper_bound))

    def first_zero_index(self) -> int | None:
        for i, t in enumerate(self.head):
            if t == ZERO:
                return i + 1
        if self.tail_upper_bound == 0:
            return len(self.head) + 1
        raise Undetermined("term positivity beyond the explicit head is unknown")


@dataclass(frozen=True)
class RavenPrior:
    """Atomic credences on the world tree: mass on the all-black branch plus the p_k sequence.

    Finite additivity only forces the masses of finite unions, so the total
    p* + sum_k p_k may fall short of 1; the shortfall is mass the prior leaks
    past every finite stage.
    """

    p_star: HyperReal
    branches: TailSequence

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_star", HyperReal.coerce(self.p_star))
        if self.p_star < ZERO:
            raise ValueError(f"p* is negative: {self.p_star}")
        total = self.total_mass()
        if total.lower > ONE:
            raise ValueError(f"prior mass exceeds 1: {total}")

    def branch_mass(self, k: int) -> HyperReal:
        if k < 1:
            raise ValueError(f"branch index must be >= 1, got {k}")
        return self.branches.term(k)

    def prefix_probability(self, n: int) -> ExactOrBounds:
        """Pr(n black ravens in a row) = 1 - sum_{k<=n} p_k, forced by finite additivity."""
        if n < 0:
            raise ValueError(f"prefix length must be >= 0, got {n}")
        return 1 - self.branches.partial_sum(n)

    def total_mass(self) -> ExactOrBounds:
        return self.branches.total() + self.p_star


def total_mass(p: RavenPrior) -> ExactOrBounds:
    """p* plus the closed-form sum of every branch mass."""
    return p.total_mass()


def regular_infinitesimal_prior() -> RavenPrior:
    """The regular-via-infinitesimals prior: p* = eps, p_1 = 1/2 - eps, p_k = 2^-k after.

    Total mass is exactly 1 while the all-black branch carries only an
    infinitesimal; branch mass past stage n sums to exactly 2^-n for every
    n >= 1, which is what keeps the all-black posterior infinitesimal.
    """
    return RavenPrior(
        p_star=EPSILON,
        branches=FiniteThenGeometric(
            head=(HyperReal(Fraction(1, 2), Fraction(-1)),),
            tail=Geometric(a=ONE, r=Fraction(1, 2), start=2),
        ),
    )


def half_geometric_prior() -> RavenPrior:
    """The fully convergent prior: p* = 1/2, p_k = 2^-(k+1); total mass exactly 1."""
    return RavenPrior(
        p_star=HyperReal(Fraction(1, 2)),
        branches=Geometric(a=HyperReal(Fraction(1, 2)), r=Fraction(1, 2), start=1),
    )
