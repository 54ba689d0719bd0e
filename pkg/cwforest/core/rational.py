"""
Exact positive rationals.

Only the positive rationals exist in this package: every value is stored
reduced, with numerator and denominator both at least 1. Python integers are
arbitrary precision, so row entries may grow without bound.
"""

import math
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Dict, Iterable, Iterator, List

from cwforest.core.errors import InvalidRationalError

# "a/b" or "a", digits only: no signs, no spaces, no decimals
_RATIONAL_FORMAT = re.compile(r"(?P<num>[0-9]+)(?:/(?P<den>[0-9]+))?")


@total_ordering
@dataclass(frozen=True, slots=True)
class Rational:
    """A reduced positive fraction ``numer/denom``.

    The constructor validates but never reduces; use :func:`make_rational`
    for arbitrary input.
    """

    numer: int
    denom: int

    def __post_init__(self) -> None:
        if self.numer < 1 or self.denom < 1:
            raise InvalidRationalError(
                f"only positive rationals are modeled, got {self.numer}/{self.denom}"
            )
        if math.gcd(self.numer, self.denom) != 1:
            raise InvalidRationalError(f"{self.numer}/{self.denom} is not reduced")

    @classmethod
    def parse(cls, text: str) -> "Rational":
        """Parse ``"a/b"`` or ``"a"``; signs, spaces and zeros are rejected."""
        match = _RATIONAL_FORMAT.fullmatch(text)
        if match is None:
            raise InvalidRationalError(f"malformed rational {text!r}")
        den = match.group("den")
        return make_rational(int(match.group("num")), int(den) if den is not None else 1)

    def is_integer(self) -> bool:
        return self.denom == 1

    def floor(self) -> int:
        return self.numer // self.denom

    def reciprocal(self) -> "Rational":
        return Rational(self.denom, self.numer)

    def add_int(self, k: int) -> "Rational":
        """Return ``self + k`` for an integer ``k >= 0``; gcd is unchanged."""
        if k < 0:
            raise InvalidRationalError("only nonnegative integers may be added")
        return Rational(self.numer + k * self.denom, self.denom)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Rational):
            return NotImplemented
        return self.numer * other.denom < other.numer * self.denom

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.numer)
        return f"{self.numer}/{self.denom}"

    def to_dict(self) -> Dict[str, int]:
        """JSON form, always with an explicit denominator."""
        return {"n": self.numer, "d": self.denom}


ONE = Rational(1, 1)


def make_rational(n: int, d: int) -> Rational:
    """
    Build the reduced form of ``n/d``.

    Args:
        n: Numerator, at least 1
        d: Denominator, at least 1

    Returns:
        The reduced Rational

    Raises:
        InvalidRationalError: If either argument is zero or negative
    """
    if n < 1 or d < 1:
        raise InvalidRationalError(f"only positive rationals are modeled, got {n}/{d}")
    g = math.gcd(n, d)
    return Rational(n // g, d // g)


def height(q: Rational) -> int:
    """max(numerator, denominator); strictly increases from parent to child."""
    return max(q.numer, q.denom)


def continued_fraction(q: Rational) -> List[int]:
    """
    Expand ``q`` with the Euclidean algorithm.

    The short canonical form is returned: ``a0 = floor(q) >= 0``, every later
    coefficient is at least 1, and the last one is at least 2 whenever the list
    has more than one entry.

    Args:
        q: A positive rational

    Returns:
        Coefficients [a0, a1, ..., ak]
    """
    a, b = q.numer, q.denom
    coefficients = []
    while b:
        quotient, remainder = divmod(a, b)
        coefficients.append(quotient)
        a, b = b, remainder
    return coefficients


def from_continued_fraction(coefficients: Iterable[int]) -> Rational:
    """Evaluate [a0, ..., ak] back into a reduced rational."""
    terms = list(coefficients)
    if not terms:
        raise InvalidRationalError("empty continued fraction")
    # p/q convergent recurrence keeps numerator and denominator coprime
    p_prev, p = 1, terms[0]
    q_prev, q = 0, 1
    for term in terms[1:]:
        if term < 1:
            raise InvalidRationalError("coefficients after the first must be positive")
        p_prev, p = p, term * p + p_prev
        q_prev, q = q, term * q + q_prev
    return Rational(p, q)


def reduced_rationals(height_bound: int) -> Iterator[Rational]:
    """
    Every reduced positive rational of height at most ``height_bound``.

    Ordered lexicographically by (denominator, numerator), which is the
    deterministic order the verification sweeps report witnesses in. Values
    are produced lazily, one denominator at a time.
    """
    for d in range(1, height_bound + 1):
        for n in range(1, height_bound + 1):
            if math.gcd(n, d) == 1:
                yield Rational(n, d)


def farey_walk(low_denom: int, height_bound: int, descending: bool = False) -> Iterator[Rational]:
    """
    Reduced fractions in [1/low_denom, 1] with denominator <= height_bound, in order.

    Consecutive Farey neighbours determine the next one, so the walk runs in
    constant memory. Ascending starts at 1/low_denom, descending starts at 1.

    Raises:
        InvalidRationalError: If low_denom is not in 1..height_bound
    """
    if not 1 <= low_denom <= height_bound:
        raise InvalidRationalError(f"1/{low_denom} is outside height {height_bound}")
    if low_denom == 1:
        yield ONE
        return
    if descending:
        a, b, c, d = 1, 1, height_bound - 1, height_bound
        stop = (1, low_denom)
    else:
        m = (height_bound + 1) // low_denom
        a, b, c, d = 1, low_denom, m, low_denom * m - 1
        stop = (1, 1)
    yield Rational(a, b)
    while True:
        yield Rational(c, d)
        if (c, d) == stop:
            return
        k = (height_bound + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
