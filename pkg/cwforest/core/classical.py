"""Calkin-Wilf tree: the (1, 1) forest, whose only root is 1."""

from typing import List

from cwforest.core.forest import (
    DEFAULT_MAX_DEPTH,
    ForestConfig,
    TreeAddress,
    decompose,
    row,
    vertex_at,
)
from cwforest.core.rational import ONE, Rational, continued_fraction

CALKIN_WILF = ForestConfig(1, 1)


def cw_vertex(addr: TreeAddress) -> Rational:
    """Entry ``addr.index`` of row ``addr.row`` of the Calkin-Wilf tree."""
    return vertex_at(CALKIN_WILF, ONE, addr)


def cw_address_of(q: Rational) -> TreeAddress:
    return decompose(CALKIN_WILF, q).address


def newman_successor(q: Rational) -> Rational:
    """
    1 / (2 floor(q) + 1 - q).

    Inside a row this gives the next entry; the last entry n + 1 of row n is
    sent to 1/(n + 2), the first entry of row n + 1.
    """
    a, b = q.numer, q.denom
    return Rational(b, (2 * (a // b) + 1) * b - a)


def cw_sequence(count: int) -> List[Rational]:
    """The first ``count`` rationals in breadth-first Calkin-Wilf order."""
    terms: List[Rational] = []
    q = ONE
    for _ in range(count):
        terms.append(q)
        q = newman_successor(q)
    return terms


def cw_row_of(q: Rational) -> int:
    """Row of ``q``: the coefficient sum of its continued fraction, minus one."""
    return sum(continued_fraction(q)) - 1


def check_denominator_chain(n: int, max_depth: int = DEFAULT_MAX_DEPTH) -> bool:
    """
    Check row ``n`` starts at 1/(n + 1), ends at n + 1, and that each
    denominator is the numerator of the next entry.
    """
    entries = row(CALKIN_WILF, ONE, n, max_depth=max_depth)
    if entries[0] != Rational(1, n + 1) or entries[-1] != Rational(n + 1, 1):
        return False
    return all(left.denom == right.numer for left, right in zip(entries, entries[1:]))
