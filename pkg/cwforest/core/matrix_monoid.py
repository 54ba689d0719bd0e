"""
2x2 nonnegative integer matrices acting as linear fractional transformations.

A path word reads root to leaf. ``word_to_matrix("LR", u, v)`` is ``R_v @ L_u``:
the matrix that sends a root to the vertex reached by first taking the left
child and then the right child.
"""

import itertools
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from loguru import logger

from cwforest.core.errors import InvalidAddressError, InvalidMatrixError, ResourceLimitError
from cwforest.core.rational import Rational, make_rational

LETTERS = ("L", "R")
_MATRIX_FORMAT = re.compile(r"\[\[([0-9]+),([0-9]+)\],\[([0-9]+),([0-9]+)\]\]")


@dataclass(frozen=True, slots=True)
class Mat2:
    """[[a11, a12], [a21, a22]] with nonnegative entries and nonzero determinant."""

    a11: int
    a12: int
    a21: int
    a22: int

    def __post_init__(self) -> None:
        if min(self.a11, self.a12, self.a21, self.a22) < 0:
            raise InvalidMatrixError(f"negative entry in {self}")
        if self.determinant() == 0:
            raise InvalidMatrixError(f"singular matrix {self}")

    def determinant(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a11, self.a12, self.a21, self.a22)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __str__(self) -> str:
        return f"[[{self.a11},{self.a12}],[{self.a21},{self.a22}]]"


IDENTITY = Mat2(1, 0, 0, 1)


@dataclass(frozen=True, slots=True)
class PathWord:
    """A finite word over {L, R}; the empty word addresses the root itself."""

    letters: str = ""

    def __post_init__(self) -> None:
        if any(letter not in LETTERS for letter in self.letters):
            raise InvalidAddressError(f"path word may only contain L and R, got {self.letters!r}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __add__(self, other: "PathWord") -> "PathWord":
        return PathWord(self.letters + other.letters)

    def __str__(self) -> str:
        return self.letters


def parse_word(text: str) -> PathWord:
    return PathWord(text)


def format_matrix(m: Mat2) -> str:
    """Report form ``[[a11,a12],[a21,a22]]``, no spaces."""
    return str(m)


def parse_matrix(text: str) -> Mat2:
    """Parse the report format [[a11,a12],[a21,a22]]; spaces are ignored."""
    match = _MATRIX_FORMAT.fullmatch(text.replace(" ", ""))
    if match is None:
        raise InvalidMatrixError(f"malformed matrix {text!r}")
    return Mat2(*(int(entry) for entry in match.groups()))


def mat_L(u: int) -> Mat2:
    """L_u = [[1, 0], [u, 1]], the map w -> w / (u w + 1)."""
    if u < 1:
        raise InvalidMatrixError(f"u must be a positive integer, got {u}")
    return Mat2(1, 0, u, 1)


def mat_R(v: int) -> Mat2:
    """R_v = [[1, v], [0, 1]], the map w -> w + v."""
    if v < 1:
        raise InvalidMatrixError(f"v must be a positive integer, got {v}")
    return Mat2(1, v, 0, 1)


def apply_unreduced(m: Mat2, w: Rational) -> Tuple[int, int]:
    """Numerator and denominator of m(w) before any gcd reduction."""
    numer = m.a11 * w.numer + m.a12 * w.denom
    denom = m.a21 * w.numer + m.a22 * w.denom
    if denom == 0:
        raise InvalidMatrixError(f"{m} has a pole at {w}")
    return numer, denom


def apply(m: Mat2, w: Rational) -> Rational:
    """
    Evaluate the linear fractional transformation (a11 w + a12) / (a21 w + a22).

    Args:
        m: The matrix
        w: A positive rational

    Returns:
        The reduced value
    """
    return make_rational(*apply_unreduced(m, w))


def theorem1_check(a: Mat2, b: Mat2) -> bool:
    """
    Sufficient condition for A and B to freely generate their monoid.

    True iff a11 <= a21, a12 <= a22, b11 >= b21 and b12 >= b22. Under these
    hypotheses 0 < A(w) < 1 < B(w) for every positive w.
    """
    return a.a11 <= a.a21 and a.a12 <= a.a22 and b.a11 >= b.a21 and b.a12 >= b.a22


def word_to_matrix(word: PathWord, u: int, v: int) -> Mat2:
    """Product of the generators along ``word``, latest letter leftmost."""
    generators = {"L": mat_L(u), "R": mat_R(v)}
    result = IDENTITY
    for letter in word:
        result = generators[letter] @ result
    return result


def factor(m: Mat2, u: int, v: int) -> Optional[PathWord]:
    """
    Solve the word problem for the monoid generated by L_u and R_v.

    Peels the last letter of the word off the left of the product: L_u when
    row 2 dominates u times row 1, R_v when row 1 dominates v times row 2.
    The two tests never both pass on a nonsingular matrix, so the word found
    is the unique one.

    Args:
        m: Matrix to factor
        u: Parameter of L_u
        v: Parameter of R_v

    Returns:
        The word w with word_to_matrix(w, u, v) == m, or None if m is not in
        the monoid
    """
    a11, a12, a21, a22 = m.entries()
    letters: List[str] = []
    while (a11, a12, a21, a22) != IDENTITY.entries():
        peel_left = a21 >= u * a11 and a22 >= u * a12
        peel_right = a11 >= v * a21 and a12 >= v * a22
        assert not (peel_left and peel_right)
        if peel_left:
            a21, a22 = a21 - u * a11, a22 - u * a12
            letters.append("L")
        elif peel_right:
            a11, a12 = a11 - v * a21, a12 - v * a22
            letters.append("R")
        else:
            logger.debug(f"{m} is not in the monoid generated by L_{u}, R_{v}")
            return None
    return PathWord("".join(reversed(letters)))


@dataclass(frozen=True)
class FreenessReport:
    """Outcome of a bounded freeness probe."""

    distinct: bool
    word_count: int
    maxlen: int
    collision: Optional[Tuple[PathWord, PathWord]] = None


def _shortlex_words(maxlen: int, prefix: str = "") -> Iterator[str]:
    for length in range(len(prefix), maxlen + 1):
        for tail in itertools.product(LETTERS, repeat=length - len(prefix)):
            yield prefix + "".join(tail)


def _products_for_prefix(a: Mat2, b: Mat2, prefix: str, maxlen: int) -> List[Tuple[str, Mat2]]:
    generators = {"L": a, "R": b}
    products = []
    for word in _shortlex_words(maxlen, prefix):
        result = IDENTITY
        for letter in word:
            result = generators[letter] @ result
        products.append((word, result))
    return products


def freeness_probe_pair(
    a: Mat2, b: Mat2, maxlen: int, max_word_length: int = 20, workers: int = 1
) -> FreenessReport:
    """
    Check that every word of length <= maxlen over {A, B} gives a distinct matrix.

    The word space is split by two-letter prefix across a thread pool; results
    are merged in shortlex order so the reported collision is the same for any
    worker count. ``word_count`` counts the non-empty words; the identity is
    included in the distinctness check as well.

    Raises:
        ResourceLimitError: If maxlen exceeds max_word_length
    """
    if maxlen < 1:
        raise InvalidAddressError(f"maxlen must be positive, got {maxlen}")
    if maxlen > max_word_length:
        logger.warning(f"freeness probe refused: maxlen {maxlen} > cap {max_word_length}")
        raise ResourceLimitError("maxlen", maxlen, max_word_length)

    split = min(2, maxlen)
    products = _products_for_prefix(a, b, "", split - 1)
    prefixes = ["".join(p) for p in itertools.product(LETTERS, repeat=split)]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        for chunk in pool.map(lambda p: _products_for_prefix(a, b, p, maxlen), prefixes):
            products.extend(chunk)
    products.sort(key=lambda item: (len(item[0]), item[0]))

    seen: Dict[Tuple[int, int, int, int], str] = {}
    for word, matrix in products:
        key = matrix.entries()
        if key in seen:
            logger.info(f"collision: {seen[key]!r} and {word!r} both give {format_matrix(matrix)}")
            return FreenessReport(
                distinct=False,
                word_count=len(products) - 1,
                maxlen=maxlen,
                collision=(PathWord(seen[key]), PathWord(word)),
            )
        seen[key] = word

    logger.debug(f"{len(products)} words up to length {maxlen} give distinct matrices")
    return FreenessReport(distinct=True, word_count=len(products) - 1, maxlen=maxlen)


def freeness_probe(
    u: int, v: int, maxlen: int, max_word_length: int = 20, workers: int = 1
) -> FreenessReport:
    """Bounded freeness certificate for the pair (L_u, R_v)."""
    return freeness_probe_pair(mat_L(u), mat_R(v), maxlen, max_word_length, workers)
