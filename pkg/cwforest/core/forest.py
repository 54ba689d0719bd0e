"""
The forest of rooted infinite binary trees generated by L_u and R_v.

Every vertex w = a/b has the left child a/(ua + b) and the right child
(a + vb)/b. The roots of the forest are the orphans, the rationals in the
closed interval [1/u, v]; every other positive rational has exactly one
parent, and following parents always reaches an orphan because the height
drops at each step.

Addresses: the vertex (n, i) of a tree is reached from the root by the path
whose letters are the n binary digits of i - 1, most significant first, with
0 read as L and 1 as R.
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from loguru import logger

from cwforest.core.errors import InvalidAddressError, InvalidMatrixError, ResourceLimitError
from cwforest.core.matrix_monoid import Mat2, PathWord, mat_L, mat_R
from cwforest.core.rational import Rational, farey_walk

DEFAULT_MAX_DEPTH = 24


@dataclass(frozen=True, slots=True)
class ForestConfig:
    """The parameter pair (u, v) selecting the generators L_u and R_v."""

    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u < 1 or self.v < 1:
            raise InvalidMatrixError(f"u and v must be positive integers, got ({self.u}, {self.v})")

    def swapped(self) -> "ForestConfig":
        return ForestConfig(self.v, self.u)

    @property
    def left(self) -> Mat2:
        return mat_L(self.u)

    @property
    def right(self) -> Mat2:
        return mat_R(self.v)


@dataclass(frozen=True, slots=True)
class TreeAddress:
    """Row n >= 0 and position 1 <= i <= 2^n inside one tree."""

    row: int
    index: int

    def __post_init__(self) -> None:
        if self.row < 0:
            raise InvalidAddressError(f"row must be nonnegative, got {self.row}")
        if not 1 <= self.index <= 1 << self.row:
            raise InvalidAddressError(
                f"index {self.index} out of range 1..{1 << self.row} for row {self.row}"
            )

    def mirror(self) -> "TreeAddress":
        """The position 2^n + 1 - i on the same row."""
        return TreeAddress(self.row, (1 << self.row) + 1 - self.index)


@dataclass(frozen=True)
class Decomposition:
    root: Rational
    word: PathWord
    address: TreeAddress


def address_to_path(addr: TreeAddress) -> PathWord:
    if addr.row == 0:
        return PathWord()
    bits = format(addr.index - 1, f"0{addr.row}b")
    return PathWord(bits.replace("0", "L").replace("1", "R"))


def path_to_address(word: PathWord) -> TreeAddress:
    if not word:
        return TreeAddress(0, 1)
    bits = word.letters.replace("L", "0").replace("R", "1")
    return TreeAddress(len(word), int(bits, 2) + 1)


def children(cfg: ForestConfig, w: Rational) -> Tuple[Rational, Rational]:
    """
    Left and right children of ``w``.

    Both generators have determinant 1, so the children come out reduced with
    no gcd step; Rational's constructor rejects them otherwise.
    """
    a, b = w.numer, w.denom
    return Rational(a, cfg.u * a + b), Rational(a + cfg.v * b, b)


def vertex_at(cfg: ForestConfig, root: Rational, addr: TreeAddress) -> Rational:
    """
    The vertex at ``addr`` in the tree rooted at ``root``.

    ``root`` need not be an orphan; trees may hang from any positive rational.

    Args:
        cfg: Forest parameters
        root: Root of the tree
        addr: Row and position

    Returns:
        The rational found by descending the address path
    """
    a, b = root.numer, root.denom
    for letter in address_to_path(addr):
        if letter == "L":
            b = cfg.u * a + b
        else:
            a = a + cfg.v * b
    return Rational(a, b)


def _check_depth(n: int, max_depth: int) -> None:
    if n < 0:
        raise InvalidAddressError(f"row must be nonnegative, got {n}")
    if n > max_depth:
        logger.warning(f"row {n} refused: depth cap is {max_depth}")
        raise ResourceLimitError("depth", n, max_depth)


def _next_level(cfg: ForestConfig, level: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    u, v = cfg.u, cfg.v
    following: List[Tuple[int, int]] = []
    for a, b in level:
        following.append((a, u * a + b))
        following.append((a + v * b, b))
    return following


def row(
    cfg: ForestConfig, root: Rational, n: int, max_depth: int = DEFAULT_MAX_DEPTH
) -> List[Rational]:
    """
    All 2^n vertices of row ``n``, left to right, in one level-order sweep.

    Raises:
        ResourceLimitError: If n exceeds max_depth
    """
    _check_depth(n, max_depth)
    level = [(root.numer, root.denom)]
    for _ in range(n):
        level = _next_level(cfg, level)
    return [Rational(a, b) for a, b in level]


def subtree_rows(
    cfg: ForestConfig, root: Rational, depth: int, max_depth: int = DEFAULT_MAX_DEPTH
) -> List[List[Rational]]:
    """Rows 0..depth of the tree at ``root``, sharing one sweep."""
    _check_depth(depth, max_depth)
    level = [(root.numer, root.denom)]
    rows = [[root]]
    for _ in range(depth):
        level = _next_level(cfg, level)
        rows.append([Rational(a, b) for a, b in level])
    return rows


def is_orphan(cfg: ForestConfig, q: Rational) -> bool:
    """True iff 1/u <= q <= v, endpoints included."""
    return q.denom <= cfg.u * q.numer and q.numer <= cfg.v * q.denom


def parent(cfg: ForestConfig, q: Rational) -> Optional[Tuple[Rational, str]]:
    """
    The parent of ``q`` and the side ``q`` hangs on, or None for an orphan.

    If a > vb then a/b = R_v((a - vb)/b); if b > ua then a/b = L_u(a/(b - ua)).
    """
    a, b = q.numer, q.denom
    above = a > cfg.v * b
    below = b > cfg.u * a
    assert not (above and below), f"{q} is on both sides of the orphan interval"
    if above:
        return Rational(a - cfg.v * b, b), "R"
    if below:
        return Rational(a, b - cfg.u * a), "L"
    return None


def ancestors(cfg: ForestConfig, q: Rational) -> List[Rational]:
    """``q`` followed by its parent, grandparent and so on up to its root."""
    chain = [q]
    step = parent(cfg, q)
    while step is not None:
        chain.append(step[0])
        step = parent(cfg, step[0])
    return chain


def decompose(cfg: ForestConfig, q: Rational) -> Decomposition:
    """
    Locate ``q`` in the forest: its root, the path from that root, and its address.

    Runs of equal letters are stripped in one division, so an integer like
    300 with u = v = 1 costs one step rather than 299.
    """
    u, v = cfg.u, cfg.v
    a, b = q.numer, q.denom
    letters: List[str] = []
    while True:
        if a > v * b:
            run = (a - 1) // (v * b)
            a -= run * v * b
            letters.append("R" * run)
        elif b > u * a:
            run = (b - 1) // (u * a)
            b -= run * u * a
            letters.append("L" * run)
        else:
            break
    root = Rational(a, b)
    word = PathWord("".join(reversed(letters)))
    logger.debug("{} decomposes to root {} via {!r}", q, root, word.letters)
    return Decomposition(root=root, word=word, address=path_to_address(word))


def iter_orphans(cfg: ForestConfig, height_bound: int) -> Iterator[Rational]:
    """
    Every root of the forest with height at most ``height_bound``, ascending.

    Walks [1/u, 1] directly and (1, v] as reciprocals of [1/v, 1), so only
    the orphan interval is visited and nothing is held in memory.
    """
    yield from farey_walk(min(cfg.u, height_bound), height_bound)
    upper = farey_walk(min(cfg.v, height_bound), height_bound, descending=True)
    next(upper)
    for w in upper:
        yield w.reciprocal()


def orphans(cfg: ForestConfig, height_bound: int) -> List[Rational]:
    return list(iter_orphans(cfg, height_bound))
