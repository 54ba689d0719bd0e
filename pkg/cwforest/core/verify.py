"""
Exact machine checks of the forest theorems.

Each check sweeps a finite domain with zero tolerance and returns a
VerificationReport. A failing check is a report with ``passed=False`` and the
first witness in domain order, never an exception.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import batched
from typing import Callable, Iterable, Iterator, Literal, Optional, Sequence, Tuple, TypeVar

from loguru import logger
from pydantic import BaseModel, model_validator

from cwforest.core.errors import ResourceLimitError
from cwforest.core.forest import (
    DEFAULT_MAX_DEPTH,
    ForestConfig,
    decompose,
    is_orphan,
    subtree_rows,
    vertex_at,
)
from cwforest.core.matrix_monoid import (
    Mat2,
    apply,
    format_matrix,
    freeness_probe,
    mat_L,
    mat_R,
    word_to_matrix,
)
from cwforest.core.rational import ONE, Rational, reduced_rationals

DEFAULT_MAX_HEIGHT = 100_000

Claim = Literal["symmetry", "partition", "freeness", "range"]
T = TypeVar("T")


class VerificationReport(BaseModel):
    """Flat, JSON-ready outcome of one verification run."""

    claim: Claim
    u: int
    v: int
    root: Optional[str] = None
    bound: int
    passed: bool
    checked_count: int
    first_failure: Optional[str] = None

    @model_validator(mode="after")
    def _consistent(self) -> "VerificationReport":
        if self.passed and self.first_failure is not None:
            raise ValueError("a passing report cannot carry a witness")
        if self.checked_count <= 0:
            raise ValueError("a completed run checks at least one case")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)


SWEEP_BATCH = 4096


def _sweep(
    items: Iterable[T], check: Callable[[T], Optional[str]], workers: int
) -> Tuple[int, Optional[str]]:
    """
    Run ``check`` over ``items`` in fixed-size batches, each split across a thread pool.

    The sweep stops at the batch holding the first witness in item order.
    Returns the number of items up to and including that witness (every item
    when none is found) and the witness itself; neither depends on the worker
    count. Only one batch is held in memory at a time.
    """

    def run_chunk(chunk: Sequence[T]) -> Tuple[int, Optional[str]]:
        for position, item in enumerate(chunk, start=1):
            found = check(item)
            if found is not None:
                return position, found
        return len(chunk), None

    workers = max(1, workers)
    checked = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for batch in batched(items, SWEEP_BATCH):
            size = -(-len(batch) // workers)
            for count, witness in pool.map(run_chunk, batched(batch, size)):
                checked += count
                if witness is not None:
                    return checked, witness
    return checked, None


def _check_bound(name: str, requested: int, limit: int) -> None:
    if requested > limit:
        logger.warning(f"{name}={requested} refused: cap is {limit}")
        raise ResourceLimitError(name, requested, limit)


def _mirror_report(
    cfg: ForestConfig,
    z: Rational,
    mirror_cfg: ForestConfig,
    max_row: int,
    max_depth: int,
    workers: int,
) -> VerificationReport:
    _check_bound("depth", max_row, max_depth)
    rows = subtree_rows(cfg, z, max_row, max_depth=max_depth)
    mirror_rows = subtree_rows(mirror_cfg, z.reciprocal(), max_row, max_depth=max_depth)

    def pairs() -> Iterator[Tuple[int, int, Rational, Rational]]:
        for n in range(max_row + 1):
            for i, (x, y) in enumerate(zip(rows[n], reversed(mirror_rows[n])), start=1):
                yield n, i, x, y

    def check_pair(pair: Tuple[int, int, Rational, Rational]) -> Optional[str]:
        n, i, x, y = pair
        # both reduced, so x * y == 1 exactly when they are reciprocal
        if x.numer != y.denom or x.denom != y.numer:
            return (
                f"row {n} index {i}: {x} * {y} != 1 "
                f"(mirror index {(1 << n) + 1 - i} of the tree at {z.reciprocal()})"
            )
        return None

    checked, witness = _sweep(pairs(), check_pair, workers)
    report = VerificationReport(
        claim="symmetry",
        u=cfg.u,
        v=cfg.v,
        root=str(z),
        bound=max_row,
        passed=witness is None,
        checked_count=checked,
        first_failure=witness,
    )
    logger.info(f"symmetry ({cfg.u},{cfg.v}) root {z} rows 0..{max_row}: passed={report.passed}")
    return report


def verify_symmetry(
    u: int,
    v: int,
    z: Rational,
    max_row: int,
    max_depth: int = DEFAULT_MAX_DEPTH,
    workers: int = 1,
) -> VerificationReport:
    """
    Check that entry i of row n in the (u, v) tree at z times entry 2^n + 1 - i of
    row n in the (v, u) tree at 1/z is exactly 1, for every n <= max_row.

    ``z`` may be any positive rational; it need not be a root of either forest.
    """
    cfg = ForestConfig(u, v)
    return _mirror_report(cfg, z, cfg.swapped(), max_row, max_depth, workers)


def verify_self_symmetry(
    u: int, max_row: int, max_depth: int = DEFAULT_MAX_DEPTH, workers: int = 1
) -> VerificationReport:
    """Single-tree symmetry of the (u, u) tree rooted at 1."""
    return verify_symmetry(u, u, ONE, max_row, max_depth=max_depth, workers=workers)


def verify_mirror(
    u: int,
    v: int,
    z: Rational,
    max_row: int,
    max_depth: int = DEFAULT_MAX_DEPTH,
    workers: int = 1,
) -> VerificationReport:
    """
    Pair the (u, v) tree at z with the (u, v) tree at 1/z, without swapping.

    Passes for u == v. For u != v the pairing generally fails; compare
    :func:`verify_symmetry`, which swaps the parameters.
    """
    cfg = ForestConfig(u, v)
    return _mirror_report(cfg, z, cfg, max_row, max_depth, workers)


def euler_phi_count(height_bound: int) -> int:
    """
    Number of reduced positive rationals of height <= height_bound.

    2 * (phi(1) + ... + phi(H)) - 1, with phi from a sieve; the -1 removes
    the double-counted 1/1.
    """
    phi = list(range(height_bound + 1))
    for p in range(2, height_bound + 1):
        if phi[p] == p:
            for multiple in range(p, height_bound + 1, p):
                phi[multiple] -= phi[multiple] // p
    return 2 * sum(phi[1:]) - 1


def verify_partition(
    u: int,
    v: int,
    height_bound: int,
    max_height: int = DEFAULT_MAX_HEIGHT,
    workers: int = 1,
) -> VerificationReport:
    """
    Check that the (u, v) forest partitions every rational of height <= height_bound.

    Each rational must decompose to an orphan root and replay back to itself
    from that root. Replay is a function of (root, address), so once every
    rational replays, no two of them can share a (root, word) pair. The
    domain is streamed; the number of rationals swept is compared against
    :func:`euler_phi_count`.
    """
    _check_bound("height", height_bound, max_height)
    cfg = ForestConfig(u, v)

    def check(q: Rational) -> Optional[str]:
        found = decompose(cfg, q)
        if not is_orphan(cfg, found.root):
            return f"{q} decomposed to {found.root}, which is not an orphan"
        replayed = vertex_at(cfg, found.root, found.address)
        if replayed != q:
            return f"{q} replays to {replayed} from root {found.root} via {found.word}"
        return None

    checked, witness = _sweep(reduced_rationals(height_bound), check, workers)

    if witness is None:
        expected = euler_phi_count(height_bound)
        if checked != expected:
            witness = f"swept {checked} rationals but the Euler-phi count is {expected}"

    report = VerificationReport(
        claim="partition",
        u=u,
        v=v,
        bound=height_bound,
        passed=witness is None,
        checked_count=checked,
        first_failure=witness,
    )
    logger.info(f"partition ({u},{v}) height <= {height_bound}: {checked} checked, passed={report.passed}")
    return report


def _range_witness(
    left: Mat2, right: Mat2, w: Rational, u: int, v: int
) -> Optional[str]:
    lw, rw = apply(left, w), apply(right, w)
    if not lw < ONE < rw:
        return f"w={w}: expected 0 < {lw} < 1 < {rw}"
    if not lw.numer * u < lw.denom:
        return f"w={w}: L({w}) = {lw} is not below 1/{u}"
    if not rw.numer > v * rw.denom:
        return f"w={w}: R({w}) = {rw} is not above {v}"
    return None


def verify_range(
    u: int,
    v: int,
    sample_bound: int,
    max_height: int = DEFAULT_MAX_HEIGHT,
    workers: int = 1,
) -> VerificationReport:
    """Check 0 < L_u(w) < 1/u <= 1 <= v < R_v(w) for all w of height <= sample_bound."""
    _check_bound("height", sample_bound, max_height)
    left, right = mat_L(u), mat_R(v)
    checked, witness = _sweep(
        reduced_rationals(sample_bound),
        lambda w: _range_witness(left, right, w, u, v),
        workers,
    )
    report = VerificationReport(
        claim="range",
        u=u,
        v=v,
        bound=sample_bound,
        passed=witness is None,
        checked_count=checked,
        first_failure=witness,
    )
    logger.info(f"range ({u},{v}) height <= {sample_bound}: passed={report.passed}")
    return report


def verify_freeness(
    u: int, v: int, maxlen: int, max_word_length: int = 20, workers: int = 1
) -> VerificationReport:
    """Wrap the bounded freeness probe of (L_u, R_v) as a report; passed means distinct."""
    probe = freeness_probe(u, v, maxlen, max_word_length=max_word_length, workers=workers)
    witness = None
    if probe.collision is not None:
        first, second = probe.collision
        shared = format_matrix(word_to_matrix(first, u, v))
        witness = f"words {first.letters!r} and {second.letters!r} both give {shared}"
    report = VerificationReport(
        claim="freeness",
        u=u,
        v=v,
        bound=maxlen,
        passed=probe.distinct,
        checked_count=probe.word_count,
        first_failure=witness,
    )
    logger.info(f"freeness ({u},{v}) words up to length {maxlen}: passed={report.passed}")
    return report
