import math

import pytest
from hypothesis import given

from cwforest.core.errors import InvalidAddressError, InvalidMatrixError, ResourceLimitError
from cwforest.core.forest import (
    ForestConfig,
    TreeAddress,
    address_to_path,
    ancestors,
    children,
    decompose,
    is_orphan,
    iter_orphans,
    orphans,
    parent,
    path_to_address,
    row,
    subtree_rows,
    vertex_at,
)
from cwforest.core.matrix_monoid import PathWord
from cwforest.core.rational import ONE, Rational, height, reduced_rationals
from cwforest.tests.golden import golden_cases
from cwforest.tests.strategies import forest_params, rationals, words

CW = ForestConfig(1, 1)
SANOV = ForestConfig(2, 2)


def q(text: str) -> Rational:
    return Rational.parse(text)


@pytest.mark.unit
class TestTypes:
    def test_config_rejects_zero(self):
        with pytest.raises(InvalidMatrixError):
            ForestConfig(0, 1)

    @pytest.mark.parametrize("row_, index", [(0, 0), (0, 2), (2, 5), (-1, 1)])
    def test_address_range(self, row_, index):
        with pytest.raises(InvalidAddressError):
            TreeAddress(row_, index)

    def test_mirror(self):
        assert TreeAddress(3, 2).mirror() == TreeAddress(3, 7)
        assert TreeAddress(0, 1).mirror() == TreeAddress(0, 1)

    def test_address_path_bijection(self):
        assert address_to_path(TreeAddress(3, 6)) == PathWord("RLR")
        assert path_to_address(PathWord("RLR")) == TreeAddress(3, 6)
        assert address_to_path(TreeAddress(0, 1)) == PathWord()
        for n in range(6):
            for i in range(1, 2**n + 1):
                addr = TreeAddress(n, i)
                assert path_to_address(address_to_path(addr)) == addr


@pytest.mark.unit
class TestChildren:
    @pytest.mark.parametrize(
        "cfg, w, left, right",
        [
            (CW, "1", "1/2", "2"),
            (SANOV, "1/3", "1/5", "7/3"),
            (ForestConfig(5, 4), "3/2", "3/17", "11/2"),
        ],
    )
    def test_examples(self, cfg, w, left, right):
        assert children(cfg, q(w)) == (q(left), q(right))

    def test_separation_and_height(self, reference_config):
        cfg = reference_config
        upper_left = Rational(1, cfg.u)
        lower_right = Rational(cfg.v, 1)
        for w in reduced_rationals(60):
            left, right = children(cfg, w)
            assert left < upper_left
            assert lower_right < right
            assert not is_orphan(cfg, left)
            assert not is_orphan(cfg, right)
            assert height(left) > height(w)
            assert height(right) > height(w)


class TestVertexAndRow:
    @pytest.mark.parametrize(
        "cfg, root, addr, expected",
        [
            (SANOV, "1", TreeAddress(2, 2), "7/3"),
            (ForestConfig(4, 5), "2/3", TreeAddress(1, 2), "17/3"),
            (ForestConfig(3, 7), "22/7", TreeAddress(0, 1), "22/7"),
        ],
    )
    def test_vertex_at(self, cfg, root, addr, expected):
        assert vertex_at(cfg, q(root), addr) == q(expected)

    @pytest.mark.parametrize("u, v, root, n, expected", golden_cases())
    def test_golden_rows(self, u, v, root, n, expected):
        assert " ".join(str(x) for x in row(ForestConfig(u, v), q(root), n)) == expected

    def test_row_matches_vertex_at(self):
        cfg = ForestConfig(3, 2)
        root = q("5/7")
        entries = row(cfg, root, 6)
        assert entries == [vertex_at(cfg, root, TreeAddress(6, i)) for i in range(1, 65)]

    def test_subtree_rows(self):
        rows = subtree_rows(SANOV, ONE, 3)
        assert [len(r) for r in rows] == [1, 2, 4, 8]
        assert rows[2] == row(SANOV, ONE, 2)

    def test_rows_are_distinct(self, reference_config):
        seen = [x for r in subtree_rows(reference_config, ONE, 12) for x in r]
        assert len(seen) == 2**13 - 1
        assert len(set(seen)) == len(seen)

    def test_depth_cap(self):
        with pytest.raises(ResourceLimitError):
            row(CW, ONE, 25)
        with pytest.raises(ResourceLimitError):
            row(CW, ONE, 5, max_depth=4)


class TestParentAndOrphans:
    @pytest.mark.parametrize(
        "cfg, value, expected",
        [(CW, "1", True), (SANOV, "3/2", True), (SANOV, "7/3", False), (SANOV, "1/2", True), (SANOV, "2", True)],
    )
    def test_is_orphan(self, cfg, value, expected):
        assert is_orphan(cfg, q(value)) is expected

    def test_parent_examples(self):
        assert parent(SANOV, q("7/3")) == (q("1/3"), "R")
        assert parent(SANOV, q("1/3")) == (ONE, "L")
        assert parent(SANOV, ONE) is None

    def test_parent_inverts_children(self, reference_config):
        cfg = reference_config
        for value in reduced_rationals(300 if cfg == SANOV else 120):
            found = parent(cfg, value)
            assert (found is None) == is_orphan(cfg, value)
            if found is not None:
                above, side = found
                left, right = children(cfg, above)
                assert (left if side == "L" else right) == value

    def test_ancestors(self):
        assert ancestors(CW, q("5/3")) == [q("5/3"), q("2/3"), q("2"), ONE]
        assert ancestors(SANOV, q("3/2")) == [q("3/2")]

    def test_orphans(self):
        assert orphans(CW, 50) == [ONE]
        assert orphans(SANOV, 3) == [q("1/2"), q("2/3"), ONE, q("3/2"), q("2")]

    @pytest.mark.parametrize("u, v, height_bound", [(1, 1, 30), (2, 2, 25), (5, 4, 40), (4, 5, 40), (3, 1, 12), (9, 9, 6)])
    def test_orphans_match_filter(self, u, v, height_bound):
        cfg = ForestConfig(u, v)
        expected = sorted(w for w in reduced_rationals(height_bound) if is_orphan(cfg, w))
        assert orphans(cfg, height_bound) == expected

    def test_iter_orphans_is_lazy(self):
        roots = iter_orphans(ForestConfig(3, 3), 10**9)
        assert next(roots) == q("1/3")
        assert next(roots) > q("1/3")


class TestDecompose:
    @pytest.mark.parametrize(
        "cfg, value, root, word, addr",
        [
            (CW, "5/3", "1", "RLR", TreeAddress(3, 6)),
            (SANOV, "7/3", "1", "LR", TreeAddress(2, 2)),
            (SANOV, "3/2", "3/2", "", TreeAddress(0, 1)),
            (CW, "300", "1", "R" * 299, TreeAddress(299, 2**299)),
        ],
    )
    def test_examples(self, cfg, value, root, word, addr):
        found = decompose(cfg, q(value))
        assert found.root == q(root)
        assert found.word == PathWord(word)
        assert found.address == addr

    def test_replay_and_injectivity(self, reference_config):
        cfg = reference_config
        seen = {}
        for value in reduced_rationals(150):
            found = decompose(cfg, value)
            assert is_orphan(cfg, found.root)
            assert vertex_at(cfg, found.root, found.address) == value
            key = (found.root, found.word)
            assert key not in seen
            seen[key] = value

    @given(rationals(2000), forest_params())
    def test_replay_large(self, value, params):
        cfg = ForestConfig(*params)
        found = decompose(cfg, value)
        assert vertex_at(cfg, found.root, found.address) == value
        assert len(found.word) == len(ancestors(cfg, value)) - 1

    @given(words(20), forest_params())
    def test_descend_then_decompose(self, letters, params):
        # descending from an orphan and decomposing again must find the same path
        cfg = ForestConfig(*params)
        addr = path_to_address(PathWord(letters))
        value = vertex_at(cfg, ONE, addr)
        found = decompose(cfg, value)
        assert found.root == ONE
        assert found.word == PathWord(letters)

    def test_raw_children_are_coprime(self):
        for u, v in [(1, 1), (2, 3), (7, 5)]:
            for w in reduced_rationals(30):
                a, b = w.numer, w.denom
                assert math.gcd(a, u * a + b) == 1
                assert math.gcd(a + v * b, b) == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
