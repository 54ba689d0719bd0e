import math

import pytest
from hypothesis import given

from cwforest.core.errors import InvalidRationalError
from cwforest.core.rational import (
    ONE,
    Rational,
    continued_fraction,
    farey_walk,
    from_continued_fraction,
    height,
    make_rational,
    reduced_rationals,
)
from cwforest.tests.strategies import rationals


@pytest.mark.unit
class TestMakeRational:
    @pytest.mark.parametrize(
        "n, d, expected",
        [(4, 6, Rational(2, 3)), (7, 3, Rational(7, 3)), (5, 5, ONE)],
    )
    def test_reduces(self, n, d, expected):
        assert make_rational(n, d) == expected

    @pytest.mark.parametrize("n, d", [(0, 3), (3, 0), (0, 0), (-1, 2), (2, -1)])
    def test_rejects_nonpositive(self, n, d):
        with pytest.raises(InvalidRationalError):
            make_rational(n, d)

    def test_scaling_is_idempotent(self):
        for n, d in [(1, 1), (2, 3), (7, 3), (12, 18), (1, 500)]:
            for k in range(1, 11):
                assert make_rational(k * n, k * d) == make_rational(n, d)

    def test_constructor_rejects_unreduced(self):
        with pytest.raises(InvalidRationalError):
            Rational(4, 6)

    def test_reciprocal_swaps(self):
        q = Rational(7, 17)
        assert q.reciprocal() == Rational(17, 7)
        assert q.reciprocal().reciprocal() == q

    def test_comparison_is_exact(self):
        assert Rational(2, 3) < ONE < Rational(3, 2)
        assert Rational(1, 3) < Rational(1, 2)
        # 10**30 + 1 over 10**30 is above 1 but not representable as a float
        assert ONE < Rational(10**30 + 1, 10**30)

    def test_add_int(self):
        assert Rational(1, 3).add_int(2) == Rational(7, 3)
        assert ONE.add_int(0) == ONE

    def test_floor(self):
        assert Rational(7, 3).floor() == 2
        assert Rational(2, 3).floor() == 0


@pytest.mark.unit
class TestParse:
    @pytest.mark.parametrize(
        "text, expected",
        [("3/2", Rational(3, 2)), ("5", Rational(5, 1)), ("4/6", Rational(2, 3)), ("1", ONE)],
    )
    def test_accepts(self, text, expected):
        assert Rational.parse(text) == expected

    @pytest.mark.parametrize("text", ["", "-3/2", "+3/2", "3/0", "0/5", "0", "3 /2", "1.5", "a/b", "3/2/1"])
    def test_rejects(self, text):
        with pytest.raises(InvalidRationalError):
            Rational.parse(text)

    def test_text_form(self):
        assert str(Rational(5, 1)) == "5"
        assert str(Rational(7, 3)) == "7/3"
        assert Rational(5, 1).to_dict() == {"n": 5, "d": 1}

    def test_is_integer(self):
        assert Rational(5, 1).is_integer()
        assert ONE.is_integer()
        assert not Rational(7, 3).is_integer()


@pytest.mark.unit
class TestHeight:
    @pytest.mark.parametrize("q, expected", [(Rational(3, 2), 3), (ONE, 1), (Rational(7, 17), 17)])
    def test_height(self, q, expected):
        assert height(q) == expected


class TestContinuedFraction:
    @pytest.mark.parametrize(
        "q, expected",
        [(Rational(5, 3), [1, 1, 2]), (Rational(2, 3), [0, 1, 2]), (Rational(7, 1), [7]), (ONE, [1])],
    )
    def test_examples(self, q, expected):
        assert continued_fraction(q) == expected

    @pytest.mark.slow
    def test_round_trip_and_canonical_form(self):
        for q in reduced_rationals(500):
            coefficients = continued_fraction(q)
            assert from_continued_fraction(coefficients) == q
            assert all(a >= 1 for a in coefficients[1:])
            if len(coefficients) > 1:
                assert coefficients[-1] >= 2
            else:
                assert coefficients[-1] != 1 or q == ONE

    @given(rationals())
    def test_round_trip_large(self, q):
        assert from_continued_fraction(continued_fraction(q)) == q

    def test_rejects_bad_coefficients(self):
        with pytest.raises(InvalidRationalError):
            from_continued_fraction([])
        with pytest.raises(InvalidRationalError):
            from_continued_fraction([1, 0, 2])


@pytest.mark.unit
def test_reduced_rationals_counts_coprime_pairs():
    brute = sum(1 for n in range(1, 51) for d in range(1, 51) if math.gcd(n, d) == 1)
    domain = list(reduced_rationals(50))
    assert len(domain) == brute
    assert len(set(domain)) == brute
    assert all(height(q) <= 50 for q in domain)


@pytest.mark.unit
def test_reduced_rationals_is_lazy():
    domain = reduced_rationals(10**9)
    assert [next(domain) for _ in range(3)] == [ONE, Rational(2, 1), Rational(3, 1)]


@pytest.mark.unit
class TestFareyWalk:
    @pytest.mark.parametrize("low_denom, height_bound", [(1, 1), (1, 9), (2, 2), (2, 3), (3, 3), (4, 17), (17, 17), (6, 40)])
    def test_matches_sorted_filter(self, low_denom, height_bound):
        expected = sorted(
            q for q in reduced_rationals(height_bound) if Rational(1, low_denom) <= q <= ONE
        )
        assert list(farey_walk(low_denom, height_bound)) == expected
        assert list(farey_walk(low_denom, height_bound, descending=True)) == expected[::-1]

    def test_rejects_low_denominator_above_height(self):
        with pytest.raises(InvalidRationalError):
            list(farey_walk(5, 4))
        with pytest.raises(InvalidRationalError):
            list(farey_walk(0, 4))

if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
