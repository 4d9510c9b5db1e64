from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth.plfun import PLFun
from ramdepth.rationals import fmt, rat

fractions = st.fractions(min_value=Fraction(1, 12), max_value=10, max_denominator=12)


@st.composite
def plfuns(draw):
    n = draw(st.integers(0, 4))
    cuts = sorted(set(draw(st.lists(fractions, min_size=n, max_size=n))))
    slopes = draw(st.lists(fractions, min_size=len(cuts) + 1, max_size=len(cuts) + 1))
    return PLFun(cuts, slopes)


def test_identity_has_one_segment():
    assert PLFun.identity().segments() == [{"x": "0/1", "y": "0/1", "slope": "1/1"}]


def test_segments_of_cubic_artin_schreier_phi():
    phi = PLFun([Fraction(1, 3)], [3, 1])
    assert [(s["x"], s["slope"]) for s in phi.segments()] == [("0/1", "3/1"), ("1/3", "1/1")]


def test_equal_slopes_merge():
    assert PLFun([1, 2], [2, 2, 1]) == PLFun([2], [2, 1])


@pytest.mark.parametrize("breaks, slopes", [([0], [1, 2]), ([2, 1], [1, 1, 1]), ([], [0]), ([1], [1])])
def test_rejects_bad_shapes(breaks, slopes):
    with pytest.raises(ValueError):
        PLFun(breaks, slopes)


@given(plfuns(), fractions)
def test_inverse_round_trip(f, x):
    assert f.inverse()(f(x)) == x
    assert f.compose(f.inverse()) == PLFun.identity()


@settings(max_examples=60)
@given(plfuns(), plfuns(), fractions)
def test_composition_pointwise(f, g, x):
    assert f.compose(g)(x) == f(g(x))


@given(plfuns(), plfuns())
def test_inverse_of_composition(f, g):
    assert f.compose(g).inverse() == g.inverse().compose(f.inverse())


@given(plfuns())
def test_json_round_trip(f):
    assert PLFun.from_json(f.to_json()) == f


def test_rational_formatting():
    assert fmt(Fraction(2, 3)) == "2/3"
    assert rat("3/6") == Fraction(1, 2)
