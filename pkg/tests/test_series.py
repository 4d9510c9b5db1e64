from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth.finitefield import get_field
from ramdepth.series import LaurentSeries

PREC = 12

@st.composite
def series(draw, unit=False):
    p, k = draw(st.sampled_from([(2, 1), (3, 1), (3, 2), (5, 1)]))
    F = get_field(p, k)
    val = 0 if unit else draw(st.integers(-3, 3))
    terms = {val + i: draw(st.integers(0, F.q - 1)) for i in range(6)}
    terms[val] = draw(st.integers(1, F.q - 1))
    return LaurentSeries.from_dict(F, terms, PREC)

@settings(max_examples=80)
@given(series())
def test_inverse(x):
    one = LaurentSeries.one(x.field, PREC)
    assert (x * x.inverse()).agrees(one)

@settings(max_examples=80)
@given(series())
def test_subtraction_cancels(x):
    assert (x - x).is_zero()

@given(series())
def test_valuation_of_product(x):
    assert (x * x).valuation() == 2 * x.valuation()

@given(series())
def test_json_round_trip(x):
    assert LaurentSeries.from_json(x.field, x.to_json()).agrees(x)

@given(series(unit=True))
def test_pth_power_is_frobenius_twisted(x):
    F = x.field
    y = x.pth_power()
    assert y.valuation() == 0
    assert y.coefficient(0) == F.pow(x.coefficient(0), F.p)

def test_monomial_arithmetic():
    F = get_field(3)
    t = LaurentSeries.monomial(F, 1, 1, PREC)
    assert (t ** 3).valuation() == 3
    assert (t ** 3).leading() == 1
    assert (t.inverse() * t).agrees(LaurentSeries.one(F, PREC))
