import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth import cft
from ramdepth.errors import DomainError


def _expected_invariants(p, S, tail):
    """1+t^(p^k m) = (1+t^m)^(p^k), and the 1+t^m with m prime to p form a basis."""
    out = []
    for m in range(1, tail):
        if m % p == 0:
            continue
        k = 0
        while p ** k * m not in S:
            k += 1
        if k:
            out.append(p ** k)
    return sorted(out)


def test_counterexample_at_three():
    t = time.perf_counter()
    rep = cft.counterexample_report(3)
    assert time.perf_counter() - t < 1
    assert rep["quotient_invariants"] == [3, 3]
    assert rep["d"] == 2 and rep["gamma_d_order"] == 3 and rep["gamma_d_cyclic"]
    assert rep["intermediate"]["gamma_d_maps_isomorphically"]


def test_counterexample_at_two():
    rep = cft.counterexample_report(2)
    assert rep["S"] == "2,4.."
    assert rep["quotient_invariants"] == [2, 2] and rep["d"] == 3


@pytest.mark.parametrize("p", [5, 7])
def test_counterexample_larger_primes(p):
    rep = cft.counterexample_report(p)
    assert rep["quotient_invariants"] == [p, p] and rep["gamma_d_cyclic"]


def test_counterexample_rejects_composite():
    with pytest.raises(DomainError):
        cft.counterexample_report(4)


def test_exponent_set_parse_and_print():
    S = cft.ExponentSet.parse("2, 4..")
    assert 2 in S and 3 not in S and 9 in S
    assert str(S) == "2,4.."
    assert S.members_below(6) == [2, 4, 5]


@pytest.mark.parametrize("word, parsed", [("t", ("t", 0, 0)), ("zeta", ("zeta", 0, 0)),
                                          ("1+t^4", ("unit", 1, 4)), ("1+2*t", ("unit", 2, 1))])
def test_parse_word(word, parsed):
    assert cft.parse_word(word) == parsed


def test_bad_word():
    with pytest.raises(DomainError):
        cft.parse_word("1+t^")


def test_precision_must_exceed_set():
    with pytest.raises(DomainError):
        cft.unit_quotient(3, cft.ExponentSet.parse("3.."), 4)


def test_full_set_gives_trivial_quotient():
    uq = cft.unit_quotient(3, cft.ExponentSet.parse("1.."), 6)
    assert uq.invariants == [] and uq.order == 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3]), st.sets(st.integers(1, 6)))
def test_quotient_matches_power_structure(p, finite):
    tail = 7
    S = cft.ExponentSet(frozenset(finite), tail)
    uq = cft.unit_quotient(p, S, tail + 4)
    assert sorted(uq.invariants) == _expected_invariants(p, S, tail)
