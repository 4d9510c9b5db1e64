from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth import ramification as rm
from ramdepth.errors import DomainError
from ramdepth.plfun import PLFun


@st.composite
def cyclic_p_data(draw):
    """Cyclic group of order p^k whose depth depends only on the p-adic valuation of the exponent."""
    p = draw(st.sampled_from([2, 3, 5]))
    k = draw(st.integers(1, 3 if p == 2 else 2))
    n = p ** k
    levels = sorted(draw(st.lists(st.integers(0, 3 * n), min_size=k, max_size=k)))
    depths = []
    for j in range(1, n):
        v = 0
        while j % p ** (v + 1) == 0:
            v += 1
        depths.append(Fraction(levels[v], n))
    return p, rm.cyclic_datum(depths)


def test_trivial_datum():
    D = rm.trivial_datum()
    assert rm.hh_phi(D) == PLFun.identity()
    assert rm.breaks(D).to_json() == {"ell": "0/1", "u": "0/1", "c": "0/1"}


def test_artin_schreier_cubic():
    D = rm.cyclic_datum([Fraction(1, 3)] * 2)
    assert rm.hh_phi(D) == PLFun([Fraction(1, 3)], [3, 1])
    b = rm.breaks(D)
    assert (b.ell, b.u, b.c) == (Fraction(1, 3), Fraction(1), Fraction(2, 3))


def test_unramified_has_no_breaks():
    D = rm.unramified_datum(3)
    assert rm.hh_phi(D) == PLFun.identity()
    assert rm.upper_group(D, 0) == frozenset([0])


def test_tame_datum():
    D = rm.cyclic_datum([0, 0, 0])
    assert rm.breaks(D).c == 0
    assert rm.upper_group(D, 0) == frozenset(range(4))
    assert rm.upper_group(D, Fraction(1, 8)) == frozenset([0])


@pytest.mark.parametrize("depths", [[Fraction(1, 2), Fraction(1, 3)], [Fraction(-1, 3)] * 2, [Fraction(1, 5)] * 2])
def test_invalid_depths_rejected(depths):
    with pytest.raises(DomainError):
        rm.cyclic_datum(depths)


def test_json_round_trip():
    D = rm.cyclic_datum([Fraction(1, 3)] * 2)
    E = rm.RamDatum.from_json(D.to_json())
    assert rm.hh_phi(E) == rm.hh_phi(D)


def test_malformed_json():
    with pytest.raises(DomainError):
        rm.RamDatum.from_json({"mul": [[0, 1]], "inertia": [0]})


@given(cyclic_p_data())
def test_phi_psi_inverse_and_conductor(data):
    _, D = data
    phi, psi = rm.hh_phi(D), rm.hh_psi(D)
    assert phi.compose(psi) == PLFun.identity()
    assert phi.is_concave()
    b = rm.breaks(D)
    assert b.c == b.u - b.ell == sum(D.depth.values())


@settings(max_examples=60)
@given(cyclic_p_data())
def test_composition_through_every_subgroup(data):
    p, D = data
    n = D.order
    for m in range(1, n):
        if n % m == 0:
            step = n // m
            N = [j * step for j in range(m)]
            top, _ = rm.restrict_datum(D, N)
            bot = rm.quotient_datum(D, N)
            assert rm.hh_phi(bot).compose(rm.hh_phi(top)) == rm.hh_phi(D)
            assert rm.breaks(top).c + rm.breaks(bot).c == rm.breaks(D).c


@settings(max_examples=60)
@given(cyclic_p_data(), st.integers(0, 40))
def test_equivalent_conditions_agree(data, k):
    _, D = data
    s = Fraction(k, D.e)
    assert rm.check_tfae_combinatorial(D, s).consistent()


@settings(max_examples=40)
@given(cyclic_p_data(), st.integers(0, 30))
def test_upper_numbering_passes_to_quotients(data, k):
    p, D = data
    if D.order == p:
        return
    step = D.order // p
    N = [j * step for j in range(p)]
    Q = rm.quotient_datum(D, N)
    _, proj = D.group.quotient(N)
    s = Fraction(k, D.e)
    assert {proj[g] for g in rm.upper_group(D, s)} == set(rm.upper_group(Q, s))
    assert rm.check_inertia_intersections(D, N, s).holds


def test_negative_level_rejected():
    with pytest.raises(DomainError):
        rm.check_tfae_combinatorial(rm.trivial_datum(), -1)
