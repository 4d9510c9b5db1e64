from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth import localfield as lf
from ramdepth import ramification as rm
from ramdepth.errors import DomainError
from ramdepth.series import LaurentSeries

T, A = lf.TowerDescriptor, lf.artin_schreier
AS3 = T(3, 1, (A(1),))
AS5 = T(5, 1, (A(1),))


def _breaks(desc):
    return rm.breaks(lf.realize_ramdatum(lf.realize_tower(desc)))


@pytest.mark.parametrize("desc, ell, u", [
    (AS3, Fraction(1, 3), Fraction(1)),
    (AS5, Fraction(1, 5), Fraction(1)),
    (T(3, 1, (A(2),)), Fraction(2, 3), Fraction(2)),
    (T(3, 1, (lf.tame(2),)), Fraction(0), Fraction(0)),
    (T(3, 1, (lf.unramified(2),)), Fraction(0), Fraction(0)),
])
def test_realized_breaks(desc, ell, u):
    b = _breaks(desc)
    assert (b.ell, b.u) == (ell, u)
    assert b.c == u - ell


def test_artin_schreier_degree_and_galois():
    ext = lf.realize_tower(AS3)
    assert (ext.degree, ext.e, ext.is_galois) == (3, 3, True)


def test_nonabelian_tower_is_galois_of_order_six():
    ext = lf.realize_tower(T(3, 1, (lf.tame(2), A(1))))
    D = lf.realize_ramdatum(ext)
    assert D.order == 6 and D.e == 6


@pytest.mark.parametrize("kwargs", [
    dict(p=4, residue_deg=1, steps=()),
    dict(p=3, residue_deg=1, steps=(lf.tame(3),)),
    dict(p=3, residue_deg=1, steps=(lf.tame(4),)),
    dict(p=3, residue_deg=1, steps=(A(3),)),
    dict(p=3, residue_deg=1, steps=(lf.Step("cubic", 1),)),
])
def test_invalid_descriptors(kwargs):
    with pytest.raises(DomainError):
        T(**kwargs)


def test_descriptor_json_round_trip():
    d = T(3, 2, (lf.tame(4), A(1), A(1, coeff=5, level=1)), 1, "x")
    assert T.from_json(d.to_json()) == d


def test_malformed_descriptor():
    with pytest.raises(DomainError):
        T.from_json({"steps": []})


def test_trace_and_norm_of_base_elements():
    ext = lf.realize_tower(AS3)
    t = ext.t()
    assert lf.norm(ext, t).valuation() == 3
    assert lf.trace(ext, ext.one()).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_norm_is_multiplicative_and_trace_additive(a, b):
    ext = lf.realize_tower(AS3)
    F = ext.field

    def unit(cs):
        return LaurentSeries.from_dict(F, {i: c for i, c in enumerate(cs)}, ext.prec).add_scalar(1)

    x, y = unit(a), unit(b)
    assert (lf.norm(ext, x * y) - lf.norm(ext, x) * lf.norm(ext, y)).truncate(ext.prec // 3 - 2).is_zero()
    assert (lf.trace(ext, x + y) - lf.trace(ext, x) - lf.trace(ext, y)).truncate(ext.prec // 3 - 2).is_zero()


def test_norm_range_follows_last_lower_break():
    ext = lf.realize_tower(AS3)
    assert not lf.norm_graded(ext, Fraction(1, 3)).surjective
    ng = lf.norm_graded(ext, Fraction(2, 3))
    assert ng.surjective and ng.additive_match


def test_field_level_clause_on_abelian_tower():
    ext = lf.realize_tower(AS3)
    D = lf.realize_ramdatum(ext)
    for k in range(0, 7):
        s = Fraction(k, 3)
        assert lf.check_tfae_field(ext, s) == rm.check_tfae_combinatorial(D, s).shift_is_conductor


def test_trace_shift_equals_conductor():
    ext = lf.realize_tower(AS3)
    assert lf.trace_image_level(ext, Fraction(2, 3)) == (Fraction(2, 3), True)


def test_additive_character_has_conductor_zero():
    chr = lf.AdditiveCharacter(3)
    assert lf.character_conductor(chr, lf.realize_tower(T(3, 1, ()))) == 0


def test_tame_compositum_picks_coprime_degree():
    d = lf.tame_compositum(T(3, 2, (lf.tame(4), A(1)), 1), 3)
    assert d.steps[-1] == lf.tame(2)


def test_catalog_is_large_enough():
    assert len(lf.hh_catalog()) >= 20
    assert all(d.name for d in lf.hh_catalog())


def test_precision_env(monkeypatch):
    monkeypatch.setenv("RAMDEPTH_PREC", "60")
    assert lf.default_prec() == 60
