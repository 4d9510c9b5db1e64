from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth import dlparams as dl
from ramdepth import localfield as lf
from ramdepth import rootdata as rdm
from ramdepth.errors import DomainError
from ramdepth.finitefield import get_field

F3, F9 = get_field(3), get_field(3, 2)
GL2, SL2 = rdm.RootDatum("GL", 2), rdm.RootDatum("SL", 2)
ORIGIN = rdm.ApartmentPoint.origin(GL2)
BARY = rdm.ApartmentPoint.barycenter(SL2)


def gl2_vertex(diag=(0, 0), e12=0, e21=0):
    m = dl.MPType(GL2, ORIGIN, 1, [0, 0, 0, 0], F3)
    return dl.MPType(GL2, ORIGIN, 1, m.model.from_matrix([[diag[0], e12], [e21, diag[1]]]), F3)


def bary(u, v, field=F9):
    return dl.MPType(SL2, BARY, Fraction(1, 2), [u, v], field)


def test_regular_semisimple_parameter():
    d = dl.dl_parameter(gl2_vertex(diag=(1, 2)))
    assert d.Z == (0, F3.neg(1)) and d.nontrivial
    nd = dl.is_nondegenerate(gl2_vertex(diag=(1, 2)))
    assert nd.flag and nd.guaranteed and nd.witness == 2


def test_nilpotent_parameter_is_trivial():
    m = gl2_vertex(e12=1)
    assert dl.dl_parameter(m).Z == (0, 0)
    assert not dl.is_nondegenerate(m).flag
    assert dl.orbit_oracle_degenerate(m)


def test_barycenter_anti_diagonal_image():
    m = bary(1, 1)
    assert m.matrix() == [[0, 1], [1, 0]]
    assert dl.dl_parameter(m).nontrivial


@pytest.mark.parametrize("u, v", [(1, 0), (0, 1), (0, 0)])
def test_barycenter_degenerate_cases(u, v):
    m = bary(u, v)
    assert not dl.is_nondegenerate(m).flag
    assert dl.orbit_oracle_degenerate(m, F9)


def test_mp_character():
    m = dl.MPType(GL2, ORIGIN, 1, [0, 0, 1, 0], F3)
    assert m.model.labels[2][:3] == ("root", 0, 1)
    assert dl.mp_character(m, [0, 0, 0, 0]) == 0
    for a in range(3):
        assert dl.mp_character(m, [0, 0, 0, a]) == Fraction(a, 3)
    zero = dl.MPType(GL2, ORIGIN, 1, [0, 0, 0, 0], F3)
    assert dl.mp_character(zero, [1, 2, 1, 2]) == 0
    with pytest.raises(DomainError):
        dl.mp_character(m, [1])


def _param(Z, beta):
    K = F3
    return dl.DLParam(Fraction(1), 2, K, tuple(Z), beta, "tame-root", dl.j_scale(K, K.inv(beta), Z))


def test_equivalence_examples():
    d = _param((0, 2), 1)
    assert dl.dl_equiv(d, d)
    c = 2
    assert dl.dl_equiv(d, _param(dl.j_scale(F3, c, (0, 2)), c))
    assert not dl.dl_equiv(d, _param((1, 2), 1))


def test_stable_association_examples():
    m = gl2_vertex(diag=(1, 2))
    assert dl.stable_associate(m, m)
    assert not dl.stable_associate(m, gl2_vertex(e12=1))
    w = rdm.affine_weyl_word(GL2, ["s0", "s1", "tau"])
    assert dl.stable_associate(m, m.transported(w))


def test_associate_oracle():
    m = gl2_vertex(diag=(1, 2))
    assert dl.associate_oracle(m, m) is True
    assert dl.associate_oracle(m, gl2_vertex(e12=1)) is None
    w = rdm.affine_weyl_word(GL2, ["s0"])
    assert dl.associate_oracle(m, m.transported(w)) is True


def test_restricted_param():
    assert dl.restricted_param(gl2_vertex(diag=(1, 2))).param.nontrivial
    with pytest.raises(DomainError):
        dl.restricted_param(gl2_vertex(e12=1))


def test_non_adapted_choice_names_clause():
    choice = dl.AlphaChoice(lf.TowerDescriptor(3, 1, (lf.artin_schreier(1),)), None, "as1")
    with pytest.raises(DomainError, match="u\\(E/F\\)"):
        dl.dl_parameter(gl2_vertex(diag=(1, 2)), choice)
    choice = dl.AlphaChoice(lf.TowerDescriptor(3, 1, ()), None, "F")
    with pytest.raises(DomainError, match="r\\*e"):
        dl.dl_parameter(bary(1, 1, F3), choice)


def test_p_in_depth_denominator_is_flagged():
    x = rdm.ApartmentPoint(GL2, [Fraction(1, 3), 0])
    m = dl.MPType(GL2, x, Fraction(1, 3), [1], F3)
    nd = dl.is_nondegenerate(m)
    assert not nd.flag and not nd.guaranteed and nd.note


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.integers(1, 2))
def test_scaling_equivariance(coeffs, c):
    m = dl.MPType(GL2, ORIGIN, 1, coeffs, F3)
    assert dl.dl_parameter(m.scaled(c)).Z == dl.j_scale(F3, c, dl.dl_parameter(m).Z)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_invariance_under_random_words(data):
    rd, x, r = data.draw(st.sampled_from([(GL2, ORIGIN, 1), (SL2, BARY, Fraction(1, 2)),
                                          (SL2, rdm.ApartmentPoint.origin(SL2), 1),
                                          (GL2, rdm.ApartmentPoint.barycenter(GL2), Fraction(1, 2))]))
    probe = dl.MPType(rd, x, r, [0] * rdm.graded_piece(rd, x, -Fraction(r), x.e * Fraction(r).denominator, F3).dim, F3)
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=probe.model.dim, max_size=probe.model.dim))
    m = dl.MPType(rd, x, r, coeffs, F3)
    names = sorted(rdm.affine_weyl_generators(rd))
    w = rdm.affine_weyl_word(rd, data.draw(st.lists(st.sampled_from(names), max_size=12)))
    assert dl.same_parameter(dl.dl_parameter(m.transported(w)), dl.dl_parameter(m))


def test_sweep_sizes():
    assert len(dl.sweep(GL2, ORIGIN, 1, F3)) == 81
    assert len(dl.sweep(SL2, BARY, Fraction(1, 2), F3)) == 9


def test_toral_character_trivial_for_zero():
    ch = dl.ToralCharacter(lf.TowerDescriptor(3, 1, ()), [0], 1)
    assert set(ch.table().values()) == {0}


def test_toral_character_rank_one():
    ch = dl.ToralCharacter(lf.TowerDescriptor(3, 1, ()), [1], 1)
    assert ch.depth() == 1
    assert ch.table() == {(0, 1): Fraction(1, 3)}


def test_toral_norm_compatibility_tame_quadratic():
    small = lf.TowerDescriptor(3, 1, ())
    big = lf.TowerDescriptor(3, 1, (lf.tame(2),))
    assert dl.norm_compatibility(small, big, [1, 2], 1).holds


def test_depth_zero_examples():
    SL2_params = dl.depth_zero_space(SL2, 3)
    assert [p.orbit for p in SL2_params] == [((Fraction(0),),), ((Fraction(1, 4),), (Fraction(3, 4),)),
                                              ((Fraction(1, 2),),)]
    GL1 = rdm.RootDatum("GL", 1)
    assert [p.canonical for p in dl.depth_zero_space(GL1, 3)] == [(Fraction(0),), (Fraction(1, 2),)]
    for rd in (GL1, SL2, GL2):
        assert dl.depth_zero_space(rd, 5)[0].canonical == (0,) * rd.rank


def test_depth_zero_rejects_twisted_form():
    with pytest.raises(DomainError):
        dl.depth_zero_space(SL2, 3, sigma="outer")


def test_pushforward_examples():
    d = dl.depth_zero_pushforward(SL2, rdm.ApartmentPoint.origin(SL2), [["1/4"], ["3/4"]])
    assert d.orbit == ((Fraction(1, 4),), (Fraction(3, 4),))
    d = dl.depth_zero_pushforward(GL2, rdm.ApartmentPoint(GL2, [0, "1/2"]), [["1/4", "3/4"]])
    assert d.orbit == ((Fraction(1, 4), Fraction(3, 4)), (Fraction(3, 4), Fraction(1, 4)))
    assert dl.depth_zero_pushforward(SL2, BARY, [[0]]).canonical == (0,)
    with pytest.raises(DomainError):
        dl.depth_zero_pushforward(SL2, rdm.ApartmentPoint.origin(SL2), [["1/4"]])


def test_changing_base_character_rescales_toral_table():
    desc = lf.TowerDescriptor(3, 1, (lf.tame(2),))
    one = dl.ToralCharacter(desc, [1], 1).table()
    two = dl.ToralCharacter(desc, [1], 1, lf.AdditiveCharacter(3, 2)).table()
    assert two == {k: (2 * v) % 1 for k, v in one.items()}
    assert lf.character_conductor(lf.AdditiveCharacter(3, 2), lf.realize_tower(desc)) == 0
