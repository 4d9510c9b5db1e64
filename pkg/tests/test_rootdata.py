from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth import gfmatrix as gm
from ramdepth import rootdata as rdm
from ramdepth.errors import DomainError
from ramdepth.finitefield import get_field

GL2, SL2, GL3, SL3 = (rdm.RootDatum.parse(s) for s in ("GL2", "SL2", "GL3", "SL3"))
GL1 = rdm.RootDatum("GL", 1)
F3 = get_field(3)


@pytest.mark.parametrize("rd", [GL2, SL2, GL3, SL3])
def test_roots_pair_to_two(rd):
    for a, ac in zip(rd.roots, rd.coroots):
        assert sum(x * y for x, y in zip(a, ac)) == 2
    assert len(rd.roots) == rd.n * (rd.n - 1)
    assert len(rd.weyl_group()) == {2: 2, 3: 6}[rd.n]


def test_parse_and_json():
    assert rdm.RootDatum.from_json(SL3.to_json()) == SL3
    with pytest.raises(DomainError):
        rdm.RootDatum.parse("Sp4")


def test_dual_swaps_sl_and_pgl():
    assert SL2.dual().kind == "PGL" and SL2.dual().dual() == SL2
    assert GL2.dual() == GL2


def test_apartment_points():
    assert rdm.ApartmentPoint.barycenter(GL2).coords == (Fraction(1, 2), 0)
    assert rdm.ApartmentPoint.barycenter(SL2).coords == (Fraction(1, 4), Fraction(-1, 4))
    assert rdm.ApartmentPoint(SL2, ["1/4"]) == rdm.ApartmentPoint.barycenter(SL2)
    assert rdm.ApartmentPoint.barycenter(SL3).e == 3


@pytest.mark.parametrize("rd, x, s, e, dim", [
    (GL2, "origin", -1, 1, 4),
    (SL2, "barycenter", Fraction(-1, 2), 2, 2),
    (SL2, "barycenter", 0, 2, 1),
    (SL3, "barycenter", Fraction(1, 3), 3, 3),
])
def test_graded_piece_dimensions(rd, x, s, e, dim):
    pt = getattr(rdm.ApartmentPoint, x)(rd)
    assert rdm.graded_piece(rd, pt, s, e, F3).dim == dim


@pytest.mark.parametrize("rd", [GL2, SL2, GL3, SL3])
@pytest.mark.parametrize("where", ["origin", "barycenter"])
def test_graded_dimensions_periodic_and_sum_to_lie_algebra(rd, where):
    x = getattr(rdm.ApartmentPoint, where)(rd)
    e = x.e
    dims = [rdm.graded_piece(rd, x, Fraction(k, e), e, F3).dim for k in range(2 * e)]
    assert dims[:e] == dims[e:]
    assert sum(dims[:e]) == rd.n ** 2 - (rd.kind == "SL")


def test_off_grid_grade_rejected():
    with pytest.raises(DomainError):
        rdm.graded_piece(SL2, rdm.ApartmentPoint.barycenter(SL2), Fraction(1, 3), 2, F3)


def test_from_matrix_rejects_off_support():
    m = rdm.graded_piece(SL2, rdm.ApartmentPoint.barycenter(SL2), 0, 2, F3)
    with pytest.raises(DomainError):
        m.from_matrix([[0, 1], [0, 0]])


def test_shift_by_scalar():
    x = rdm.ApartmentPoint.origin(GL2)
    m = rdm.graded_piece(GL2, x, -1, 1, F3)
    assert rdm.shift_by_scalar(m, 0).labels == m.labels
    z = rdm.shift_by_scalar(m, 1)
    assert z.s == 0 and [l[:3] for l in z.labels] == [l[:3] for l in m.labels]
    y = rdm.ApartmentPoint.barycenter(SL2)
    h = rdm.graded_piece(SL2, y, Fraction(-1, 2), 2, F3)
    twice = rdm.shift_by_scalar(rdm.shift_by_scalar(h, Fraction(1, 2)), Fraction(1, 2))
    assert twice.labels == rdm.shift_by_scalar(h, 1).labels


def test_reductive_quotients():
    assert rdm.reductive_quotient(GL3, rdm.ApartmentPoint.origin(GL3)).is_full
    assert rdm.reductive_quotient(SL2, rdm.ApartmentPoint.barycenter(SL2)).is_torus
    rq = rdm.reductive_quotient(GL2, rdm.ApartmentPoint(GL2, [0, "1/2"]))
    assert rq.is_torus and len(rq.weyl) == 1


def test_affine_weyl_ball_sizes():
    assert len(rdm.affine_weyl_ball(SL2, 6)) == 22
    assert len(rdm.affine_weyl_ball(GL2, 6)) == 162


def test_simple_reflection_on_gl_model():
    x = rdm.ApartmentPoint.origin(SL2)
    m = rdm.graded_piece(SL2, x, -1, 1, F3)
    labels = [l[0] for l in m.labels]
    coeffs = tuple(1 if k == "torus" else 0 for k in labels)
    roots = [i for i, k in enumerate(labels) if k == "root"]
    c2 = list(coeffs)
    c2[roots[0]] = 1
    s1 = rdm.affine_weyl_generators(SL2)["s1"]
    _, out = rdm.act_affine_weyl(s1, m, c2)
    assert out[0] == F3.neg(1)
    assert out[roots[1]] == F3.neg(1) and out[roots[0]] == 0


@st.composite
def words(draw, rd):
    names = sorted(rdm.affine_weyl_generators(rd))
    return draw(st.lists(st.sampled_from(names), max_size=8))


@settings(max_examples=50)
@given(st.data())
def test_point_action_is_a_group_action(data):
    rd = data.draw(st.sampled_from([GL2, SL2, GL3, SL3]))
    w1 = rdm.affine_weyl_word(rd, data.draw(words(rd)))
    w2 = rdm.affine_weyl_word(rd, data.draw(words(rd)))
    x = rdm.ApartmentPoint.barycenter(rd)
    assert (w1 * w2).act_point(x) == w1.act_point(w2.act_point(x))


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_transport_preserves_characteristic_polynomial(data):
    rd = data.draw(st.sampled_from([GL2, SL2, GL3, SL3]))
    x = data.draw(st.sampled_from([rdm.ApartmentPoint.origin(rd), rdm.ApartmentPoint.barycenter(rd)]))
    s = Fraction(-data.draw(st.integers(1, 2 * x.e)), x.e)
    m = rdm.graded_piece(rd, x, s, x.e, F3)
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=m.dim, max_size=m.dim))
    w = rdm.affine_weyl_word(rd, data.draw(words(rd)))
    m2, c2 = rdm.act_affine_weyl(w, m, coeffs)
    assert m2.x == w.act_point(x)
    assert gm.charpoly(F3, m2.to_matrix(c2)) == gm.charpoly(F3, m.to_matrix(coeffs))


def test_torsion_examples():
    PT = rdm.DualTorsionPoint.make
    assert rdm.torsion_canonical(PT(SL2, [0]), 3) == (Fraction(0),)
    assert rdm.torsion_canonical(PT(SL2, ["3/4"]), 3) == (Fraction(1, 4),)
    assert rdm.torsion_canonical(PT(SL2, ["1/5"]), 3) is None


@settings(max_examples=40)
@given(st.sampled_from([GL1, SL2, GL2]), st.integers(2, 5), st.data())
def test_canonical_constant_on_orbits(rd, q, data):
    coords = [Fraction(data.draw(st.integers(0, 11)), 12) for _ in range(rd.rank)]
    pt = rdm.DualTorsionPoint.make(rd, coords)
    c = rdm.torsion_canonical(pt, q)
    for v in pt.orbit():
        assert rdm.torsion_canonical(rdm.DualTorsionPoint.make(rd, v), q) == c
    if c is not None:
        assert rdm.torsion_canonical(rdm.DualTorsionPoint.make(rd, c), q) == c


@pytest.mark.parametrize("rd", [GL1, SL2, GL2, rdm.RootDatum("PGL", 2)])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_smith_form_solutions_match_scan(rd, q):
    exact = set(rdm.frobenius_solutions(rd, q))
    bound = q ** 2 - 1
    grid = sorted({Fraction(a, b) for b in range(1, bound + 1) for a in range(b)})
    scan = {v for v in product(grid, repeat=rd.rank)
            if any(rdm.DualTorsionPoint.make(rd, v).scaled(q).coords == rdm.DualTorsionPoint.make(rd, v).act(w).coords
                   for w in rd.weyl_group())}
    assert exact == scan
