import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ramdepth import gfmatrix as gm
from ramdepth.errors import DomainError
from ramdepth.finitefield import GF, get_field

FIELDS = [(2, 1), (3, 1), (3, 2), (5, 1), (2, 3)]


@st.composite
def field_and_elements(draw, count=3):
    p, k = draw(st.sampled_from(FIELDS))
    F = get_field(p, k)
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(count)]


@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, F.neg(a)) == 0
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elements(1))
def test_frobenius_is_additive_and_periodic(data):
    F, (a,) = data
    assert F.frob(a, F.k) == a
    assert F.frob(a) == F.pow(a, F.p)


def test_rejects_composite_characteristic():
    with pytest.raises(DomainError):
        GF(4)


@st.composite
def prime_matrices(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    n = draw(st.integers(1, 4))
    return p, [[draw(st.integers(0, p - 1)) for _ in range(n)] for _ in range(n)]


@settings(max_examples=60)
@given(prime_matrices())
def test_charpoly_matches_sympy(data):
    p, m = data
    F = get_field(p)
    lam = sympy.Symbol("lam")
    ref = sympy.Poly(sympy.Matrix(m).charpoly(lam).as_expr(), lam, modulus=p)
    coeffs = [int(c) % p for c in ref.all_coeffs()]
    coeffs = [0] * (len(m) + 1 - len(coeffs)) + coeffs
    assert list(gm.charpoly(F, m)) == coeffs[1:]


@settings(max_examples=60)
@given(prime_matrices())
def test_inverse_or_singular(data):
    p, m = data
    F = get_field(p)
    if gm.det(F, m) == 0:
        with pytest.raises(ZeroDivisionError):
            gm.inverse(F, m)
    else:
        assert gm.matmul(F, m, gm.inverse(F, m)) == gm.identity(len(m))


@pytest.mark.parametrize("p, ka, kb", [(3, 1, 2), (2, 1, 3), (3, 2, 4), (2, 2, 4)])
def test_embedding_is_a_ring_map(p, ka, kb):
    A, B = get_field(p, ka), get_field(p, kb)
    e = gm.embedding(p, ka, kb)
    for a in A.elements():
        for b in A.elements():
            assert e[A.add(a, b)] == B.add(e[a], e[b])
            assert e[A.mul(a, b)] == B.mul(e[a], e[b])


def test_embedding_requires_divisibility():
    with pytest.raises(DomainError):
        gm.embedding(3, 2, 3)
