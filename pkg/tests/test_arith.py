import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainring.arith import (
    FieldRep,
    Modulus,
    UniPoly,
    ZMod,
    field_isos,
    gen_irreducible,
    irreducibles,
    is_irreducible_mod_p,
    poly_divrem_monic,
)

Z4 = Modulus(2, 2)


def P(cs, mod=Z4):
    return UniPoly(tuple(cs), mod)


def test_divrem_examples():
    q, r = poly_divrem_monic(P([3, 0, 1]), P([1, 1]))
    assert q.coeffs == (3, 1) and r.is_zero()
    q, r = poly_divrem_monic(P([0, 1]), P([0, 1]))
    assert q.coeffs == (1,) and r.is_zero()
    q, r = poly_divrem_monic(P([2]), P([0, 1]))
    assert q.is_zero() and r.coeffs == (2,)


def test_divrem_rejects_non_monic():
    with pytest.raises(ValueError):
        poly_divrem_monic(P([1, 0, 1]), P([1, 2]))


@given(
    st.lists(st.integers(0, 8), min_size=1, max_size=7),
    st.lists(st.integers(0, 8), min_size=1, max_size=3),
)
def test_divrem_reconstructs(f, g):
    mod = Modulus(3, 2)
    G = P(list(g) + [1], mod)
    F = P(f, mod)
    q, r = poly_divrem_monic(F, G)
    assert q * G + r == F
    assert r.is_zero() or r.degree < G.degree


def test_irreducibility_examples():
    F2 = Modulus(2)
    assert is_irreducible_mod_p(P([1, 1, 1], F2))
    assert not is_irreducible_mod_p(P([1, 0, 1], F2))
    for p in (2, 3, 5):
        assert is_irreducible_mod_p(P([0, 1], Modulus(p)))


def _products(p, d):
    # every monic polynomial of degree d that factors into two of positive degree
    mod = Modulus(p)
    monic = lambda k: [P(list(c) + [1], mod) for c in itertools.product(range(p), repeat=k)]
    out = set()
    for a in range(1, d // 2 + 1):
        for f in monic(a):
            for g in monic(d - a):
                out.add((f * g).coeffs)
    return out


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibles_match_factorisation(p, d):
    reducible = _products(p, d)
    everything = {tuple(c) + (1,) for c in itertools.product(range(p), repeat=d)}
    assert {g.coeffs for g in irreducibles(p, d)} == everything - reducible


def test_gen_irreducible_examples():
    assert gen_irreducible(2, 1).coeffs == (0, 1)
    assert gen_irreducible(2, 2).coeffs == (1, 1, 1)
    assert gen_irreducible(3, 2).coeffs == (1, 0, 1)


def test_field_examples():
    F4 = FieldRep(2, (1, 1, 1))
    g = F4.multiplicative_generator()
    assert g == F4.gen and F4.order_of(g) == 3
    F3 = FieldRep(3, (0, 1))
    assert not F3.is_square(F3.elem([2]))
    assert F3.is_square(F3.elem([1]))
    for K in (F3, F4, FieldRep(3, (1, 0, 1))):
        assert K.min_poly(K.zero).coeffs == (0, 1)


def test_field_isos_examples():
    F4 = FieldRep(2, (1, 1, 1))
    isos = field_isos(F4, F4)
    assert sorted(f.image_of_x for f in isos) == [(0, 1), (1, 1)]
    assert field_isos(FieldRep(2, (0, 1)), F4) == []
    K1, K2 = FieldRep(3, (1, 0, 1)), FieldRep(3, (2, 1, 1))
    isos = field_isos(K1, K2)
    assert len(isos) == 2
    for f in isos:
        for a, b in itertools.product(K1.elements(), repeat=2):
            assert f(K1.mul(a, b)) == K2.mul(f(a), f(b))
            assert f(K1.add(a, b)) == K2.add(f(a), f(b))
        inv = f.inverse()
        assert all(inv(f(a)) == a for a in K1.elements())


FIELDS = [(2, (0, 1)), (2, (1, 1, 1)), (2, (1, 1, 0, 1)), (3, (1, 0, 1)), (5, (2, 1)), (3, (1, 2, 0, 1))]


@settings(max_examples=60)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(field_args, data):
    K = FieldRep(*field_args)
    pick = st.integers(0, K.order - 1).map(K.from_index)
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
    assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
    assert K.add(a, K.neg(a)) == K.zero
    if a != K.zero:
        assert K.mul(a, K.inverse(a)) == K.one
        assert K.pow(a, K.order - 1) == K.one
        assert K.evaluate(K.min_poly(a), a) == K.zero
    if K.is_square(a):
        r = K.sqrt(a)
        assert K.mul(r, r) == a


@pytest.mark.parametrize("field_args", FIELDS)
def test_multiplicative_generator_has_full_order(field_args):
    K = FieldRep(*field_args)
    assert K.order_of(K.multiplicative_generator()) == K.order - 1


@pytest.mark.parametrize("p,r", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)])
def test_zmod_axioms_exhaustive(p, r):
    mod = Modulus(p, r)
    els = [ZMod(v, mod) for v in range(mod.n)]
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
        assert (a - b) + b == a
    for a, b, c in itertools.product(els[:9], repeat=3):
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
    for a in els:
        assert a.is_unit() == (a.value % p != 0)
        if a.is_unit():
            assert int(a * a.inverse()) == 1


def test_modulus_rejects_composite():
    with pytest.raises(ValueError):
        Modulus(4)
