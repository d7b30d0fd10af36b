import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainring.arith import FieldRep
from chainring.finring import (
    NotPrincipalError,
    nontrivial_ideals,
    square_zero_ring,
    to_table,
    truncated_poly_ring,
    zmod_ring,
)
from chainring.iso import brute_force_iso
from chainring.presentation import Presentation, QuotientRing, validate
from chainring.structure import (
    binomial_identity_holds,
    catalog,
    char_p_canonical_iso,
    coefficient_field,
    digit_expand,
    local_data,
    p_valuation_profile,
    presentation_iso_holds,
    recover,
    recover_presentation,
    unit_power_decompose,
)
from chainring.sweep import enumerate_presentations

from .rings import F4Y2, PC, Z8

F4Y3 = Presentation(2, 1, 2, (1, 1, 1))
# Z/2[X,Y]/(Y^2, X^2 + X + 1 - Y)
F4_GY = Presentation(2, 1, 1, (1, 1, 1), (), ((1, (1,)),))


def _check_field(R, A, q):
    m = A.members
    assert len(m) == q and len(set(m.tolist())) == q
    assert int(R.pow(np.int64(A.beta), q - 1)) == R.one
    diffs = R.sub(m[:, None], m[None, :])
    assert np.isin(diffs, m).all()
    data = local_data(R)
    res = {int(x) for x in m}
    # members are pairwise incongruent modulo the maximal ideal
    for a in res:
        for b in res:
            if a != b:
                assert not data.in_m(int(R.sub(np.int64(a), np.int64(b))))


def test_coefficient_field_examples():
    R = QuotientRing(Presentation(2, 1, 1, (0, 1)))
    A = coefficient_field(R)
    assert sorted(R.label(a) for a in A.members) == ["0", "1"]

    R = QuotientRing(F4Y2)
    A = coefficient_field(R, beta1=(R.X + R.Y).index)
    assert A.x == (R.Y + R.X * R.Y).index
    assert A.beta == R.X.index
    assert int(R.pow(np.int64(A.beta), 3)) == R.one
    assert sorted(R.label(a) for a in A.members) == ["0", "1", "1 + X", "X"]
    _check_field(R, A, 4)

    F9 = truncated_poly_ring(FieldRep(3, (1, 0, 1)), 1)
    A = coefficient_field(F9)
    assert sorted(A.members.tolist()) == list(range(9))
    order = next(k for k in range(1, 9) if int(F9.pow(np.int64(A.beta), k)) == F9.one)
    assert order == 8


def test_coefficient_field_non_pir():
    for p in (2, 3):
        S = square_zero_ring(p)
        A = coefficient_field(S)
        _check_field(S, A, p)
        assert binomial_identity_holds(S, local_data(S), A.t)


def test_coefficient_field_rejects_mixed_characteristic():
    with pytest.raises(ValueError):
        coefficient_field(QuotientRing(PC))


@pytest.mark.parametrize("P,sigma", [(F4Y2, 2), (F4Y3, 3), (F4_GY, 2)])
def test_canonical_iso_examples(P, sigma):
    R = QuotientRing(P)
    ci = char_p_canonical_iso(R)
    assert ci.ok and ci.sigma == sigma
    assert ci.target.order == 4**sigma
    # verify independently: the image map is a ring isomorphism of tables
    T = to_table(R)
    f = ci.image
    assert len(set(f.tolist())) == T.order
    A, M = ci.target.add_table, ci.target.mul_table
    assert (T.add_table[f[:, None], f[None, :]] == f[A]).all()
    assert (T.mul_table[f[:, None], f[None, :]] == f[M]).all()


def test_canonical_iso_gy_case_has_nonzero_g_beta():
    R = QuotientRing(F4_GY)
    # g(X) = X^2 + X + 1 is Y here, so X itself is not the Teichmuller lift
    gX = R.X * R.X + R.X + 1
    assert gX == R.Y
    ci = char_p_canonical_iso(R)
    beta = ci.coeff_field.beta
    assert beta != R.X.index
    assert int(R.pow(np.int64(beta), 3)) == R.one


def test_unit_power_decompose_examples():
    R = QuotientRing(PC)
    Y = R.Y.index
    d = unit_power_decompose(R, (R.Y + R.Y * R.Y).index, Y)
    assert d.k == 1 and d.unit == (R.one_elem + R.Y).index
    d = unit_power_decompose(R, R.scalar(2), Y)
    assert d.k == 2 and d.unit == R.one
    assert unit_power_decompose(R, 0, Y) is None


def test_digit_expand_examples():
    R = QuotientRing(Z8)
    e = digit_expand(R, R.scalar(2), R.Y.index, R.X.index, 1)
    assert e.terms == ((1, (1,)),)
    R = QuotientRing(PC)
    e = digit_expand(R, R.scalar(2), R.Y.index, R.X.index, 1)
    assert e.terms == ((2, (1,)),)
    R = QuotientRing(F4Y2)
    gb = (R.X * R.X + R.X + 1).index
    assert gb == 0 and digit_expand(R, gb, R.Y.index, R.X.index, 2).terms == ()


SMALL = [P for P in enumerate_presentations(max_order=256)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL))
def test_digit_expand_round_trip(P):
    R = QuotientRing(P)
    data = local_data(R)
    rec = recover(R, data)
    for x in np.nonzero(~data.units)[0]:
        e = digit_expand(R, int(x), rec.alpha, rec.beta, P.d, data=data)
        assert e.evaluate(R, rec.alpha, rec.beta) == int(x)
        assert [k for k, _ in e.terms] == sorted(k for k, _ in e.terms)


def test_recover_examples():
    rec = recover(zmod_ring(9))
    assert rec.beta == 2 and rec.alpha == 3
    P = rec.presentation
    assert (P.g, P.p_rel, P.g_rel) == ((1, 1), ((1, (1,)),), ((1, (1,)),))
    assert (P.p, P.r, P.s) == (3, 2, 1)
    # F_2* is trivial, so the residue generator is 1 and g = X + 1
    P = recover_presentation(zmod_ring(4))
    assert (P.p, P.r, P.s, P.t1) == (2, 2, 1, 1)
    assert brute_force_iso(to_table(P), zmod_ring(4)) is not None
    P = recover_presentation(to_table(F4Y2))
    assert (P.r, P.s, P.g, P.p_rel, P.g_rel) == (1, 1, (1, 1, 1), (), ())


def test_recover_rejects_non_principal():
    with pytest.raises(NotPrincipalError):
        recover(square_zero_ring(2))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL))
def test_recover_round_trip(P):
    R = QuotientRing(P)
    rec = recover(R)
    P2 = rec.presentation
    assert validate(P2).ok
    assert P2.r == 1 or (P2.r - 1) * P2.t1 <= P2.s < P2.r * P2.t1
    assert (P2.p, P2.r, P2.s, P2.d) == (P.p, P.r, P.s, P.d)
    assert presentation_iso_holds(P2, R, rec.beta, rec.alpha)


def _find(rows, order, char, ring):
    return any(e.order == order and e.char == char and brute_force_iso(e.ring, ring) is not None for e in rows)


def test_catalog_examples():
    rows = catalog(2, 1, 1)
    assert _find(rows, 4, 2, to_table(Presentation(2, 1, 1, (0, 1))))
    assert _find(rows, 4, 4, zmod_ring(4))
    rows = catalog(2, 1, 2)
    assert _find(rows, 8, 8, zmod_ring(8))
    assert _find(rows, 8, 4, to_table(PC))
    assert {e.label for e in rows} >= {"4.2(3)", "4.2(2a)"}


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("c", [1, 2, 3])
def test_catalog_members_have_c_ideals(p, c):
    rows = catalog(p, 1, c)
    assert rows
    for e in rows:
        assert len(nontrivial_ideals(e.ring, bound=e.order)) == c
        assert all(e.checks.values())
    if c == 3:
        assert all(e.char != p**3 for e in rows)
        for e in rows:
            v = p_valuation_profile(e.ring)
            if e.char == p**2:
                assert v in (2, 3)
            if e.char == p**4:
                assert v == 1


def test_catalog_dedup_labels_classes():
    rows = catalog(2, 1, 2, dedup=True)
    classes = {e.iso_class for e in rows}
    assert None not in classes
    reps = {}
    for e in rows:
        reps.setdefault(e.iso_class, e)
    for a in reps.values():
        for b in reps.values():
            if a is not b and a.order == b.order:
                assert brute_force_iso(a.ring, b.ring) is None
