import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainring.arith import BiPoly
from chainring.presentation import (
    InvalidPresentationError,
    Presentation,
    QuotientRing,
    certify,
    elements,
    inverse,
    is_unit,
    module_order_log,
    normal_form,
    residue,
    rewriting_orders_agree,
    validate,
)
from chainring.sweep import enumerate_presentations

from .rings import F4Y2, PC, Z4, Z8


def test_validate_examples():
    assert validate(Z4).ok
    rep = validate(Presentation(2, 2, 2, (0, 1), ((1, (1,)),)))
    assert not rep.ok and any("s < r*t1" in v for v in rep.violations)
    rep = validate(Presentation(2, 1, 3, (1, 0, 1)))
    assert not rep.ok and any("reducible" in v for v in rep.violations)


def test_validate_rejects_u_in_p_g():
    bad = Presentation(2, 2, 2, (0, 1), ((2, (0,)),))
    assert not validate(bad).ok
    with pytest.raises(InvalidPresentationError):
        QuotientRing(bad)


def test_json_round_trip():
    for P in (Z4, PC, F4Y2, Z8, Presentation(3, 2, 3, (1, 0, 1), ((2, (1, 2)), (3, (0, 1))), ((1, (2,)),))):
        assert Presentation.from_json(P.to_json()) == P


def test_normal_form_examples():
    R = QuotientRing(Z4)
    two = normal_form(BiPoly.const(2, Z4.mod), R)
    assert two == R.Y
    Y3 = BiPoly.from_terms({(0, 3): 1}, PC.mod)
    for P in (Z4, PC, F4Y2):
        assert not normal_form(BiPoly.from_terms({(0, 3): 1}, P.mod), P)
    assert not normal_form(Y3, PC)
    R = QuotientRing(PC)
    assert R.from_terms({(0, 1): 3}) == R.Y


def test_ring_op_examples():
    R = QuotientRing(Z4)
    assert not (R.Y + R.Y)
    for P in (Z4, PC, F4Y2, Z8):
        R = QuotientRing(P)
        for x in R.iter_elements():
            assert x * R.one_elem == x
    R = QuotientRing(PC)
    sq = R.Y * R.Y
    D = sq.digits
    assert D[2, 0] == 1 and D.sum() == 1
    assert sq == R.scalar_elem(2)
    assert not (sq * R.Y)


def test_element_counts():
    assert len(list(elements(Z4))) == 4
    assert len(list(elements(PC))) == 8
    assert len(list(elements(F4Y2))) == 16


def test_units_and_inverses():
    R = QuotientRing(Z4)
    x = R.one_elem + R.Y
    assert is_unit(x) and inverse(x) == x
    for P in (Z4, PC, F4Y2, Z8):
        R = QuotientRing(P)
        assert not is_unit(R.Y)
        for x in R.iter_elements():
            if is_unit(x):
                assert x * inverse(x) == R.one_elem
            else:
                with pytest.raises(ZeroDivisionError):
                    inverse(x)
    R = QuotientRing(F4Y2)
    assert residue(R.X + R.Y) == (0, 1)


def test_unit_criterion_exhaustive():
    # x is a unit iff some y has x * y = 1
    for P in (Z4, PC, F4Y2, Z8):
        R = QuotientRing(P)
        e = R.elements()
        M = R.mul(e[:, None], e[None, :])
        has_inverse = (M == R.one).any(axis=1)
        assert np.array_equal(has_inverse, R.units_mask())


def _oracle_z4_y2(a, b):
    # a + bY in Z/4[Y]/(Y^2 - 2, 2Y), stored as a in Z/4, b in Z/2
    return (a % 4, b % 2)


def test_pc_against_explicit_model():
    R = QuotientRing(PC)
    model = list(itertools.product(range(4), range(2)))

    def to_ring(a, b):
        return R.scalar_elem(a) + R.scalar_elem(b) * R.Y

    def mul(x, y):
        (a, b), (c, e) = x, y
        # (a + bY)(c + eY) = ac + 2be + (ae + bc)Y, using Y^2 = 2 and 2Y = 0
        return _oracle_z4_y2(a * c + 2 * b * e, a * e + b * c)

    images = {to_ring(*m) for m in model}
    assert len(images) == 8
    for x, y in itertools.product(model, repeat=2):
        assert to_ring(*x) * to_ring(*y) == to_ring(*mul(x, y))
        assert to_ring(*x) + to_ring(*y) == to_ring(*_oracle_z4_y2(x[0] + y[0], x[1] + y[1]))


@pytest.mark.parametrize("P,n", [(Z4, 4), (Z8, 8)])
def test_cyclic_presentations_are_integers_mod_n(P, n):
    R = QuotientRing(P)
    idx = [R.scalar(c) for c in range(n)]
    assert len(set(idx)) == n
    for a, b in itertools.product(range(n), repeat=2):
        assert R.add(idx[a], idx[b]) == idx[(a + b) % n]
        assert R.mul(idx[a], idx[b]) == idx[(a * b) % n]


def test_certify_examples():
    assert certify(Z4).passed
    rep = certify(PC)
    assert rep.passed
    R = QuotientRing(PC)
    assert R.scalar(2) == R.nf_index(BiPoly.from_terms({(0, 2): 1}, PC.mod)) != 0
    assert R.scalar(4) == 0
    assert rep.checks["char_and_nilpotency"]["passed"]


def test_characteristic():
    for P, c in ((Z4, 4), (PC, 4), (F4Y2, 2), (Z8, 8)):
        assert QuotientRing(P).characteristic() == c


def test_module_order_exact():
    for P in (Z4, PC, F4Y2, Z8):
        log_order, _ = module_order_log(P)
        assert log_order == P.d * (P.s + 1)


SMALL = [P for P in enumerate_presentations(max_order=256)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_ring_axioms_on_random_triples(P, data):
    R = QuotientRing(P)
    x, y, z = (data.draw(st.integers(0, R.order - 1)) for _ in range(3))
    add, mul = R.add, R.mul
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert add(x, R.neg(x)) == 0
    assert mul(x, y) == mul(y, x)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL))
def test_normal_forms_are_canonical(P):
    R = QuotientRing(P)
    e = R.elements()
    assert len(np.unique(R.encode(R.reduce(R.digits(e))))) == P.order
    assert rewriting_orders_agree(R)
    assert all(R.nf_index(f) == 0 for f in P.generators().values())
