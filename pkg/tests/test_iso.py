from itertools import product

import numpy as np
import pytest

from chainring.finring import to_table, zmod_ring
from chainring.iso import (
    HypothesisError,
    Prop44Instance,
    Prop45Instance,
    brute_force_iso,
    is_isomorphism,
    prop44_construct,
    prop44_sweep,
    prop44_test,
    prop44_verdict,
    prop45_test,
)
from chainring.presentation import Presentation
from chainring.sweep import enumerate_presentations

from .rings import F4Y2, PC, Z4


def _z9_ext(u):
    # Z/9[Y]/(Y^2 - 3u, 3Y)
    return Prop44Instance(3, (0, 1), (0, 1), (u,), (u,)).raw(1).table_ring()


def test_brute_force_examples():
    assert brute_force_iso(to_table(Z4), to_table(Presentation(2, 1, 1, (0, 1)))) is None
    T = to_table(PC)
    f = brute_force_iso(T, T)
    assert f is not None and is_isomorphism(T, T, f)
    assert brute_force_iso(_z9_ext(1), _z9_ext(2)) is None
    assert brute_force_iso(_z9_ext(1), _z9_ext(4)) is not None


def test_brute_force_finds_relabelled_copy():
    T = to_table(F4Y2)
    rng = np.random.default_rng(1)
    perm = np.concatenate([[0, 1], 2 + rng.permutation(T.order - 2)])
    inv = np.argsort(perm)
    U = type(T)(perm[T.add_table[inv[:, None], inv[None, :]]], perm[T.mul_table[inv[:, None], inv[None, :]]])
    f = brute_force_iso(T, U)
    assert f is not None and is_isomorphism(T, U, f)


SMALL = [to_table(P) for P in enumerate_presentations(max_order=16)]


def test_brute_force_reflexive_and_symmetric():
    for A in SMALL:
        assert brute_force_iso(A, A) is not None
    for A, B in product(SMALL[:24], repeat=2):
        ab, ba = brute_force_iso(A, B), brute_force_iso(B, A)
        assert (ab is None) == (ba is None)
        if ab is not None:
            assert is_isomorphism(A, B, ab) and is_isomorphism(B, A, ba)


def test_prop44_examples():
    assert prop44_test(Prop44Instance(3, (0, 1), (0, 1), (1,), (2,)))[0] is False
    ok, wit = prop44_test(Prop44Instance(3, (0, 1), (0, 1), (1,), (4,)))
    assert ok and wit is not None
    ok, wit = prop44_test(Prop44Instance(2, (1, 1, 1), (1, 1, 1), (0, 1), (0, 1)))
    assert ok and wit["tau_X"] == [0, 1] and wit["v2"] == [1]


def test_prop44_construct_examples():
    inst = Prop44Instance(3, (0, 1), (0, 1), (1,), (1,))
    built = prop44_construct(inst)
    assert built.verified and built.w1 == (1,)
    assert (built.mapping == np.arange(len(built.mapping))).all()
    built = prop44_construct(Prop44Instance(3, (0, 1), (0, 1), (1,), (4,)))
    assert built.verified and len(built.mapping) == 27
    # X (X + 1)^2 = X^3 + X reduces to X + 1 modulo X^2 + X + 1
    inst = Prop44Instance(2, (1, 1, 1), (1, 1, 1), (0, 1), (1, 1))
    built = prop44_construct(inst)
    assert built.verified
    assert prop44_verdict(inst).oracle == "iso"
    with pytest.raises(HypothesisError):
        prop44_construct(Prop44Instance(3, (0, 1), (0, 1), (1,), (2,)))


def test_prop44_sweep_has_no_violations():
    recs = prop44_sweep()
    assert len(recs) == 20
    assert [r.to_json() for r in recs if r.violation] == []
    by_key = {(r.instance.p, r.instance.u1, r.instance.u2): r.verdict.oracle for r in recs if r.instance.p == 3}
    assert by_key[(3, (1,), (2,))] == "non-iso"
    assert by_key[(3, (1,), (1,))] == "iso"


def test_field_degree_gate():
    inst = Prop44Instance(2, (0, 1), (1, 1, 1), (1,), (1,))
    v = prop44_verdict(inst)
    assert not v.necessary and v.oracle == "non-iso"


def test_prop45_examples():
    v = prop45_test(Prop45Instance(3, (0, 1), (0, 1), (1,), (1,), (2,), (2,)))
    assert v.sufficient and v.witness["sufficient"] == {"v1": [1], "v2": [1]}
    for u3, u4 in product((1, 2), repeat=2):
        v = prop45_test(Prop45Instance(3, (0, 1), (0, 1), (1,), (2,), (u3,), (u4,)))
        assert not v.necessary and v.oracle == "non-iso"


@pytest.mark.parametrize("p", [2, 3])
def test_prop45_consistent_with_oracle(p):
    units = range(1, p)
    for u1, u2, u3, u4 in product(units, repeat=4):
        inst = Prop45Instance(p, (0, 1), (0, 1), (u1,), (u2,), (u3,), (u4,))
        v = prop45_test(inst)
        if v.oracle == "iso":
            assert v.necessary
        if v.sufficient:
            assert v.oracle == "iso"


def test_instance_rejects_u_in_ideal():
    with pytest.raises(ValueError):
        Prop44Instance(3, (0, 1), (0, 1), (3,), (1,))


def test_z9_extensions_are_not_z9():
    assert brute_force_iso(_z9_ext(1), zmod_ring(27)) is None
