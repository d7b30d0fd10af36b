from collections import Counter

from chainring.arith import irreducibles
from chainring.presentation import Presentation, validate
from chainring.sweep import (
    SweepConfig,
    check_presentation,
    enumerate_presentations,
    run_sweep,
    summarize,
)

from .rings import F4Y2, PC, Z4, Z8


def _expected_count(primes=(2, 3), degrees=(1, 2), s_max=4, r_max=4, max_order=4096):
    # each relation exponent is either absent or carries one of q - 1 nonzero digit polynomials
    total = 0
    for p in primes:
        for d in degrees:
            q = p**d
            for s in range(1, s_max + 1):
                if q ** (s + 1) > max_order:
                    continue
                g_rels = q**s
                for r in range(1, r_max + 1):
                    if r == 1:
                        p_rels = 1
                    else:
                        p_rels = sum((q - 1) * q ** (s - t1) for t1 in range(1, s + 1) if (r - 1) * t1 <= s < r * t1)
                    total += len(irreducibles(p, d)) * g_rels * p_rels
    return total


def test_enumeration_count_and_validity():
    ps = list(enumerate_presentations())
    assert len(ps) == _expected_count() == 50120
    assert len(set(ps)) == len(ps)
    assert all(validate(P).ok for P in ps[::37])
    orders = Counter(P.order for P in ps)
    assert max(orders) <= 4096 and set(orders) <= {4, 8, 9, 16, 27, 32, 64, 81, 243, 256, 729, 1024, 4096}


def test_enumeration_small_box():
    ps = list(enumerate_presentations(primes=(2,), degrees=(1,), s_max=1, r_max=2))
    # g in {X, X + 1}, g_rel empty or Y, and r in {1, 2} (t1 = 1 when r = 2)
    assert len(ps) == _expected_count((2,), (1,), 1, 2) == 8


def test_check_presentation_examples():
    for P in (Z4, PC, F4Y2, Z8):
        rep = check_presentation(P)
        assert rep.ok, rep.details
    rep = check_presentation(F4Y2)
    assert set(rep.results) == {1, 2, 3, 4, 5, 9}
    assert set(check_presentation(PC).results) == {1, 2, 5, 9}


def test_check_presentation_reports_invalid():
    rep = check_presentation(Presentation(2, 2, 2, (0, 1), ((1, (1,)),)))
    assert not rep.ok and rep.failures() == [1]


def test_summarize_counts():
    reports = run_sweep(SweepConfig(), [Z4, PC, F4Y2], criteria=(1, 9))
    s = summarize(reports)
    assert s[1]["checked"] == 3 and s[1]["failures"] == 0
    assert s[9]["checked"] == 3
