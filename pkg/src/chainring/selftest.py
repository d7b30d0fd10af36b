"""The invariant suite behind ``chainring selftest``."""

from __future__ import annotations

import time

from .arith import FieldRep, gen_irreducible
from .finring import (
    lemma21_stats,
    nontrivial_ideals,
    square_zero_ring,
    truncated_poly_ring,
    two_generated_check,
    zmod_ring,
)
from .iso import prop44_sweep
from .structure import binomial_identity_holds, catalog, coefficient_field, local_data
from .sweep import SweepConfig, enumerate_presentations, run_sweep, summarize

SAMPLE_STRIDE = 97


def oracle_rings():
    """Z/p^k, F_q[T]/(T^k) and the non-PIR F_p[x, y]/(x, y)^2 for p in {2, 3}."""
    out = []
    for p in (2, 3):
        for k in (1, 2, 3, 4):
            out.append((f"Z/{p}^{k}", zmod_ring(p**k)))
        for d in (1, 2):
            fld = FieldRep(p, gen_irreducible(p, d).coeffs)
            for k in (2, 3):
                if p ** (d * k) <= 729:
                    out.append((f"F_{p**d}[T]/(T^{k})", truncated_poly_ring(fld, k)))
        out.append((f"F_{p}[x,y]/(x,y)^2", square_zero_ring(p)))
    return out


def check_oracle_rings() -> dict:
    failures = []
    for name, ring in oracle_rings():
        data = local_data(ring)
        st = lemma21_stats(ring, data.maximal)
        ok = st.r <= st.s <= st.t
        if ring.characteristic() == data.p and data.sigma > 1:
            A = coefficient_field(ring, data=data)
            ok &= len(A.members) == data.q and binomial_identity_holds(ring, data, A.t)
        if not ok:
            failures.append(name)
    return {"checked": len(oracle_rings()), "failures": failures, "passed": not failures}


def check_two_generated() -> dict:
    out = {}
    for p in (2, 3):
        ring = square_zero_ring(p)
        rep = two_generated_check(ring, p, p * p)
        count = len(nontrivial_ideals(ring))
        ok = bool(rep.claim_holds) and (count == p + 2 if p == 2 else count >= p + 2)
        out[p] = {"nontrivial": count, "witnesses": rep.witness_labels, "passed": ok}
    return {"cases": out, "passed": all(v["passed"] for v in out.values())}


def check_catalogs(primes=(2, 3), counts=(1, 2, 3)) -> dict:
    out = {}
    for p in primes:
        for c in counts:
            rows = catalog(p, 1, c)
            ok = all(all(e.checks.values()) for e in rows)
            if c == 3:
                ok &= all(e.char != p**3 for e in rows)
            out[f"p={p},c={c}"] = {"members": len(rows), "passed": ok}
    return {"cases": out, "passed": all(v["passed"] for v in out.values())}


def check_prop44() -> dict:
    recs = prop44_sweep()
    bad = [r.to_json() for r in recs if r.violation is not None]
    return {"instances": len(recs), "violations": bad, "passed": not bad}


def run(full: bool = False) -> dict:
    t0 = time.perf_counter()
    presentations = list(enumerate_presentations())
    if not full:
        presentations = [P for k, P in enumerate(presentations) if P.order <= 64 or k % SAMPLE_STRIDE == 0]
    reports = run_sweep(SweepConfig(), presentations)
    summary = summarize(reports)
    sweep = {
        "rings": len(reports),
        "per_criterion": {str(k): v for k, v in summary.items()},
        "failures": [r.presentation.to_json() for r in reports if not r.ok][:20],
        "passed": all(r.ok for r in reports),
    }
    parts = {
        "sweep": sweep,
        "oracle_rings": check_oracle_rings(),
        "two_generated": check_two_generated(),
        "catalogs": check_catalogs(),
        "prop44": check_prop44(),
    }
    return {**parts, "seconds": round(time.perf_counter() - t0, 1), "passed": all(v["passed"] for v in parts.values())}
