"""Exhaustive sweep over small presentations with per-ring verification."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

import numpy as np

from .arith import irreducibles
from .finring import (
    all_ideals,
    lemma21_stats,
    principal_ideal,
    to_table,
)
from .iso import brute_force_iso
from .presentation import (
    Presentation,
    QuotientRing,
    certify,
    rewriting_orders_agree,
    validate,
)
from .structure import (
    binomial_identity_holds,
    char_p_canonical_iso,
    coefficient_field,
    local_data,
    presentation_iso_holds,
    recover,
)


def _nonzero_digit_polys(p: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(1, p**d):
        cs = [(i // p**k) % p for k in range(d)]
        while cs[-1] == 0:
            cs.pop()
        out.append(tuple(cs))
    return out


def _relations(exps: range, polys: list[tuple[int, ...]]) -> Iterator[tuple[tuple[int, tuple[int, ...]], ...]]:
    exps = list(exps)
    for k in range(len(exps) + 1):
        for chosen in combinations(exps, k):
            for coeffs in product(polys, repeat=k):
                yield tuple(zip(chosen, coeffs))


def enumerate_presentations(
    primes=(2, 3), degrees=(1, 2), s_max: int = 4, r_max: int = 4, max_order: int = 4096
) -> Iterator[Presentation]:
    """Every valid presentation in the box, coefficients in {0..p-1}, deterministic order."""
    for p in primes:
        for d in degrees:
            q = p**d
            polys = _nonzero_digit_polys(p, d)
            for s in range(1, s_max + 1):
                if q ** (s + 1) > max_order:
                    continue
                for r in range(1, r_max + 1):
                    if r == 1:
                        p_rels = [()]
                    else:
                        p_rels = []
                        for t1 in range(1, s + 1):
                            if (r - 1) * t1 <= s < r * t1:
                                for u1 in polys:
                                    for rest in _relations(range(t1 + 1, s + 1), polys):
                                        p_rels.append(((t1, u1),) + rest)
                    for g in irreducibles(p, d):
                        for g_rel in _relations(range(1, s + 1), polys):
                            for p_rel in p_rels:
                                yield Presentation(p, r, s, g.coeffs, p_rel, g_rel)


@dataclass
class SweepConfig:
    pair_bound: int = 64  # exhaustive pairwise certification up to this order
    triple_bound: int = 16  # exhaustive triple certification up to this order
    samples: int = 512  # random pairs / triples above the bounds
    lattice_bound: int = 64  # brute-force ideal lattice up to this order
    oracle_bound: int = 64  # brute-force isomorphism for the round trip up to this order
    pointwise_bound: int = 4096  # pointwise check of the canonical map up to this order
    seed: int = 0


@dataclass
class RingReport:
    presentation: Presentation
    order: int
    results: dict[int, bool] = field(default_factory=dict)
    details: dict[int, dict] = field(default_factory=dict)
    seconds: dict[int, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[int]:
        return [k for k, v in self.results.items() if not v]


class _Timer:
    def __init__(self, report: RingReport, key: int):
        self.report, self.key = report, key

    def __enter__(self):
        self.t = time.perf_counter()

    def __exit__(self, *exc):
        self.report.seconds[self.key] = self.report.seconds.get(self.key, 0.0) + time.perf_counter() - self.t


def _criterion_1(P: Presentation, cfg: SweepConfig, rep: RingReport):
    if not validate(P).ok:
        rep.results[1] = False
        rep.details[1] = {"error": "invalid presentation"}
        return None, None, None
    ring = QuotientRing(P, check=False)
    n = ring.order
    cert = certify(P, ring=ring, pair_bound=cfg.pair_bound, triple_bound=cfg.triple_bound, samples=cfg.samples, seed=cfg.seed)
    char = ring.characteristic()
    data = local_data(ring)
    # the certified chain is built from powers of alpha; alpha = Y makes it (Y^k)
    chain_ok = data.is_chain and data.alpha == ring.q and data.sigma == P.s + 1
    nontrivial = data.chain[1:-1] if data.is_chain else []
    chain_ok &= len(nontrivial) == P.s
    brute = None
    if n <= cfg.lattice_bound:
        powers = [principal_ideal(ring, int(ring.pow(np.int64(ring.q), k))) for k in range(1, P.s + 1)]
        ideals = [i for i in all_ideals(ring, bound=n) if 1 < len(i) < n]
        brute = sorted(ideals, key=len) == sorted(powers, key=len) == nontrivial
        chain_ok &= brute
    rep.results[1] = cert.passed and char == P.p**P.r and chain_ok
    rep.details[1] = {"certify": cert.passed, "char": char, "sigma": data.sigma, "brute_lattice": brute}
    return ring, cert, data


def _criterion_3(ring, data) -> bool:
    A = coefficient_field(ring, data=data)
    m, q = A.members, data.q
    closed = np.isin(ring.sub(np.repeat(m, q), np.tile(m, q)), m).all()
    unit = int(ring.pow(np.int64(A.beta), q - 1)) == ring.one
    return len(m) == q and bool(closed) and unit and binomial_identity_holds(ring, data, A.t)


def _criterion_5(P, ring, data, cfg) -> tuple[bool, dict]:
    rec = recover(ring, data)
    P2 = rec.presentation
    t1 = P2.t1
    constraint = P2.r == 1 or ((P2.r - 1) * t1 <= P2.s < P2.r * t1)
    iso = presentation_iso_holds(P2, ring, rec.beta, rec.alpha)
    oracle = None
    if ring.order <= cfg.oracle_bound:
        T1, T2 = to_table(P2), to_table(ring)
        Q2 = QuotientRing(P2, check=False)
        hint = {Q2.q: rec.alpha, Q2.X.index: rec.beta}
        oracle = brute_force_iso(T1, T2, hint=hint) is not None
    return constraint and iso and oracle is not False, {"recovered": P2.to_json(), "oracle": oracle}


def check_presentation(P: Presentation, cfg: SweepConfig | None = None, criteria=(1, 2, 3, 4, 5, 9)) -> RingReport:
    """Run the per-ring checks; an exception inside a check counts as a failure of that check."""
    cfg = cfg or SweepConfig()
    rep = RingReport(P, P.order)
    with _Timer(rep, 1):
        try:
            ring, cert, data = _criterion_1(P, cfg, rep)
        except Exception as exc:  # noqa: BLE001 - recorded, not swallowed
            rep.results[1] = False
            rep.details[1] = {"error": repr(exc)}
            return rep
    if ring is None:
        return rep

    def attempt(key, fn):
        with _Timer(rep, key):
            try:
                out = fn()
            except Exception as exc:  # noqa: BLE001
                rep.results[key] = False
                rep.details[key] = {"error": repr(exc)}
                return
            if isinstance(out, tuple):
                rep.results[key], rep.details[key] = out
            else:
                rep.results[key] = bool(out)

    if 2 in criteria:
        def c2():
            st = lemma21_stats(ring, data.maximal)
            return st.r <= st.s <= st.t and st.as_tuple() == (P.p, P.r, P.s + 1, P.d * (P.s + 1))

        attempt(2, c2)
    if P.r == 1 and 3 in criteria:
        attempt(3, lambda: _criterion_3(ring, data))
    if P.r == 1 and 4 in criteria:
        attempt(
            4,
            lambda: char_p_canonical_iso(
                ring, pointwise_bound=cfg.pointwise_bound, samples=cfg.samples, seed=cfg.seed, data=data
            ).ok,
        )
    if 5 in criteria:
        attempt(5, lambda: _criterion_5(P, ring, data, cfg))
    if 9 in criteria:
        checks = cert.checks
        attempt(
            9,
            lambda: checks["module_order"]["passed"] and checks["idempotent"]["passed"] and rewriting_orders_agree(ring),
        )
    return rep


def run_sweep(cfg: SweepConfig | None = None, presentations=None, criteria=(1, 2, 3, 4, 5, 9), progress=None):
    cfg = cfg or SweepConfig()
    reports = []
    for k, P in enumerate(presentations if presentations is not None else enumerate_presentations()):
        reports.append(check_presentation(P, cfg, criteria))
        if progress is not None:
            progress(k, reports[-1])
    return reports


def summarize(reports: list[RingReport]) -> dict:
    keys = sorted({k for r in reports for k in r.results})
    out = {}
    for k in keys:
        rel = [r for r in reports if k in r.results]
        out[k] = {
            "checked": len(rel),
            "failures": sum(not r.results[k] for r in rel),
            "seconds": round(sum(r.seconds.get(k, 0.0) for r in rel), 2),
        }
    return out
