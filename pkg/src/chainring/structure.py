"""Constructive structure theory of finite local rings.

Coefficient fields in characteristic p, the canonical map onto F_q[T]/(T^sigma),
unit-power decomposition of the maximal ideal, digit expansions in powers of a
uniformiser, recovery of a presentation from an abstract chain ring, and the
catalogs of chain rings with one, two or three nontrivial ideals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .arith import BiPoly, FieldRep, Modulus, UniPoly, format_poly, irreducibles
from .finring import (
    BoundExceededError,
    FiniteRing,
    Ideal,
    NotLocalError,
    NotPrincipalError,
    RawQuotient,
    TableRing,
    _prime_power,
    chain_certificate,
    ideal_product,
    is_local,
    nilpotency_index,
    nontrivial_ideals,
    principal_ideal,
    truncated_poly_ring,
)
from .presentation import Presentation, QuotientRing, validate

ORACLE_CAP = 729


# --------------------------------------------------------------------------
# local data shared by the constructions


@dataclass
class LocalData:
    units: np.ndarray
    maximal: Ideal
    alpha: int | None  # least-index element of m outside m^2, when m is principal
    chain: list[Ideal] | None  # 0 < m^(sigma-1) < ... < m < R, when a chain ring
    sigma: int  # nilpotency index of m
    p: int
    q: int

    @property
    def d(self) -> int:
        return _prime_power(self.q)[1]

    @property
    def is_chain(self) -> bool:
        return self.chain is not None

    def in_m(self, x) -> np.ndarray:
        return ~self.units[np.asarray(x, dtype=np.int64)]


def local_data(ring: FiniteRing) -> LocalData:
    """Units, maximal ideal and (when principal) the chain of a finite local ring."""
    n = ring.order
    p, _ = _prime_power(n)
    if isinstance(ring, QuotientRing):
        # (Y) is a candidate maximal ideal; residue representatives are the
        # b = 0 digit parts, i.e. index mod q.  chain_certificate checks both.
        cert = chain_certificate(ring, ring.q, rep=lambda x: np.asarray(x) % ring.q)
        m = Ideal(cert.maximal.members, ring.q)
        return LocalData(cert.units, m, ring.q, cert.chain, cert.nilpotency, p, n // len(m))
    local, m = is_local(ring)
    if not local:
        raise NotLocalError("ring is not local")
    q = n // len(m)
    if len(m) == 1:
        units = np.ones(n, dtype=bool)
        units[ring.zero] = False
        return LocalData(units, Ideal(m.members, ring.zero), ring.zero, [m, Ideal(ring.elements())], 1, p, q)
    m2 = ideal_product(ring, m, m)
    cand = np.setdiff1d(m.members, m2.members)
    alpha = int(cand[0])
    if principal_ideal(ring, alpha) == m:
        cert = chain_certificate(ring, alpha)
        return LocalData(cert.units, Ideal(m.members, alpha), alpha, cert.chain, cert.nilpotency, p, q)
    units = np.ones(n, dtype=bool)
    units[m.members] = False
    return LocalData(units, m, None, None, nilpotency_index(ring, m), p, q)


def _valuation(data: LocalData, x: int) -> int:
    """Largest k with x in m^k; sigma for x = 0."""
    n = len(data.units)
    k = 0
    # chain is ascending: chain[0] = 0, chain[-1] = R, chain[-1-k] = m^k
    while k + 1 < len(data.chain) and data.chain[-2 - k].mask(n)[x]:
        k += 1
    return k


def residue_order(ring: FiniteRing, data: LocalData, u: int) -> int:
    """Multiplicative order of the residue class of the unit u."""
    q1 = data.q - 1
    for k in sorted(k for k in range(1, q1 + 1) if q1 % k == 0):
        y = ring.pow(np.int64(u), k)
        if data.in_m(ring.sub(y, np.int64(ring.one))):
            return k
    raise AssertionError("residue order exceeds q - 1")


def residue_generator(ring: FiniteRing, data: LocalData) -> int:
    """Least-index unit whose residue generates (R/m)*."""
    for u in np.nonzero(data.units)[0]:
        if residue_order(ring, data, int(u)) == data.q - 1:
            return int(u)
    raise AssertionError("no residue generator found")


def poly_at(ring: FiniteRing, coeffs: Sequence[int], x: int) -> int:
    """f(x) for an integer polynomial, coefficients acting through c * 1."""
    acc = np.int64(ring.zero)
    for c in reversed(list(coeffs)):
        acc = ring.add(ring.mul(acc, np.int64(x)), np.int64(ring.scalar(c)))
    return int(acc)


def bipoly_at(ring: FiniteRing, f: BiPoly | dict, x: int, y: int) -> int:
    terms = f.terms() if isinstance(f, BiPoly) else f
    acc = ring.zero
    for (a, b), c in terms.items():
        mono = ring.mul(ring.pow(np.int64(x), a), ring.pow(np.int64(y), b))
        acc = int(ring.add(np.int64(acc), ring.mul(np.int64(ring.scalar(c)), mono)))
    return acc


def _digit_polys(p: int, d: int) -> list[tuple[int, ...]]:
    """All coefficient tuples of length d over {0..p-1}, in index order."""
    return [tuple((i // p**k) % p for k in range(d)) for i in range(p**d)]


def _poly_values(ring: FiniteRing, polys: list[tuple[int, ...]], x: int) -> np.ndarray:
    powers = [np.int64(ring.one)]
    for _ in range(max(len(w) for w in polys) - 1):
        powers.append(ring.mul(powers[-1], np.int64(x)))
    out = np.zeros(len(polys), dtype=np.int64)
    cs = np.array(polys, dtype=np.int64)
    for k, xk in enumerate(powers):
        mult = np.array([ring.scalar(c) for c in range(int(cs[:, k].max()) + 1)], dtype=np.int64)
        out = ring.add(out, ring.mul(mult[cs[:, k]], xk))
    return out


# --------------------------------------------------------------------------
# coefficient fields in characteristic p


@dataclass
class CoeffField:
    beta: int
    beta1: int
    t: int
    x: int
    members: np.ndarray  # 0 first, then beta^i for i = 0..q-2
    field: FieldRep  # F_p[X]/(minimal polynomial of beta)
    embedding: np.ndarray  # field index -> ring index

    @property
    def order(self) -> int:
        return len(self.members)

    def to_json(self, ring: FiniteRing | None = None) -> dict:
        lab = ring.label if ring is not None else str
        return {
            "beta": lab(self.beta),
            "beta1": lab(self.beta1),
            "t": self.t,
            "x": lab(self.x),
            "order": self.order,
            "members": [lab(int(a)) for a in self.members],
            "field": self.field.to_json(),
        }


def least_t(q: int, sigma: int) -> int:
    t = 1
    while q**t < sigma:
        t += 1
    return t


def coefficient_field(ring: FiniteRing, beta1: int | None = None, data: LocalData | None = None) -> CoeffField:
    """A subfield mapping onto R/m, for a finite local ring of prime characteristic.

    beta1 lifts a generator of (R/m)*; with q^t >= sigma the element
    beta = beta1^(q^t) = beta1 (1 + x), x = beta1^(q^t - 1) - 1, satisfies
    beta^(q-1) = 1 and its powers with 0 form the field.
    """
    data = data or local_data(ring)
    char = ring.characteristic()
    if char != data.p:
        raise ValueError(f"characteristic {char} is not prime")
    q = data.q
    if beta1 is None:
        beta1 = residue_generator(ring, data)
    elif not data.units[beta1] or residue_order(ring, data, beta1) != q - 1:
        raise ValueError("beta1 does not lift a generator of the residue field's unit group")
    t = least_t(q, data.sigma)
    b1 = np.int64(beta1)
    x = int(ring.sub(ring.pow(b1, q**t - 1), np.int64(ring.one)))
    if not data.in_m(x):
        raise AssertionError("beta1^(q^t - 1) - 1 is not in the maximal ideal")
    beta = int(ring.mul(b1, ring.add(np.int64(ring.one), np.int64(x))))
    if int(ring.pow(np.int64(beta), q - 1)) != ring.one:
        raise AssertionError("beta^(q-1) != 1")
    pows = [np.int64(ring.one)]
    for _ in range(q - 2):
        pows.append(ring.mul(pows[-1], np.int64(beta)))
    members = np.array([ring.zero] + [int(v) for v in pows], dtype=np.int64)
    _check_field(ring, data, members)
    fld, emb = _field_of(ring, data, beta)
    return CoeffField(beta, int(beta1), t, x, members, fld, emb)


def _check_field(ring: FiniteRing, data: LocalData, members: np.ndarray) -> None:
    q = data.q
    if len(np.unique(members)) != q:
        raise AssertionError("coefficient field has the wrong size")
    a, b = np.repeat(members, q), np.tile(members, q)
    if not np.isin(ring.sub(a, b), members).all() or not np.isin(ring.mul(a, b), members).all():
        raise AssertionError("coefficient field is not closed under subtraction and product")
    diff = ring.sub(a, b)[a != b]
    if data.in_m(diff).any():
        raise AssertionError("two coefficient field members share a residue")


def _field_of(ring: FiniteRing, data: LocalData, beta: int) -> tuple[FieldRep, np.ndarray]:
    """F_p[X]/(h) with h the minimal polynomial of beta, and the embedding X -> beta."""
    p, d = data.p, data.d
    for h in irreducibles(p, d):
        if poly_at(ring, h.coeffs, beta) == ring.zero:
            fld = FieldRep(p, h.coeffs)
            emb = _poly_values(ring, fld.elements(), beta)
            return fld, emb
    raise AssertionError("no minimal polynomial of degree d for beta")


def binomial_identity_holds(ring: FiniteRing, data: LocalData, t: int) -> bool:
    """(1 + x)^(q^t - 1) = 1 + sum_{k=1}^{sigma-1} (-1)^k x^k for every x in m."""
    m = data.maximal.members
    one = np.full(len(m), ring.one, dtype=np.int64)
    lhs = ring.pow(ring.add(one, m), data.q**t - 1)
    rhs = one.copy()
    power = one.copy()
    for k in range(1, data.sigma):
        power = ring.mul(power, m)
        rhs = ring.add(rhs, power) if k % 2 == 0 else ring.sub(rhs, power)
    return bool((lhs == rhs).all())


# --------------------------------------------------------------------------
# the canonical map F_q[T]/(T^sigma) -> R


@dataclass
class CanonicalIso:
    coeff_field: CoeffField
    alpha: int
    sigma: int
    image: np.ndarray  # index in F_q[T]/(T^sigma) -> ring index
    target: TableRing | None
    verified: dict

    @property
    def ok(self) -> bool:
        return all(self.verified.values())

    def to_json(self, ring: FiniteRing | None = None) -> dict:
        lab = ring.label if ring is not None else str
        return {
            "field": self.coeff_field.field.to_json(),
            "alpha": lab(self.alpha),
            "sigma": self.sigma,
            "checks": self.verified,
        }


# the same few targets recur across a sweep; the tables are never mutated
_target_ring = lru_cache(maxsize=32)(truncated_poly_ring)


def char_p_canonical_iso(
    ring: FiniteRing, pointwise_bound: int = 256, samples: int = 4096, seed: int = 0, data: LocalData | None = None
) -> CanonicalIso:
    """The map sum a_i T^i -> sum a_i alpha^i with a_i in the coefficient field.

    Verified pointwise on all pairs up to ``pointwise_bound`` elements.  Above
    it the map is checked to be bijective, its restriction to F_q to be a field
    isomorphism onto A, alpha^sigma = 0, and random pairs are checked; those
    facts already make it the evaluation homomorphism of F_q[T] at alpha.
    """
    data = data or local_data(ring)
    if not data.is_chain:
        raise NotPrincipalError("the maximal ideal is not principal")
    A = coefficient_field(ring, data=data)
    q, sigma, alpha = data.q, data.sigma, data.alpha
    n = q**sigma
    idx = np.arange(n, dtype=np.int64)
    image = np.full(n, ring.zero, dtype=np.int64)
    power = np.int64(ring.one)
    for j in range(sigma):
        digit = (idx // q**j) % q
        image = ring.add(image, ring.mul(A.embedding[digit], power))
        power = ring.mul(power, np.int64(alpha))
    checks = {
        "bijective": n == ring.order and len(np.unique(image)) == ring.order,
        "alpha_power_sigma_zero": int(power) == ring.zero,
    }
    fld = A.field
    fe = fld.elements()
    fa = np.array([[fld.index(fld.add(a, b)) for b in fe] for a in fe])
    fm = np.array([[fld.index(fld.mul(a, b)) for b in fe] for a in fe])
    emb = A.embedding
    checks["field_embedding"] = bool(
        (emb[fa] == ring.add(emb[:, None], emb[None, :])).all() and (emb[fm] == ring.mul(emb[:, None], emb[None, :])).all()
    )
    target = None
    if n <= pointwise_bound:
        target = _target_ring(fld, sigma)
        a, b = np.repeat(idx, n), np.tile(idx, n)
    else:
        rng = np.random.default_rng(seed)
        a, b = rng.integers(0, n, size=(2, samples))
    if target is None:
        # sampled check against F_q[T]/(T^sigma) arithmetic done digitwise
        ta, tm = _trunc_ops(fa, fm, q, sigma, a, b)
    else:
        ta, tm = target.add_table[a, b], target.mul_table[a, b]
    checks["additive" if n <= pointwise_bound else "additive_sampled"] = bool((image[ta] == ring.add(image[a], image[b])).all())
    checks["multiplicative" if n <= pointwise_bound else "multiplicative_sampled"] = bool(
        (image[tm] == ring.mul(image[a], image[b])).all()
    )
    return CanonicalIso(A, int(alpha), sigma, image, target, checks)


def _trunc_ops(fa, fm, q, k, a, b):
    da = np.stack([(a // q**j) % q for j in range(k)], axis=1)
    db = np.stack([(b // q**j) % q for j in range(k)], axis=1)
    s = fa[da, db]
    m = np.zeros_like(da)
    for i in range(k):
        for j in range(k - i):
            m[:, i + j] = fa[m[:, i + j], fm[da[:, i], db[:, j]]]
    w = q ** np.arange(k)
    return (s * w).sum(axis=1), (m * w).sum(axis=1)


# --------------------------------------------------------------------------
# unit-power decomposition and digit expansion


@dataclass(frozen=True)
class UnitPower:
    k: int
    unit: int


def unit_power_decompose(ring: FiniteRing, x: int, alpha: int, data: LocalData | None = None) -> UnitPower | None:
    """x = u * alpha^k with u a unit, k the m-adic valuation; None for x = 0."""
    data = data or local_data(ring)
    if x == ring.zero:
        return None
    if not data.in_m(x):
        raise ValueError("x is not in the maximal ideal")
    if principal_ideal(ring, alpha) != data.maximal:
        raise ValueError("alpha does not generate the maximal ideal")
    power = np.int64(alpha)
    k = 1
    while True:
        nxt = ring.mul(power, np.int64(alpha))
        if x not in principal_ideal(ring, int(nxt)):
            break
        power, k = nxt, k + 1
    units = np.nonzero(data.units)[0]
    hit = units[ring.mul(units, power) == x]
    if len(hit) == 0:
        raise AssertionError("no unit multiple of alpha^k equals x")
    return UnitPower(k, int(hit[0]))


@dataclass(frozen=True)
class DigitExpansion:
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    def to_json(self) -> list[dict]:
        return [{"k": k, "w": list(w)} for k, w in self.terms]

    def evaluate(self, ring: FiniteRing, alpha: int, beta: int) -> int:
        acc = np.int64(ring.zero)
        for k, w in self.terms:
            acc = ring.add(acc, ring.mul(np.int64(poly_at(ring, w, beta)), ring.pow(np.int64(alpha), k)))
        return int(acc)

    def __str__(self):
        parts = [f"({format_poly(w)})*a^{k}" for k, w in self.terms]
        return " + ".join(parts) or "0"


def digit_expand(ring: FiniteRing, x: int, alpha: int, beta: int, d: int, data: LocalData | None = None) -> DigitExpansion:
    """x = sum w_k(beta) alpha^k with each w_k of degree < d over {0..p-1} and nonzero."""
    data = data or local_data(ring)
    if not data.in_m(x):
        raise ValueError("x is not in the maximal ideal")
    polys = _digit_polys(data.p, d)
    vals = _poly_values(ring, polys, beta)
    if data.is_chain and alpha == data.alpha:
        chain = data.chain[::-1]
    else:
        chain = [principal_ideal(ring, int(ring.pow(np.int64(alpha), k))) for k in range(data.sigma + 1)]
    n = ring.order
    terms = []
    x = np.int64(x)
    while int(x) != ring.zero:
        k = max(j for j in range(data.sigma + 1) if chain[j].mask(n)[int(x)])
        ak = ring.pow(np.int64(alpha), k)
        cand = ring.mul(vals, ak)
        ok = np.nonzero(chain[k + 1].mask(n)[ring.sub(np.full(len(vals), x), cand)])[0]
        if len(ok) != 1 or ok[0] == 0:
            raise AssertionError("digit is not unique")
        w = polys[int(ok[0])]
        terms.append((k, tuple(_trim(w))))
        x = ring.sub(x, cand[ok[0]])
    return DigitExpansion(tuple(terms))


def _trim(w):
    w = list(w)
    while w and w[-1] == 0:
        w.pop()
    return w


# --------------------------------------------------------------------------
# presentation recovery


@dataclass
class Recovery:
    presentation: Presentation
    alpha: int
    beta: int
    p_expansion: DigitExpansion
    g_expansion: DigitExpansion

    def to_json(self, ring: FiniteRing | None = None) -> dict:
        lab = ring.label if ring is not None else str
        return {
            "presentation": self.presentation.to_json(),
            "alpha": lab(self.alpha),
            "beta": lab(self.beta),
            "p_expansion": self.p_expansion.to_json(),
            "g_expansion": self.g_expansion.to_json(),
        }


def recover(ring: FiniteRing, data: LocalData | None = None) -> Recovery:
    """Kernel of Z/p^r[X,Y] -> R, X -> beta, Y -> alpha, as a presentation."""
    data = data or local_data(ring)
    if not data.is_chain:
        raise NotPrincipalError("the maximal ideal is not principal")
    p, q, d = data.p, data.q, data.d
    char = ring.characteristic()
    cp, r = _prime_power(char)
    alpha = data.alpha
    s = data.sigma - 1
    if s < 1:
        raise ValueError("R is a field; presentations need a nonzero maximal ideal")
    beta = residue_generator(ring, data)
    g = None
    for i in range(q):
        cand = tuple((i // p**k) % p for k in range(d)) + (1,)
        if data.in_m(poly_at(ring, cand, beta)):
            g = cand
            break
    if g is None:
        raise AssertionError("no monic lift of the residue minimal polynomial")
    pe = digit_expand(ring, ring.scalar(p), alpha, beta, d, data)
    ge = digit_expand(ring, poly_at(ring, g, beta), alpha, beta, d, data)
    P = Presentation(p, r, s, g, pe.terms, ge.terms)
    rep = validate(P)
    if not rep.ok:
        raise AssertionError(f"recovered presentation is invalid: {rep.violations}")
    return Recovery(P, alpha, beta, pe, ge)


def recover_presentation(ring: FiniteRing) -> Presentation:
    return recover(ring).presentation


def presentation_image(P: Presentation, ring: FiniteRing, x_img: int, y_img: int) -> np.ndarray | None:
    """Images of all normal forms of P under X -> x_img, Y -> y_img, or None.

    None means a generator of Q does not vanish at (x_img, y_img), so the
    assignment does not define a homomorphism out of the quotient.
    """
    for f in P.generators().values():
        if bipoly_at(ring, f, x_img, y_img) != ring.zero:
            return None
    # images are additive in the digits: build them one digit position at a time
    image = np.array([ring.zero], dtype=np.int64)
    mult = np.array([ring.scalar(c) for c in range(P.p)], dtype=np.int64)
    ypow = np.int64(ring.one)
    for b in range(P.s + 1):
        mono = ypow
        for a in range(P.d):
            steps = ring.mul(mult, mono)
            image = ring.add(np.repeat(steps, len(image)), np.tile(image, P.p))
            mono = ring.mul(mono, np.int64(x_img))
        ypow = ring.mul(ypow, np.int64(y_img))
    return image


def presentation_iso_holds(P: Presentation, ring: FiniteRing, x_img: int, y_img: int) -> bool:
    """X -> x_img, Y -> y_img induces a ring isomorphism Z/p^r[X,Y]/Q -> ring."""
    if P.order != ring.order:
        return False
    image = presentation_image(P, ring, x_img, y_img)
    return image is not None and len(np.unique(image)) == ring.order


# --------------------------------------------------------------------------
# catalogs of chain rings with few ideals


@dataclass
class CatalogEntry:
    label: str
    params: dict
    ring: TableRing
    presentation: Presentation
    order: int
    char: int
    ideal_count: int
    iso_class: int | None = None
    checks: dict = field(default_factory=dict)

    def row(self) -> dict:
        return {
            "label": self.label,
            "params": {k: list(v) if isinstance(v, tuple) else v for k, v in self.params.items()},
            "order": self.order,
            "char": self.char,
            "ideal_count": self.ideal_count,
            "iso_class": self.iso_class,
            "presentation": self.presentation.to_json(),
        }


def _polys_below(p: int, d: int, nonzero: bool) -> list[tuple[int, ...]]:
    out = [tuple(_trim(w)) for w in _digit_polys(p, d)]
    return [w for w in out if w] if nonzero else out


def _family_members(p: int, d: int, c: int) -> Iterator[tuple[str, dict, int, list[dict], int]]:
    """(label, params, r, generator term-dicts, Y-bound N); univariate cases use N = 1."""

    def poly(w, shift_y=0, scale=1):
        return {(a, shift_y): scale * cf for a, cf in enumerate(w) if cf}

    def add(*ts):
        out: dict = {}
        for t in ts:
            for k, v in t.items():
                out[k] = out.get(k, 0) + v
        return out

    W = _polys_below(p, d, nonzero=False)
    U = _polys_below(p, d, nonzero=True)
    Y = lambda k, cf=1: {(0, k): cf}
    for g in irreducibles(p, d):
        gc = g.coeffs
        G = poly(gc)
        if c == 1:
            yield "4.1(1)", {"g": gc}, 1, [G, Y(2)], 2
            for w in W:
                yield "4.1(2)", {"g": gc, "w": w}, 2, [add(G, poly(w, 0, p)), Y(1)], 1
        elif c == 2:
            yield "4.2(1)", {"g": gc}, 1, [G, Y(3)], 3
            for w, u in product(W, U):
                rel = [add({(0, 0): p}, poly(u, 2, -1)), Y(1, p)]
                yield "4.2(2a)", {"g": gc, "w": w, "u": u}, 2, [add(G, poly(w, 0, p))] + rel, 3
            for v, w, u in product(U, W, U):
                rel = [add({(0, 0): p}, poly(u, 2, -1)), Y(1, p)]
                yield "4.2(2b)", {"g": gc, "v": v, "w": w, "u": u}, 2, [add(G, poly(v, 1, -1), poly(w, 0, p))] + rel, 3
            for z, w in product(W, W):
                yield "4.2(3)", {"g": gc, "z": z, "w": w}, 3, [add(G, poly(z, 0, p), poly(w, 0, p * p)), Y(1)], 1
        elif c == 3:
            yield "4.3(1)", {"g": gc}, 1, [G, Y(4)], 4
            for w, u in product(W, U):
                rel = [add(Y(3), poly(u, 0, -p)), Y(1, p)]
                yield "4.3(2a)", {"g": gc, "w": w, "u": u}, 2, [add(G, poly(w, 0, p))] + rel, 4
            for v, w, u in product(U, W, U):
                rel = [add(Y(3), poly(u, 0, -p)), Y(1, p)]
                yield "4.3(2b)", {"g": gc, "v": v, "w": w, "u": u}, 2, [add(G, poly(v, 2, -1), poly(w, 0, p))] + rel, 4
            for v, w, u in product(U, W, U):
                rel = [add(Y(3), poly(u, 0, -p)), Y(1, p)]
                yield "4.3(2c)", {"g": gc, "v": v, "w": w, "u": u}, 2, [add(G, poly(v, 1, -1), poly(w, 0, p))] + rel, 4
            for v, u, z in product(U, U, W):
                rel = add(Y(2), poly(u, 0, -p), poly(z, 1, -p))
                yield "4.3(2d)", {"g": gc, "v": v, "u": u, "z": z}, 2, [add(G, poly(v, 1, -p)), rel], 4
            for w, y, u, z in product(W, W, U, W):
                rel = add(Y(2), poly(u, 0, -p), poly(z, 1, -p))
                yield "4.3(2e)", {"g": gc, "w": w, "y": y, "u": u, "z": z}, 2, [add(G, poly(w, 0, -p), poly(y, 1, -p)), rel], 4
            for v, y, w, u, z in product(U, W, W, U, W):
                rel = add(Y(2), poly(u, 0, -p), poly(z, 1, -p))
                gen = add(G, poly(v, 1, -1), poly(y, 1, -p), poly(w, 0, -p))
                yield "4.3(2f)", {"g": gc, "v": v, "y": y, "w": w, "u": u, "z": z}, 2, [gen, rel], 4
            for y, z, w in product(W, W, W):
                f = add(G, poly(y, 0, p), poly(z, 0, p * p), poly(w, 0, p**3))
                yield "4.3(3)", {"g": gc, "y": y, "z": z, "w": w}, 4, [f, Y(1)], 1
        else:
            raise ValueError("ideal count must be 1, 2 or 3")


def family_ring(p: int, r: int, gens: list[dict], N: int, bound: int = ORACLE_CAP) -> TableRing:
    return family_quotient(p, r, gens, N, bound).table_ring()


def family_quotient(p: int, r: int, gens: list[dict], N: int, bound: int = ORACLE_CAP) -> RawQuotient:
    """Z/p^r[X,Y]/(gens) built by linear algebra.

    Y^N lies in each family's ideal, and so does G^N where G is the Y-free
    part of the first generator (G^N = (G - first)^N mod the first generator,
    and G - first is a multiple of Y); G^N is monic in X.
    """
    mod = Modulus(p, r)
    polys = [BiPoly.from_terms(t, mod) for t in gens]
    G0 = polys[0].y_parts[0] if polys[0].y_parts else UniPoly((), mod)
    G = UniPoly((1,), mod)
    for _ in range(N):
        G = G * G0
    return RawQuotient(p, r, polys, N, G.coeffs, bound)


def catalog(p: int, d: int, ideal_count: int, bound: int = ORACLE_CAP, dedup: bool = False) -> list[CatalogEntry]:
    """Every member of the chain-ring family with the given number of nontrivial ideals."""
    if p not in (2, 3) or d not in (1, 2):
        raise ValueError("catalogs are limited to p in {2, 3} and d in {1, 2}")
    q = p**d
    if q ** (ideal_count + 1) > bound:
        raise BoundExceededError(f"members have {q ** (ideal_count + 1)} elements, above the bound {bound}")
    out = []
    for label, params, r, gens, N in _family_members(p, d, ideal_count):
        ring = family_ring(p, r, gens, N, bound)
        data = local_data(ring)
        count = len(nontrivial_ideals(ring, bound=max(bound, ring.order)))
        rec = recover(ring, data)
        P = rec.presentation
        checks = {
            "ideal_count": count == ideal_count,
            "order": ring.order == q ** (ideal_count + 1),
            "round_trip": presentation_iso_holds(P, ring, rec.beta, rec.alpha),
        }
        out.append(CatalogEntry(label, params, ring, P, ring.order, ring.characteristic(), count, None, checks))
    if dedup:
        from .iso import brute_force_iso

        reps: list[CatalogEntry] = []
        for e in out:
            for k, rep in enumerate(reps):
                if (rep.order, rep.char) == (e.order, e.char) and brute_force_iso(rep.ring, e.ring) is not None:
                    e.iso_class = k
                    break
            else:
                e.iso_class = len(reps)
                reps.append(e)
    return out


def p_valuation_profile(ring: FiniteRing, data: LocalData | None = None) -> int | None:
    """m-adic valuation of p * 1 (None when p * 1 = 0)."""
    data = data or local_data(ring)
    x = ring.scalar(data.p)
    if x == ring.zero:
        return None
    return _valuation(data, x)
