"""Isomorphism questions for small chain rings.

``brute_force_iso`` is a complete search that only uses the tables.  The
square-class criteria compare two rings of the shape

    R_i = Z/p^2[X, Y]/(g_i(X), Y^2 - p u_i(X), pY)                 (prop44_*)
    R_i = Z/p^2[X, Y]/(g_i(X) - u_(i+2)(X) Y, Y^2 - p u_i(X), pY)  (prop45_*)

through the residue fields K_i = F_p[X]/(g_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .arith import FieldRep, Modulus, UniPoly, field_isos, poly_divrem_monic
from .finring import BoundExceededError, RawQuotient, TableRing
from .presentation import Presentation
from .structure import ORACLE_CAP, family_quotient, local_data

# --------------------------------------------------------------------------
# brute force


def _signatures(ring: TableRing) -> np.ndarray:
    """Per-element invariants preserved by any isomorphism."""
    n = ring.order
    A, M = ring.add_table, ring.mul_table
    e = np.arange(n)
    add_ord = np.zeros(n, dtype=np.int64)
    acc = e.copy()
    for k in range(1, n + 1):
        hit = (acc == ring.zero) & (add_ord == 0)
        add_ord[hit] = k
        if (add_ord > 0).all():
            break
        acc = A[acc, e]
    mul_kind = np.zeros(n, dtype=np.int64)
    acc = e.copy()
    for k in range(1, n + 2):
        undecided = mul_kind == 0
        mul_kind[undecided & (acc == ring.one)] = k
        mul_kind[undecided & (acc == ring.zero)] = -k
        if (mul_kind != 0).all():
            break
        acc = M[acc, e]
    srt = np.sort(M, axis=1)
    ideal_size = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
    return np.stack([add_ord, mul_kind, ideal_size], axis=1)


def _closure_rounds(ring: TableRing, seeds: list[int]) -> tuple[np.ndarray, list[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]]:
    """Subring generated by seeds, with a derivation for every element.

    Returns the members and a list of rounds (new, op, a, b): each new element
    equals a + b (op 0) or a * b (op 1) for earlier members a, b.
    """
    A, M = ring.add_table, ring.mul_table
    members = list(dict.fromkeys([ring.zero, ring.one] + list(seeds)))
    have = np.zeros(ring.order, dtype=bool)
    have[members] = True
    rounds = []
    while True:
        S = np.array(members, dtype=np.int64)
        best: dict[int, tuple[int, int, int]] = {}
        for op, T in ((0, A), (1, M)):
            vals = T[S[:, None], S[None, :]].ravel()
            fresh = ~have[vals]
            if not fresh.any():
                continue
            pos = np.nonzero(fresh)[0]
            uniq, first = np.unique(vals[pos], return_index=True)
            for v, f in zip(uniq, pos[first]):
                if int(v) not in best:
                    best[int(v)] = (op, int(S[f // len(S)]), int(S[f % len(S)]))
        if not best:
            return np.array(sorted(members)), rounds
        new = np.array(list(best), dtype=np.int64)
        ops = np.array([best[v][0] for v in best])
        a = np.array([best[v][1] for v in best])
        b = np.array([best[v][2] for v in best])
        rounds.append((new, ops, a, b))
        have[new] = True
        members.extend(int(v) for v in new)


def generating_set(ring: TableRing) -> list[int]:
    """Small generating set: (beta, alpha) for chain rings, else greedy least-index."""
    try:
        data = local_data(ring)
    except ValueError:
        data = None
    if data is not None and data.is_chain:
        from .structure import residue_generator

        gens = [residue_generator(ring, data), data.alpha]
        members, _ = _closure_rounds(ring, gens)
        if len(members) == ring.order:
            return gens
    gens: list[int] = []
    members, _ = _closure_rounds(ring, gens)
    while len(members) < ring.order:
        missing = np.setdiff1d(np.arange(ring.order), members)
        gens.append(int(missing[0]))
        members, _ = _closure_rounds(ring, gens)
    return gens


def _extend(ring1: TableRing, ring2: TableRing, gens, images, rounds) -> np.ndarray:
    f = np.full(ring1.order, -1, dtype=np.int64)
    f[ring1.zero] = ring2.zero
    f[ring1.one] = ring2.one
    for g, im in zip(gens, images):
        if f[g] not in (-1, im):
            return None
        f[g] = im
    for new, ops, a, b in rounds:
        vals = np.where(ops == 0, ring2.add_table[f[a], f[b]], ring2.mul_table[f[a], f[b]])
        f[new] = vals
    return f


def is_isomorphism(ring1: TableRing, ring2: TableRing, f: np.ndarray) -> bool:
    """Pointwise: f is a bijection preserving 0, 1, + and *."""
    f = np.asarray(f, dtype=np.int64)
    if ring1.order != ring2.order or len(f) != ring1.order or (f < 0).any():
        return False
    if len(np.unique(f)) != ring1.order or f[ring1.one] != ring2.one:
        return False
    A1, M1, A2, M2 = ring1.add_table, ring1.mul_table, ring2.add_table, ring2.mul_table
    return bool((f[A1] == A2[f[:, None], f[None, :]]).all() and (f[M1] == M2[f[:, None], f[None, :]]).all())


def brute_force_iso(ring1: TableRing, ring2: TableRing, hint: dict[int, int] | None = None, bound: int = ORACLE_CAP):
    """An isomorphism ring1 -> ring2 as an index array, or None if there is none.

    Images are assigned to a generating set of ring1 (candidates restricted to
    elements with matching invariants), extended along a fixed derivation of
    every element, and checked pointwise.  The search is exhaustive over the
    candidates, so None means the rings are not isomorphic.  ``hint`` maps
    generators to images and is tried first.
    """
    n = ring1.order
    if max(n, ring2.order) > bound:
        raise BoundExceededError(f"rings above the oracle bound {bound}")
    if n != ring2.order:
        return None
    s1, s2 = _signatures(ring1), _signatures(ring2)
    if not np.array_equal(np.unique(s1, axis=0, return_counts=True)[1], np.unique(s2, axis=0, return_counts=True)[1]) or not np.array_equal(
        np.unique(s1, axis=0), np.unique(s2, axis=0)
    ):
        return None
    if hint:
        gens = list(hint)
        members, rounds = _closure_rounds(ring1, gens)
        if len(members) == n:
            f = _extend(ring1, ring2, gens, [hint[g] for g in gens], rounds)
            if f is not None and is_isomorphism(ring1, ring2, f):
                return f
    gens = generating_set(ring1)
    _, rounds = _closure_rounds(ring1, gens)
    cands = [np.nonzero((s2 == s1[g]).all(axis=1))[0] for g in gens]
    for images in product(*cands):
        f = _extend(ring1, ring2, gens, images, rounds)
        if f is None or (f < 0).any():
            continue
        if not (s2[f] == s1).all():
            continue
        if is_isomorphism(ring1, ring2, f):
            return f
    return None


# --------------------------------------------------------------------------
# the square-class criteria


def _field(p: int, g) -> FieldRep:
    return FieldRep(p, tuple(int(c) % p for c in g))


def _as_elem(K: FieldRep, u) -> tuple[int, ...]:
    return K.elem(tuple(int(c) for c in u))


def _poly(cs) -> tuple[int, ...]:
    cs = [int(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Prop44Instance:
    p: int
    g1: tuple[int, ...]
    g2: tuple[int, ...]
    u1: tuple[int, ...]
    u2: tuple[int, ...]

    def __post_init__(self):
        for name in ("g1", "g2", "u1", "u2"):
            object.__setattr__(self, name, _poly(getattr(self, name)))
        K1, K2 = _field(self.p, self.g1), _field(self.p, self.g2)
        for K, u, g in ((K1, self.u1, self.g1), (K2, self.u2, self.g2)):
            if len(u) >= len(g) or not any(_as_elem(K, u)):
                raise ValueError("each u must be nonzero modulo (p, g) with deg u < deg g")

    @property
    def fields(self) -> tuple[FieldRep, FieldRep]:
        return _field(self.p, self.g1), _field(self.p, self.g2)

    def presentation(self, i: int) -> Presentation:
        return prop44_presentation(self.p, (self.g1, self.g2)[i - 1], (self.u1, self.u2)[i - 1])

    def raw(self, i: int) -> RawQuotient:
        g, u = (self.g1, self.g2)[i - 1], (self.u1, self.u2)[i - 1]
        return prop44_raw(self.p, g, u)


@dataclass(frozen=True)
class Prop45Instance(Prop44Instance):
    u3: tuple[int, ...] = ()
    u4: tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        for name in ("u3", "u4"):
            object.__setattr__(self, name, _poly(getattr(self, name)))
        K1, K2 = self.fields
        for K, u, g in ((K1, self.u3, self.g1), (K2, self.u4, self.g2)):
            if len(u) >= len(g) or not any(_as_elem(K, u)):
                raise ValueError("u3 and u4 must be nonzero modulo (p, g) with deg < deg g")

    def presentation(self, i: int) -> Presentation:
        g, u, v = ((self.g1, self.u1, self.u3), (self.g2, self.u2, self.u4))[i - 1]
        return prop45_presentation(self.p, g, u, v)

    def raw(self, i: int) -> RawQuotient:
        g, u, v = ((self.g1, self.u1, self.u3), (self.g2, self.u2, self.u4))[i - 1]
        return prop45_raw(self.p, g, u, v)


def _gens(p, g, u, v=None):
    gen = {(a, 0): c for a, c in enumerate(g) if c}
    if v is not None:
        for a, c in enumerate(v):
            if c:
                gen[(a, 1)] = gen.get((a, 1), 0) - c
    rel = {(0, 2): 1}
    for a, c in enumerate(u):
        if c:
            rel[(a, 0)] = -p * c
    return [gen, rel, {(0, 1): p}]


def prop44_raw(p: int, g, u) -> RawQuotient:
    """Z/p^2[X,Y]/(g, Y^2 - p u, pY) by linear algebra."""
    return family_quotient(p, 2, _gens(p, g, u), 3)


def prop45_raw(p: int, g, u, v) -> RawQuotient:
    """Z/p^2[X,Y]/(g - v Y, Y^2 - p u, pY) by linear algebra."""
    return family_quotient(p, 2, _gens(p, g, u, v), 3)


def _inverse_digits(p: int, g, u) -> tuple[int, ...]:
    K = _field(p, g)
    return _poly(K.inverse(_as_elem(K, u)))


def prop44_presentation(p: int, g, u) -> Presentation:
    """(g, Y^2 - p u, pY) in presentation form: p = u' Y^2 with u' u = 1 in K."""
    return Presentation(p, 2, 2, tuple(g), ((2, _inverse_digits(p, g, u)),), ())


def prop45_presentation(p: int, g, u, v) -> Presentation:
    """(g - v Y, Y^2 - p u, pY) in presentation form."""
    return Presentation(p, 2, 2, tuple(g), ((2, _inverse_digits(p, g, u)),), ((1, _poly(v)),))


@dataclass
class Verdict:
    necessary: bool
    sufficient: bool
    oracle: str  # "iso", "non-iso" or "skipped"
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"necessary": self.necessary, "sufficient": self.sufficient, "oracle": self.oracle, "witness": self.witness}


def square_class_witness(inst: Prop44Instance):
    """First (tau, v2) with u2 = v2^2 tau(u1) in K2, or None."""
    K1, K2 = inst.fields
    u1, u2 = _as_elem(K1, inst.u1), _as_elem(K2, inst.u2)
    for tau in field_isos(K1, K2):
        ratio = K2.mul(u2, K2.inverse(tau(u1)))
        v2 = K2.sqrt(ratio)
        if v2 is not None:
            return tau, v2
    return None


def prop44_test(inst: Prop44Instance) -> tuple[bool, dict | None]:
    """The necessary condition for R1 = R2: some tau and v2 with u2 = v2^2 tau(u1)."""
    hit = square_class_witness(inst)
    if hit is None:
        return False, None
    tau, v2 = hit
    return True, {"tau_X": list(tau.image_of_x), "v2": list(_poly(v2))}


def prop44_hypothesis(inst: Prop44Instance):
    """(w1, w2) with u1 = w1^2 u2 and u2 = w2^2 u1 in K, when g1 = g2; else None."""
    if inst.g1 != inst.g2:
        return None
    K = inst.fields[0]
    u1, u2 = _as_elem(K, inst.u1), _as_elem(K, inst.u2)
    w1 = K.sqrt(K.mul(u1, K.inverse(u2)))
    w2 = K.sqrt(K.mul(u2, K.inverse(u1)))
    if w1 is None or w2 is None:
        return None
    return w1, w2


class HypothesisError(ValueError):
    pass


@dataclass
class ConstructedIso:
    w1: tuple[int, ...]
    w2: tuple[int, ...]
    mapping: np.ndarray
    verified: bool

    def to_json(self) -> dict:
        return {"X": "X", "Y": f"({_fmt(self.w1)})*Y", "w1": list(_poly(self.w1)), "w2": list(_poly(self.w2)), "verified": self.verified}


def _fmt(w) -> str:
    from .arith import format_poly

    return format_poly(_poly(w)) or "0"


def _evaluate_raw(src: RawQuotient, dst_ring: TableRing, x_img: int, y_img: int) -> np.ndarray:
    """Image of every element of src under X -> x_img, Y -> y_img."""
    E = src.decode(np.arange(src.order))
    image = np.full(src.order, dst_ring.zero, dtype=np.int64)
    A, M = dst_ring.add_table, dst_ring.mul_table
    scal = [dst_ring.zero]
    for _ in range(src.pr - 1):
        scal.append(int(A[scal[-1], dst_ring.one]))
    scal = np.array(scal, dtype=np.int64)
    ypow = dst_ring.one
    for b in range(src.N):
        mono = ypow
        for a in range(src.D):
            image = A[image, M[scal[E[:, b * src.D + a]], mono]]
            mono = int(M[mono, x_img])
        ypow = int(M[ypow, y_img])
    return image


def prop44_construct(inst: Prop44Instance, w1=None, w2=None) -> ConstructedIso:
    """X -> X, Y -> w1(X) Y from R1 to R2, verified pointwise on the tables."""
    if w1 is None or w2 is None:
        hyp = prop44_hypothesis(inst)
        if hyp is None:
            raise HypothesisError("needs g1 = g2 and u1/u2, u2/u1 both squares in K")
        w1, w2 = hyp
    else:
        K = inst.fields[0]
        if inst.g1 != inst.g2:
            raise HypothesisError("needs g1 = g2")
        u1, u2 = _as_elem(K, inst.u1), _as_elem(K, inst.u2)
        w1, w2 = _as_elem(K, w1), _as_elem(K, w2)
        if K.mul(K.mul(w1, w1), u2) != u1 or K.mul(K.mul(w2, w2), u1) != u2:
            raise HypothesisError("the given w1, w2 do not satisfy the square relations")
    raw1, raw2 = inst.raw(1), inst.raw(2)
    R1, R2 = raw1.table_ring(), raw2.table_ring()
    x2 = raw2.index_of({(1, 0): 1})
    wy = raw2.index_of({(a, 1): c for a, c in enumerate(w1) if c} or {(0, 0): 0})
    mapping = _evaluate_raw(raw1, R2, x2, wy)
    return ConstructedIso(tuple(w1), tuple(w2), mapping, is_isomorphism(R1, R2, mapping))


def _mod_p_g2(p: int, g, f) -> tuple[int, ...]:
    """Residue of f in F_p[X]/(g^2), as a coefficient tuple of length 2 deg g."""
    mod = Modulus(p, 1)
    G = UniPoly(tuple(g), mod) * UniPoly(tuple(g), mod)
    F = UniPoly(tuple(int(c) % p for c in f), mod)
    if F.degree >= G.degree:
        _, F = poly_divrem_monic(F, G)
    cs = list(F.coeffs)
    return tuple(cs + [0] * (G.degree - len(cs)))


def prop45_sufficient_witness(inst: Prop45Instance, v1_squared: bool = False):
    """v1, v2 satisfying the four congruences modulo (p, g^2), or None (g1 = g2 only).

    As stated: u2 = v2^2 u1, u4 = v2 u3, u1 = v1 u2, u3 = v1 u4.  With
    ``v1_squared`` the third congruence becomes u1 = v1^2 u2.
    """
    if inst.g1 != inst.g2:
        return None
    p, g = inst.p, inst.g1
    d2 = 2 * (len(g) - 1)
    red = lambda f: _mod_p_g2(p, g, f)
    mul = lambda a, b: red(np.convolve(a, b).tolist())
    u1, u2, u3, u4 = (red(u) for u in (inst.u1, inst.u2, inst.u3, inst.u4))
    polys = [tuple((i // p**k) % p for k in range(d2)) for i in range(p**d2)]
    v2s = [v for v in polys if mul(mul(v, v), u1) == u2 and mul(v, u3) == u4]
    if not v2s:
        return None
    for v1 in polys:
        lhs = mul(mul(v1, v1), u2) if v1_squared else mul(v1, u2)
        if lhs == u1 and mul(v1, u4) == u3:
            return {"v1": list(_poly(v1)), "v2": list(_poly(v2s[0]))}
    return None


def _oracle(inst: Prop44Instance, bound: int):
    raw1, raw2 = inst.raw(1), inst.raw(2)
    if max(raw1.order, raw2.order) > bound:
        return "skipped", None
    f = brute_force_iso(raw1.table_ring(), raw2.table_ring(), bound=bound)
    return ("iso" if f is not None else "non-iso"), f


def prop44_verdict(inst: Prop44Instance, oracle: bool = True, bound: int = ORACLE_CAP) -> Verdict:
    nec, wit = prop44_test(inst)
    hyp = prop44_hypothesis(inst)
    witness = {"necessary": wit}
    if hyp is not None:
        witness["sufficient"] = {"w1": list(_poly(hyp[0])), "w2": list(_poly(hyp[1]))}
    status = _oracle(inst, bound)[0] if oracle else "skipped"
    return Verdict(nec, hyp is not None, status, witness)


def prop45_test(inst: Prop45Instance, oracle: bool = True, bound: int = ORACLE_CAP, v1_squared: bool = False) -> Verdict:
    nec, wit = prop44_test(inst)
    suff = prop45_sufficient_witness(inst, v1_squared)
    status = _oracle(inst, bound)[0] if oracle else "skipped"
    return Verdict(nec, suff is not None, status, {"necessary": wit, "sufficient": suff})


def match_shape(P: Presentation):
    """Recognise the two shapes above: returns ("4.4", g, u) or ("4.5", g, u, v)."""
    if P.r != 2 or P.s != 2 or len(P.p_rel) != 1 or P.p_rel[0][0] != 2:
        return None
    u = _inverse_digits(P.p, P.g, P.p_rel[0][1])
    if not P.g_rel:
        return ("4.4", P.g, u)
    if len(P.g_rel) == 1 and P.g_rel[0][0] == 1:
        return ("4.5", P.g, u, P.g_rel[0][1])
    return None


def presentation_iso(P1: Presentation, P2: Presentation, bound: int = ORACLE_CAP):
    """Oracle decision between two presentation rings: an index map or None."""
    from .finring import to_table

    R1, R2 = to_table(P1, bound), to_table(P2, bound)
    return brute_force_iso(R1, R2, bound=bound)


# --------------------------------------------------------------------------
# exhaustive comparison of the square-class criterion with the oracle

PROP44_CASES = ((3, ((0, 1),)), (2, ((0, 1), (1, 1, 1))))


@dataclass
class SweepRecord:
    instance: Prop44Instance
    verdict: Verdict
    construct_verified: bool | None

    @property
    def violation(self) -> str | None:
        if self.verdict.oracle == "iso" and not self.verdict.necessary:
            return "oracle finds an isomorphism but the necessary condition fails"
        if self.construct_verified is False:
            return "hypothesis holds but the constructed map is not an isomorphism"
        return None

    def to_json(self) -> dict:
        inst = self.instance
        return {
            "p": inst.p,
            "g1": list(inst.g1),
            "g2": list(inst.g2),
            "u1": list(inst.u1),
            "u2": list(inst.u2),
            **self.verdict.to_json(),
            "construct_verified": self.construct_verified,
            "violation": self.violation,
        }


def prop44_sweep(cases=PROP44_CASES, bound: int = ORACLE_CAP) -> list[SweepRecord]:
    """Every (g1, g2, u1, u2) with g_i from the case list and u_i nonzero of degree < deg g_i."""
    out = []
    for p, gs in cases:
        us = {g: [u for u in product(range(p), repeat=len(g) - 1) if any(u)] for g in gs}
        for g1, g2 in product(gs, gs):
            for u1, u2 in product(us[g1], us[g2]):
                inst = Prop44Instance(p, g1, g2, u1, u2)
                verdict = prop44_verdict(inst, bound=bound)
                built = None
                if prop44_hypothesis(inst) is not None:
                    built = prop44_construct(inst).verified
                out.append(SweepRecord(inst, verdict, built))
    return out
