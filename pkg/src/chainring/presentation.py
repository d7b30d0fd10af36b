"""Presentations Z/p^r[X, Y]/Q and their normal-form arithmetic.

A presentation fixes p, r, s, a monic g with irreducible reduction mod p, and
two relation lists:

* ``p_rel`` = [(t_i, u_i)] encodes the generator p - sum u_i(X) Y^t_i,
* ``g_rel`` = [(s_j, v_j)] encodes the generator g(X) - sum v_j(X) Y^s_j,

together with Y^(s+1) and p Y^(s+1-t_1).  Elements are stored as digit
matrices c[b][a] in {0..p-1} (b <= s, a < deg g) and indexed by the integer
sum c[b][a] * p^(b*d + a).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import _kernels as _k
from .arith import BiPoly, FieldRep, Modulus, UniPoly, is_irreducible_mod_p, is_prime

_NO_TABLE = np.zeros((0, 1, 1), dtype=np.int64)
from .finring import ELEMENT_CAP, LATTICE_CAP, BoundExceededError, FiniteRing

ORDERS = ("r2_first", "r3_first")
INDEX_LIMIT = 1 << 62


class InvalidPresentationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.violations))
        self.report = report


def _poly(cs: Sequence[int]) -> tuple[int, ...]:
    cs = [int(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Presentation:
    p: int
    r: int
    s: int
    g: tuple[int, ...]
    p_rel: tuple[tuple[int, tuple[int, ...]], ...] = ()
    g_rel: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "g", _poly(self.g))
        object.__setattr__(self, "p_rel", tuple((int(t), _poly(u)) for t, u in self.p_rel))
        object.__setattr__(self, "g_rel", tuple((int(t), _poly(v)) for t, v in self.g_rel))

    @property
    def d(self) -> int:
        return len(self.g) - 1

    @property
    def q(self) -> int:
        return self.p**self.d

    @property
    def order(self) -> int:
        return self.q ** (self.s + 1)

    @property
    def t1(self) -> int | None:
        return self.p_rel[0][0] if self.p_rel else None

    @property
    def mod(self) -> Modulus:
        return Modulus(self.p, self.r)

    def generators(self) -> dict[str, BiPoly]:
        """The generators of Q as bivariate polynomials."""
        return dict(self._generators)

    @cached_property
    def _generators(self) -> dict[str, BiPoly]:
        mod = self.mod
        out = {"Y^(s+1)": BiPoly.from_terms({(0, self.s + 1): 1}, mod)}
        if self.r >= 2:
            out["p*Y^(s+1-t1)"] = BiPoly.from_terms({(0, self.s + 1 - self.t1): self.p}, mod)
            terms = {(0, 0): self.p}
            for t, u in self.p_rel:
                for a, c in enumerate(u):
                    terms[(a, t)] = terms.get((a, t), 0) - c
            out["p - sum u_i Y^t_i"] = BiPoly.from_terms(terms, mod)
        terms = {(a, 0): c for a, c in enumerate(self.g)}
        for sj, v in self.g_rel:
            for a, c in enumerate(v):
                terms[(a, sj)] = terms.get((a, sj), 0) - c
        out["g - sum v_j Y^s_j"] = BiPoly.from_terms(terms, mod)
        return out

    def describe(self) -> str:
        mod = f"Z/{self.p}" if self.r == 1 else f"Z/{self.p**self.r}"
        gens = ", ".join(_bipoly_str(f) for f in self.generators().values())
        return f"{mod}[X,Y]/({gens})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "s": self.s,
            "g": list(self.g),
            "p_rel": [{"t": t, "u": list(u)} for t, u in self.p_rel],
            "g_rel": [{"s": s, "v": list(v)} for s, v in self.g_rel],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Presentation":
        return cls(
            int(obj["p"]),
            int(obj["r"]),
            int(obj["s"]),
            tuple(obj["g"]),
            tuple((int(e["t"]), tuple(e["u"])) for e in obj.get("p_rel", [])),
            tuple((int(e["s"]), tuple(e["v"])) for e in obj.get("g_rel", [])),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _bipoly_str(f: BiPoly) -> str:
    terms = []
    for (a, b), c in sorted(f.terms().items(), key=lambda kv: (kv[0][1], kv[0][0])):
        terms.append(_term(c, a, b))
    return " + ".join(terms) if terms else "0"


def _term(c: int, a: int, b: int) -> str:
    mono = []
    if a:
        mono.append("X" if a == 1 else f"X^{a}")
    if b:
        mono.append("Y" if b == 1 else f"Y^{b}")
    if not mono:
        return str(c)
    m = "*".join(mono)
    return m if c == 1 else f"{c}*{m}"


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.ok, "violations": self.violations}


def validate(P: Presentation) -> ValidationReport:
    rep = ValidationReport()
    v = rep.violations
    if not is_prime(P.p):
        v.append(f"p={P.p} is not prime")
        return rep
    if P.r < 1:
        v.append("r must be >= 1")
    if P.s < 1:
        v.append("s must be >= 1")
    if P.d < 1 or P.g[-1] != 1:
        v.append("g must be monic of degree >= 1")
        return rep
    if any(not 0 <= c < P.p for c in P.g):
        v.append("coefficients of g must lie in {0..p-1}")
    elif not is_irreducible_mod_p(UniPoly(P.g, Modulus(P.p, 1))):
        v.append("g is reducible mod p")
    for name, rel, sym in (("p_rel", P.p_rel, "u"), ("g_rel", P.g_rel, "v")):
        degs = [t for t, _ in rel]
        if any(b <= a for a, b in zip(degs, degs[1:])):
            v.append(f"{name} Y-exponents must be strictly increasing")
        for t, poly in rel:
            if not 1 <= t <= P.s:
                v.append(f"{name} exponent {t} outside [1, s]")
            if len(poly) > P.d:
                v.append(f"{name} {sym} at Y^{t} has degree >= deg g")
            if any(not 0 <= c < P.p for c in poly):
                v.append(f"{name} {sym} at Y^{t} has coefficients outside {{0..p-1}}")
            if not any(c % P.p for c in poly):
                v.append(f"{name} {sym} at Y^{t} lies in (p, g)")
    if P.r >= 2:
        if not P.p_rel:
            v.append("r >= 2 requires a nonempty p_rel")
        else:
            t1 = P.t1
            if not (P.r - 1) * t1 <= P.s:
                v.append(f"constraint (r-1)*t1 <= s fails ({(P.r - 1) * t1} > {P.s})")
            if not P.s < P.r * t1:
                v.append(f"constraint s < r*t1 fails ({P.s} >= {P.r * t1})")
    elif P.p_rel:
        v.append("r = 1 requires an empty p_rel")
    return rep


# --------------------------------------------------------------------------
# the quotient ring


def convolve(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of batched bivariate coefficient arrays of shape (N, ydeg, xdeg)."""
    n = max(A.shape[0], B.shape[0])
    out = np.zeros((n, A.shape[1] + B.shape[1] - 1, A.shape[2] + B.shape[2] - 1), dtype=np.int64)
    yb, xb = B.shape[1], B.shape[2]
    for b in range(A.shape[1]):
        for a in range(A.shape[2]):
            col = A[:, b, a]
            if col.any():
                out[:, b:b + yb, a:a + xb] += col[:, None, None] * B
    return out


class QuotientRing(FiniteRing):
    """Z/p^r[X, Y]/Q on digit-matrix normal forms, vectorised over index arrays."""

    def __init__(self, P: Presentation, check: bool = True):
        if check:
            rep = validate(P)
            if not rep.ok:
                raise InvalidPresentationError(rep)
        if P.order >= INDEX_LIMIT:
            raise BoundExceededError("ring too large for 63-bit element indices")
        self.P = P
        self.p, self.r, self.s, self.d = P.p, P.r, P.s, P.d
        self.pr = P.p**P.r
        self.q = P.q
        self.order = P.order
        self.zero = 0
        self.one = 1
        def rows(rel):
            t = np.array([e for e, _ in rel], dtype=np.int64)
            v = np.zeros((len(rel), self.d), dtype=np.int64)
            for i, (_, cs) in enumerate(rel):
                v[i, : len(cs)] = cs
            return t, v

        high_p = self.s + 1 - P.t1 if self.r >= 2 else self.s + 1
        g = np.array(P.g[: self.d], dtype=np.int64)
        self._kp = (self.s, self.d, self.p, self.pr, high_p, g, *rows(P.g_rel), *rows(P.p_rel))
        self._weights = (np.int64(self.p) ** np.arange((self.s + 1) * self.d, dtype=np.int64)).reshape(self.s + 1, self.d)
        self._digit_cache: np.ndarray | None = None
        self._gen_arrays: list[np.ndarray] | None = None
        self.field = FieldRep(self.p, tuple(c % self.p for c in P.g))

    # -- encoding ------------------------------------------------------------

    def digits(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if self.order <= ELEMENT_CAP:
            if self._digit_cache is None:
                self._digit_cache = self._decode(np.arange(self.order, dtype=np.int64))
            return self._digit_cache[idx]
        return self._decode(idx)

    def _generator_arrays(self) -> list[np.ndarray]:
        if self._gen_arrays is None:
            self._gen_arrays = [self.bipoly_array(g)[0] for g in self.P.generators().values()]
        return self._gen_arrays

    def _digit_table(self) -> np.ndarray:
        if self.order > ELEMENT_CAP:
            return _NO_TABLE
        if self._digit_cache is None:
            self.digits(0)
        return self._digit_cache

    def _decode(self, idx: np.ndarray) -> np.ndarray:
        flat = idx.reshape(-1)
        out = np.empty((flat.size, (self.s + 1) * self.d), dtype=np.int64)
        rest = flat.copy()
        for k in range(out.shape[1]):
            rest, out[:, k] = np.divmod(rest, self.p)
        return out.reshape(idx.shape + (self.s + 1, self.d))

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return (digits * self._weights).sum(axis=(-2, -1))

    # -- normal form ---------------------------------------------------------

    def reduce(self, C: np.ndarray, order: str = "r2_first") -> np.ndarray:
        """Normal-form digits for a batch of coefficient arrays (N, ydeg, xdeg).

        R1 drops Y-degrees above s; R4 reduces coefficients mod p from Y-degree
        s+1-t1 on; R2 trades X^d for the g-relation; R3 trades p for the
        p-relation.  Both R2 and R3 only push mass to strictly higher Y-degree,
        so one sweep over the Y-degrees reaches the normal form.
        """
        if order not in ORDERS:
            raise ValueError(f"unknown rewriting order {order!r}")
        mode = _k.MODE_R2 if order == "r2_first" else _k.MODE_R3
        return self._run_reduce(C, mode)

    def _run_reduce(self, C: np.ndarray, mode: int) -> np.ndarray:
        C = np.ascontiguousarray(C, dtype=np.int64)
        if C.ndim == 2:
            C = C[None]
        width = max(C.shape[2], 2 * self.d - 1)
        if mode == _k.MODE_R3:
            width += (self.s + 2) * (self.d - 1)
        return _k.reduce_batch(C, *self._kp, mode, width)

    def _linear_reduce(self, C: np.ndarray) -> np.ndarray:
        """Only Y^(s+1) and the g-relation; Z/p^r-linear, used for the module certificate."""
        return self._run_reduce(C, _k.MODE_LINEAR)

    # -- ring surface --------------------------------------------------------

    def _binary(self, a, b, op: int):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if a.shape != b.shape:
            a, b = np.broadcast_arrays(a, b)
        shape = a.shape
        out = _k.binary_op(
            np.ascontiguousarray(a.reshape(-1)), np.ascontiguousarray(b.reshape(-1)), op, self._digit_table(), *self._kp
        )
        return out.reshape(shape) if shape else out[0]

    def add(self, a, b):
        return self._binary(a, b, 0)

    def mul(self, a, b):
        return self._binary(a, b, 1)

    def neg(self, a):
        return self._binary(a, a, 2)

    def table(self, op: str, rows=None) -> np.ndarray:
        """Full (or partial) addition/multiplication table as int32 rows."""
        rows = np.arange(self.order, dtype=np.int64) if rows is None else np.asarray(rows, dtype=np.int64)
        return _k.table_fill(rows, self.order, {"add": 0, "mul": 1}[op], self._digit_table(), *self._kp)

    def bipoly_array(self, f: BiPoly) -> np.ndarray:
        if f.mod.p != self.p or f.mod.r != self.r:
            raise ValueError(f"polynomial over {f.mod} does not match Z/{self.p}^{self.r}")
        ydeg = max(len(f.y_parts), 1)
        xdeg = max([len(row.coeffs) for row in f.y_parts] + [1])
        C = np.zeros((1, ydeg, xdeg), dtype=np.int64)
        for b, row in enumerate(f.y_parts):
            C[0, b, : len(row.coeffs)] = row.coeffs
        return C

    def nf_index(self, f: BiPoly, order: str = "r2_first") -> int:
        return int(self.encode(self.reduce(self.bipoly_array(f), order))[0])

    def normal_form(self, f: BiPoly, order: str = "r2_first") -> "RingElem":
        return RingElem(self, self.nf_index(f, order))

    def label(self, i: int) -> str:
        D = self.digits(np.int64(i))
        terms = [_term(int(D[b, a]), a, b) for b in range(self.s + 1) for a in range(self.d) if D[b, a]]
        return " + ".join(terms) if terms else "0"

    # -- elements ------------------------------------------------------------

    def elem(self, i: int) -> "RingElem":
        if not 0 <= int(i) < self.order:
            raise IndexError(f"element index {i} out of range")
        return RingElem(self, int(i))

    def from_digits(self, digits) -> "RingElem":
        D = np.asarray(digits, dtype=np.int64)
        if D.shape != (self.s + 1, self.d) or D.min() < 0 or D.max() >= self.p:
            raise ValueError("digit matrix must be (s+1) x d with entries in {0..p-1}")
        return RingElem(self, int(self.encode(D)))

    def from_terms(self, terms: dict[tuple[int, int], int]) -> "RingElem":
        return self.normal_form(BiPoly.from_terms(terms, self.P.mod))

    def scalar(self, c: int) -> int:
        C = np.array([[[int(c) % self.pr]]], dtype=np.int64)
        return int(self.encode(self._run_reduce(C, _k.MODE_R2))[0])

    def scalar_elem(self, c: int) -> "RingElem":
        return self.from_terms({(0, 0): c})

    @property
    def X(self) -> "RingElem":
        return self.from_terms({(1, 0): 1})

    @property
    def Y(self) -> "RingElem":
        return self.from_terms({(0, 1): 1})

    @property
    def zero_elem(self) -> "RingElem":
        return RingElem(self, 0)

    @property
    def one_elem(self) -> "RingElem":
        return RingElem(self, 1)

    def iter_elements(self, bound: int = ELEMENT_CAP) -> Iterator["RingElem"]:
        if self.order > bound:
            raise BoundExceededError(f"{self.order} elements exceed the enumeration bound {bound}")
        for i in range(self.order):
            yield RingElem(self, i)

    def residue_index(self, idx) -> np.ndarray:
        """Index of the residue in F_p[X]/(g mod p): the b = 0 digits."""
        D = self.digits(idx)
        return (D[..., 0, :] * (self.p ** np.arange(self.d))).sum(axis=-1)

    def units_mask(self) -> np.ndarray:
        return self.residue_index(self.elements()) != 0

    @property
    def unit_group_order(self) -> int:
        return self.q ** (self.s + 1) - self.q**self.s

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and other.P == self.P

    def __hash__(self):
        return hash(self.P)

    def __repr__(self):
        return f"QuotientRing({self.P.describe()})"


def elements(P: Presentation, bound: int = ELEMENT_CAP) -> Iterator["RingElem"]:
    return QuotientRing(P).iter_elements(bound)


def normal_form(f: BiPoly, P: Presentation | QuotientRing, order: str = "r2_first") -> "RingElem":
    ring = P if isinstance(P, QuotientRing) else QuotientRing(P)
    return ring.normal_form(f, order)


@dataclass(frozen=True)
class RingElem:
    ring: QuotientRing
    index: int

    def _same(self, other) -> "RingElem":
        if isinstance(other, int):
            return self.ring.scalar_elem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        if other.ring.P != self.ring.P:
            raise ValueError("operands belong to different presentations")
        return other

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, int(self.ring.add(self.index, o.index)))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, int(self.ring.neg(self.index)))

    def __sub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, int(self.ring.mul(self.index, o.index)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RingElem(self.ring, int(self.ring.pow(np.int64(self.index), e)))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar_elem(other)
        return isinstance(other, RingElem) and other.ring.P == self.ring.P and other.index == self.index

    def __hash__(self):
        return hash((self.ring.P, self.index))

    def __bool__(self):
        return self.index != 0

    @property
    def digits(self) -> np.ndarray:
        return self.ring.digits(np.int64(self.index))

    def residue(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[0])

    def is_unit(self) -> bool:
        return any(self.residue())

    def inverse(self) -> "RingElem":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        return self ** (self.ring.unit_group_order - 1)

    def valuation(self) -> int:
        """Least b with a nonzero digit row; s + 1 for zero."""
        D = self.digits
        for b in range(self.ring.s + 1):
            if D[b].any():
                return b
        return self.ring.s + 1

    def __str__(self):
        return self.ring.label(self.index)

    def __repr__(self):
        return f"RingElem({self})"


def residue(x: RingElem) -> tuple[int, ...]:
    return x.residue()


def is_unit(x: RingElem) -> bool:
    return x.is_unit()


def inverse(x: RingElem) -> RingElem:
    return x.inverse()


# --------------------------------------------------------------------------
# certification


def _local_smith_valuations(rows: np.ndarray, p: int, r: int) -> list[int]:
    """Valuations of the Smith pivots of a matrix over Z/p^r."""
    pr = p**r
    A = [[int(x) % pr for x in row] for row in rows]
    if not A:
        return []
    m, k = len(A), len(A[0])

    def val(x):
        if x == 0:
            return r
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    pivots = []
    top = 0
    cols = list(range(k))
    for _ in range(min(m, k)):
        best = None
        for i in range(top, m):
            for j in cols:
                v = val(A[i][j])
                if v < r and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        A[top], A[i] = A[i], A[top]
        piv = A[top][j]
        unit_inv = pow(piv // p**v, -1, pr)
        for i2 in range(m):
            if i2 != top and A[i2][j]:
                f = (A[i2][j] // p**v) * unit_inv % pr
                A[i2] = [(x - f * y) % pr for x, y in zip(A[i2], A[top])]
        pivots.append(v)
        cols.remove(j)
        top += 1
    return pivots


def module_order_log(P: Presentation, ring: QuotientRing | None = None) -> tuple[int, list[int]]:
    """log_p |Z/p^r[X,Y]/Q| computed by linear algebra, with the invariant factors.

    Modulo Y^(s+1) and the g-relation the ring is free over Z/p^r on
    X^a Y^b (a < d, b <= s); the remaining generators span a submodule whose
    size follows from a Smith form over the local ring Z/p^r.
    """
    ring = ring or QuotientRing(P)
    s, d, r = P.s, P.d, P.r
    rank = (s + 1) * d
    if r == 1:
        return rank, [1] * rank
    gens = [g for name, g in P.generators().items() if name in ("p*Y^(s+1-t1)", "p - sum u_i Y^t_i")]
    rows = []
    for gen in gens:
        G = ring.bipoly_array(gen)
        for b in range(s + 1):
            for a in range(d):
                C = np.zeros((1, G.shape[1] + b, G.shape[2] + a), dtype=np.int64)
                C[0, b:, a:] = G[0]
                rows.append(ring._linear_reduce(C)[0].reshape(-1))
    vals = _local_smith_valuations(np.array(rows), P.p, r)
    killed = sum(r - v for v in vals)
    factors = sorted([v for v in vals] + [r] * (rank - len(vals)))
    return r * rank - killed, [f for f in factors if f > 0]


@dataclass
class CertReport:
    checks: dict[str, dict] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks.values())

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks[name] = {"passed": bool(passed), **detail}

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks}


def _lift_arrays(ring: QuotientRing, idx: np.ndarray) -> np.ndarray:
    """Non-reduced representatives: x + c * X^j * (generator k) with k, j, c from x."""
    gens = ring._generator_arrays()
    ydeg = max(ring.s + 1, max(g.shape[0] for g in gens))
    xdeg = max(ring.d, max(g.shape[1] for g in gens)) + ring.d - 1
    out = np.zeros((len(idx), ydeg, xdeg), dtype=np.int64)
    out[:, : ring.s + 1, : ring.d] = ring.digits(idx)
    for k, G in enumerate(gens):
        sel = idx % len(gens) == k
        if not sel.any():
            continue
        j = (idx[sel] // len(gens)) % ring.d
        c = 1 + (idx[sel] // (len(gens) * ring.d)) % ring.pr
        for shift in range(ring.d):
            rows = np.nonzero(sel)[0][j == shift]
            cs = c[j == shift]
            out[rows, : G.shape[0], shift:shift + G.shape[1]] += cs[:, None, None] * G
    return out


def certify(
    P: Presentation,
    pair_bound: int = ELEMENT_CAP,
    triple_bound: int = LATTICE_CAP,
    samples: int = 100_000,
    seed: int = 0,
    chunk: int = 1 << 15,
    ring: QuotientRing | None = None,
) -> CertReport:
    """Check that the digit model is Z/p^r[X,Y]/Q with the advertised invariants.

    Pairwise and triple checks are exhaustive up to the given orders and use
    ``samples`` random tuples above them.  The module-order check is exact at
    every size: it recomputes |Z/p^r[X,Y]/Q| by linear algebra, and equality
    with q^(s+1) means distinct digit matrices are distinct cosets.
    """
    if ring is None or ring.P != P:
        ring = QuotientRing(P)
    rep = CertReport()
    n = ring.order
    rng = np.random.default_rng(seed)

    gen_nf = {name: ring.nf_index(f) for name, f in P.generators().items()}
    rep.add("generators_vanish", all(v == 0 for v in gen_nf.values()), nf=gen_nf)

    log_order, factors = module_order_log(P, ring)
    expected = P.d * (P.s + 1)
    rep.add("module_order", log_order == expected, log_p_order=log_order, expected=expected, invariant_factors=factors)

    if n <= max(pair_bound, ELEMENT_CAP):
        idx = ring.elements()
    else:
        idx = rng.integers(0, n, size=samples)
    same = ring.encode(ring.reduce(ring.digits(idx)[:, :, :])) == idx
    lifted = ring.encode(ring.reduce(_lift_arrays(ring, idx))) == idx
    rep.add("idempotent", same.all() and lifted.all(), checked=int(len(idx)))

    if n * n <= pair_bound * pair_bound and n <= pair_bound:
        total = n * n
        pair_iter = ((np.arange(st, min(st + chunk, total)) // n, np.arange(st, min(st + chunk, total)) % n) for st in range(0, total, chunk))
        checked = total
    else:
        xs, ys = rng.integers(0, n, size=(2, samples))
        pair_iter = ((xs[st:st + chunk], ys[st:st + chunk]) for st in range(0, samples, chunk))
        checked = samples
    ok = True
    for x, y in pair_iter:
        Lx, Ly = _lift_arrays(ring, x), _lift_arrays(ring, y)
        s_add = ring.encode(ring.reduce(Lx[:, : ring.s + 1] + Ly[:, : ring.s + 1]))
        s_mul = ring.encode(ring.reduce(convolve(Lx, Ly)))
        ok &= bool((s_add == ring.add(x, y)).all() and (s_mul == ring.mul(x, y)).all())
        if not ok:
            break
    rep.add("compatibility", ok, checked=int(checked))

    if n <= triple_bound:
        e = ring.elements()
        triples = [a.ravel() for a in np.meshgrid(e, e, e, indexing="ij")]
    else:
        triples = list(rng.integers(0, n, size=(3, samples)))
    ok = True
    total = len(triples[0])
    for st in range(0, total, chunk):
        x, y, z = (t[st:st + chunk] for t in triples)
        add, mul = ring.add, ring.mul
        ok &= bool((add(add(x, y), z) == add(x, add(y, z))).all())
        ok &= bool((mul(mul(x, y), z) == mul(x, mul(y, z))).all())
        ok &= bool((mul(x, add(y, z)) == add(mul(x, y), mul(x, z))).all())
        ok &= bool((add(x, y) == add(y, x)).all() and (mul(x, y) == mul(y, x)).all())
        if not ok:
            break
    rep.add("ring_axioms", ok, checked=int(total))

    mod = P.mod
    ys = ring.nf_index(BiPoly.from_terms({(0, P.s): 1}, mod))
    ys1 = ring.nf_index(BiPoly.from_terms({(0, P.s + 1): 1}, mod))
    pr1 = ring.nf_index(BiPoly.const(P.p ** (P.r - 1), mod))
    pr = ring.scalar(P.p**P.r)
    rep.add(
        "char_and_nilpotency",
        ys != 0 and ys1 == 0 and pr1 != 0 and pr == 0,
        Y_s=ring.label(ys),
        Y_s1=ring.label(ys1),
        p_r1=ring.label(pr1),
        p_r=ring.label(pr),
    )
    return rep


def rewriting_orders_agree(ring: QuotientRing, idx: np.ndarray | None = None) -> bool:
    """Both rule orders give identical normal forms on a family of raw polynomials.

    For every element x the family contains the lifted representative of x, X^d * x,
    p * x + Y * x and the raw square of x.
    """
    if idx is None:
        idx = ring.elements()
    D = ring.digits(idx)
    inputs = [_lift_arrays(ring, idx)]
    shifted = np.zeros((len(idx), ring.s + 1, 2 * ring.d), dtype=np.int64)
    shifted[:, :, ring.d:] = D
    inputs.append(shifted)
    mixed = np.zeros((len(idx), ring.s + 2, ring.d), dtype=np.int64)
    mixed[:, : ring.s + 1] += ring.p * D
    mixed[:, 1:] += D
    inputs.append(mixed)
    inputs.append(convolve(D, D))
    for C in inputs:
        if not np.array_equal(ring.reduce(C, "r2_first"), ring.reduce(C, "r3_first")):
            return False
    return True
