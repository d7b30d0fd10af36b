"""Finite commutative rings on indexed elements, and brute-force ideal theory.

Every ring here exposes the same small surface: ``order``, ``zero``, ``one``
and vectorised ``add``/``mul``/``neg`` acting on numpy arrays of element
indices.  :class:`TableRing` answers by table lookup; the presentation rings
answer through their normal form.  The algorithms below only use that
surface, so they double as the independent oracle for structural claims.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arith import FieldRep, is_prime

ELEMENT_CAP = 4096
LATTICE_CAP = 512


class NotLocalError(ValueError):
    pass


class NotPrincipalError(ValueError):
    pass


class BoundExceededError(ValueError):
    pass


class FiniteRing:
    """Base class.  Subclasses implement ``add``, ``mul`` and ``neg``."""

    order: int
    zero: int = 0
    one: int

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def label(self, i: int) -> str:
        return str(int(i))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        result = np.full(a.shape, self.one, dtype=np.int64)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def scalar(self, c: int) -> int:
        """The element c * 1."""
        acc, base = self.zero, self.one
        c = int(c)
        if c < 0:
            return int(self.neg(np.int64(self.scalar(-c))))
        while c:
            if c & 1:
                acc = int(self.add(np.int64(acc), np.int64(base)))
            base = int(self.add(np.int64(base), np.int64(base)))
            c >>= 1
        return acc

    def characteristic(self) -> int:
        """Additive order of 1: strip prime factors of |R| while c * 1 stays zero."""
        if self.scalar(self.order) != self.zero:
            raise AssertionError("additive order of 1 does not divide the ring order")
        k = self.order
        for p in _prime_factors(self.order):
            while k % p == 0 and self.scalar(k // p) == self.zero:
                k //= p
        return k


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --------------------------------------------------------------------------
# table rings


class TableRing(FiniteRing):
    """A finite ring given by explicit addition and multiplication tables."""

    def __init__(self, add, mul, zero: int = 0, one: int = 1, labels: Sequence[str] | None = None):
        self.add_table = np.asarray(add, dtype=np.int32)
        self.mul_table = np.asarray(mul, dtype=np.int32)
        n = self.add_table.shape[0]
        if self.add_table.shape != (n, n) or self.mul_table.shape != (n, n):
            raise ValueError("tables must be square and of equal size")
        if not (0 <= zero < n and 0 <= one < n) or zero == one:
            raise ValueError("need distinct zero and one indices")
        if self.add_table.min() < 0 or self.add_table.max() >= n or self.mul_table.min() < 0 or self.mul_table.max() >= n:
            raise ValueError("table entries out of range")
        self.order = n
        self.zero = int(zero)
        self.one = int(one)
        self.labels = list(labels) if labels is not None else None
        rows, cols = np.nonzero(self.add_table == self.zero)
        neg = np.full(n, -1, dtype=np.int64)
        neg[rows] = cols
        if (neg < 0).any():
            raise ValueError("addition table has no inverses")
        self._neg = neg

    def add(self, a, b):
        return self.add_table[a, b].astype(np.int64)

    def mul(self, a, b):
        return self.mul_table[a, b].astype(np.int64)

    def neg(self, a):
        return self._neg[a]

    def label(self, i: int) -> str:
        return self.labels[int(i)] if self.labels else str(int(i))

    def check_axioms(self, triple_bound: int = LATTICE_CAP, samples: int = 100_000, seed: int = 0) -> dict:
        """Commutative ring axioms, exhaustively for small orders, sampled above."""
        n = self.order
        e = np.arange(n)
        A, M = self.add_table, self.mul_table
        out = {
            "add_commutative": bool((A == A.T).all()),
            "mul_commutative": bool((M == M.T).all()),
            "add_identity": bool((A[self.zero] == e).all()),
            "mul_identity": bool((M[self.one] == e).all()),
        }
        if n <= triple_bound:
            x, y, z = (a.ravel() for a in np.meshgrid(e, e, e, indexing="ij"))
        else:
            rng = np.random.default_rng(seed)
            x, y, z = rng.integers(0, n, size=(3, samples))
        out["add_associative"] = bool((A[A[x, y], z] == A[x, A[y, z]]).all())
        out["mul_associative"] = bool((M[M[x, y], z] == M[x, M[y, z]]).all())
        out["distributive"] = bool((M[x, A[y, z]] == A[M[x, y], M[x, z]]).all())
        out["one_ne_zero"] = self.one != self.zero
        return out

    def to_json(self) -> dict:
        return {
            "n": self.order,
            "add": self.add_table.tolist(),
            "mul": self.mul_table.tolist(),
            "zero": self.zero,
            "one": self.one,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TableRing":
        ring = cls(obj["add"], obj["mul"], obj.get("zero", 0), obj.get("one", 1))
        if "n" in obj and obj["n"] != ring.order:
            raise ValueError("declared n does not match table size")
        return ring

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def to_table(ring, bound: int = ELEMENT_CAP, chunk: int = 1 << 18) -> TableRing:
    """Materialise the tables of any finite ring (presentation rings included)."""
    from .presentation import Presentation, QuotientRing

    if isinstance(ring, Presentation):
        ring = QuotientRing(ring)
    if isinstance(ring, TableRing):
        return ring
    n = ring.order
    if n > bound:
        raise BoundExceededError(f"ring of order {n} exceeds the table bound {bound}")
    labels = [ring.label(i) for i in range(n)]
    if isinstance(ring, QuotientRing):
        return TableRing(ring.table("add"), ring.table("mul"), ring.zero, ring.one, labels)
    add = np.empty((n, n), dtype=np.int32)
    mul = np.empty((n, n), dtype=np.int32)
    e = np.arange(n, dtype=np.int64)
    rows = max(1, chunk // n)
    for start in range(0, n, rows):
        blk = e[start:start + rows]
        a = np.repeat(blk, n)
        b = np.tile(e, len(blk))
        add[start:start + rows] = ring.add(a, b).reshape(len(blk), n)
        mul[start:start + rows] = ring.mul(a, b).reshape(len(blk), n)
    return TableRing(add, mul, ring.zero, ring.one, labels)


# --------------------------------------------------------------------------
# oracle ring constructors


def zmod_ring(m: int) -> TableRing:
    e = np.arange(m)
    return TableRing((e[:, None] + e[None, :]) % m, (e[:, None] * e[None, :]) % m, 0, 1 % m)


def truncated_poly_ring(field: FieldRep, k: int) -> TableRing:
    """F_q[T]/(T^k); element index = sum of field indices times q^i."""
    q = field.order
    n = q**k
    fe = field.elements()
    fadd = np.array([[field.index(field.add(a, b)) for b in fe] for a in fe])
    fmul = np.array([[field.index(field.mul(a, b)) for b in fe] for a in fe])
    digits = np.array([[(i // q**j) % q for j in range(k)] for i in range(n)])
    weights = q ** np.arange(k)
    add = np.zeros((n, n), dtype=np.int64)
    for j in range(k):
        add += fadd[digits[:, None, j], digits[None, :, j]] * weights[j]
    mul_digits = np.zeros((n, n, k), dtype=np.int64)
    for i in range(k):
        for j in range(k - i):
            prod = fmul[digits[:, None, i], digits[None, :, j]]
            mul_digits[:, :, i + j] = fadd[mul_digits[:, :, i + j], prod]
    mul = (mul_digits * weights).sum(axis=2)
    labels = []
    for i in range(n):
        terms = []
        for j in range(k):
            c = fe[digits[i, j]]
            if any(c):
                cs = field.format(c)
                cs = f"({cs})" if " + " in cs else cs
                terms.append(cs if j == 0 else (f"T^{j}" if c == field.one else f"{cs}*T^{j}").replace("T^1", "T"))
        labels.append(" + ".join(terms) or "0")
    return TableRing(add, mul, 0, 1, labels)


def square_zero_ring(p: int) -> TableRing:
    """F_p[x, y]/(x, y)^2, elements a + b x + c y with index a + b p + c p^2."""
    n = p**3
    e = np.arange(n)
    a, b, c = e % p, (e // p) % p, e // p**2
    enc = lambda x, y, z: (x % p) + (y % p) * p + (z % p) * p * p
    add = enc(a[:, None] + a[None, :], b[:, None] + b[None, :], c[:, None] + c[None, :])
    mul = enc(
        a[:, None] * a[None, :],
        a[:, None] * b[None, :] + b[:, None] * a[None, :],
        a[:, None] * c[None, :] + c[:, None] * a[None, :],
    )
    labels = []
    for i in range(n):
        t = [s for s, v in ((str(a[i]), a[i]), (f"{b[i]}x" if b[i] > 1 else "x", b[i]), (f"{c[i]}y" if c[i] > 1 else "y", c[i])) if v]
        labels.append(" + ".join(t) or "0")
    return TableRing(add, mul, 0, 1, labels)


def product_ring(r1: TableRing, r2: TableRing) -> TableRing:
    n1, n2 = r1.order, r2.order
    e = np.arange(n1 * n2)
    i, j = e // n2, e % n2
    add = r1.add_table[i[:, None], i[None, :]] * n2 + r2.add_table[j[:, None], j[None, :]]
    mul = r1.mul_table[i[:, None], i[None, :]] * n2 + r2.mul_table[j[:, None], j[None, :]]
    return TableRing(add, mul, r1.zero * n2 + r2.zero, r1.one * n2 + r2.one)


def _val(x: int, p: int, r: int) -> int:
    if x == 0:
        return r
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def howell_rows(rows: Iterable[Sequence[int]], p: int, r: int, m: int) -> dict[int, list[int]]:
    """Echelon basis over Z/p^r with saturation: pivot column -> row whose pivot is p^v.

    Every row's p^(r-v) multiple is fed back in, so the result has the Howell
    property and reduction against it gives canonical coset representatives.
    """
    pr = p**r
    piv: dict[int, list[int]] = {}
    stack = [[int(x) % pr for x in row] for row in rows]
    while stack:
        vec = [x % pr for x in stack.pop()]
        j = 0
        while True:
            while j < m and vec[j] == 0:
                j += 1
            if j == m:
                break
            v = _val(vec[j], p, r)
            inv = pow(vec[j] // p**v, -1, pr)
            vec = [x * inv % pr for x in vec]
            row = piv.get(j)
            if row is not None:
                w = _val(row[j], p, r)
                if v >= w:
                    f = p ** (v - w)
                    vec = [(x - f * y) % pr for x, y in zip(vec, row)]
                    continue
                stack.append(row)
            piv[j] = vec
            stack.append([x * p ** (r - v) % pr for x in vec])
            break
    return piv


class RawQuotient:
    """Z/p^r[X, Y]/I by linear algebra, independent of any rewriting system.

    The caller supplies N and a monic G(X) with Y^N and G in I; then
    Z/p^r[X,Y]/(Y^N, G) is free on X^a Y^b (a < deg G, b < N) and I becomes
    the submodule spanned by the monomial multiples of its generators.
    """

    def __init__(self, p: int, r: int, gens, N: int, G, bound: int = ELEMENT_CAP):
        self.p, self.r, self.pr = p, r, p**r
        self.N = N
        self.G = [int(c) % self.pr for c in G]
        self.D = len(self.G) - 1
        if self.D < 1 or self.G[-1] != 1:
            raise ValueError("G must be monic of degree >= 1")
        self.m = N * self.D
        polys = [self._as_array(f) for f in gens]
        polys.append(self._monomial_array(0, N))
        rows = []
        for f in polys:
            for b in range(N):
                for a in range(self.D):
                    C = np.zeros((1, f.shape[0] + b, f.shape[1] + a), dtype=np.int64)
                    C[0, b:, a:] = f
                    rows.append(self._fold(C)[0])
        self.piv = howell_rows(rows, p, r, self.m)
        self.radix = np.array(
            [p ** _val(self.piv[j][j], p, r) if j in self.piv else self.pr for j in range(self.m)], dtype=np.int64
        )
        self.order = int(np.prod(self.radix))
        self._piv_arrays = {j: np.array(row, dtype=np.int64) for j, row in self.piv.items()}
        for j, row in self.piv.items():
            sat = np.array([row], dtype=np.int64) * (self.pr // self.radix[j])
            if self.canonical(sat).any():
                raise AssertionError("reduction basis lacks the Howell property")
        if self.order > bound:
            raise BoundExceededError(f"quotient of order {self.order} exceeds the bound {bound}")

    def _as_array(self, f) -> np.ndarray:
        ydeg = max(len(f.y_parts), 1)
        xdeg = max([len(row.coeffs) for row in f.y_parts] + [1])
        C = np.zeros((ydeg, xdeg), dtype=np.int64)
        for b, row in enumerate(f.y_parts):
            C[b, : len(row.coeffs)] = row.coeffs
        return C

    def _monomial_array(self, a: int, b: int) -> np.ndarray:
        C = np.zeros((b + 1, a + 1), dtype=np.int64)
        C[b, a] = 1
        return C

    def _fold(self, C: np.ndarray) -> np.ndarray:
        """Reduce raw coefficient arrays (batch, ydeg, xdeg) into the free module."""
        C = C[:, : self.N].copy() % self.pr
        g = np.array(self.G[:-1], dtype=np.int64)
        for a in range(C.shape[2] - 1, self.D - 1, -1):
            h = C[:, :, a].copy()
            C[:, :, a - self.D:a] -= h[:, :, None] * g
            C[:, :, a] = 0
        C %= self.pr
        out = np.zeros((C.shape[0], self.N, self.D), dtype=np.int64)
        out[:, : C.shape[1], : min(C.shape[2], self.D)] = C[:, :, : self.D]
        return out.reshape(C.shape[0], self.m)

    def canonical(self, W: np.ndarray) -> np.ndarray:
        W = np.asarray(W, dtype=np.int64) % self.pr
        for j in range(self.m):
            row = self._piv_arrays.get(j)
            if row is None:
                continue
            k = W[:, j] // self.radix[j]
            if not k.any():
                continue
            # pivot rows are zero left of their pivot column
            W[:, j:] = (W[:, j:] - k[:, None] * row[j:]) % self.pr
        return W

    def encode(self, W: np.ndarray) -> np.ndarray:
        idx = np.zeros(W.shape[0], dtype=np.int64)
        for j in range(self.m - 1, -1, -1):
            idx = idx * self.radix[j] + W[:, j]
        return idx

    def decode(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64).copy()
        W = np.zeros((len(idx), self.m), dtype=np.int64)
        for j in range(self.m):
            idx, W[:, j] = np.divmod(idx, self.radix[j])
        return W

    def index_of(self, terms: dict[tuple[int, int], int]) -> int:
        """Index of the class of sum c X^a Y^b."""
        C = np.zeros((1, max(b for _, b in terms) + 1, max(a for a, _ in terms) + 1), dtype=np.int64)
        for (a, b), c in terms.items():
            C[0, b, a] += c
        return int(self.encode(self.canonical(self._fold(C)))[0])

    def label(self, W: np.ndarray) -> str:
        terms = []
        for j in range(self.m):
            c = int(W[j])
            if c:
                b, a = divmod(j, self.D)
                mono = "*".join(x for x in ("X" if a == 1 else f"X^{a}" if a else "", "Y" if b == 1 else f"Y^{b}" if b else "") if x)
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(terms) or "0"

    def table_ring(self, chunk: int = 1 << 16) -> TableRing:
        n = self.order
        E = self.decode(np.arange(n))
        P3 = E.reshape(n, self.N, self.D)
        add = np.empty((n, n), dtype=np.int32)
        mul = np.empty((n, n), dtype=np.int32)
        rows = max(1, chunk // n)
        for st in range(0, n, rows):
            i = np.arange(st, min(st + rows, n))
            a = np.repeat(i, n)
            b = np.tile(np.arange(n), len(i))
            add[i] = self.encode(self.canonical(E[a] + E[b])).reshape(len(i), n)
            prod = np.zeros((len(a), 2 * self.N - 1, 2 * self.D - 1), dtype=np.int64)
            for y in range(self.N):
                for x in range(self.D):
                    c = P3[a, y, x]
                    if c.any():
                        prod[:, y:y + self.N, x:x + self.D] += c[:, None, None] * P3[b]
            mul[i] = self.encode(self.canonical(self._fold(prod))).reshape(len(i), n)
        one = np.zeros((1, self.m), dtype=np.int64)
        one[0, 0] = 1
        one_idx = int(self.encode(self.canonical(one))[0])
        labels = [self.label(w) for w in E]
        return TableRing(add, mul, 0, one_idx, labels)


def raw_quotient_ring(p: int, r: int, gens, N: int, G, bound: int = ELEMENT_CAP) -> TableRing:
    """Table of Z/p^r[X,Y]/(gens), given Y^N and the monic G(X) lie in the ideal."""
    return RawQuotient(p, r, gens, N, G, bound).table_ring()


# --------------------------------------------------------------------------
# ideals


@dataclass(frozen=True, eq=False)
class Ideal:
    members: np.ndarray  # sorted element indices
    generator: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "members", np.unique(np.asarray(self.members, dtype=np.int64)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.members, x)
        return bool(i < len(self.members) and self.members[i] == x)

    def key(self) -> bytes:
        return self.members.tobytes()

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def issubset(self, other: "Ideal") -> bool:
        return bool(np.isin(self.members, other.members, assume_unique=True).all())

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[self.members] = True
        return m

    def to_list(self) -> list[int]:
        return [int(x) for x in self.members]


def additive_closure(ring: FiniteRing, elems) -> np.ndarray:
    """Subgroup generated by ``elems`` (sorted index array)."""
    gens = np.unique(np.asarray(elems, dtype=np.int64))
    current = np.array([ring.zero], dtype=np.int64)
    while True:
        sums = ring.add(np.repeat(current, len(gens)), np.tile(gens, len(current)))
        nxt = np.union1d(current, sums)
        if len(nxt) == len(current):
            return current
        current = nxt


def principal_ideal(ring: FiniteRing, x: int) -> Ideal:
    # R*x is additively closed in a commutative ring with 1
    return Ideal(ring.mul(ring.elements(), np.int64(x)), int(x))


def ideal_sum(ring: FiniteRing, i: Ideal, j: Ideal) -> Ideal:
    if i.issubset(j):
        return j
    if j.issubset(i):
        return i
    a, b = i.members, j.members
    return Ideal(np.unique(ring.add(np.repeat(a, len(b)), np.tile(b, len(a)))))


def ideal_product(ring: FiniteRing, i: Ideal, j: Ideal) -> Ideal:
    a, b = i.members, j.members
    prods = np.unique(ring.mul(np.repeat(a, len(b)), np.tile(b, len(a))))
    return Ideal(additive_closure(ring, prods))


def all_principal_ideals(ring: FiniteRing) -> dict[Ideal, int]:
    """Distinct principal ideals, each with its least-index generator."""
    n = ring.order
    e = ring.elements()
    if isinstance(ring, TableRing):
        table = ring.mul_table
    else:
        table = ring.mul(np.repeat(e, n), np.tile(e, n)).reshape(n, n)
    out: dict[Ideal, int] = {}
    for x in range(n):
        ideal = Ideal(table[x], x)
        if ideal not in out:
            out[ideal] = x
    return out


def all_ideals(ring: FiniteRing, bound: int = LATTICE_CAP) -> list[Ideal]:
    """Every ideal: sums of principal ideals, closed until stable.  Sorted by size."""
    if ring.order > bound:
        raise BoundExceededError(f"ring of order {ring.order} exceeds the ideal-lattice bound {bound}")
    principal = all_principal_ideals(ring)
    found = {Ideal(i.members, g) for i, g in principal.items()}
    frontier = list(found)
    while frontier:
        new = []
        for a in frontier:
            for b in list(found):
                s = ideal_sum(ring, a, b)
                if s not in found:
                    found.add(s)
                    new.append(s)
        frontier = new
    gens = {i: g for i, g in principal.items()}
    result = [Ideal(i.members, gens.get(i)) for i in found]
    return sorted(result, key=lambda i: (len(i), i.to_list()))


def nontrivial_ideals(ring: FiniteRing, bound: int = LATTICE_CAP) -> list[Ideal]:
    return [i for i in all_ideals(ring, bound) if 1 < len(i) < ring.order]


# --------------------------------------------------------------------------
# locality and friends


def nilpotent_mask(ring: FiniteRing) -> np.ndarray:
    # any nilpotent x satisfies x^k = 0 for k <= log2(order) + 1, since the
    # ideals (x) > (x^2) > ... strictly decrease until they reach 0
    k = ring.order.bit_length()
    return ring.pow(ring.elements(), k) == ring.zero


def units_mask(ring: FiniteRing) -> np.ndarray:
    if isinstance(ring, TableRing):
        return (ring.mul_table == ring.one).any(axis=1)
    nil = nilpotent_mask(ring)
    cand = np.nonzero(~nil)[0]
    # fast path: if every non-nilpotent x has x^|cand| = 1 they are all units
    if (ring.pow(cand, len(cand)) == ring.one).all():
        return ~nil
    e = ring.elements()
    out = np.zeros(ring.order, dtype=bool)
    for x in cand:
        out[x] = (ring.mul(e, np.int64(x)) == ring.one).any()
    return out


def is_local(ring: FiniteRing) -> tuple[bool, Ideal | None]:
    """Local iff the non-units form an ideal, which is then the maximal ideal."""
    units = units_mask(ring)
    non = np.nonzero(~units)[0]
    if len(non) == 0:
        return False, None
    sums = ring.add(np.repeat(non, len(non)), np.tile(non, len(non))) if len(non) <= 2048 else None
    if sums is not None:
        if units[sums].any():
            return False, None
    else:
        # large case: non-units closed under addition iff they are the nilradical
        if not (nilpotent_mask(ring) == ~units).all():
            return False, None
    return True, Ideal(non)


def maximal_ideal(ring: FiniteRing) -> Ideal:
    local, m = is_local(ring)
    if not local:
        raise NotLocalError("ring is not local")
    return m


def find_generator(ring: FiniteRing, ideal: Ideal) -> int | None:
    """Least-index single generator of the ideal, or None."""
    for x in ideal.members:
        if len(ideal) == 1:
            return int(x)
        if principal_ideal(ring, int(x)) == ideal:
            return int(x)
    return None


def is_pir(ring: FiniteRing, bound: int = LATTICE_CAP) -> bool:
    principal = all_principal_ideals(ring)
    return all(i in principal for i in all_ideals(ring, bound))


def nilpotency_index(ring: FiniteRing, ideal: Ideal) -> int:
    """Least k with I^k = 0.  Raises ValueError for a non-nilpotent ideal."""
    if ideal.generator is not None:
        x = np.int64(ideal.generator)
        power, k = x, 1
        while power != ring.zero:
            power = ring.mul(power, x)
            k += 1
            if k > ring.order.bit_length() + 1:
                raise ValueError("not nilpotent")
        return k
    current, k = ideal, 1
    while len(current) > 1:
        nxt = ideal_product(ring, current, ideal)
        if nxt == current:
            raise ValueError("not nilpotent")
        current, k = nxt, k + 1
    return k


def _prime_power(n: int) -> tuple[int, int]:
    for p in range(2, n + 1):
        if n % p == 0:
            if not is_prime(p):
                continue
            t, m = 0, n
            while m % p == 0:
                m //= p
                t += 1
            if m != 1:
                raise ValueError(f"{n} is not a prime power")
            return p, t
    raise ValueError(f"{n} is not a prime power")


@dataclass(frozen=True)
class Lemma21Stats:
    p: int
    r: int
    s: int
    t: int

    def as_tuple(self):
        return (self.p, self.r, self.s, self.t)


def lemma21_stats(ring: FiniteRing, m: Ideal | None = None) -> Lemma21Stats:
    """Prime p, characteristic exponent r, nilpotency index s of m, and |R| = p^t."""
    if m is None:
        m = maximal_ideal(ring)
    if m.generator is None:
        g = find_generator(ring, m)
        if g is not None:
            m = Ideal(m.members, g)
    p, t = _prime_power(ring.order)
    cp, r = _prime_power(ring.characteristic()) if ring.characteristic() > 1 else (p, 0)
    if cp != p:
        raise AssertionError("characteristic and order have different primes")
    s = nilpotency_index(ring, m)
    if not r <= s <= t:
        raise AssertionError(f"r <= s <= t fails: {(p, r, s, t)}")
    return Lemma21Stats(p, r, s, t)


@dataclass
class TwoGeneratedReport:
    principal: bool
    generator: int | None
    nontrivial_ideal_count: int | None
    witnesses: list[Ideal]
    witness_labels: list[str]
    claim_holds: bool | None

    def to_json(self) -> dict:
        return {
            "principal": self.principal,
            "generator": self.generator,
            "nontrivial_ideals": self.nontrivial_ideal_count,
            "witnesses": [w.to_list() for w in self.witnesses],
            "witness_labels": self.witness_labels,
            "claim_holds": self.claim_holds,
        }


def two_generated_check(ring: FiniteRing, x: int, y: int, bound: int = LATTICE_CAP) -> TwoGeneratedReport:
    """If (x, y) is not cyclic, exhibit the p + 2 distinct nontrivial ideals."""
    m = maximal_ideal(ring)
    if x not in m or y not in m:
        raise ValueError("x and y must lie in the maximal ideal")
    joint = ideal_sum(ring, principal_ideal(ring, x), principal_ideal(ring, y))
    g = find_generator(ring, joint)
    if g is not None:
        return TwoGeneratedReport(True, g, None, [], [], None)
    # residue characteristic: the least prime p with p*1 in m
    p = next(k for k in range(2, ring.order + 1) if ring.scalar(k) in m)
    label = lambda s: ring.label(s)
    witnesses = [joint, principal_ideal(ring, y)]
    labels = [f"({label(x)}, {label(y)})", f"({label(y)})"]
    for k in range(p):
        z = int(ring.add(np.int64(x), ring.mul(np.int64(ring.scalar(k)), np.int64(y))))
        witnesses.append(principal_ideal(ring, z))
        labels.append(f"({label(z)})")
    distinct = len(set(witnesses)) == p + 2
    nontrivial = all(1 < len(w) < ring.order for w in witnesses)
    count = len(nontrivial_ideals(ring, bound)) if ring.order <= bound else None
    holds = distinct and nontrivial and (count is None or count >= p + 2)
    return TwoGeneratedReport(False, None, count, witnesses, labels, holds)


def chain_of_powers(ring: FiniteRing, alpha: int) -> list[Ideal]:
    """The ideals (alpha^k) for k = 0, 1, ... until the zero ideal (inclusive)."""
    out = []
    x = np.int64(ring.one)
    while True:
        ideal = principal_ideal(ring, int(x))
        out.append(ideal)
        if len(ideal) == 1:
            return out
        x = ring.mul(x, np.int64(alpha))
        if len(out) > ring.order.bit_length() + 2:
            raise ValueError("generator is not nilpotent")


def verify_unit_power_cover(ring: FiniteRing, alpha: int, units: np.ndarray | None = None) -> bool:
    """Every nonzero x in (alpha) is u * alpha^k for a unit u and exactly one k.

    Together with (alpha) being the maximal ideal this pins the ideal lattice
    down to the chain of powers of alpha, since every principal ideal is then
    some (alpha^k).
    """
    if units is None:
        units = units_mask(ring)
    chain = chain_of_powers(ring, alpha)
    u = np.nonzero(units)[0]
    covered = np.zeros(ring.order, dtype=np.int64)
    x = np.int64(ring.one)
    for k in range(1, len(chain) - 1):
        x = ring.mul(x, np.int64(alpha))
        layer = np.unique(ring.mul(u, x))
        expected = np.setdiff1d(chain[k].members, chain[k + 1].members)
        if not np.array_equal(layer, expected):
            return False
        covered[layer] += 1
    m_nonzero = np.setdiff1d(chain[1].members, [ring.zero])
    return bool((covered[m_nonzero] == 1).all() and covered.sum() == len(m_nonzero))


def chain_ideals(ring: FiniteRing, alpha: int | None = None) -> list[Ideal]:
    """Ideal lattice of a finite chain ring in O(order * length) work.

    Verifies that the maximal ideal is (alpha) and that every nonzero element
    of it is a unit times a power of alpha; raises otherwise.
    """
    units = units_mask(ring)
    local, m = is_local(ring)
    if not local:
        raise NotLocalError("ring is not local")
    if alpha is None:
        alpha = find_generator(ring, m)
        if alpha is None:
            raise NotPrincipalError("maximal ideal is not principal")
    if principal_ideal(ring, alpha) != m:
        raise NotPrincipalError("alpha does not generate the maximal ideal")
    if not verify_unit_power_cover(ring, alpha, units):
        raise AssertionError("unit-power decomposition of the maximal ideal fails")
    chain = chain_of_powers(ring, alpha)
    return sorted(chain, key=len)


def format_ideal(ring: FiniteRing, ideal: Ideal) -> str:
    return "{" + ", ".join(ring.label(x) for x in ideal.members) + "}"


@dataclass
class ChainCertificate:
    """Proof data that a ring is a chain ring with maximal ideal (alpha).

    The checks are: (alpha) does not contain 1; alpha is nilpotent; every
    x outside (alpha) differs by an element of (alpha) from one of a few
    representatives, each of which is a unit.  Then every x outside (alpha)
    is a unit times 1 + (nilpotent), so (alpha) is the unique maximal ideal;
    since it is principal and nilpotent the ideals are exactly the (alpha^k).
    """

    alpha: int
    chain: list[Ideal]
    units: np.ndarray
    representatives: np.ndarray

    @property
    def maximal(self) -> Ideal:
        return self.chain[-2]

    @property
    def nilpotency(self) -> int:
        return len(self.chain) - 1

    def nontrivial(self) -> list[Ideal]:
        return [i for i in self.chain if 1 < len(i) < len(self.units)]


def chain_certificate(ring: FiniteRing, alpha: int, rep=None) -> ChainCertificate:
    """Certify the chain structure with O(order * length) ring operations.

    ``rep`` maps element indices to candidate residue representatives; it is a
    hint only, every claim it leads to is checked.  Without it each non-member
    of (alpha) is tested for invertibility by exponentiation.
    """
    e = ring.elements()
    m = principal_ideal(ring, alpha)
    if ring.one in m:
        raise NotLocalError("alpha is a unit")
    chain = chain_of_powers(ring, alpha)
    outside = np.setdiff1d(e, m.members)
    n_units = len(outside)
    if rep is None:
        reps = outside
    else:
        rx = np.asarray(rep(outside), dtype=np.int64)
        diff = ring.sub(outside, rx)
        if not m.mask(ring.order)[diff].all():
            raise NotLocalError("representative hint leaves the coset of (alpha)")
        reps = np.unique(rx)
        if np.isin(reps, m.members).any():
            raise NotLocalError("representative hint lands in (alpha)")
    if not (ring.pow(reps, n_units) == ring.one).all():
        raise NotLocalError("a representative outside (alpha) is not a unit")
    units = np.ones(ring.order, dtype=bool)
    units[m.members] = False
    ideals = sorted(chain, key=len)
    return ChainCertificate(int(alpha), ideals, units, reps)
