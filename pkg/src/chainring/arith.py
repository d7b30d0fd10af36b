"""Exact arithmetic over Z/p^r, polynomials over it, and finite fields F_p[X]/(g).

Polynomials are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple.  All values are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _trim(cs: Iterable[int]) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Modulus:
    """The coefficient ring Z/p^r, described by the prime and the exponent."""

    p: int
    r: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.r < 1:
            raise ValueError("exponent r must be >= 1")

    @property
    def n(self) -> int:
        return self.p**self.r

    def __str__(self):
        return f"Z/{self.p}^{self.r}" if self.r > 1 else f"Z/{self.p}"


@dataclass(frozen=True)
class ZMod:
    value: int
    mod: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.mod.n)

    def _other(self, other) -> int:
        if isinstance(other, ZMod):
            if other.mod != self.mod:
                raise ValueError(f"mixed moduli {self.mod} and {other.mod}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ZMod(self.value + o, self.mod)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ZMod(self.value - o, self.mod)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ZMod(o - self.value, self.mod)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else ZMod(self.value * o, self.mod)

    __rmul__ = __mul__

    def __neg__(self):
        return ZMod(-self.value, self.mod)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        return ZMod(pow(self.value, e, self.mod.n), self.mod)

    def valuation(self) -> int:
        """p-adic valuation of the representative; r for zero."""
        if self.value == 0:
            return self.mod.r
        v, x = 0, self.value
        while x % self.mod.p == 0:
            x //= self.mod.p
            v += 1
        return v

    def is_unit(self) -> bool:
        return self.value % self.mod.p != 0

    def inverse(self) -> "ZMod":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit in {self.mod}")
        return ZMod(pow(self.value, -1, self.mod.n), self.mod)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ZMod({self.value}, {self.mod})"


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial over Z/p^r, coefficients lowest degree first."""

    coeffs: tuple[int, ...]
    mod: Modulus

    def __post_init__(self):
        n = self.mod.n
        object.__setattr__(self, "coeffs", _trim(int(c) % n for c in self.coeffs))

    @classmethod
    def from_list(cls, coeffs: Sequence[int], p: int, r: int = 1) -> "UniPoly":
        return cls(tuple(coeffs), Modulus(p, r))

    @classmethod
    def monomial(cls, deg: int, mod: Modulus, c: int = 1) -> "UniPoly":
        return cls((0,) * deg + (c,), mod)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: "UniPoly") -> None:
        if other.mod != self.mod:
            raise ValueError(f"mixed moduli {self.mod} and {other.mod}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self[i] + other[i] for i in range(m)), self.mod)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs), self.mod)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly(tuple(c * other for c in self.coeffs), self.mod)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.mod)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out), self.mod)

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.mod.n
        return acc

    def reduce_mod_p(self) -> "UniPoly":
        return UniPoly(tuple(c % self.mod.p for c in self.coeffs), Modulus(self.mod.p, 1))

    def lift(self, r: int) -> "UniPoly":
        """Same integer coefficients, read in Z/p^r."""
        return UniPoly(self.coeffs, Modulus(self.mod.p, r))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        return format_poly(self.coeffs, "X")


def format_poly(coeffs: Sequence[int], var: str = "X") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


def poly_divrem_monic(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Divide by a monic polynomial; exact over Z/p^r since no inversion is needed."""
    f._check(g)
    if not g.is_monic() or g.degree < 1:
        raise ValueError("divisor must be monic of degree >= 1")
    n = f.mod.n
    rem = list(f.coeffs)
    dg = g.degree
    quo = [0] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k] % n
        if c:
            quo[k - dg] = c
            for i, gi in enumerate(g.coeffs):
                rem[k - dg + i] = (rem[k - dg + i] - c * gi) % n
    return UniPoly(tuple(quo), f.mod), UniPoly(tuple(rem[:dg]), f.mod)


def _monic_polys(p: int, deg: int) -> Iterator[tuple[int, ...]]:
    # lexicographic order on (c_{deg-1}, ..., c_0), i.e. by the base-p value of the
    # coefficient vector read from the top; matches "least polynomial first"
    for top_down in itertools.product(range(p), repeat=deg):
        yield tuple(reversed(top_down)) + (1,)


def is_irreducible_mod_p(g: UniPoly, p: int | None = None) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2 over F_p.

    A faster route is the criterion X^(p^d) = X mod g together with the gcd
    conditions; at the degrees used here trial division is cheap enough.
    """
    p = g.mod.p if p is None else p
    gb = UniPoly(g.coeffs, Modulus(p, 1))
    if gb.is_zero() or not gb.is_monic():
        raise ValueError("expected a monic nonzero polynomial mod p")
    if gb.degree < 1:
        raise ValueError("constant polynomials are neither irreducible nor reducible")
    d = gb.degree
    for k in range(1, d // 2 + 1):
        for cs in _monic_polys(p, k):
            _, rem = poly_divrem_monic(gb, UniPoly(cs, gb.mod))
            if rem.is_zero():
                return False
    return True


@lru_cache(maxsize=None)
def irreducibles(p: int, d: int) -> tuple[UniPoly, ...]:
    """All monic irreducible polynomials of degree d over F_p, least first."""
    mod = Modulus(p, 1)
    return tuple(
        UniPoly(cs, mod) for cs in _monic_polys(p, d) if is_irreducible_mod_p(UniPoly(cs, mod))
    )


def gen_irreducible(p: int, d: int) -> UniPoly:
    if d < 1:
        raise ValueError("degree must be >= 1")
    return irreducibles(p, d)[0]


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in X, Y over Z/p^r; y_parts[b] is the coefficient of Y^b."""

    y_parts: tuple[UniPoly, ...]
    mod: Modulus

    def __post_init__(self):
        parts = list(self.y_parts)
        while parts and parts[-1].is_zero():
            parts.pop()
        object.__setattr__(self, "y_parts", tuple(parts))

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], int], mod: Modulus) -> "BiPoly":
        """Build from {(x_deg, y_deg): coeff}."""
        if not terms:
            return cls((), mod)
        ymax = max(b for _, b in terms)
        rows = []
        for b in range(ymax + 1):
            xs = {a: c for (a, bb), c in terms.items() if bb == b}
            width = max(xs, default=-1) + 1
            rows.append(UniPoly(tuple(xs.get(a, 0) for a in range(width)), mod))
        return cls(tuple(rows), mod)

    @classmethod
    def const(cls, c: int, mod: Modulus) -> "BiPoly":
        return cls((UniPoly((c,), mod),), mod)

    @classmethod
    def from_x(cls, f: UniPoly) -> "BiPoly":
        return cls((f,), f.mod)

    def terms(self) -> dict[tuple[int, int], int]:
        return {(a, b): c for b, row in enumerate(self.y_parts) for a, c in enumerate(row.coeffs) if c}

    def __add__(self, other: "BiPoly") -> "BiPoly":
        if other.mod != self.mod:
            raise ValueError("mixed moduli")
        zero = UniPoly((), self.mod)
        m = max(len(self.y_parts), len(other.y_parts))
        get = lambda ps, i: ps[i] if i < len(ps) else zero
        return BiPoly(tuple(get(self.y_parts, i) + get(other.y_parts, i) for i in range(m)), self.mod)

    def __neg__(self) -> "BiPoly":
        return BiPoly(tuple(-f for f in self.y_parts), self.mod)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly(tuple(f * other for f in self.y_parts), self.mod)
        if other.mod != self.mod:
            raise ValueError("mixed moduli")
        if not self.y_parts or not other.y_parts:
            return BiPoly((), self.mod)
        out = [UniPoly((), self.mod)] * (len(self.y_parts) + len(other.y_parts) - 1)
        for i, f in enumerate(self.y_parts):
            for j, h in enumerate(other.y_parts):
                out[i + j] = out[i + j] + f * h
        return BiPoly(tuple(out), self.mod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        out = BiPoly.const(1, self.mod)
        for _ in range(e):
            out = out * self
        return out


# --------------------------------------------------------------------------
# finite fields


@dataclass(frozen=True)
class FieldRep:
    """The field F_p[X]/(modulus).  Elements are coefficient tuples of length d."""

    p: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        mod = UniPoly(self.modulus, Modulus(self.p, 1))
        object.__setattr__(self, "modulus", mod.coeffs)
        if not is_irreducible_mod_p(mod):
            raise ValueError(f"{mod} is not irreducible over F_{self.p}")

    @classmethod
    def from_poly(cls, g: UniPoly) -> "FieldRep":
        return cls(g.mod.p, g.reduce_mod_p().coeffs)

    @property
    def d(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p**self.d

    @property
    def modulus_poly(self) -> UniPoly:
        return UniPoly(self.modulus, Modulus(self.p, 1))

    def elem(self, coeffs: Iterable[int]) -> tuple[int, ...]:
        """Reduce any coefficient sequence into a canonical element."""
        f = UniPoly(tuple(coeffs), Modulus(self.p, 1))
        if f.degree >= self.d:
            _, f = poly_divrem_monic(f, self.modulus_poly)
        cs = f.coeffs
        return tuple(cs) + (0,) * (self.d - len(cs))

    def from_index(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def index(self, e: Sequence[int]) -> int:
        return sum(c * self.p**k for k, c in enumerate(e))

    def elements(self) -> list[tuple[int, ...]]:
        return [self.from_index(i) for i in range(self.order)]

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.d

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.d - 1)

    @property
    def gen(self) -> tuple[int, ...]:
        """The class of X."""
        return self.elem((0, 1))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        out = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.elem(out)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inverse(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a field")
        return self.pow(a, self.order - 2)

    def order_of(self, a) -> int:
        if not any(a):
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != self.one:
            x = self.mul(x, a)
            k += 1
        return k

    def multiplicative_generator(self):
        """Least element (by index) of multiplicative order p^d - 1."""
        for e in self.elements()[1:]:
            if self.order_of(e) == self.order - 1:
                return e
        raise AssertionError("finite field without a primitive element")

    def min_poly(self, a) -> UniPoly:
        """Monic minimal polynomial over F_p, as the product over Frobenius conjugates."""
        conj = [a]
        while True:
            nxt = self.pow(conj[-1], self.p)
            if nxt == a:
                break
            conj.append(nxt)
        # polynomial with coefficients in this field, then read off the prime-field parts
        poly = [self.one]
        for c in conj:
            shifted = [self.zero] + poly
            scaled = [self.mul(self.neg(c), x) for x in poly] + [self.zero]
            poly = [self.add(x, y) for x, y in zip(shifted, scaled)]
        coeffs = []
        for x in poly:
            if any(x[1:]):
                raise AssertionError("minimal polynomial left the prime field")
            coeffs.append(x[0])
        return UniPoly(tuple(coeffs), Modulus(self.p, 1))

    def evaluate(self, h: UniPoly | Sequence[int], a):
        """Evaluate a polynomial with integer coefficients at a field element."""
        cs = h.coeffs if isinstance(h, UniPoly) else tuple(h)
        acc = self.zero
        for c in reversed(cs):
            acc = self.add(self.mul(acc, a), self.elem((c,)))
        return acc

    def roots_of(self, h: UniPoly | Sequence[int]) -> list[tuple[int, ...]]:
        return [e for e in self.elements() if not any(self.evaluate(h, e))]

    def is_square(self, a) -> bool:
        if not any(a):
            return True
        if self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a):
        """Least square root by index, or None."""
        for e in self.elements():
            if self.mul(e, e) == tuple(a):
                return e
        return None

    def to_json(self) -> dict:
        return {"p": self.p, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldRep":
        return cls(int(obj["p"]), tuple(obj["modulus"]))

    def format(self, a) -> str:
        return format_poly(a, "X")


@dataclass(frozen=True)
class FieldIso:
    """Field isomorphism determined by the image of the class of X."""

    source: FieldRep
    target: FieldRep
    image_of_x: tuple[int, ...]

    def __call__(self, a):
        return self.target.evaluate(a, self.image_of_x)

    def inverse(self) -> "FieldIso":
        for e in self.target.elements():
            back = FieldIso(self.target, self.source, e)
            if back(self.image_of_x) == self.source.gen:
                return back
        raise AssertionError("field isomorphism without inverse")


def field_isos(k1: FieldRep, k2: FieldRep) -> list[FieldIso]:
    """All isomorphisms K1 -> K2, one per root of K1's modulus in K2."""
    if k1.p != k2.p or k1.d != k2.d:
        return []
    return [FieldIso(k1, k2, root) for root in k2.roots_of(k1.modulus_poly)]
