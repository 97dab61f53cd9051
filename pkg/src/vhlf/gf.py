"""Finite fields F_q (q = p^r odd) and the quadratic extension F_q[Z]/(Z^2 - c).

Elements of F_q are stored by their integer encoding ``e = sum(coeffs[i] * p**i)``
in the power basis of a canonical modulus; all arithmetic goes through
precomputed tables, so elements are cheap immutable handles.

The canonical enumeration order compares coefficient vectors
lexicographically with the low-degree coefficient most significant.  For
``r = 1`` this is the usual order on ``0..p-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering
from typing import Iterator, Sequence

from .errors import (
    DegreeTooLargeError,
    EvenCharacteristicError,
    NotPrimeError,
    ZeroInputError,
    ZeroNormError,
)

DEFAULT_Q_BOUND = 121


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient tuples, low degree first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - f * bc) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of the given degree in canonical order."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _pmod(poly, g, p):
                return False
    return True


def least_irreducible(p: int, r: int) -> tuple[int, ...]:
    for poly in _monic_polys(r, p):
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- the field ---------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_q, q = p^r, as F_p[x]/(modulus)."""

    p: int
    r: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.r

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    def coeffs(self, e: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            e, d = divmod(e, self.p)
            out.append(d)
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def _mul_coeffs(self, a, b) -> tuple[int, ...]:
        p, r = self.p, self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        if r > 1:
            prod = _pmod(prod, self.modulus, p)
        return tuple(prod[:r]) + (0,) * (r - len(prod))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        q = self.q
        cs = [self.coeffs(e) for e in range(q)]
        return tuple(
            tuple(self.encode([x + y for x, y in zip(cs[a], cs[b])]) for b in range(q))
            for a in range(q)
        )

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        q = self.q
        cs = [self.coeffs(e) for e in range(q)]
        return tuple(
            tuple(self.encode(self._mul_coeffs(cs[a], cs[b])) for b in range(q))
            for a in range(q)
        )

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.encode([-c for c in self.coeffs(e)]) for e in range(self.q))

    @cached_property
    def inv_table(self) -> tuple[int | None, ...]:
        mul = self.mul_table
        out: list[int | None] = [None] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if mul[a][b] == 1:
                    out[a] = b
                    break
        return tuple(out)

    @cached_property
    def canonical_codes(self) -> tuple[int, ...]:
        """Integer encodings sorted in canonical enumeration order."""
        return tuple(sorted(range(self.q), key=self.coeffs))

    def __call__(self, e: int) -> "GFElem":
        if not 0 <= e < self.q:
            raise ValueError(f"encoding {e} out of range for {self!r}")
        return GFElem(self, e)

    def scalar(self, n: int) -> "GFElem":
        """Image of the integer ``n`` in the prime subfield."""
        return GFElem(self, n % self.p)

    @property
    def zero(self) -> "GFElem":
        return GFElem(self, 0)

    @property
    def one(self) -> "GFElem":
        return GFElem(self, 1)

    def elements(self) -> list["GFElem"]:
        return [GFElem(self, e) for e in self.canonical_codes]

    def units(self) -> list["GFElem"]:
        return [x for x in self.elements() if x.value]


@total_ordering
class GFElem:
    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, GFElem):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(self.field, self.field.add_table[self.value][o])

    __radd__ = __add__

    def __neg__(self):
        return GFElem(self.field, self.field.neg_table[self.value])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        return GFElem(f, f.add_table[self.value][f.neg_table[o]])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElem(self.field, self.field.mul_table[self.value][o])

    __rmul__ = __mul__

    def inverse(self) -> "GFElem":
        inv = self.field.inv_table[self.value]
        if inv is None:
            raise ZeroInputError("inverse of zero")
        return GFElem(self.field, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * GFElem(self.field, o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        acc = self.field.one
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, GFElem):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(("GF", self.field.q, self.value))

    def __lt__(self, other: "GFElem"):
        return self.key() < other.key()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def key(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def is_square(self) -> bool:
        """Euler criterion; zero counts as a square."""
        if not self.value:
            return True
        return self ** ((self.field.q - 1) // 2) == 1

    def __repr__(self):
        return str(self.value)


def make_field(p: int, r: int = 1, bound: int = DEFAULT_Q_BOUND) -> FieldSpec:
    """F_{p^r} with the lexicographically least monic irreducible modulus."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristicError("characteristic 2 is not supported")
    if r < 1:
        raise DegreeTooLargeError("extension degree must be >= 1")
    if p**r > bound:
        raise DegreeTooLargeError(f"q = {p}^{r} exceeds the bound {bound}")
    return _make_field_cached(p, r)


@lru_cache(maxsize=None)
def _make_field_cached(p: int, r: int) -> FieldSpec:
    return FieldSpec(p, r, least_irreducible(p, r))


def field_of_order(q: int, bound: int = DEFAULT_Q_BOUND) -> FieldSpec:
    """Resolve ``q = p^r`` to a field."""
    if q < 2:
        raise NotPrimeError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    r = 0
    n = q
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise NotPrimeError(f"{q} is not a prime power")
    return make_field(p, r, bound)


def find_nonsquare(F: FieldSpec) -> GFElem:
    for x in F.elements():
        if x and x ** ((F.q - 1) // 2) == -1:
            return x
    raise AssertionError("odd fields always have non-squares")  # pragma: no cover


# -- the quadratic extension ---------------------------------------------------


@dataclass(frozen=True)
class QuadExt:
    """F_q[Z] with Z^2 = c for a non-square c."""

    F: FieldSpec
    c: GFElem

    def __call__(self, e: int) -> "QuadExtElem":
        q = self.F.q
        if not 0 <= e < q * q:
            raise ValueError(f"encoding {e} out of range")
        return QuadExtElem(self, self.F(e % q), self.F(e // q))

    def make(self, w0, w1=0) -> "QuadExtElem":
        F = self.F
        w0 = w0 if isinstance(w0, GFElem) else F.scalar(w0)
        w1 = w1 if isinstance(w1, GFElem) else F.scalar(w1)
        return QuadExtElem(self, w0, w1)

    @property
    def Z(self) -> "QuadExtElem":
        return self.make(0, 1)

    @property
    def one(self) -> "QuadExtElem":
        return self.make(1, 0)

    @property
    def zero(self) -> "QuadExtElem":
        return self.make(0, 0)

    def elements(self) -> list["QuadExtElem"]:
        els = self.F.elements()
        return [QuadExtElem(self, a, b) for a in els for b in els]

    def units(self) -> list["QuadExtElem"]:
        return [w for w in self.elements() if w]


@total_ordering
class QuadExtElem:
    """w = w0 + w1 Z."""

    __slots__ = ("ext", "w0", "w1")

    def __init__(self, ext: QuadExt, w0: GFElem, w1: GFElem):
        self.ext = ext
        self.w0 = w0
        self.w1 = w1

    def _coerce(self, other) -> "QuadExtElem":
        if isinstance(other, QuadExtElem):
            return other
        if isinstance(other, (int, GFElem)):
            return self.ext.make(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExtElem(self.ext, self.w0 + o.w0, self.w1 + o.w1)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(self.ext, -self.w0, -self.w1)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExtElem(self.ext, self.w0 - o.w0, self.w1 - o.w1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c = self.ext.c
        a0, a1, b0, b1 = self.w0, self.w1, o.w0, o.w1
        return QuadExtElem(self.ext, a0 * b0 + c * a1 * b1, a0 * b1 + a1 * b0)

    __rmul__ = __mul__

    def conj(self) -> "QuadExtElem":
        return QuadExtElem(self.ext, self.w0, -self.w1)

    def norm(self) -> GFElem:
        return self.w0 * self.w0 - self.ext.c * self.w1 * self.w1

    def inverse(self) -> "QuadExtElem":
        n = self.norm()
        if not n:
            raise ZeroInputError("inverse of zero")
        ninv = n.inverse()
        return QuadExtElem(self.ext, self.w0 * ninv, -self.w1 * ninv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        acc = self.ext.one
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def pe(self) -> "QuadExtElem":
        if not self:
            raise ZeroInputError("pe(0) is undefined")
        return self * self.conj().inverse()

    def in_base(self) -> bool:
        return not self.w1

    def encode(self) -> int:
        return self.w0.value + self.w1.value * self.ext.F.q

    def key(self) -> tuple:
        return (self.w0.key(), self.w1.key())

    def __bool__(self):
        return bool(self.w0) or bool(self.w1)

    def __eq__(self, other):
        if isinstance(other, QuadExtElem):
            return self.w0 == other.w0 and self.w1 == other.w1
        if isinstance(other, (int, GFElem)):
            return not self.w1 and self.w0 == other
        return NotImplemented

    def __hash__(self):
        return hash(("QE", self.w0.value, self.w1.value))

    def __lt__(self, other: "QuadExtElem"):
        return self.key() < other.key()

    def __repr__(self):
        a, b = self.w0.value, self.w1.value
        if not b:
            return str(a)
        zpart = "Z" if b == 1 else f"{b}Z"
        return zpart if not a else f"{a}+{zpart}"


@lru_cache(maxsize=None)
def quad_ext(F: FieldSpec, c: GFElem) -> QuadExt:
    return QuadExt(F, c)


def norm(w: QuadExtElem) -> GFElem:
    return w.norm()


def conj(w: QuadExtElem) -> QuadExtElem:
    return w.conj()


def pe(w: QuadExtElem) -> QuadExtElem:
    """w / conj(w)."""
    return w.pe()


def multiplicative_order(w: QuadExtElem) -> int:
    n = w.ext.F.q ** 2 - 1
    order = n
    for ell in prime_factors(n):
        while order % ell == 0 and w ** (order // ell) == 1:
            order //= ell
    return order


def find_generator(F: FieldSpec, c: GFElem) -> QuadExtElem:
    """Least element of F_q[Z] generating the multiplicative group."""
    K = quad_ext(F, c)
    n = F.q**2 - 1
    ells = prime_factors(n)
    for w in K.units():
        if all(w ** (n // ell) != 1 for ell in ells):
            return w
    raise AssertionError("cyclic group has a generator")  # pragma: no cover


def conic_points(F: FieldSpec, c: GFElem, u: GFElem) -> list[QuadExtElem]:
    """All w in F_q[Z] with norm(w) = u, in canonical order."""
    if not u:
        raise ZeroNormError("the conic of norm 0 is degenerate")
    K = quad_ext(F, c)
    return [w for w in K.elements() if w.norm() == u]
