"""Univariate polynomials and rational functions over F_q, 2x2 matrices, places.

Coefficients are kept as integer encodings of F_q (see :mod:`vhlf.gf`) so the
inner loops only index into the field tables.  Rational functions are always
reduced: ``gcd(num, den) = 1`` and ``den`` monic, so equal functions have
identical representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DegenerateCompositionError, ZeroInputError
from .gf import FieldSpec, GFElem

INF = float("inf")


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Polynomial in one named variable; ``coeffs`` low degree first."""

    __slots__ = ("F", "var", "coeffs")

    def __init__(self, F: FieldSpec, var: str, coeffs: Sequence[int]):
        self.F = F
        self.var = var
        self.coeffs = _trim(list(coeffs))

    @classmethod
    def const(cls, F, var, a) -> "Poly":
        return cls(F, var, [_enc(F, a)])

    @classmethod
    def gen(cls, F, var) -> "Poly":
        return cls(F, var, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1]

    def _check(self, other: "Poly"):
        if other.var != self.var:
            raise TypeError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        add = self.F.add_table
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = add[out[i]][y]
        return Poly(self.F, self.var, out)

    def __neg__(self) -> "Poly":
        neg = self.F.neg_table
        return Poly(self.F, self.var, [neg[x] for x in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.F, self.var, [])
        add, mul = self.F.add_table, self.F.mul_table
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j]][row[y]]
        return Poly(self.F, self.var, out)

    def scale(self, s: int) -> "Poly":
        mul = self.F.mul_table[s]
        return Poly(self.F, self.var, [mul[x] for x in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroInputError("polynomial division by zero")
        F = self.F
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        inv_lead = F.inv_table[other.lead()]
        rem = list(self.coeffs)
        b = other.coeffs
        quot = [0] * max(len(rem) - len(b) + 1, 0)
        while len(rem) >= len(b) and rem:
            f = mul[rem[-1]][inv_lead]
            shift = len(rem) - len(b)
            quot[shift] = f
            nf = neg[f]
            for i, y in enumerate(b):
                rem[shift + i] = add[rem[shift + i]][mul[nf][y]]
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, self.var, quot), Poly(F, self.var, rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.F.inv_table[self.lead()])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x: int) -> int:
        """Evaluate at an element given by its encoding (Horner)."""
        add, mul = self.F.add_table, self.F.mul_table
        acc = 0
        for c in reversed(self.coeffs):
            acc = add[mul[acc][x]][c]
        return acc

    def root_multiplicity(self, a: int) -> int:
        """Multiplicity of (var - a) as a factor; 0 for the zero polynomial's sake."""
        lin = Poly(self.F, self.var, [self.F.neg_table[a], 1])
        k, f = 0, self
        while not f.is_zero():
            quo, rem = f.divmod(lin)
            if not rem.is_zero():
                break
            k, f = k + 1, quo
        return k

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.var == other.var
            and self.coeffs == other.coeffs
            and self.F == other.F
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            else:
                terms.append(f"{c}{mon}")
        return "+".join(terms)


def _enc(F: FieldSpec, a) -> int:
    if isinstance(a, GFElem):
        return a.value
    return F.scalar(a).value


Scalar = Union[int, GFElem]


class RatFunc:
    """Reduced quotient num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        if den is None:
            den = Poly.const(num.F, num.var, 1)
        if den.is_zero():
            raise ZeroInputError("zero denominator")
        if not reduced:
            if num.is_zero():
                den = Poly.const(num.F, num.var, 1)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
                li = num.F.inv_table[den.lead()]
                num, den = num.scale(li), den.scale(li)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, F: FieldSpec, var: str, a: Scalar) -> "RatFunc":
        return cls(Poly.const(F, var, a), reduced=True)

    @classmethod
    def gen(cls, F: FieldSpec, var: str) -> "RatFunc":
        return cls(Poly.gen(F, var), reduced=True)

    @property
    def F(self) -> FieldSpec:
        return self.num.F

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self) -> int:
        return self.num.coeffs[0] if self.num.coeffs else 0

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc.const(self.F, self.var, other)

    def __add__(self, other) -> "RatFunc":
        o = self._lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return RatFunc.const(self.F, self.var, 0)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroInputError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self.inverse() * other

    def __pow__(self, n: int) -> "RatFunc":
        base = self if n >= 0 else self.inverse()
        acc = RatFunc.const(self.F, self.var, 1)
        for _ in range(abs(n)):
            acc = acc * base
        return acc

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, GFElem)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x: int) -> int:
        d = self.den(x)
        if not d:
            raise ZeroInputError("pole")
        return self.F.mul_table[self.num(x)][self.F.inv_table[d]]

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


@dataclass(frozen=True)
class Place:
    """A rational place: ``var = point`` (point an encoding) or infinity."""

    point: int | None = None

    @property
    def is_infinite(self) -> bool:
        return self.point is None

    def __repr__(self):
        return "∞" if self.point is None else f"{self.point}"


INFINITY = Place(None)


def ord_at(f: RatFunc, v: Place) -> float:
    """Order of vanishing of ``f`` at ``v``; ``inf`` for the zero function."""
    if f.is_zero():
        return INF
    if v.is_infinite:
        return f.den.degree - f.num.degree
    return f.num.root_multiplicity(v.point) - f.den.root_multiplicity(v.point)


def substitute(f: RatFunc, expr: RatFunc) -> RatFunc:
    """The composition ``f(expr)``, a rational function in expr's variable."""

    def horner(p: Poly) -> RatFunc:
        acc = RatFunc.const(expr.F, expr.var, 0)
        for c in reversed(p.coeffs):
            acc = acc * expr + RatFunc.const(expr.F, expr.var, GFElem(expr.F, c))
        return acc

    den = horner(f.den)
    if den.is_zero():
        raise DegenerateCompositionError("denominator vanishes identically")
    return horner(f.num) / den


# -- 2x2 matrices -------------------------------------------------------------


@dataclass(frozen=True)
class Mat2:
    a: RatFunc
    b: RatFunc
    c: RatFunc
    d: RatFunc

    @classmethod
    def identity(cls, F, var) -> "Mat2":
        one, zero = RatFunc.const(F, var, 1), RatFunc.const(F, var, 0)
        return cls(one, zero, zero, one)

    def entries(self) -> tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def scale(self, f) -> "Mat2":
        return Mat2(self.a * f, self.b * f, self.c * f, self.d * f)

    def __mul__(self, o: "Mat2") -> "Mat2":
        return mul2(self, o)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)


def det2(M: Mat2) -> RatFunc:
    return M.a * M.d - M.b * M.c


def mul2(M: Mat2, N: Mat2) -> Mat2:
    return Mat2(
        M.a * N.a + M.b * N.c,
        M.a * N.b + M.b * N.d,
        M.c * N.a + M.d * N.c,
        M.c * N.b + M.d * N.d,
    )


def scalar_eq(M: Mat2, N: Mat2) -> RatFunc | None:
    """Return f with M = f*N (f nonzero), or None if no such scalar exists."""
    pairs = list(zip(M.entries(), N.entries()))
    ref = next(((m, n) for m, n in pairs if not n.is_zero()), None)
    if ref is None:
        return None
    m0, n0 = ref
    if m0.is_zero():
        return None
    for m, n in pairs:
        # m/n == m0/n0 <=> m*n0 == m0*n
        if m * n0 != m0 * n:
            return None
    return m0 / n0
