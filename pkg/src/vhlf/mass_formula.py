"""Counting one-vertex square complexes with VH-structure on labelled edge sets.

Two independent routes to the same number:

* :func:`mass_labeled_formula` extracts the multilinear coefficient of
  ``(tr((τ_A X τ_B X^t)^2) / 4)^{mn} / (mn)!`` in an algebra where every
  variable squares to zero;
* :func:`mass_enumerate` runs an exact-cover search over canonical squares.

Hand check for m = n = 1 with edges a, a^-1, b, b^-1: a complex is a single
square whose four corners are the four (A, B) pairs, and up to rotation and
reversal its boundary word is one of ab a^-1 b^-1 (the torus), ab a b^-1 or
ab a^-1 b (the two Klein bottle gluings).  So the labelled count is 3, and
dividing by the 2 * 2 relabellings gives the weighted mass 3/4.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

from .errors import BoundExceeded, InvalidParameter

DEFAULT_BOUND = 6


@dataclass(frozen=True)
class MassProblem:
    """Edge sets A = {0..2m-1}, B = {0..2n-1} with fixed point free involutions."""

    m: int
    n: int
    invA: tuple[int, ...]
    invB: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidParameter("m and n must be positive")
        for name, inv, size in (("A", self.invA, 2 * self.m), ("B", self.invB, 2 * self.n)):
            if len(inv) != size:
                raise InvalidParameter(f"involution on {name} must have {size} points")
            for i, k in enumerate(inv):
                if k == i or inv[k] != i:
                    raise InvalidParameter(
                        f"involution on {name} is not fixed point free at {i}"
                    )

    @classmethod
    def standard(cls, m: int, n: int) -> "MassProblem":
        pair = lambda k: tuple(i ^ 1 for i in range(2 * k))  # noqa: E731
        return cls(m, n, pair(m), pair(n))


def _problem(m, n, problem: MassProblem | None, bound: int) -> MassProblem:
    if problem is None:
        problem = MassProblem.standard(m, n)
    if problem.m * problem.n > bound:
        raise BoundExceeded(f"m*n = {problem.m * problem.n} exceeds the bound {bound}")
    return problem


# -- route 1: nilpotent coefficient extraction ----------------------------------


def trace_polynomial(pr: MassProblem) -> dict[int, int]:
    """tr((τ_A X τ_B X^t)^2) with x_ab^2 = 0, as {bitmask: coefficient}.

    Variable x_{a,b} has bit ``a * 2n + b``.
    """
    nB = 2 * pr.n
    tA, tB = pr.invA, pr.invB

    def bit(a, b):
        return 1 << (a * nB + b)

    # M_{ac} = sum_b x_{τa,τb} x_{c,b};  tr(M^2) = sum_{a,c} M_ac M_ca
    poly: dict[int, int] = defaultdict(int)
    A = range(2 * pr.m)
    B = range(nB)
    for a in A:
        for c in A:
            for b in B:
                u = bit(tA[a], tB[b]) | bit(c, b)
                if u.bit_count() < 2:
                    continue
                for d in B:
                    v = bit(tA[c], tB[d]) | bit(a, d)
                    if v.bit_count() < 2 or u & v:
                        continue
                    poly[u | v] += 1
    return dict(poly)


def mass_labeled_formula(
    m: int, n: int, bound: int = DEFAULT_BOUND, problem: MassProblem | None = None
) -> int:
    pr = _problem(m, n, problem, bound)
    N = pr.m * pr.n
    full = (1 << (4 * N)) - 1
    P = trace_polynomial(pr)
    terms = list(P.items())
    power: dict[int, int] = {0: 1}
    for step in range(N):
        nxt: dict[int, int] = defaultdict(int)
        for mono, coef in power.items():
            for t, tc in terms:
                if mono & t:
                    continue
                nxt[mono | t] += coef * tc
        power = _prune(nxt, terms, full) if step < N - 1 else nxt
    top = power.get(full, 0)
    denom = 4**N * factorial(N)
    if top % denom:
        raise ArithmeticError(f"coefficient {top} not divisible by {denom}")
    return top // denom


def _prune(power: dict[int, int], terms, full: int) -> dict[int, int]:
    """Drop monomials whose complement contains a variable no disjoint term can cover."""
    out = {}
    for mono, coef in power.items():
        rest = full & ~mono
        reach = 0
        for t, _ in terms:
            if not t & mono:
                reach |= t
        if reach & rest == rest:
            out[mono] = coef
    return out


# -- route 2: exact cover over canonical squares -----------------------------------


def _canonical_squares(pr: MassProblem) -> list[tuple[tuple[int, int, int, int], int]]:
    """Canonical boundary words (a, b, a', b') with four distinct corners.

    Each is paired with the bitmask of its corners (a, b) -> bit a * 2n + b.
    Edges are ranked A before B, each by index.
    """
    nA, nB = 2 * pr.m, 2 * pr.n
    tA, tB = pr.invA, pr.invB
    # global ids: A-edge i -> i, B-edge j -> nA + j
    inv = list(tA) + [nA + tB[j] for j in range(nB)]

    def images(w):
        rev = tuple(inv[e] for e in reversed(w))
        return [x[k:] + x[:k] for x in (w, rev) for k in range(4)]

    seen = set()
    out = []
    for a in range(nA):
        for b in range(nB):
            for a2 in range(nA):
                for b2 in range(nB):
                    w = (a, nA + b, a2, nA + b2)
                    can = min(images(w))
                    if can in seen:
                        continue
                    seen.add(can)
                    mask = 0
                    ok = True
                    for k in range(4):
                        x, y = inv[can[k]], can[(k + 1) % 4]
                        ai, bj = (x, y - nA) if x < nA else (y, x - nA)
                        bitv = 1 << (ai * nB + bj)
                        if mask & bitv:
                            ok = False
                            break
                        mask |= bitv
                    if ok:
                        out.append((can, mask))
    return out


def enumerate_complexes(
    m: int, n: int, bound: int = DEFAULT_BOUND, problem: MassProblem | None = None
) -> Iterator[frozenset]:
    """Yield each complex as a frozenset of canonical squares (global edge ids)."""
    pr = _problem(m, n, problem, bound)
    squares = _canonical_squares(pr)
    nvars = 4 * pr.m * pr.n
    full = (1 << nvars) - 1
    by_corner: list[list] = [[] for _ in range(nvars)]
    for sq, mask in squares:
        for v in range(nvars):
            if mask >> v & 1:
                by_corner[v].append((sq, mask))

    chosen: list = []

    def rec(covered: int):
        if covered == full:
            yield frozenset(chosen)
            return
        free = ~covered & full
        v = (free & -free).bit_length() - 1
        for sq, mask in by_corner[v]:
            if mask & covered:
                continue
            chosen.append(sq)
            yield from rec(covered | mask)
            chosen.pop()

    yield from rec(0)


def mass_enumerate(
    m: int, n: int, bound: int = DEFAULT_BOUND, problem: MassProblem | None = None
) -> int:
    return sum(1 for _ in enumerate_complexes(m, n, bound, problem))


def mass_weighted(
    m: int, n: int, bound: int = DEFAULT_BOUND, method: str = "formula"
) -> Fraction:
    """Automorphism-weighted mass: labelled count / (2^m m! 2^n n!)."""
    count = (mass_labeled_formula if method == "formula" else mass_enumerate)(m, n, bound)
    return Fraction(count, weight_denominator(m, n))


def weight_denominator(m: int, n: int) -> int:
    """Order of the relabelling group: involution-preserving permutations of A and B."""
    return 2**m * factorial(m) * 2**n * factorial(n)


def canonicalize(pr: MassProblem, words) -> frozenset:
    """Canonical forms of boundary words given in global ids (A first, then B)."""
    nA = 2 * pr.m
    inv = list(pr.invA) + [nA + j for j in pr.invB]

    def images(w):
        rev = tuple(inv[e] for e in reversed(w))
        return [x[k:] + x[:k] for x in (w, rev) for k in range(4)]

    return frozenset(min(images(tuple(w))) for w in words)
