"""Word problem in Γ_τ via the VH-structure.

Every element has a unique normal form (A-word)(B-word) with both parts
freely reduced.  Rewriting uses two rules:

* free cancellation of x x^-1 inside a class,
* the swap b_λ a_μ -> a_ξ b_η given by :func:`vh_core.solve_backward`.

Each swap removes one B-before-A inversion and cancellations shorten the
word, so (inversions, length) decreases lexicographically and rewriting
terminates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import BoundExceeded
from .vh_core import VHData

Letter = tuple[str, int]  # ("A" | "B", conic index)
Word = tuple[Letter, ...]


@dataclass(frozen=True)
class NormalForm:
    aPart: tuple[int, ...]
    bPart: tuple[int, ...]

    def word(self) -> Word:
        return tuple(("A", i) for i in self.aPart) + tuple(("B", j) for j in self.bPart)

    def lengths(self) -> tuple[int, int]:
        return len(self.aPart), len(self.bPart)

    def is_reduced(self, data: VHData) -> bool:
        invA, invB = data.invA, data.invB
        return all(invA[x] != y for x, y in zip(self.aPart, self.aPart[1:])) and all(
            invB[x] != y for x, y in zip(self.bPart, self.bPart[1:])
        )


IDENTITY = NormalForm((), ())


def _inverses(data: VHData):
    return {"A": data.invA, "B": data.invB}


def _find(data: VHData, w: list[Letter], inv, rightmost: bool) -> int | None:
    rng = range(len(w) - 2, -1, -1) if rightmost else range(len(w) - 1)
    for k in rng:
        (c1, x), (c2, y) = w[k], w[k + 1]
        if c1 == c2 and inv[c1][x] == y:
            return k
        if c1 == "B" and c2 == "A":
            return k
    return None


def rewrite(
    data: VHData,
    w: Iterable[Letter],
    strategy: Literal["leftmost", "rightmost"] = "leftmost",
) -> NormalForm:
    """Normal form of a word, reducing at the leftmost or rightmost redex."""
    inv = _inverses(data)
    word = list(w)
    rightmost = strategy == "rightmost"
    while True:
        k = _find(data, word, inv, rightmost)
        if k is None:
            break
        (c1, x), (c2, y) = word[k], word[k + 1]
        if c1 == c2:
            del word[k : k + 2]
        else:
            xi, eta = data.backward[x][y]
            word[k], word[k + 1] = ("A", xi), ("B", eta)
    a = tuple(i for c, i in word if c == "A")
    b = tuple(j for c, j in word if c == "B")
    return NormalForm(a, b)


def multiply(data: VHData, nf1: NormalForm, nf2: NormalForm) -> NormalForm:
    return rewrite(data, nf1.word() + nf2.word())


def inverse_word(data: VHData, w: Sequence[Letter]) -> Word:
    inv = _inverses(data)
    return tuple((c, inv[c][i]) for c, i in reversed(w))


def invert(data: VHData, nf: NormalForm) -> NormalForm:
    return rewrite(data, inverse_word(data, nf.word()))


def times_generator(data: VHData, nf: NormalForm, letter: Letter) -> NormalForm:
    """nf · x, pushing an A-letter leftwards through the B-part."""
    cls, x = letter
    if cls == "B":
        b = nf.bPart
        if b and data.invB[b[-1]] == x:
            return NormalForm(nf.aPart, b[:-1])
        return NormalForm(nf.aPart, b + (x,))
    new_b = list(nf.bPart)
    mu = x
    for pos in range(len(new_b) - 1, -1, -1):
        xi, eta = data.backward[new_b[pos]][mu]
        new_b[pos] = eta
        mu = xi
    a = nf.aPart
    if a and data.invA[a[-1]] == mu:
        return NormalForm(a[:-1], tuple(new_b))
    return NormalForm(a + (mu,), tuple(new_b))


# -- spheres --------------------------------------------------------------------


def default_bound(q: int) -> int:
    return 6 if q <= 3 else 4


def expected_sphere(q: int, k: int, l: int) -> int:
    """Vertices at distance (k, l) from a base vertex of T_{q+1} x T_{q+1}."""

    def tree(n):
        return 1 if n == 0 else (q + 1) * q ** (n - 1)

    return tree(k) * tree(l)


def sphere_table(data: VHData, radius: int, bound: int | None = None) -> dict[tuple[int, int], int]:
    """Counts of distinct normal forms by (|aPart|, |bPart|) for k + l <= radius.

    Built by breadth-first search from the identity, right-multiplying by
    generators and deduplicating on the normal form.
    """
    bound = default_bound(data.q) if bound is None else bound
    if radius > bound:
        raise BoundExceeded(f"radius {radius} exceeds the bound {bound}")
    gens = [("A", i) for i in range(len(data.A))] + [("B", j) for j in range(len(data.B))]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    table = {(0, 0): 1}
    for _ in range(radius):
        nxt = []
        for nf in frontier:
            for g in gens:
                m = times_generator(data, nf, g)
                if m not in seen:
                    seen.add(m)
                    nxt.append(m)
        for m in nxt:
            key = m.lengths()
            table[key] = table.get(key, 0) + 1
        frontier = nxt
    return table


def sphere_count(data: VHData, k: int, l: int, bound: int | None = None) -> int:
    return sphere_table(data, k + l, bound).get((k, l), 0)


def random_word(data: VHData, length: int, rng: random.Random) -> Word:
    nA, nB = len(data.A), len(data.B)
    out = []
    for _ in range(length):
        if rng.random() < 0.5:
            out.append(("A", rng.randrange(nA)))
        else:
            out.append(("B", rng.randrange(nB)))
    return tuple(out)


def confluence_check(data: VHData, samples: int = 500, max_len: int = 12, seed: int = 0) -> list[Word]:
    """Random words on which leftmost and rightmost rewriting disagree."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        w = random_word(data, rng.randint(0, max_len), rng)
        if rewrite(data, w, "leftmost") != rewrite(data, w, "rightmost"):
            bad.append(w)
    return bad
