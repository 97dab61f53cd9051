"""Numerical invariants of the surface attached to a one-vertex VH complex."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CountMismatch
from .square_complex import OneVertexComplex, counts


@dataclass(frozen=True)
class SurfaceInvariants:
    N: int
    chi: Fraction
    c1sq: int
    c2: int
    fakeQuadric: bool

    @property
    def noether_ok(self) -> bool:
        return 12 * self.chi == self.c1sq + self.c2

    @property
    def chern_ratio(self) -> Fraction:
        return Fraction(self.c1sq, self.c2)

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "chi": str(self.chi),
            "c1sq": self.c1sq,
            "c2": self.c2,
            "chern_ratio": str(self.chern_ratio),
            "noether": self.noether_ok,
            "fakeQuadric": self.fakeQuadric,
        }


def chi_formula(N: int, q: int) -> Fraction:
    return Fraction(N * (q - 1) ** 2, 4)


def invariants_from_counts(q: int, N: int, V: int, E: int, S: int) -> SurfaceInvariants:
    """Invariants for N vertices, E unoriented edges and S squares.

    The Euler characteristic is computed from the cells and compared with
    N(q-1)^2/4; c1^2 = 2N(q-1)^2 and c2 follows from Noether's formula.
    """
    chi_cells = Fraction(V - E + S)
    chi = chi_formula(N, q)
    if chi_cells != chi:
        raise CountMismatch(f"cell count gives chi = {chi_cells}, formula gives {chi}")
    c1sq = 2 * N * (q - 1) ** 2
    c2 = 12 * chi - c1sq
    if c2.denominator != 1:
        raise CountMismatch(f"c2 = {c2} is not an integer")
    c2 = int(c2)
    return SurfaceInvariants(N, chi, c1sq, c2, chi == 1 and c1sq == 8 and c2 == 4)


def surface_invariants(cx: OneVertexComplex, q: int) -> SurfaceInvariants:
    V, E, S = counts(cx)
    return invariants_from_counts(q, V, V, E, S)


def expected_counts(q: int, N: int = 1) -> tuple[int, int, int]:
    """(V, Ē, S) = (N, N(q+1), N(q+1)^2/4) for a quotient by a vertex-transitive lattice."""
    return N, N * (q + 1), N * (q + 1) ** 2 // 4
