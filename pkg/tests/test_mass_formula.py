from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vhlf.errors import BoundExceeded, InvalidParameter
from vhlf.mass_formula import (
    MassProblem,
    canonicalize,
    enumerate_complexes,
    mass_enumerate,
    mass_labeled_formula,
    mass_weighted,
    weight_denominator,
)

# labelled counts, frozen after the two routes agreed
GOLDEN = {
    (1, 1): 3,
    (1, 2): 15,
    (2, 1): 15,
    (1, 3): 105,
    (3, 1): 105,
    (1, 4): 945,
    (4, 1): 945,
    (2, 2): 541,
    (1, 5): 10395,
    (1, 6): 135135,
    (6, 1): 135135,
    (2, 3): 35235,
    (3, 2): 35235,
}

CI = [(m, n) for (m, n) in GOLDEN if m * n <= 4]
EXTENDED = [(m, n) for (m, n) in GOLDEN if 4 < m * n <= 6]


@pytest.mark.parametrize("m,n", CI)
def test_routes_agree_small(m, n):
    f = mass_labeled_formula(m, n)
    assert f == mass_enumerate(m, n) == GOLDEN[(m, n)]


@pytest.mark.extended
@pytest.mark.parametrize("m,n", EXTENDED)
def test_routes_agree_extended(m, n):
    f = mass_labeled_formula(m, n)
    assert f == mass_enumerate(m, n) == GOLDEN[(m, n)]


def test_m1_is_odd_double_factorial():
    """With one A-pair the labelled counts follow (2n+1)!!."""
    for n in range(1, 6):
        dfact = 1
        for k in range(1, 2 * n + 2, 2):
            dfact *= k
        assert mass_labeled_formula(1, n) == dfact


def test_hand_count_m1_n1():
    words = sorted(sorted(c) for c in enumerate_complexes(1, 1))
    # ids: a=0, a^-1=1, b=2, b^-1=3
    assert words == [[(0, 2, 0, 3)], [(0, 2, 1, 2)], [(0, 2, 1, 3)]]


def test_weighted_mass():
    assert mass_weighted(1, 1) == Fraction(3, 4)
    assert mass_weighted(1, 2) == Fraction(15, 16)
    assert mass_weighted(2, 2) == Fraction(541, 64)
    assert mass_weighted(1, 1, method="enumerate") == Fraction(3, 4)
    assert weight_denominator(2, 3) == 8 * 48


def test_bound():
    with pytest.raises(BoundExceeded):
        mass_labeled_formula(3, 3)
    with pytest.raises(BoundExceeded):
        mass_enumerate(2, 4, bound=6)


def test_invalid_problems():
    with pytest.raises(InvalidParameter):
        MassProblem(1, 1, (0, 1), (1, 0))
    with pytest.raises(InvalidParameter):
        MassProblem(0, 1, (), (1, 0))
    with pytest.raises(InvalidParameter):
        MassProblem(2, 1, (1, 0), (1, 0))


def test_sab_q3_is_enumerated(data3):
    """S_{A,B} for q=3 is among the labelled (2,2) complexes."""
    pr = MassProblem(2, 2, tuple(data3.invA), tuple(data3.invB))
    nA = 4
    words = [
        (i, nA + j, data3.invA[mi], nA + data3.invB[lj])
        for i, j, lj, mi in data3.relations()
    ]
    target = canonicalize(pr, words)
    assert len(target) == 4
    assert target in set(enumerate_complexes(2, 2, problem=pr))


@st.composite
def involution(draw, k):
    pts = draw(st.permutations(range(2 * k)))
    inv = [0] * (2 * k)
    for x, y in zip(pts[::2], pts[1::2]):
        inv[x], inv[y] = y, x
    return tuple(inv)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_count_independent_of_involution(data):
    m = data.draw(st.integers(1, 2))
    n = data.draw(st.integers(1, 2))
    pr = MassProblem(m, n, data.draw(involution(m)), data.draw(involution(n)))
    assert mass_labeled_formula(m, n, problem=pr) == GOLDEN[(m, n)]
    assert mass_enumerate(m, n, problem=pr) == GOLDEN[(m, n)]


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2)])
def test_enumerated_complexes_have_complete_links(m, n):
    for cx in enumerate_complexes(m, n):
        corners = set()
        assert len(cx) == m * n
        pr = MassProblem.standard(m, n)
        inv = list(pr.invA) + [2 * m + j for j in pr.invB]
        for w in cx:
            for k in range(4):
                corners.add((inv[w[k]], w[(k + 1) % 4]))
        assert len(corners) == 4 * m * n
