import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vhlf.errors import (
    DegreeTooLargeError,
    EvenCharacteristicError,
    NotPrimeError,
    ZeroInputError,
    ZeroNormError,
)
from vhlf.gf import (
    conic_points,
    field_of_order,
    find_generator,
    find_nonsquare,
    is_irreducible,
    make_field,
    multiplicative_order,
    quad_ext,
)

FIELDS = [make_field(3), make_field(5), make_field(7), make_field(3, 2)]


def _irreducible_by_roots(poly, p):
    """Degree-2 oracle: a monic quadratic is irreducible iff it has no root."""
    return all(sum(c * x**i for i, c in enumerate(poly)) % p for x in range(p))


def test_prime_field_has_no_extension():
    F = make_field(3, 1)
    assert F.q == 3 and F.r == 1
    assert [x.value for x in F.elements()] == [0, 1, 2]


def test_f9_least_modulus():
    F = make_field(3, 2)
    assert F.modulus == (1, 0, 1)
    # the first monic quadratic without roots in lexicographic order
    first = next(
        (a0, a1, 1)
        for a1, a0 in itertools.product(range(3), repeat=2)
        if _irreducible_by_roots((a0, a1, 1), 3)
    )
    assert first == F.modulus


@pytest.mark.parametrize("p", [3, 5, 7])
def test_irreducibility_matches_root_oracle(p):
    for a0, a1 in itertools.product(range(p), repeat=2):
        assert is_irreducible((a0, a1, 1), p) == _irreducible_by_roots((a0, a1, 1), p)


@pytest.mark.parametrize(
    "args, exc",
    [((2, 1), EvenCharacteristicError), ((4, 1), NotPrimeError), ((9, 1), NotPrimeError)],
)
def test_make_field_errors(args, exc):
    with pytest.raises(exc):
        make_field(*args)


def test_degree_bound():
    with pytest.raises(DegreeTooLargeError):
        make_field(3, 4, bound=27)


def test_field_of_order():
    assert field_of_order(9) == make_field(3, 2)
    with pytest.raises(NotPrimeError):
        field_of_order(6)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_exhaustive(F):
    els = F.elements()
    one, zero = F.one, F.zero
    for x in els:
        assert x + zero == x and x * one == x
        assert x + (-x) == zero
        if x:
            assert x * x.inverse() == one
    for x, y in itertools.product(els, repeat=2):
        assert x * y == y * x
        assert x + y == y + x


def test_f9_mul_table_against_polynomial_oracle():
    F = make_field(3, 2)
    for a, b in itertools.product(range(9), repeat=2):
        a0, a1 = a % 3, a // 3
        b0, b1 = b % 3, b // 3
        # (a0 + a1 x)(b0 + b1 x) with x^2 = -1
        c0 = (a0 * b0 - a1 * b1) % 3
        c1 = (a0 * b1 + a1 * b0) % 3
        assert (F(a) * F(b)).value == c0 + 3 * c1


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_nonsquare_is_least(F):
    squares = {x * x for x in F.elements()}
    c = find_nonsquare(F)
    assert c not in squares
    assert all(x in squares for x in F.elements() if x < c)
    for x in F.elements():
        assert x.is_square() == (x in squares)


def test_nonsquare_small_values():
    assert find_nonsquare(make_field(3)).value == 2
    assert find_nonsquare(make_field(5)).value == 2
    F9 = make_field(3, 2)
    c = find_nonsquare(F9)
    assert c**4 == -F9.one


def test_norm_and_conj_examples():
    F = make_field(3)
    K = quad_ext(F, F(2))
    assert K.one.norm() == F.one
    assert K.Z.norm().value == 1
    assert K.make(1, 1).norm().value == 2
    assert K.Z.conj() == -K.Z
    assert K.make(1, 1).conj() == K.make(1, 2)


def test_pe_examples():
    F = make_field(3)
    K = quad_ext(F, F(2))
    assert K.make(2).pe() == K.one
    assert K.Z.pe() == K.make(2)
    assert K.make(1, 2).pe() == K.make(0, 2)
    with pytest.raises(ZeroInputError):
        K.zero.pe()


def test_generator_q3():
    F = make_field(3)
    K = quad_ext(F, F(2))
    d = find_generator(F, F(2))
    assert d == K.make(1, 1)
    assert d**2 == K.make(0, 2) and d**4 == K.make(2) and d**8 == K.one
    assert multiplicative_order(d) == 8


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_generator_order(F):
    c = find_nonsquare(F)
    d = find_generator(F, c)
    n = F.q**2 - 1
    assert d**n == quad_ext(F, c).one
    assert len({d**k for k in range(n)}) == n


def test_conics_q3():
    F = make_field(3)
    K = quad_ext(F, F(2))
    assert conic_points(F, F(2), F(1)) == [K.Z, K.make(0, 2), K.make(1), K.make(2)]
    assert set(conic_points(F, F(2), F(2))) == {
        K.make(a, b) for a in (1, 2) for b in (1, 2)
    }
    with pytest.raises(ZeroNormError):
        conic_points(F, F(2), F(0))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_conic_sizes_brute_force(F):
    c = find_nonsquare(F)
    K = quad_ext(F, c)
    for u in F.units():
        pts = conic_points(F, c, u)
        assert len(pts) == F.q + 1
        assert set(pts) == {w for w in K.elements() if w.norm() == u}


def _ext_elems(F):
    c = find_nonsquare(F)
    K = quad_ext(F, c)
    return st.sampled_from(K.elements())


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_pe_image_is_norm_one(F):
    c = find_nonsquare(F)
    K = quad_ext(F, c)
    image = {w.pe() for w in K.units()}
    assert image == {w for w in K.units() if w.norm() == F.one}


@given(st.data())
def test_norm_multiplicative_and_conj_automorphism(data):
    F = data.draw(st.sampled_from(FIELDS))
    els = _ext_elems(F)
    x, y = data.draw(els), data.draw(els)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    assert x.conj().conj() == x
    assert x**F.q == x.conj()
