import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_configs, cfg_for
from vhlf.errors import PoleAtOneError, WrongNormError
from vhlf.funcfield import RatFunc, det2, scalar_eq
from vhlf.gf import conic_points, make_field
from vhlf.quaternion import (
    QuatElem,
    alpha_nrd_formula,
    basis,
    beta_nrd_formula,
    dihedral_relations,
    is_two_torsion,
    make_alpha,
    make_beta,
    make_config,
    make_gamma,
    mod_F_image,
    neighbour_valuations,
    nrd,
    qconj,
    quaternion_certificates,
    relation_check,
    rho_y,
    rho_z,
    splitting_is_homomorphism,
    splitting_y,
    splitting_z,
    trd,
)


def test_config_q3(cfg3):
    K = cfg3.K
    assert cfg3.c.value == 2
    assert cfg3.delta == K.make(1, 1)
    assert cfg3.zeta == K.make(1, 1)
    assert cfg3.zeta.norm() == (cfg3.tau - 1) / cfg3.tau


def test_config_rejects_bad_tau():
    F = make_field(5)
    for bad in (0, 1):
        with pytest.raises(ValueError):
            make_config(F, bad)


def test_basic_norms(cfg3):
    t = cfg3.t
    Z, Fq, one = QuatElem.Z(cfg3), QuatElem.F(cfg3), QuatElem.one(cfg3)
    assert nrd(one) == cfg3.const(1)
    assert nrd(Z) == cfg3.const(-cfg3.c)
    assert nrd(Fq) == -(t * (t - 1))
    assert nrd(make_gamma(cfg3, cfg3.K.zero)) == -(t * t) * cfg3.c


def test_alpha_beta_norms_q3(cfg3):
    t = cfg3.t
    K = cfg3.K
    assert nrd(make_alpha(cfg3, K.Z)) == t
    assert nrd(make_beta(cfg3, K.make(1, 1))) == t * (t + 1) * 2
    with pytest.raises(WrongNormError):
        make_alpha(cfg3, K.make(1, 1))
    with pytest.raises(WrongNormError):
        make_beta(cfg3, K.Z)


def test_relation_examples_q3(cfg3):
    K = cfg3.K
    Z = K.Z
    assert relation_check(cfg3, Z, K.make(1, 1), K.make(2, 2), K.make(2))
    assert not relation_check(cfg3, Z, K.make(1, 1), K.make(1, 1), Z)
    with pytest.raises(WrongNormError):
        relation_check(cfg3, Z, K.make(1, 1), Z, K.make(1, 1))


@pytest.mark.parametrize("q,tau", all_configs((3, 5)))
def test_relation_unique_solution(q, tau):
    """For fixed (ξ, η) exactly one (λ, μ) satisfies the relation in D."""
    cfg = cfg_for(q, tau)
    A = conic_points(cfg.F, cfg.c, cfg.norm_A)
    B = conic_points(cfg.F, cfg.c, cfg.norm_B)
    for xi, eta in itertools.product(A, B):
        sols = [(l, m) for l in B for m in A if relation_check(cfg, xi, eta, l, m)]
        assert len(sols) == 1
        lam, mu = sols[0]
        assert xi + eta == lam + mu
        assert xi * eta.conj() == lam * mu.conj()


def test_splitting_examples(cfg3):
    Z, Fq = QuatElem.Z(cfg3), QuatElem.F(cfg3)
    sz, sy = splitting_z(cfg3), splitting_y(cfg3)
    RZ = rho_z(cfg3, Z)
    assert scalar_eq(RZ * RZ, rho_z(cfg3, QuatElem.one(cfg3))) == RatFunc.const(cfg3.F, "z", cfg3.c)
    assert det2(RZ) == RatFunc.const(cfg3.F, "z", -cfg3.c)
    RF = rho_z(cfg3, Fq)
    assert scalar_eq(RF * RF, rho_z(cfg3, QuatElem.one(cfg3))) == sz.sub(cfg3.d)
    YZ, YF = rho_y(cfg3, Z), rho_y(cfg3, Fq)
    assert (YZ * YF).entries() == (-(YF * YZ)).entries()
    assert sy.sub(cfg3.t) is not None


@pytest.mark.parametrize("q,tau", all_configs())
def test_certificates_all_configs(q, tau):
    assert all(quaternion_certificates(cfg_for(q, tau)).values())


@pytest.mark.parametrize("q,tau", all_configs())
def test_splittings_are_homomorphisms(q, tau):
    cfg = cfg_for(q, tau)
    assert splitting_is_homomorphism(splitting_z(cfg))
    assert splitting_is_homomorphism(splitting_y(cfg))


def test_valuations_q3(cfg3):
    K = cfg3.K
    assert neighbour_valuations(cfg3, K.Z) == (1, 0)
    assert neighbour_valuations(cfg3, K.make(1, 1)) == (0, 1)
    with pytest.raises(WrongNormError):
        neighbour_valuations(cfg3, K.zero)


@pytest.mark.parametrize("q,tau", all_configs())
def test_valuation_pattern(q, tau):
    cfg = cfg_for(q, tau)
    for x in conic_points(cfg.F, cfg.c, cfg.norm_A):
        assert neighbour_valuations(cfg, x) == (1, 0)
    for y in conic_points(cfg.F, cfg.c, cfg.norm_B):
        assert neighbour_valuations(cfg, y) == (0, 1)


@pytest.mark.parametrize("q,tau", all_configs())
def test_dihedral_relations(q, tau):
    assert all(dihedral_relations(cfg_for(q, tau)).values())


def test_mod_F_image(cfg3):
    K = cfg3.K
    assert mod_F_image(cfg3, make_alpha(cfg3, K.Z)) == K.make(cfg3.c)
    for eta in conic_points(cfg3.F, cfg3.c, cfg3.norm_B):
        assert mod_F_image(cfg3, make_beta(cfg3, eta)) == K.make(cfg3.c)
    assert mod_F_image(cfg3, QuatElem.one(cfg3)) == K.one
    pole = QuatElem.one(cfg3).scale((cfg3.t - 1).inverse())
    with pytest.raises(PoleAtOneError):
        mod_F_image(cfg3, pole)


def test_nrd_formulas_q5():
    cfg = cfg_for(5, 3)
    for x in conic_points(cfg.F, cfg.c, cfg.norm_A):
        assert nrd(make_alpha(cfg, x)) == alpha_nrd_formula(cfg)
    for y in conic_points(cfg.F, cfg.c, cfg.norm_B):
        assert nrd(make_beta(cfg, y)) == beta_nrd_formula(cfg)


# -- algebraic properties on random elements --------------------------------------

CFG5 = cfg_for(5, 2)
small = st.integers(-2, 2)


@st.composite
def quats(draw):
    t = CFG5.t
    coords = []
    for _ in range(4):
        a, b = draw(small), draw(small)
        coords.append(t * a + CFG5.const(b))
    return QuatElem(CFG5, *coords)


@settings(max_examples=40, deadline=None)
@given(quats(), quats(), quats())
def test_algebra_properties(x, y, w):
    assert (x * y) * w == x * (y * w)
    assert nrd(x * y) == nrd(x) * nrd(y)
    assert x * qconj(x) == QuatElem.one(CFG5).scale(nrd(x))
    assert trd(x) == trd(qconj(x))
    assert qconj(x * y) == qconj(y) * qconj(x)


def test_basis_relations():
    one, Z, Fq, ZF = basis(CFG5)
    assert Z * Fq == -(Fq * Z)
    assert Z * Z == one.scale(CFG5.const(CFG5.c))
    assert Fq * Fq == one.scale(CFG5.d)
    assert not is_two_torsion(make_alpha(CFG5, CFG5.K.Z) * make_beta(CFG5, conic_points(CFG5.F, CFG5.c, CFG5.norm_B)[0]))
