import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_configs, cfg_for, data_for
from vhlf.errors import TransportFailure
from vhlf.gf import field_of_order
from vhlf.structure import (
    Certificate,
    GeneratorIso,
    PermGroup,
    closure_order,
    commensurable,
    det_classes,
    iso_from_certificate,
    iso_frobenius,
    iso_one_minus_tau,
    kind_from_order,
    local_groups,
    perm_inv,
    perm_mul,
    pgl_order,
    predict_local_groups,
    verify_iso,
)

# (|P_A|, |P_B|), frozen after Schreier-Sims, brute-force closure and the
# determinant classes agreed
LOCAL_ORDERS = {
    (3, 2): (24, 24),
    (5, 2): (60, 120),
    (5, 3): (120, 120),
    (5, 4): (120, 60),
    (7, 2): (336, 168),
    (7, 3): (336, 336),
    (7, 4): (168, 168),
    (7, 5): (336, 336),
    (7, 6): (168, 336),
    (9, 2): (360, 360),
    (9, 3): (720, 360),
    (9, 4): (360, 720),
    (9, 5): (720, 720),
    (9, 6): (720, 360),
    (9, 7): (360, 720),
    (9, 8): (720, 720),
}

Q9_MATRIX = [
    "1000000",
    "0110110",
    "0110110",
    "0001001",
    "0110110",
    "0110110",
    "0001001",
]


def test_perm_helpers():
    p, q = (1, 2, 0), (0, 2, 1)
    assert perm_mul(p, perm_inv(p)) == (0, 1, 2)
    assert perm_mul(p, q) == (2, 1, 0)


def test_symmetric_and_small_groups():
    assert PermGroup(4, [(1, 0, 2, 3), (1, 2, 3, 0)]).order() == 24
    assert PermGroup(5, [(1, 2, 3, 4, 0)]).order() == 5
    assert PermGroup(6, [(1, 2, 0, 4, 5, 3), (3, 4, 5, 0, 1, 2)]).order() == 6
    with pytest.raises(ValueError):
        PermGroup(3, [(0, 0, 1)])


@st.composite
def perm_sets(draw):
    n = draw(st.integers(2, 7))
    gens = draw(st.lists(st.permutations(range(n)), min_size=1, max_size=3))
    return n, [tuple(g) for g in gens]


@settings(max_examples=60, deadline=None)
@given(perm_sets())
def test_schreier_sims_matches_closure(ps):
    n, gens = ps
    G = PermGroup(n, gens)
    assert G.order() == closure_order(gens)
    for g in gens:
        assert G.contains(g)


@pytest.mark.parametrize("q,tau", all_configs())
def test_local_groups(q, tau):
    data = data_for(q, tau)
    PA, PB = local_groups(data)
    assert (PA.order(), PB.order()) == LOCAL_ORDERS[(q, tau)]
    kinds = (kind_from_order(q, PA.order()), kind_from_order(q, PB.order()))
    assert kinds == predict_local_groups(data.cfg) == det_classes(data)
    assert PA.is_two_transitive() and PB.is_two_transitive()


@pytest.mark.parametrize("q,tau", all_configs((3, 5)))
def test_local_groups_closure_oracle(q, tau):
    data = data_for(q, tau)
    PA, PB = local_groups(data)
    assert PA.order() == closure_order(PA.generators)
    assert PB.order() == closure_order(PB.generators)


def test_kind_from_order():
    assert pgl_order(5) == 120
    assert kind_from_order(5, 120) == "PGL"
    assert kind_from_order(5, 60) == "PSL"
    with pytest.raises(ValueError):
        kind_from_order(5, 30)


@pytest.mark.parametrize("q,tau", all_configs())
def test_explicit_isomorphisms_verify(q, tau):
    cfg = cfg_for(q, tau)
    iso = iso_one_minus_tau(cfg)
    assert iso.flip
    verify_iso(iso)
    fro = iso_frobenius(cfg)
    assert not fro.flip
    verify_iso(fro)


def test_broken_iso_rejected(cfg3):
    iso = iso_one_minus_tau(cfg3)
    keys = list(iso.mapA)
    mA = dict(iso.mapA)
    mA[keys[0]], mA[keys[1]] = mA[keys[1]], mA[keys[0]]
    with pytest.raises(TransportFailure):
        verify_iso(GeneratorIso(iso.source, iso.target, mA, iso.mapB))


def test_commensurable_q5():
    F = field_of_order(5)
    ok, cert = commensurable(F, 2, 4)
    assert ok and cert == Certificate(0, True)
    assert cert.describe() == "tau' = 1 - tau"
    assert commensurable(F, 2, 3) == (False, None)


def _orbit_oracle(F, t1, t2):
    """τ' ∈ {σ(τ), 1 - σ(τ)} for σ in the Galois group, by brute force."""
    a, b = F(t1), F(t2)
    images = {a ** (F.p**k) for k in range(F.r)}
    return b in images or b in {F.one - x for x in images}


def test_q9_matrix():
    F = field_of_order(9)
    rows = []
    for t1 in range(2, 9):
        row = ""
        for t2 in range(2, 9):
            ok, _ = commensurable(F, t1, t2)
            assert ok == _orbit_oracle(F, t1, t2)
            row += "1" if ok else "0"
        rows.append(row)
    assert rows == Q9_MATRIX


def test_q9_composed_isomorphisms_verify():
    F = field_of_order(9)
    for t1, t2 in itertools.product(range(2, 9), repeat=2):
        ok, cert = commensurable(F, t1, t2)
        if not ok:
            continue
        iso = iso_from_certificate(cfg_for(9, t1), cert)
        assert iso.target.tau == F(t2)
        verify_iso(iso)


def test_q9_frobenius_pairs_are_nontrivial():
    F = field_of_order(9)
    found = [
        (t1, t2)
        for t1, t2 in itertools.permutations(range(2, 9), 2)
        if commensurable(F, t1, t2)[1] == Certificate(1, False)
    ]
    assert found
