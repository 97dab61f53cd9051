"""The VH-structure (A, B) in Γ_τ: conics N_c and M_τ, σ-maps, relation solvers.

Generators a_ξ (ξ in N_c) and b_η (η in M_τ) are addressed by their index in
the canonical conic order.  A relation ``a_ξ b_η = b_λ a_μ`` is stored as the
forward table entry ``forward[i][j] = (jλ, iμ)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, Sequence

from .errors import CoincidentInputError, WrongNormError
from .gf import QuadExtElem, conic_points
from .quaternion import Config, is_two_torsion, make_alpha, make_beta, relation_check


def sigma(xi: QuadExtElem, w: QuadExtElem) -> QuadExtElem:
    """σ_ξ(w) = conj(w)·℘(w - ξ)."""
    if w == xi:
        raise CoincidentInputError(f"sigma_{xi!r} is undefined at {w!r}")
    return w.conj() * (w - xi).pe()


def solve_forward(xi: QuadExtElem, eta: QuadExtElem) -> tuple[QuadExtElem, QuadExtElem]:
    """(λ, μ) with α_ξ β_η = β_λ α_μ."""
    p = (xi + eta).pe()
    return eta.conj() * p, xi.conj() * p


def solve_backward(lam: QuadExtElem, mu: QuadExtElem) -> tuple[QuadExtElem, QuadExtElem]:
    """(ξ, η) with α_ξ β_η = β_λ α_μ."""
    p = (lam + mu).pe()
    return mu.conj() * p, lam.conj() * p


class VHTable(Protocol):
    """Abstract VH datum: labelled generators, inverse maps and the product bijection."""

    A_labels: Sequence[str]
    B_labels: Sequence[str]
    invA: Sequence[int]
    invB: Sequence[int]
    forward: Sequence[Sequence[tuple[int, int]]]


@dataclass(frozen=True, eq=False)
class VHData:
    cfg: Config
    A: tuple[QuadExtElem, ...]
    B: tuple[QuadExtElem, ...]
    sigmaB: tuple[tuple[int, ...], ...]
    sigmaA: tuple[tuple[int, ...], ...]
    forward: tuple[tuple[tuple[int, int], ...], ...]
    backward: tuple[tuple[tuple[int, int], ...], ...]
    indexA: dict = field(repr=False)
    indexB: dict = field(repr=False)

    @property
    def q(self) -> int:
        return self.cfg.q

    @property
    def invA(self) -> tuple[int, ...]:
        return tuple(self.indexA[-x] for x in self.A)

    @property
    def invB(self) -> tuple[int, ...]:
        return tuple(self.indexB[-x] for x in self.B)

    @property
    def A_labels(self) -> list[str]:
        return [f"a:({x.w0.value},{x.w1.value})" for x in self.A]

    @property
    def B_labels(self) -> list[str]:
        return [f"b:({x.w0.value},{x.w1.value})" for x in self.B]

    def relations(self):
        """All (q+1)^2 index quadruples (i, j, jλ, iμ) with a_i b_j = b_jλ a_iμ."""
        for i in range(len(self.A)):
            for j in range(len(self.B)):
                lj, mi = self.forward[i][j]
                yield i, j, lj, mi


def build(cfg: Config) -> VHData:
    F, c = cfg.F, cfg.c
    A = tuple(conic_points(F, c, cfg.norm_A))
    B = tuple(conic_points(F, c, cfg.norm_B))
    iA = {x: i for i, x in enumerate(A)}
    iB = {x: j for j, x in enumerate(B)}
    sigmaB = tuple(tuple(iB[sigma(xi, lam)] for lam in B) for xi in A)
    sigmaA = tuple(tuple(iA[sigma(lam, xi)] for xi in A) for lam in B)
    fwd, bwd = [], []
    for xi in A:
        row = []
        for eta in B:
            lam, mu = solve_forward(xi, eta)
            row.append((iB[lam], iA[mu]))
        fwd.append(tuple(row))
    for lam in B:
        row = []
        for mu in A:
            xi, eta = solve_backward(lam, mu)
            row.append((iA[xi], iB[eta]))
        bwd.append(tuple(row))
    return VHData(cfg, A, B, sigmaB, sigmaA, tuple(fwd), tuple(bwd), iA, iB)


# -- dihedral action -----------------------------------------------------------


def conj_action_d(cfg: Config, xi: QuadExtElem) -> QuadExtElem:
    """Conjugation by d: a_ξ -> a_{ξ℘(δ)}."""
    return xi * cfg.delta.pe()


def conj_action_s(xi: QuadExtElem) -> QuadExtElem:
    """Conjugation by s: a_ξ -> a_{-conj(ξ)}."""
    return -xi.conj()


def centralizer_reflection(cfg: Config, xi: QuadExtElem) -> int:
    """The unique r in Z/(q+1) with ℘(ξ δ^r) = -1."""
    hits = [r for r in range(cfg.q + 1) if (xi * cfg.delta**r).pe() == -1]
    if len(hits) != 1:
        raise AssertionError(f"expected a unique reflection, got {hits}")
    return hits[0]


def sigma_lift_det(omega: QuadExtElem):
    """det of w -> w - ω·conj(w) as an F_q-linear map on the basis {1, Z}."""
    K = omega.ext
    img1 = K.one - omega * K.one.conj()
    imgZ = K.Z - omega * K.Z.conj()
    return img1.w0 * imgZ.w1 - imgZ.w0 * img1.w1


# -- axiom checks --------------------------------------------------------------


@dataclass
class AxiomReport:
    results: dict[str, bool]
    witnesses: dict[str, object] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]


def _check_table(t: VHTable) -> tuple[dict, dict]:
    res, wit = {}, {}
    nA, nB = len(t.invA), len(t.invB)

    def fpf(inv):
        return all(inv[inv[i]] == i and inv[i] != i for i in range(len(inv)))

    res["i_inverse_involutions"] = fpf(t.invA) and fpf(t.invB)
    res["ii_generation"] = True

    images = {}
    for i in range(nA):
        for j in range(nB):
            images.setdefault(t.forward[i][j], []).append((i, j))
    collision = next((v for v in images.values() if len(v) > 1), None)
    res["iii_product_bijection"] = len(images) == nA * nB and collision is None
    if collision:
        wit["iii_product_bijection"] = collision

    # ab is 2-torsion iff ab = b^-1 a^-1, i.e. forward(a, b) = (b^-1, a^-1)
    torsion = [
        (i, j)
        for i in range(nA)
        for j in range(nB)
        if t.forward[i][j] == (t.invB[j], t.invA[i])
    ]
    res["iv_no_2_torsion"] = not torsion
    if torsion:
        wit["iv_no_2_torsion"] = torsion[0]
    return res, wit


def check_vh_axioms(data: VHTable) -> AxiomReport:
    """Check the four VH axioms on a datum; quaternion data get extra certificates."""
    res, wit = _check_table(data)
    notes = {"ii_generation": "holds by definition: Γ is the subgroup generated by A and B"}
    if isinstance(data, VHData):
        cfg = data.cfg
        A, B = data.A, data.B
        res["sizes_and_disjoint"] = (
            len(A) == len(B) == cfg.q + 1 and not set(A) & set(B)
        )
        res["closed_under_negation"] = all(-x in data.indexA for x in A) and all(
            -y in data.indexB for y in B
        )
        bad_inverse = [
            (i, j)
            for i in range(len(A))
            for j in range(len(B))
            if data.backward[data.forward[i][j][0]][data.forward[i][j][1]] != (i, j)
        ]
        res["iii_solvers_inverse"] = not bad_inverse
        if bad_inverse:
            wit["iii_solvers_inverse"] = bad_inverse[0]
        torsion = [
            (xi, eta)
            for xi in A
            for eta in B
            if is_two_torsion(make_alpha(cfg, xi) * make_beta(cfg, eta))
        ]
        res["iv_quaternion_certificate"] = not torsion
        if torsion:
            wit["iv_quaternion_certificate"] = torsion[0]
    return AxiomReport(res, wit, notes)


def certify_relations(data: VHData) -> list[tuple]:
    """Quadruples whose solved relation fails exactly in D (empty when all hold)."""
    bad = []
    for i, j, lj, mi in data.relations():
        xi, eta, lam, mu = data.A[i], data.B[j], data.B[lj], data.A[mi]
        if not relation_check(data.cfg, xi, eta, lam, mu):
            bad.append((xi, eta, lam, mu))
    return bad


def relation_check_norms(data: VHData, xi, eta, lam, mu) -> bool:
    """relation_check with the norm preconditions enforced first."""
    cfg = data.cfg
    for w, n in ((xi, cfg.norm_A), (eta, cfg.norm_B), (lam, cfg.norm_B), (mu, cfg.norm_A)):
        if w.norm() != n:
            raise WrongNormError(f"{w!r} has the wrong norm")
    return relation_check(cfg, xi, eta, lam, mu)


# -- the degenerate example ------------------------------------------------------


@dataclass(frozen=True)
class DegenerateFixture:
    """⟨a, b | (ab)^2 = (a^-1 b)^2 = 1⟩ with A = {a, a^-1}, B = {b, b^-1}.

    Index 0 is the generator, index 1 its inverse.  The relations
    ab = b^-1 a^-1 and a^-1 b = b^-1 a and their equivalent forms give the
    product bijection below; every product is 2-torsion.
    """

    A_labels: tuple[str, ...] = ("a", "a^-1")
    B_labels: tuple[str, ...] = ("b", "b^-1")
    invA: tuple[int, ...] = (1, 0)
    invB: tuple[int, ...] = (1, 0)
    forward: tuple = (
        ((1, 1), (0, 1)),  # a b = b^-1 a^-1 ; a b^-1 = b a^-1
        ((1, 0), (0, 0)),  # a^-1 b = b^-1 a ; a^-1 b^-1 = b a
    )


DEGENERATE_FIXTURE = DegenerateFixture()
