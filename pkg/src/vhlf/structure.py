"""Local permutation groups of the VH-structure and the isomorphism classification.

Permutation group orders come from a small Schreier-Sims implementation.
Isomorphisms Γ_τ -> Γ_τ' are given as dictionaries on generators and are
certified by transporting every relation through the target's solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .errors import TransportFailure
from .gf import FieldSpec, GFElem, QuadExtElem
from .quaternion import Config, make_config
from .vh_core import VHData, build, sigma_lift_det, solve_forward

Perm = tuple[int, ...]


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[x] for x in p)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


@dataclass
class _Level:
    point: int
    orbit: dict[int, Perm]  # orbit point -> element sending the base point there


@dataclass
class PermGroup:
    """Permutation group on {0..n-1} with a base and strong generating set.

    The chain is rebuilt from the current strong generators until every
    Schreier generator sifts to the identity.
    """

    degree: int
    generators: list[Perm]
    base: list[int] = field(default_factory=list, repr=False)
    strong: list[Perm] = field(default_factory=list, repr=False)
    levels: list[_Level] = field(default_factory=list, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.degree or not is_perm(g):
                raise ValueError(f"{g} is not a permutation of {self.degree} points")
        self._schreier_sims()

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def _orbit(self, point: int, gens: list[Perm]) -> dict[int, Perm]:
        orbit = {point: self.identity}
        queue = [point]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit[y] = perm_mul(orbit[x], g)
                    queue.append(y)
        return orbit

    def _level_gens(self, i: int) -> list[Perm]:
        fixed = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def _rebuild(self) -> None:
        self.levels = [
            _Level(b, self._orbit(b, self._level_gens(i))) for i, b in enumerate(self.base)
        ]

    def _sift(self, g: Perm, start: int = 0) -> Perm:
        for lev in self.levels[start:]:
            y = g[lev.point]
            if y not in lev.orbit:
                return g
            g = perm_mul(g, perm_inv(lev.orbit[y]))
        return g

    def _extend(self, h: Perm) -> None:
        self.strong.append(h)
        if all(h[b] == b for b in self.base):
            self.base.append(next(x for x in range(self.degree) if h[x] != x))
        self._rebuild()

    def _schreier_sims(self) -> None:
        ident = self.identity
        for g in self.generators:
            if g != ident and self._sift(g) != ident:
                self._extend(self._sift(g))
        changed = True
        while changed:
            changed = False
            for i, lev in enumerate(self.levels):
                for x, u in list(lev.orbit.items()):
                    for s in self._level_gens(i):
                        sch = perm_mul(perm_mul(u, s), perm_inv(lev.orbit[s[x]]))
                        h = self._sift(sch, i + 1)
                        if h != ident:
                            self._extend(h)
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break

    def order(self) -> int:
        n = 1
        for lev in self.levels:
            n *= len(lev.orbit)
        return n

    def contains(self, g: Perm) -> bool:
        return self._sift(tuple(g)) == self.identity

    def is_transitive(self) -> bool:
        return len(self._orbit(0, self.generators)) == self.degree

    def is_two_transitive(self) -> bool:
        pairs = {(0, 1)}
        queue = [(0, 1)]
        while queue:
            x, y = queue.pop()
            for g in self.generators:
                pr = (g[x], g[y])
                if pr not in pairs:
                    pairs.add(pr)
                    queue.append(pr)
        return len(pairs) == self.degree * (self.degree - 1)


def closure_order(gens: Sequence[Perm]) -> int:
    """Order by brute-force closure; only for small groups."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


# -- local groups ----------------------------------------------------------------

Kind = Literal["PGL", "PSL"]


def pgl_order(q: int) -> int:
    return (q + 1) * q * (q - 1)


def local_groups(data: VHData) -> tuple[PermGroup, PermGroup]:
    """P_A = ⟨σ_η on A⟩ and P_B = ⟨σ_ξ on B⟩."""
    PA = PermGroup(len(data.A), [tuple(p) for p in data.sigmaA])
    PB = PermGroup(len(data.B), [tuple(p) for p in data.sigmaB])
    return PA, PB


def predict_local_groups(cfg: Config) -> tuple[Kind, Kind]:
    """Euler criterion: P_A is PGL iff 1-τ is a non-square, P_B iff τ is."""
    one_minus = cfg.F.one - cfg.tau
    return (
        "PSL" if one_minus.is_square() else "PGL",
        "PSL" if cfg.tau.is_square() else "PGL",
    )


def kind_from_order(q: int, order: int) -> Kind:
    if order == pgl_order(q):
        return "PGL"
    if 2 * order == pgl_order(q):
        return "PSL"
    raise ValueError(f"order {order} is neither |PGL_2(F_{q})| nor half of it")


def det_classes(data: VHData) -> tuple[Kind, Kind]:
    """PGL/PSL from the determinant of the linear lift w -> w - ω·conj(w).

    For σ_η acting on A the lift uses ω = η/μ with μ in A, and symmetrically
    for σ_ξ acting on B.  A non-square determinant means the generated
    group is not contained in PSL.
    """
    dA = sigma_lift_det(data.B[0] / data.A[0])
    dB = sigma_lift_det(data.A[0] / data.B[0])
    return ("PSL" if dA.is_square() else "PGL", "PSL" if dB.is_square() else "PGL")


# -- isomorphisms ----------------------------------------------------------------


@dataclass
class GeneratorIso:
    """Generator map from Γ_source to Γ_target.

    ``mapA[ξ]`` and ``mapB[η]`` are (class, element) pairs in the target;
    ``flip`` is True when A is sent into B and B into A.
    """

    source: Config
    target: Config
    mapA: dict[QuadExtElem, tuple[str, QuadExtElem]]
    mapB: dict[QuadExtElem, tuple[str, QuadExtElem]]
    label: str = ""

    @property
    def flip(self) -> bool:
        return next(iter(self.mapA.values()))[0] == "B"

    def image(self, cls: str, w: QuadExtElem) -> tuple[str, QuadExtElem]:
        return (self.mapA if cls == "A" else self.mapB)[w]

    def then(self, other: "GeneratorIso") -> "GeneratorIso":
        """self followed by other."""
        mA = {x: other.image(*self.mapA[x]) for x in self.mapA}
        mB = {y: other.image(*self.mapB[y]) for y in self.mapB}
        return GeneratorIso(self.source, other.target, mA, mB, f"{self.label}; {other.label}")


def _identity_iso(cfg: Config) -> GeneratorIso:
    d = build(cfg)
    return GeneratorIso(cfg, cfg, {x: ("A", x) for x in d.A}, {y: ("B", y) for y in d.B}, "id")


def iso_one_minus_tau(cfg: Config) -> GeneratorIso:
    """A_τ -> B_{1-τ}, B_τ -> A_{1-τ} by multiplication with ζ."""
    F = cfg.F
    target = make_config(F, F.one - cfg.tau, c=cfg.c)
    d = build(cfg)
    z = cfg.zeta
    mA = {x: ("B", z * x) for x in d.A}
    mB = {y: ("A", z * y) for y in d.B}
    return GeneratorIso(cfg, target, mA, mB, "1-tau")


def iso_frobenius(cfg: Config) -> GeneratorIso:
    """A_τ -> A_{τ^p}, B_τ -> B_{τ^p} by w -> w^p / c^{(p-1)/2}."""
    F = cfg.F
    p = F.p
    target = make_config(F, cfg.tau**p, c=cfg.c)
    d = build(cfg)
    scale = cfg.K.make(cfg.c ** ((p - 1) // 2)).inverse()
    mA = {x: ("A", x**p * scale) for x in d.A}
    mB = {y: ("B", y**p * scale) for y in d.B}
    return GeneratorIso(cfg, target, mA, mB, "frobenius")


def verify_iso(iso: GeneratorIso) -> None:
    """Raise TransportFailure unless the map is a bijection on generators that
    commutes with inversion and sends every relation of the source to a
    relation of the target."""
    src, tgt = build(iso.source), build(iso.target)
    flip = iso.flip
    A_img = [iso.mapA[x] for x in src.A]
    B_img = [iso.mapB[y] for y in src.B]
    want_A, want_B = ("B", "A") if flip else ("A", "B")
    if any(c != want_A for c, _ in A_img) or any(c != want_B for c, _ in B_img):
        raise TransportFailure("generator classes are not mapped uniformly")
    tA, tB = (tgt.B, tgt.A) if flip else (tgt.A, tgt.B)
    if {w for _, w in A_img} != set(tA) or {w for _, w in B_img} != set(tB):
        raise TransportFailure("generator map is not a bijection onto the target")
    for x in src.A:
        if iso.mapA[-x][1] != -iso.mapA[x][1]:
            raise TransportFailure("inversion not respected", witness=x)
    for y in src.B:
        if iso.mapB[-y][1] != -iso.mapB[y][1]:
            raise TransportFailure("inversion not respected", witness=y)
    for xi in src.A:
        for eta in src.B:
            lam, mu = solve_forward(xi, eta)
            fx, fe = iso.mapA[xi][1], iso.mapB[eta][1]
            fl, fm = iso.mapB[lam][1], iso.mapA[mu][1]
            if flip:
                # a_ξ b_η = b_λ a_μ  becomes  b'_{fξ} a'_{fη} = a'_{fλ} b'_{fμ}
                ok = solve_forward(fl, fm) == (fx, fe)
            else:
                ok = solve_forward(fx, fe) == (fl, fm)
            if not ok:
                raise TransportFailure(
                    f"relation ({xi!r}, {eta!r}, {lam!r}, {mu!r}) is not transported",
                    witness=(xi, eta, lam, mu),
                )


@dataclass(frozen=True)
class Certificate:
    k: int
    flip: bool

    def describe(self) -> str:
        power = f"tau^(p^{self.k})" if self.k else "tau"
        return f"tau' = 1 - {power}" if self.flip else f"tau' = {power}"


def frobenius_power(tau: GFElem, k: int) -> GFElem:
    return tau ** (tau.field.p**k)


def commensurable(F: FieldSpec, tau, tau2) -> tuple[bool, Certificate | None]:
    """Whether τ' lies in the Galois orbit of τ or of 1 - τ, with the witness."""
    tau = tau if isinstance(tau, GFElem) else F(tau)
    tau2 = tau2 if isinstance(tau2, GFElem) else F(tau2)
    for k in range(2 * F.r):
        t = frobenius_power(tau, k)
        if t == tau2:
            return True, Certificate(k, False)
        if F.one - t == tau2:
            return True, Certificate(k, True)
    return False, None


def iso_from_certificate(cfg: Config, cert: Certificate) -> GeneratorIso:
    """Compose k Frobenius steps and an optional flip into one generator map."""
    iso = _identity_iso(cfg)
    cur = cfg
    for _ in range(cert.k):
        step = iso_frobenius(cur)
        iso = iso.then(step)
        cur = step.target
    if cert.flip:
        iso = iso.then(iso_one_minus_tau(cur))
    return iso
