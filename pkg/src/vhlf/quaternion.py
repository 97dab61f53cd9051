"""The quaternion algebra D = (c, t(t-1)) over K = F_q(t) and its two splittings.

Elements are written on the basis 1, Z, F, ZF with Z^2 = c, F^2 = t(t-1) and
ZF = -FZ.  Group elements of D*/K* are represented by any lift; projective
equality is decided by :func:`proj_eq`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidParameter, IntegralityFailure, PoleAtOneError, WrongNormError
from .funcfield import INFINITY, Mat2, Place, RatFunc, det2, ord_at, substitute
from .gf import (
    FieldSpec,
    GFElem,
    QuadExt,
    QuadExtElem,
    conic_points,
    find_generator,
    find_nonsquare,
    multiplicative_order,
    quad_ext,
)


@dataclass(frozen=True)
class Config:
    """Parameters of one lattice: field, non-square c, τ, generator δ, and ζ."""

    F: FieldSpec
    c: GFElem
    tau: GFElem
    delta: QuadExtElem
    zeta: QuadExtElem

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def K(self) -> QuadExt:
        return self.delta.ext

    @property
    def norm_A(self) -> GFElem:
        """-c, the norm defining N_c."""
        return -self.c

    @property
    def norm_B(self) -> GFElem:
        """cτ/(1-τ), the norm defining M_τ."""
        return self.c * self.tau / (1 - self.tau)

    @cached_property
    def t(self) -> RatFunc:
        return RatFunc.gen(self.F, "t")

    @cached_property
    def d(self) -> RatFunc:
        """F^2 = t(t-1)."""
        return self.t * (self.t - 1)

    def const(self, a, var: str = "t") -> RatFunc:
        return RatFunc.const(self.F, var, a)

    def __repr__(self):
        return f"Config(q={self.q}, c={self.c!r}, tau={self.tau!r}, delta={self.delta!r}, zeta={self.zeta!r})"


def make_config(F: FieldSpec, tau, c=None, delta=None, zeta=None) -> Config:
    """Build and validate a Config; unspecified choices take their canonical value.

    ``tau`` and ``c`` may be GFElem or integer encodings, ``delta`` and
    ``zeta`` QuadExtElem or integer encodings ``e0 + e1*q``.
    """

    def as_gf(x, name):
        if isinstance(x, GFElem):
            return x
        if not isinstance(x, int) or not 0 <= x < F.q:
            raise InvalidParameter(f"{name} must be an element encoding in [0, {F.q})")
        return F(x)

    tau = as_gf(tau, "tau")
    if not tau or tau == 1:
        raise InvalidParameter("tau must lie in F_q* minus {1}")
    c = find_nonsquare(F) if c is None else as_gf(c, "c")
    if not c or c.is_square():
        raise InvalidParameter(f"c = {c!r} is not a non-square")
    K = quad_ext(F, c)

    def as_qe(x, name):
        if isinstance(x, QuadExtElem):
            return K.make(x.w0, x.w1)
        if not isinstance(x, int) or not 0 <= x < F.q**2:
            raise InvalidParameter(f"{name} must be an encoding in [0, {F.q ** 2})")
        return K(x)

    delta = find_generator(F, c) if delta is None else as_qe(delta, "delta")
    if not delta or multiplicative_order(delta) != F.q**2 - 1:
        raise InvalidParameter(f"delta = {delta!r} does not generate F_q[Z]*")
    zeta_norm = (tau - 1) / tau
    if zeta is None:
        zeta = conic_points(F, c, zeta_norm)[0]
    else:
        zeta = as_qe(zeta, "zeta")
        if zeta.norm() != zeta_norm:
            raise InvalidParameter(f"zeta must have norm (tau-1)/tau = {zeta_norm!r}")
    return Config(F, c, tau, delta, zeta)


class QuatElem:
    """x0 + x1 Z + x2 F + x3 ZF with coordinates in F_q(t)."""

    __slots__ = ("cfg", "x")

    def __init__(self, cfg: Config, x0, x1=0, x2=0, x3=0):
        self.cfg = cfg
        self.x = tuple(v if isinstance(v, RatFunc) else cfg.const(v) for v in (x0, x1, x2, x3))

    @classmethod
    def from_quad(cls, cfg: Config, w: QuadExtElem) -> "QuatElem":
        """Embed w0 + w1 Z from the constant subfield F_q[Z]."""
        return cls(cfg, w.w0, w.w1)

    @classmethod
    def Z(cls, cfg):
        return cls(cfg, 0, 1)

    @classmethod
    def F(cls, cfg):
        return cls(cfg, 0, 0, 1)

    @classmethod
    def one(cls, cfg):
        return cls(cfg, 1)

    def __add__(self, o: "QuatElem") -> "QuatElem":
        return QuatElem(self.cfg, *(a + b for a, b in zip(self.x, o.x)))

    def __sub__(self, o: "QuatElem") -> "QuatElem":
        return QuatElem(self.cfg, *(a - b for a, b in zip(self.x, o.x)))

    def __neg__(self) -> "QuatElem":
        return QuatElem(self.cfg, *(-a for a in self.x))

    def __mul__(self, o) -> "QuatElem":
        if not isinstance(o, QuatElem):
            return self.scale(o)
        return qmul(self, o)

    def __rmul__(self, f) -> "QuatElem":
        return self.scale(f)

    def scale(self, f) -> "QuatElem":
        return QuatElem(self.cfg, *(a * f for a in self.x))

    def __pow__(self, n: int) -> "QuatElem":
        if n < 0:
            raise ValueError("use qconj for projective inverses")
        acc = QuatElem.one(self.cfg)
        for _ in range(n):
            acc = acc * self
        return acc

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.x)

    def is_central(self) -> bool:
        """Lies in the center K (and is nonzero): trivial in D*/K*."""
        return not self.x[0].is_zero() and all(a.is_zero() for a in self.x[1:])

    def __eq__(self, other):
        return isinstance(other, QuatElem) and self.x == other.x

    def __hash__(self):
        return hash(self.x)

    def __repr__(self):
        names = ("", "Z", "F", "ZF")
        parts = [f"({a!r}){n}" for a, n in zip(self.x, names) if not a.is_zero()]
        return " + ".join(parts) or "0"


def qmul(x: QuatElem, y: QuatElem) -> QuatElem:
    cfg = x.cfg
    c, d = cfg.c, cfg.d
    x0, x1, x2, x3 = x.x
    y0, y1, y2, y3 = y.x
    cd = d * c
    return QuatElem(
        cfg,
        x0 * y0 + x1 * y1 * c + x2 * y2 * d - x3 * y3 * cd,
        x0 * y1 + x1 * y0 - x2 * y3 * d + x3 * y2 * d,
        x0 * y2 + x2 * y0 + x1 * y3 * c - x3 * y1 * c,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def qconj(x: QuatElem) -> QuatElem:
    x0, x1, x2, x3 = x.x
    return QuatElem(x.cfg, x0, -x1, -x2, -x3)


def nrd(x: QuatElem) -> RatFunc:
    c, d = x.cfg.c, x.cfg.d
    x0, x1, x2, x3 = x.x
    return x0 * x0 - x1 * x1 * c - x2 * x2 * d + x3 * x3 * (d * c)


def trd(x: QuatElem) -> RatFunc:
    return x.x[0] + x.x[0]


def proj_eq(x: QuatElem, y: QuatElem) -> bool:
    """x = f*y for some f in K*."""
    pairs = list(zip(x.x, y.x))
    ref = next(((a, b) for a, b in pairs if not b.is_zero()), None)
    if ref is None or ref[0].is_zero():
        return False
    a0, b0 = ref
    return all(a * b0 == a0 * b for a, b in pairs)


# -- the distinguished elements ------------------------------------------------


def make_gamma(cfg: Config, xi: QuadExtElem) -> QuatElem:
    """γ_ξ = tZ + ξF."""
    return QuatElem(cfg, 0, cfg.t, xi.w0, xi.w1)


def make_alpha(cfg: Config, xi: QuadExtElem) -> QuatElem:
    """α_ξ = γ_ξ Z for ξ of norm -c."""
    if xi.norm() != cfg.norm_A:
        raise WrongNormError(f"{xi!r} does not have norm -c")
    return make_gamma(cfg, xi) * QuatElem.Z(cfg)


def make_beta(cfg: Config, eta: QuadExtElem) -> QuatElem:
    """β_η = γ_η Z for η of norm cτ/(1-τ)."""
    if eta.norm() != cfg.norm_B:
        raise WrongNormError(f"{eta!r} does not have norm c*tau/(1-tau)")
    return make_gamma(cfg, eta) * QuatElem.Z(cfg)


def gamma_nrd_formula(cfg: Config, xi: QuadExtElem) -> RatFunc:
    """t(N(ξ) - (N(ξ)+c)t), the closed form of nrd(γ_ξ)."""
    n = xi.norm()
    return cfg.t * (cfg.const(n) - cfg.t * (n + cfg.c))


def alpha_nrd_formula(cfg: Config) -> RatFunc:
    return cfg.t * (cfg.c * cfg.c)


def beta_nrd_formula(cfg: Config) -> RatFunc:
    return (cfg.t - cfg.tau) * cfg.t * (cfg.c * cfg.c / (1 - cfg.tau))


def relation_check(cfg: Config, xi, eta, lam, mu) -> bool:
    """α_ξ β_η = β_λ α_μ exactly in D."""
    lhs = make_alpha(cfg, xi) * make_beta(cfg, eta)
    rhs = make_beta(cfg, lam) * make_alpha(cfg, mu)
    return lhs == rhs


def is_two_torsion(x: QuatElem) -> bool:
    """The image of x in D*/K* squares to the identity."""
    return (x * x).is_central()


# -- splittings ------------------------------------------------------------------


def _z_param(cfg: Config) -> RatFunc:
    """t = 1/(z(2-z))."""
    z = RatFunc.gen(cfg.F, "z")
    return (z * (2 - z)).inverse()


def _y_param(cfg: Config) -> RatFunc:
    """t = τ/(τ - (τ-1)(y-1)^2)."""
    y = RatFunc.gen(cfg.F, "y")
    tau = cfg.tau
    return RatFunc.const(cfg.F, "y", tau) / (tau - (y - 1) * (y - 1) * (tau - 1))


class Splitting:
    """An explicit embedding D -> M_2(F_q(v)) given by images of Z and F."""

    def __init__(self, cfg: Config, var: str, t_expr: RatFunc, rho_Z: Mat2, rho_F: Mat2):
        self.cfg = cfg
        self.var = var
        self.t_expr = t_expr
        self.basis = (
            Mat2.identity(cfg.F, var),
            rho_Z,
            rho_F,
            rho_Z * rho_F,
        )

    def sub(self, f: RatFunc) -> RatFunc:
        return substitute(f, self.t_expr)

    def __call__(self, x: QuatElem) -> Mat2:
        out = None
        for coord, B in zip(x.x, self.basis):
            if coord.is_zero():
                continue
            term = B.scale(self.sub(coord))
            out = term if out is None else out + term
        if out is None:
            zero = RatFunc.const(self.cfg.F, self.var, 0)
            return Mat2(zero, zero, zero, zero)
        return out


def _const_mat(cfg, var, a, b, c, d) -> Mat2:
    return Mat2(*(RatFunc.const(cfg.F, var, v) for v in (a, b, c, d)))


def splitting_z(cfg: Config) -> Splitting:
    """ρ_z: Z -> [[0,c],[1,0]], F -> diag(t(z-1), t(1-z)), t = 1/(z(2-z))."""
    t = _z_param(cfg)
    z = RatFunc.gen(cfg.F, "z")
    zero = RatFunc.const(cfg.F, "z", 0)
    rho_F = Mat2(t * (z - 1), zero, zero, t * (1 - z))
    return Splitting(cfg, "z", t, _const_mat(cfg, "z", 0, cfg.c, 1, 0), rho_F)


def splitting_y(cfg: Config) -> Splitting:
    """ρ_y: Z -> [[0,c],[1,0]], F -> t(y-1)[[ζ0, -cζ1],[ζ1, -ζ0]]."""
    t = _y_param(cfg)
    y = RatFunc.gen(cfg.F, "y")
    z0, z1 = cfg.zeta.w0, cfg.zeta.w1
    s = t * (y - 1)
    rho_F = Mat2(s * z0, s * (-cfg.c * z1), s * z1, s * (-z0))
    return Splitting(cfg, "y", t, _const_mat(cfg, "y", 0, cfg.c, 1, 0), rho_F)


def rho_z(cfg: Config, x: QuatElem) -> Mat2:
    return splitting_z(cfg)(x)


def rho_y(cfg: Config, x: QuatElem) -> Mat2:
    return splitting_y(cfg)(x)


ORIGIN = Place(0)


def _integral_det_order(split: Splitting, x: QuatElem) -> int:
    M = split(x)
    for entry in M.entries():
        if ord_at(entry, ORIGIN) < 0:
            raise IntegralityFailure(f"entry {entry!r} of rho_{split.var} has a pole at {split.var}=0")
    return int(ord_at(det2(M), ORIGIN))


def alpha_tilde(cfg: Config, xi: QuadExtElem) -> QuatElem:
    """α_ξ / t."""
    return make_alpha(cfg, xi).scale(cfg.t.inverse())


def beta_tilde(cfg: Config, eta: QuadExtElem) -> QuatElem:
    """ζ β_η / t."""
    zeta = QuatElem.from_quad(cfg, cfg.zeta)
    return (zeta * make_beta(cfg, eta)).scale(cfg.t.inverse())


def neighbour_valuations(cfg: Config, w: QuadExtElem) -> tuple[int, int]:
    """(ord_{z=0} det ρ_z, ord_{y=0} det ρ_y) of the normalized representative.

    ``w`` of norm -c selects α̃_w, of norm cτ/(1-τ) selects β̃_w.  All matrix
    entries are checked to be integral at z=0 and y=0.
    """
    if w.norm() == cfg.norm_A:
        x = alpha_tilde(cfg, w)
    elif w.norm() == cfg.norm_B:
        x = beta_tilde(cfg, w)
    else:
        raise WrongNormError(f"{w!r} lies in neither N_c nor M_tau")
    return (
        _integral_det_order(splitting_z(cfg), x),
        _integral_det_order(splitting_y(cfg), x),
    )


# -- dihedral group and residues -------------------------------------------------


def alpha0(cfg: Config) -> QuatElem:
    """α = γ_Z = tZ + ZF, the lift of the generator a."""
    return make_gamma(cfg, cfg.K.Z)


def beta0(cfg: Config) -> QuatElem:
    """β = γ_{Z/ζ}, the lift of the generator b."""
    return make_gamma(cfg, cfg.K.Z / cfg.zeta)


def dihedral_relations(cfg: Config) -> dict[str, bool]:
    """Centrality in D of each torsion relator of the dihedral extension."""
    delta = QuatElem.from_quad(cfg, cfg.delta)
    F = QuatElem.F(cfg)
    zeta = QuatElem.from_quad(cfg, cfg.zeta)
    a, b = alpha0(cfg), beta0(cfg)
    q = cfg.q
    return {
        "d^(q+1)": (delta ** (q + 1)).is_central(),
        "s^2": (F * F).is_central(),
        "(ds)^2": ((delta * F) ** 2).is_central(),
        "a^2": (a * a).is_central(),
        "b^2": (b * b).is_central(),
        "(sa)^2": ((F * a) ** 2).is_central(),
        "(s zeta b)^2": ((F * zeta * b) ** 2).is_central(),
    }


def dihedral_relations_check(cfg: Config) -> bool:
    return all(dihedral_relations(cfg).values())


def mod_F_image(cfg: Config, x: QuatElem) -> QuadExtElem:
    """Reduction Z -> Z, F -> 0, t -> 1 into F_q[Z]."""
    one = cfg.F.one.value
    vals = []
    for coord in x.x[:2]:
        if ord_at(coord, Place(one)) < 0:
            raise PoleAtOneError(f"coordinate {coord!r} has a pole at t=1")
        vals.append(GFElem(cfg.F, coord(one)))
    return cfg.K.make(vals[0], vals[1])


def unit_outside(cfg: Config, f: RatFunc, allowed: set) -> bool:
    """f has order zero at every finite rational place outside ``allowed``.

    Only rational places are examined; callers use this on functions whose
    numerator and denominator split into linear factors.
    """
    for a in cfg.F.elements():
        if a.value in allowed:
            continue
        if ord_at(f, Place(a.value)) != 0:
            return False
    return True


# -- certificates ----------------------------------------------------------------


def basis(cfg: Config) -> tuple[QuatElem, ...]:
    Z, F = QuatElem.Z(cfg), QuatElem.F(cfg)
    return (QuatElem.one(cfg), Z, F, Z * F)


def splitting_is_homomorphism(split: Splitting) -> bool:
    """ρ respects products of basis elements and sends nrd to det."""
    B = basis(split.cfg)
    for x in B:
        if det2(split(x)) != split.sub(nrd(x)):
            return False
        for y in B:
            lhs, rhs = split(x * y), split(x) * split(y)
            if lhs.entries() != rhs.entries():
                return False
    return True


def quaternion_certificates(cfg: Config) -> dict[str, bool]:
    """Exact checks of the reduced-norm formulas, splittings and valuations."""
    A = conic_points(cfg.F, cfg.c, cfg.norm_A)
    B = conic_points(cfg.F, cfg.c, cfg.norm_B)
    return {
        "nrd_gamma": all(nrd(make_gamma(cfg, w)) == gamma_nrd_formula(cfg, w) for w in A + B),
        "nrd_alpha": all(nrd(make_alpha(cfg, x)) == alpha_nrd_formula(cfg) for x in A),
        "nrd_beta": all(nrd(make_beta(cfg, y)) == beta_nrd_formula(cfg) for y in B),
        "rho_z_homomorphism": splitting_is_homomorphism(splitting_z(cfg)),
        "rho_y_homomorphism": splitting_is_homomorphism(splitting_y(cfg)),
        "valuations_alpha": all(neighbour_valuations(cfg, x) == (1, 0) for x in A),
        "valuations_beta": all(neighbour_valuations(cfg, y) == (0, 1) for y in B),
    }
