"""Finite presentations of Γ_τ, Λ'_τ and Λ_τ, abelianizations and uniform quotients.

Words are tuples of signed 1-based generator indices: ``k`` is the k-th
generator, ``-k`` its inverse.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import InternalNonunit, SchemaViolation
from .gf import QuadExtElem
from .quaternion import Config, QuatElem, alpha0, beta0, qconj, relation_check
from .square_complex import build_sab, canonical_square
from .vh_core import VHData, sigma, solve_forward

Word = tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _relator_key(w: Word):
    return (len(w), w)


@dataclass
class Presentation:
    generators: list[str]
    relators: list[Word]
    name: str = ""

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise SchemaViolation("duplicate generator names")
        for r in self.relators:
            if any(not isinstance(x, int) or x == 0 or abs(x) > n for x in r):
                raise SchemaViolation(f"relator {r} references an unknown generator")
        self.relators = sorted((tuple(r) for r in self.relators), key=_relator_key)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self.generators == other.generators and self.relators == other.relators

    def word_str(self, w: Word) -> str:
        return " ".join(
            self.generators[x - 1] if x > 0 else self.generators[-x - 1] + "^-1" for x in w
        )


# -- Γ ----------------------------------------------------------------------------


def _gamma_gens(data: VHData) -> tuple[list[str], int]:
    n = len(data.A)
    return [f"a{i}" for i in range(n)] + [f"b{j}" for j in range(len(data.B))], n


def present_gamma(data: VHData, dedup: bool = True) -> Presentation:
    """Generators a_ξ, b_η; inverse pairs and four-term relators a_ξ b_η a_μ^-1 b_λ^-1.

    With ``dedup`` one relator is kept per square of S_{A,B}: the one coming
    from the least (ξ, η) in conic order among the four equivalent relations.
    """
    gens, nA = _gamma_gens(data)
    rels: list[Word] = []
    for inv, off in ((data.invA, 0), (data.invB, nA)):
        for i, k in enumerate(inv):
            if i < k:
                rels.append((off + i + 1, off + k + 1))
    seen = set()
    if dedup:
        cx = build_sab(data)
        Al, Bl = data.A_labels, data.B_labels
    for i, j, lj, mi in data.relations():
        if dedup:
            word = (Al[i], Bl[j], cx.inv[Al[mi]], cx.inv[Bl[lj]])
            key = canonical_square(word, cx.inv, cx.rank)
            if key in seen:
                continue
            seen.add(key)
        rels.append((i + 1, nA + j + 1, -(mi + 1), -(nA + lj + 1)))
    return Presentation(gens, rels, "Gamma")


def gamma_relator_quadruples(data: VHData, p: Presentation):
    """(ξ, η, λ, μ) for every four-term relator of a Γ presentation."""
    nA = len(data.A)
    for r in p.relators:
        if len(r) == 4:
            i, j, m, l = r[0] - 1, r[1] - nA - 1, -r[2] - 1, -r[3] - nA - 1
            yield data.A[i], data.B[j], data.B[l], data.A[m]


# -- (⋆) and the dihedral extensions ---------------------------------------------


def pe_table(cfg: Config) -> dict[QuadExtElem, int]:
    """℘(δ^j) -> j for j in 0..q; ℘ separates the classes of F_{q^2}*/F_q*."""
    table = {}
    for j in range(cfg.q + 1):
        table[(cfg.delta**j).pe()] = j
    if len(table) != cfg.q + 1:
        raise InternalNonunit("delta does not generate F_{q^2}*/F_q*")
    return table


def class_index(cfg: Config, x: QuadExtElem, table=None) -> int:
    """The j in 0..q with x ≡ δ^j mod F_q*."""
    if not x:
        raise InternalNonunit("zero has no class in F_{q^2}*/F_q*")
    table = table or pe_table(cfg)
    try:
        return table[x.pe()]
    except KeyError:
        raise InternalNonunit(f"no delta-power class for {x!r}") from None


def star_solve(cfg: Config, i: int, l: int, table=None) -> tuple[int, int]:
    """(j, k) with δ^j ≡ (δ^l − ζ℘(δ^i)δ^{ql})Z and δ^k ≡ (δ^i − ζ^{-1}℘(δ^l)δ^{qi})Z."""
    table = table or pe_table(cfg)
    q, dl, di, z = cfg.q, cfg.delta**l, cfg.delta**i, cfg.zeta
    Z = cfg.K.Z
    j = class_index(cfg, (dl - z * di.pe() * dl**q) * Z, table)
    k = class_index(cfg, (di - z.inverse() * dl.pe() * di**q) * Z, table)
    return j, k


def star_solve_intro(cfg: Config, i: int, l: int, table=None) -> tuple[int, int]:
    """The same system written with δ^{(q+1)/2} in place of Z, solved for (j, k)."""
    table = table or pe_table(cfg)
    q, delta, z = cfg.q, cfg.delta, cfg.zeta
    half = delta ** ((q + 1) // 2)
    u = z * delta ** ((i - l) * (1 - q))
    jl = class_index(cfg, (1 - u) * half, table)
    ki = class_index(cfg, (1 - u.inverse()) * half, table)
    return (jl + l) % (q + 1), (ki + i) % (q + 1)


def star_dictionary(cfg: Config, i: int, j: int, k: int, l: int):
    """(ξ, η, λ, μ) with a_ξ b_η = b_λ a_μ matching the (i, j, k, l) relator."""
    Z, z, delta = cfg.K.Z, cfg.zeta, cfg.delta
    xi = Z * (delta**i).pe()
    eta = -Z * (delta**j).pe() / z
    lam = Z * (delta**l).pe() / z
    mu = -Z * (delta**k).pe()
    return xi, eta, lam, mu


def star_check(cfg: Config, i: int, l: int, table=None) -> dict[str, bool]:
    """Cross-check one (i, l) against the Γ solvers and the alternative formulation."""
    j, k = star_solve(cfg, i, l, table)
    xi, eta, lam, mu = star_dictionary(cfg, i, j, k, l)
    return {
        "forward_solver": solve_forward(xi, eta) == (lam, mu),
        "sigma_maps": sigma(xi, lam) == eta and sigma(lam, xi) == mu,
        "quaternion": relation_check(cfg, xi, eta, lam, mu),
        "intro_form": star_solve_intro(cfg, i, l, table) == (j, k),
    }


def _dpow(e: int, d: int = 1) -> Word:
    return (d,) * e if e >= 0 else (-d,) * (-e)


def _four_term(i, j, k, l, d, a, b) -> Word:
    # X Y = W V  with X = d^i a d^-i, Y = d^j b d^-j, W = d^l b d^-l, V = d^k a d^-k
    # gives the relator X Y V^-1 W^-1
    w = (
        _dpow(i, d) + (a,) + _dpow(-i, d)
        + _dpow(j, d) + (b,) + _dpow(-j, d)
        + _dpow(k, d) + (-a,) + _dpow(-k, d)
        + _dpow(l, d) + (-b,) + _dpow(-l, d)
    )
    return free_reduce(w)


def star_quadruples(cfg: Config) -> list[tuple[int, int, int, int]]:
    table = pe_table(cfg)
    out = []
    for i in range(cfg.q + 1):
        for l in range(cfg.q + 1):
            j, k = star_solve(cfg, i, l, table)
            out.append((i, j, k, l))
    return out


def zeta_exponent(cfg: Config) -> int:
    """e with δ^e ≡ ζ mod F_q*."""
    return class_index(cfg, cfg.zeta)


def present_lambda_prime(cfg: Config) -> Presentation:
    q = cfg.q
    d, a, b = 1, 2, 3
    rels = [(d,) * (q + 1), (a, a), (b, b)]
    rels += [_four_term(i, j, k, l, d, a, b) for i, j, k, l in star_quadruples(cfg)]
    return Presentation(["d", "a", "b"], rels, "LambdaPrime")


def present_lambda(cfg: Config) -> Presentation:
    q = cfg.q
    d, s, a, b = 1, 2, 3, 4
    e = zeta_exponent(cfg)
    sdb = (s,) + _dpow(e, d) + (b,)
    rels = [
        (d,) * (q + 1),
        (s, s),
        (d, s, d, s),
        (a, a),
        (b, b),
        (s, a, s, a),
        sdb + sdb,
    ]
    rels += [_four_term(i, j, k, l, d, a, b) for i, j, k, l in star_quadruples(cfg)]
    return Presentation(["d", "s", "a", "b"], rels, "Lambda")


def evaluate_in_D(cfg: Config, p: Presentation, word: Word) -> QuatElem:
    """Image of a word under d -> δ, s -> F, a -> γ_Z, b -> γ_{Z/ζ} (up to K*)."""
    images = {
        "d": QuatElem.from_quad(cfg, cfg.delta),
        "s": QuatElem.F(cfg),
        "a": alpha0(cfg),
        "b": beta0(cfg),
    }
    acc = QuatElem.one(cfg)
    for x in word:
        g = images[p.generators[abs(x) - 1]]
        acc = acc * (g if x > 0 else qconj(g))
    return acc


def certify_in_D(cfg: Config, p: Presentation) -> list[Word]:
    """Relators whose image in D is not central (empty when all hold)."""
    return [r for r in p.relators if not evaluate_in_D(cfg, p, r).is_central()]


# -- abelianization ---------------------------------------------------------------


def exponent_matrix(p: Presentation) -> list[list[int]]:
    n = len(p.generators)
    rows = []
    for r in p.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_diagonal(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nonnegative Smith normal form diagonal of an integer matrix.

    The result has one entry per column; zeros are free rank.
    """
    A = [list(r) for r in M]
    ncols = ncols if ncols is not None else (len(A[0]) if A else 0)
    rows = len(A)
    diag: list[int] = []
    t = 0
    while t < min(rows, ncols):
        # pivot: smallest nonzero magnitude in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, ncols):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                f = A[i][t] // p
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                f = A[t][j] // p
                if f:
                    for row in A:
                        row[j] -= f * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # divisibility: fold in any entry of the block not divisible by p
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, ncols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, ncols):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (ncols - len(diag))
    return diag


def abelianization(p: Presentation) -> list[int]:
    """Elementary divisors of the abelianization, unit divisors dropped, 0 = free rank."""
    return [d for d in smith_diagonal(exponent_matrix(p), len(p.generators)) if d != 1]


def admits_z2p_squared(divisors: Sequence[int], p: int) -> bool:
    """Whether ⊕ Z/d_i surjects onto Z/2p × Z/2p (a zero divisor is divisible by anything)."""
    evens = sum(1 for d in divisors if d % 2 == 0)
    p_parts = sum(1 for d in divisors if d % p == 0)
    return evens >= 2 and p_parts >= 2


# -- uniform quotients ------------------------------------------------------------


def _fp_rank(vectors: list[list[int]], p: int) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass
class UniformQuotientReport:
    additive_kills_relators: bool
    additive_subgroup_order: int
    additive_full: bool
    parity_kills_relators: bool
    parity_surjective: bool

    @property
    def ok(self) -> bool:
        return self.additive_kills_relators and self.parity_kills_relators and self.parity_surjective


def uniform_quotients_check(data: VHData, p: Presentation | None = None) -> UniformQuotientReport:
    """Check a_ξ -> ξ into (F_q[Z], +) and a_ξ -> (1,0), b_η -> (0,1) into (Z/2)^2."""
    p = p or present_gamma(data, dedup=False)
    K = data.cfg.K
    F = data.cfg.F
    images = list(data.A) + list(data.B)
    add_ok = True
    par_ok = True
    nA = len(data.A)
    for r in p.relators:
        total = K.zero
        par = [0, 0]
        for x in r:
            g = images[abs(x) - 1]
            total = total + g if x > 0 else total - g
            par[0 if abs(x) <= nA else 1] += 1
        add_ok &= total == K.zero
        par_ok &= par[0] % 2 == 0 and par[1] % 2 == 0
    vecs = [list(F.coeffs(g.w0.value)) + list(F.coeffs(g.w1.value)) for g in images]
    rank = _fp_rank(vecs, F.p)
    return UniformQuotientReport(
        additive_kills_relators=add_ok,
        additive_subgroup_order=F.p**rank,
        additive_full=rank == 2 * F.r,
        parity_kills_relators=par_ok,
        parity_surjective=bool(data.A) and bool(data.B),
    )


# -- text formats -----------------------------------------------------------------


def export_text(p: Presentation, fmt: str = "plain") -> str:
    if fmt == "json":
        return json.dumps(
            {"name": p.name, "generators": p.generators, "relators": [list(r) for r in p.relators]},
            indent=None,
            sort_keys=True,
        )
    if fmt == "plain":
        lines = ["generators: " + " ".join(p.generators)]
        lines += ["relator: " + p.word_str(r) for r in p.relators]
        return "\n".join(lines) + "\n"
    if fmt == "gap":
        names = ", ".join(f'"{g}"' for g in p.generators)
        lines = [f"F := FreeGroup({names});;"]
        lines += [f"{g} := F.{k + 1};;" for k, g in enumerate(p.generators)]
        terms = []
        for r in p.relators:
            terms.append(
                "*".join(
                    p.generators[x - 1] if x > 0 else f"{p.generators[-x - 1]}^-1" for x in r
                )
                or "One(F)"
            )
        lines.append("rels := [" + ", ".join(terms) + "];;")
        lines.append("G := F / rels;;")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


_TOKEN = re.compile(r"^(\w+)(\^-1)?$")


def import_text(text: str, fmt: str = "plain") -> Presentation:
    if fmt == "json":
        try:
            doc = json.loads(text)
            gens, rels = doc["generators"], doc["relators"]
        except (ValueError, KeyError, TypeError) as exc:
            raise SchemaViolation(f"bad presentation document: {exc}") from None
        return Presentation(list(gens), [tuple(r) for r in rels], doc.get("name", ""))
    if fmt == "plain":
        gens: list[str] = []
        rels = []
        for line in text.splitlines():
            if not line.strip():
                continue
            tag, _, body = line.partition(":")
            if tag == "generators":
                gens = body.split()
            elif tag == "relator":
                index = {g: k + 1 for k, g in enumerate(gens)}
                word = []
                for tok in body.split():
                    m = _TOKEN.match(tok)
                    if not m or m.group(1) not in index:
                        raise SchemaViolation(f"bad token {tok!r}")
                    k = index[m.group(1)]
                    word.append(-k if m.group(2) else k)
                rels.append(tuple(word))
            else:
                raise SchemaViolation(f"unexpected line {line!r}")
        return Presentation(gens, rels)
    raise ValueError(f"cannot import format {fmt!r}")
