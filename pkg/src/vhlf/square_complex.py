"""One-vertex square complexes built from a VH datum, their links and JSON form.

A square is stored as its boundary word ``(v, h, v', h')`` of oriented edge ids,
read around the square starting at a vertical edge.  The relation
``a b = b' a'`` gives the boundary word ``a b a'^-1 b'^-1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DedupMismatch, InvolutionBroken, SchemaViolation
from .vh_core import VHData, VHTable

Square = tuple[str, str, str, str]


@dataclass(frozen=True, eq=False)
class OneVertexComplex:
    vEdges: tuple[str, ...]
    hEdges: tuple[str, ...]
    inv: dict[str, str]
    squares: tuple[Square, ...]
    q: int | None = None
    tau: int | None = None
    c: int | None = None
    rank: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        order = list(self.vEdges) + list(self.hEdges)
        object.__setattr__(self, "rank", {e: k for k, e in enumerate(order)})

    def edge_class(self, e: str) -> str:
        return "V" if e in self.vEdges else "H"

    def __eq__(self, other):
        if not isinstance(other, OneVertexComplex):
            return NotImplemented
        return (
            self.vEdges == other.vEdges
            and self.hEdges == other.hEdges
            and self.inv == other.inv
            and self.squares == other.squares
            and (self.q, self.tau, self.c) == (other.q, other.tau, other.c)
        )


def dihedral_images(sq: Square, inv: dict[str, str]) -> list[Square]:
    """The rotations of the boundary word and of its inverse word."""
    rev = tuple(inv[e] for e in reversed(sq))
    out = []
    for w in (tuple(sq), rev):
        for k in range(4):
            out.append(w[k:] + w[:k])
    return out


def canonical_square(sq: Square, inv: dict[str, str], rank: dict[str, int]) -> Square:
    return min(dihedral_images(sq, inv), key=lambda w: [rank[e] for e in w])


def _check_involution(edges: Iterable[str], inv: dict[str, str]):
    edges = list(edges)
    for e in edges:
        if e not in inv:
            raise InvolutionBroken(f"edge {e} has no inverse")
        f = inv[e]
        if f == e:
            raise InvolutionBroken(f"edge {e} is its own inverse")
        if inv.get(f) != e:
            raise InvolutionBroken(f"inv is not an involution at {e}")
        if f not in edges:
            raise InvolutionBroken(f"inverse of {e} lies outside its class")


def build_sab(data: VHTable, strict: bool = True) -> OneVertexComplex:
    """The square complex S_{A,B}: one square per orbit of relations.

    With ``strict`` a failure of the 4-to-1 collapse of relations onto squares
    raises :class:`DedupMismatch`; otherwise the squares found are kept.
    """
    Al, Bl = list(data.A_labels), list(data.B_labels)
    inv = {Al[i]: Al[k] for i, k in enumerate(data.invA)}
    inv.update({Bl[j]: Bl[k] for j, k in enumerate(data.invB)})
    _check_involution(Al, inv)
    _check_involution(Bl, inv)
    rank = {e: k for k, e in enumerate(Al + Bl)}

    hits: Counter = Counter()
    for i, row in enumerate(data.forward):
        for j, (j2, i2) in enumerate(row):
            word = (Al[i], Bl[j], inv[Al[i2]], inv[Bl[j2]])
            hits[canonical_square(word, inv, rank)] += 1
    bad = {s: n for s, n in hits.items() if n != 4}
    if bad and strict:
        s, n = next(iter(bad.items()))
        raise DedupMismatch(f"square {s} arises from {n} relations instead of 4")
    cfg = getattr(data, "cfg", None)
    meta = {}
    if cfg is not None:
        meta = dict(q=cfg.q, tau=cfg.tau.value, c=cfg.c.value)
    return OneVertexComplex(tuple(Al), tuple(Bl), inv, tuple(sorted(hits, key=lambda w: [rank[e] for e in w])), **meta)


# -- links -------------------------------------------------------------------


@dataclass(frozen=True)
class Link:
    """Bipartite multigraph on oriented V-edges and H-edges of the vertex."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    multiplicity: dict[tuple[str, str], int]

    def edges(self) -> int:
        return sum(self.multiplicity.values())


def corners(sq: Square, inv: dict[str, str]) -> list[tuple[str, str]]:
    """Corner pairs (x_i^-1, x_{i+1}) around the boundary word."""
    return [(inv[sq[k]], sq[(k + 1) % 4]) for k in range(4)]


def link_of(cx: OneVertexComplex) -> Link:
    vset = set(cx.vEdges)
    mult: Counter = Counter()
    for sq in cx.squares:
        for x, y in corners(sq, cx.inv):
            mult[(x, y) if x in vset else (y, x)] += 1
    full = {(v, h): mult.get((v, h), 0) for v in cx.vEdges for h in cx.hEdges}
    return Link(cx.vEdges, cx.hEdges, full)


def is_complete_bipartite(link: Link) -> bool:
    return all(m == 1 for m in link.multiplicity.values())


def counts(cx: OneVertexComplex) -> tuple[int, int, int]:
    """(vertices, unoriented edges, squares)."""
    return 1, (len(cx.vEdges) + len(cx.hEdges)) // 2, len(cx.squares)


def euler_char(cx: OneVertexComplex) -> Fraction:
    v, e, s = counts(cx)
    return Fraction(v - e + s)


# -- JSON --------------------------------------------------------------------


def export_json(cx: OneVertexComplex) -> dict:
    edges = [{"id": e, "inv": cx.inv[e], "class": "V"} for e in cx.vEdges]
    edges += [{"id": e, "inv": cx.inv[e], "class": "H"} for e in cx.hEdges]
    return {
        "q": cx.q,
        "tau": cx.tau,
        "c": cx.c,
        "vertices": 1,
        "edges": edges,
        "squares": [list(s) for s in cx.squares],
    }


def import_json(doc: dict) -> OneVertexComplex:
    if not isinstance(doc, dict):
        raise SchemaViolation("document must be an object")
    keys = {"q", "tau", "c", "vertices", "edges", "squares"}
    if set(doc) != keys:
        raise SchemaViolation(f"expected keys {sorted(keys)}, got {sorted(doc)}")
    if doc["vertices"] != 1:
        raise SchemaViolation("only one-vertex complexes are supported")
    for k in ("q", "tau", "c"):
        if doc[k] is not None and not isinstance(doc[k], int):
            raise SchemaViolation(f"{k} must be an integer")
    V, H, inv = [], [], {}
    for ed in doc["edges"]:
        if not isinstance(ed, dict) or set(ed) != {"id", "inv", "class"}:
            raise SchemaViolation(f"malformed edge entry {ed!r}")
        if ed["class"] not in ("V", "H"):
            raise SchemaViolation(f"bad edge class {ed['class']!r}")
        if ed["id"] in inv:
            raise SchemaViolation(f"duplicate edge id {ed['id']}")
        (V if ed["class"] == "V" else H).append(ed["id"])
        inv[ed["id"]] = ed["inv"]
    _check_involution(V, inv)
    _check_involution(H, inv)
    rank = {e: k for k, e in enumerate(V + H)}
    sqs = []
    for s in doc["squares"]:
        if not isinstance(s, list) or len(s) != 4 or any(e not in inv for e in s):
            raise SchemaViolation(f"malformed square {s!r}")
        classes = ["V" if e in V else "H" for e in s]
        if classes not in (["V", "H", "V", "H"], ["H", "V", "H", "V"]):
            raise SchemaViolation(f"square {s!r} does not alternate V/H")
        sq = tuple(s)
        if canonical_square(sq, inv, rank) != sq:
            raise SchemaViolation(f"square {s!r} is not in canonical form")
        sqs.append(sq)
    if sqs != sorted(sqs, key=lambda w: [rank[e] for e in w]):
        raise SchemaViolation("squares are not sorted")
    return OneVertexComplex(tuple(V), tuple(H), inv, tuple(sqs), doc["q"], doc["tau"], doc["c"])
