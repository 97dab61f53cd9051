"""Command-line entry point.

Every command writes a deterministic payload to stdout (JSON unless a text
export format is requested) and logs to stderr.  Exit codes: 0 success,
1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from typing import Callable

from . import normal_form, presentation, square_complex, structure, vh_core
from .errors import BoundExceeded, InvalidParameter, VHLFError
from .gf import field_of_order, make_field
from .invariants import surface_invariants
from .mass_formula import DEFAULT_BOUND as MASS_BOUND
from .mass_formula import mass_enumerate, mass_labeled_formula, weight_denominator
from .quaternion import Config, dihedral_relations, make_config, quaternion_certificates

log = logging.getLogger("vhlf")


class UsageError(Exception):
    pass


# -- configuration ----------------------------------------------------------------


def _env_bound() -> int | None:
    raw = os.environ.get("VHLF_BOUND")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"VHLF_BOUND must be an integer, got {raw!r}") from None


def _field(args):
    if args.q is not None and (args.p is not None or args.r is not None):
        raise UsageError("give either --q or --p/--r, not both")
    if args.q is not None:
        return field_of_order(args.q)
    if args.p is None:
        raise UsageError("one of --q or --p is required")
    return make_field(args.p, args.r or 1)


def _config(args, tau=None) -> Config:
    F = _field(args)
    tau = args.tau if tau is None else tau
    if tau is None:
        raise UsageError("--tau is required")
    return make_config(F, tau, c=args.c, delta=args.delta, zeta=args.zeta)


def _cfg_header(cfg: Config) -> dict:
    return {
        "q": cfg.q,
        "tau": cfg.tau.value,
        "c": cfg.c.value,
        "delta": cfg.delta.encode(),
        "zeta": cfg.zeta.encode(),
    }


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


# -- commands --------------------------------------------------------------------


def _verify_checks(cfg: Config, deep: bool) -> dict[str, tuple[bool, object]]:
    data = vh_core.build(cfg)
    checks: dict[str, tuple[bool, object]] = {}

    rep = vh_core.check_vh_axioms(data)
    checks["vh_axioms"] = (rep.ok, {"failed": rep.failed()})
    bad = vh_core.certify_relations(data)
    checks["relations_in_D"] = (not bad, {"failures": len(bad)})

    for name, ok in quaternion_certificates(cfg).items():
        checks[f"quaternion_{name}"] = (ok, None)

    cx = square_complex.build_sab(data)
    checks["link_complete_bipartite"] = (
        square_complex.is_complete_bipartite(square_complex.link_of(cx)),
        None,
    )
    v, e, s = square_complex.counts(cx)
    checks["cell_counts"] = (
        (v, e, s) == (1, cfg.q + 1, (cfg.q + 1) ** 2 // 4),
        {"vertices": v, "edges": e, "squares": s},
    )

    table = presentation.pe_table(cfg)
    star_bad = [
        (i, l)
        for i in range(cfg.q + 1)
        for l in range(cfg.q + 1)
        if not all(presentation.star_check(cfg, i, l, table).values())
    ]
    checks["star_condition"] = (not star_bad, {"failures": star_bad[:5]})
    dih = dihedral_relations(cfg)
    checks["dihedral_relators"] = (all(dih.values()), dih)
    lam = presentation.present_lambda(cfg)
    checks["lambda_relators_in_D"] = (not presentation.certify_in_D(cfg, lam), None)

    ab = presentation.abelianization(presentation.present_gamma(data))
    checks["abelianization_finite"] = (0 not in ab, {"divisors": ab})
    uq = presentation.uniform_quotients_check(data)
    checks["uniform_quotients"] = (uq.ok, {"additive_order": uq.additive_subgroup_order})

    bound = _env_bound() or normal_form.default_bound(cfg.q)
    radius = min(bound, normal_form.default_bound(cfg.q) if deep else 2)
    spheres = normal_form.sphere_table(data, radius, bound)
    checks["sphere_counts"] = (
        all(n == normal_form.expected_sphere(cfg.q, *kl) for kl, n in spheres.items()),
        {"radius": radius},
    )
    conf = normal_form.confluence_check(data, samples=500 if deep else 100)
    checks["rewriting_confluence"] = (not conf, {"failures": len(conf)})

    PA, PB = structure.local_groups(data)
    kinds = (
        structure.kind_from_order(cfg.q, PA.order()),
        structure.kind_from_order(cfg.q, PB.order()),
    )
    checks["local_groups"] = (
        kinds == structure.predict_local_groups(cfg) == structure.det_classes(data),
        {"P_A": PA.order(), "P_B": PB.order()},
    )
    inv = surface_invariants(cx, cfg.q)
    checks["surface_invariants"] = (inv.noether_ok, inv.as_dict())
    return checks


def cmd_verify(args) -> int:
    cfg = _config(args)
    t0 = time.perf_counter()
    checks = _verify_checks(cfg, args.deep)
    log.info("verify finished in %.2fs", time.perf_counter() - t0)
    records = [
        {"check": name, "ok": ok, "detail": detail}
        for name, (ok, detail) in sorted(checks.items())
    ]
    ok = all(r["ok"] for r in records)
    _emit({"config": _cfg_header(cfg), "ok": ok, "checks": records})
    if not ok:
        first = next(r["check"] for r in records if not r["ok"])
        log.error("check failed: %s", first)
        return 1
    return 0


def cmd_construct(args) -> int:
    cfg = _config(args)
    cx = square_complex.build_sab(vh_core.build(cfg))
    doc = square_complex.export_json(cx)
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return 0


def cmd_presentation(args) -> int:
    cfg = _config(args)
    if args.group == "gamma":
        p = presentation.present_gamma(vh_core.build(cfg), dedup=not args.no_dedup)
    elif args.group == "lambda":
        p = presentation.present_lambda(cfg)
    else:
        p = presentation.present_lambda_prime(cfg)
    text = presentation.export_text(p, args.format)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def cmd_mass(args) -> int:
    bound = _env_bound() or (2 * MASS_BOUND if args.deep else MASS_BOUND)
    out: dict = {"m": args.m, "n": args.n}
    if args.method in ("formula", "both"):
        out["formula"] = mass_labeled_formula(args.m, args.n, bound)
    if args.method in ("enumerate", "both"):
        out["enumerate"] = mass_enumerate(args.m, args.n, bound)
    method = "formula" if "formula" in out else "enumerate"
    out["count"] = out[method]
    out["mass"] = str(Fraction(out[method], weight_denominator(args.m, args.n)))
    if args.method == "both":
        out["agree"] = out["formula"] == out["enumerate"]
    _emit(out)
    return 0 if out.get("agree", True) else 1


def cmd_classify(args) -> int:
    F = _field(args)
    ok, cert = structure.commensurable(F, args.tau1, args.tau2)
    out: dict = {"q": F.q, "tau1": args.tau1, "tau2": args.tau2, "commensurable": ok}
    if cert is not None:
        out["certificate"] = {"k": cert.k, "flip": cert.flip, "description": cert.describe()}
        iso = structure.iso_from_certificate(make_config(F, args.tau1, c=args.c), cert)
        structure.verify_iso(iso)
        out["isomorphism_verified"] = True
    _emit(out)
    return 0


def cmd_balls(args) -> int:
    cfg = _config(args)
    data = vh_core.build(cfg)
    bound = _env_bound()
    if bound is None:
        bound = normal_form.default_bound(cfg.q) + (2 if args.deep else 0)
    table = normal_form.sphere_table(data, args.k + args.l, bound)
    rows = []
    ok = True
    for k in range(args.k + 1):
        for l in range(args.l + 1):
            n = table.get((k, l), 0)
            exp = normal_form.expected_sphere(cfg.q, k, l)
            ok &= n == exp
            rows.append({"k": k, "l": l, "count": n, "expected": exp})
    _emit({"config": _cfg_header(cfg), "spheres": rows, "ok": ok})
    return 0 if ok else 1


def cmd_invariants(args) -> int:
    cfg = _config(args)
    cx = square_complex.build_sab(vh_core.build(cfg))
    inv = surface_invariants(cx, cfg.q)
    _emit({"config": _cfg_header(cfg), "invariants": inv.as_dict()})
    return 0


def cmd_local_groups(args) -> int:
    cfg = _config(args)
    data = vh_core.build(cfg)
    PA, PB = structure.local_groups(data)
    predicted = structure.predict_local_groups(cfg)
    computed = (
        structure.kind_from_order(cfg.q, PA.order()),
        structure.kind_from_order(cfg.q, PB.order()),
    )
    ok = computed == predicted
    _emit(
        {
            "config": _cfg_header(cfg),
            "P_A": {"order": PA.order(), "kind": computed[0], "predicted": predicted[0]},
            "P_B": {"order": PB.order(), "kind": computed[1], "predicted": predicted[1]},
            "agree": ok,
        }
    )
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------


def _add_field_args(p: argparse.ArgumentParser, tau: bool = True) -> None:
    p.add_argument("--q", type=int, help="field order p^r")
    p.add_argument("--p", type=int, help="characteristic (with --r)")
    p.add_argument("--r", type=int, help="extension degree (with --p)")
    if tau:
        p.add_argument("--tau", type=int, help="tau as an F_q element encoding")
    p.add_argument("--c", type=int, help="override the non-square c")
    p.add_argument("--delta", type=int, help="override the generator delta (F_q^2 encoding)")
    p.add_argument("--zeta", type=int, help="override zeta (F_q^2 encoding)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vhlf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    commands: dict[str, tuple[Callable, str]] = {
        "verify": (cmd_verify, "run every consistency check for one (q, tau)"),
        "construct": (cmd_construct, "build the one-vertex square complex"),
        "presentation": (cmd_presentation, "print a finite presentation"),
        "mass": (cmd_mass, "count labelled VH complexes of size (2m, 2n)"),
        "classify": (cmd_classify, "decide commensurability of two parameters"),
        "balls": (cmd_balls, "sphere counts of the normal-form ball"),
        "invariants": (cmd_invariants, "Euler characteristic and Chern numbers"),
        "local-groups": (cmd_local_groups, "local permutation groups P_A and P_B"),
    }
    subs = {}
    for name, (fn, help_) in commands.items():
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        subs[name] = sp

    for name in ("verify", "construct", "presentation", "balls", "invariants", "local-groups"):
        _add_field_args(subs[name])
    for name in ("verify", "balls", "mass"):
        subs[name].add_argument("--deep", action="store_true", help="raise enumeration bounds")
    subs["construct"].add_argument("--out", help="write JSON here instead of stdout")
    pres = subs["presentation"]
    pres.add_argument("--group", choices=["gamma", "lambda", "lambda-prime"], default="gamma")
    pres.add_argument("--format", choices=["gap", "plain", "json"], default="plain")
    pres.add_argument("--no-dedup", action="store_true", help="keep all (q+1)^2 square relators")
    mass = subs["mass"]
    mass.add_argument("--m", type=int, required=True)
    mass.add_argument("--n", type=int, required=True)
    mass.add_argument("--method", choices=["formula", "enumerate", "both"], default="both")
    cls = subs["classify"]
    _add_field_args(cls, tau=False)
    cls.add_argument("--tau1", type=int, required=True)
    cls.add_argument("--tau2", type=int, required=True)
    balls = subs["balls"]
    balls.add_argument("--k", type=int, default=2)
    balls.add_argument("--l", type=int, default=2)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, InvalidParameter, BoundExceeded) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"vhlf: error: {exc}\n")
        return 2
    except VHLFError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
