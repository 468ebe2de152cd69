"""Command-line surface: formulas, witnesses, and exhaustive checks.

Exit codes: 0 success/verified, 1 verification negative (or scan
disagreements), 2 usage error (including "no closed form applies"),
3 resource limit exceeded.

Oracle limits honor the KLSF_LIMIT_EXACT / KLSF_LIMIT_COUNT / KLSF_LIMIT_AP
environment variables; an explicit --limit flag wins over both.  --json
output is deterministic: identical flags give byte-identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from .abelian import (
    GroupSpec,
    all_abelian_groups,
    make_group,
    parse_group_spec,
)
from .formulas import (
    FormulaUnavailableError,
    KLParams,
    alpha_report,
    lambda_bounds_general,
    lambda_cyclic_21,
    lambda_formula,
    theorem16_condition,
)
from .oracle import LimitExceededError, alpha_exact, count_sum_free, enumerate_maximum, lambda_exact
from .sumset import Subset, find_violation, is_kl_sum_free
from .witness import best_witness, witness_json

SCHEMA = "klsumfree/1"

SCAN_CHECKS = ("bounds", "formula-vs-exact", "green-ruzsa", "theorem16", "lift-identity")


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _env_limit(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    return int(raw) if raw else None


def _limit_for(args, env_name: str) -> Optional[int]:
    if getattr(args, "limit", None) is not None:
        return args.limit
    return _env_limit(env_name)


def _kl(args) -> KLParams:
    return KLParams(args.k, args.l)


def _parse_set(g: GroupSpec, text: str) -> Subset:
    """Element list: "1,3,5" for cyclic groups, "0:1,1:1" (colon-joined
    coordinates) for product groups."""
    items = [t for t in text.strip().split(",") if t != ""]
    indices = []
    for item in items:
        parts = item.split(":")
        if len(parts) != len(g.factors):
            raise ValueError(
                f"element {item!r} has {len(parts)} coordinates, "
                f"group {g} needs {len(g.factors)}"
            )
        coords = [int(p) for p in parts]
        indices.append(g.index_of(coords))
    return Subset.from_indices(g, indices)


def _group_name(g: GroupSpec) -> str:
    return "Z" + "xZ".join(str(f) for f in g.factors)


def _members_payload(s: Subset):
    if s.group.is_cyclic:
        return s.indices()
    return [list(e.coords) for e in s.elements()]


def _format_element(s: Subset) -> str:
    return "{" + ",".join(str(e) for e in s.elements()) + "}"


def _terms_pairs(terms: dict[int, int]) -> list[list[int]]:
    return [[d, t] for d, t in sorted(terms.items())]


# ---------------------------------------------------------------------------
# lambda

def cmd_lambda(args) -> int:
    g = parse_group_spec(args.group)
    kl = _kl(args)
    method = args.method
    payload: dict = {"schema": SCHEMA, "command": "lambda", "group": str(g), "k": kl.k, "l": kl.l}
    lines = [f"group {_group_name(g)}, (k,l)=({kl.k},{kl.l})"]
    if kl.diff % g.v == 0:
        payload["note"] = "the exponent divides k-l, so ka = la for every a and the maximum is 0"
        lines.append("note: v divides k-l; the maximum is 0")

    if method in ("formula", "all"):
        try:
            value, basis = lambda_formula(g, kl)
            payload["formula"] = value
            payload["formula_basis"] = basis
            lines.append(f"formula: {value}  ({basis})")
        except FormulaUnavailableError as exc:
            if method == "formula":
                raise
            payload["formula"] = None
            payload["formula_note"] = str(exc)
            lines.append(f"formula: unavailable ({exc})")

    if method in ("bounds", "all"):
        rep = lambda_bounds_general(g, kl)
        payload["bounds"] = {
            "lower": rep.lower,
            "upper": rep.upper,
            "lower_terms": _terms_pairs(rep.lower_terms),
            "upper_terms": _terms_pairs(rep.upper_terms),
            "argmax_lower": rep.argmax_lower,
            "argmax_upper": rep.argmax_upper,
            "degenerate": rep.degenerate,
        }
        lines.append(
            f"bounds: [{rep.lower}, {rep.upper}]"
            + (
                f"  (lower at d={rep.argmax_lower}, upper at d={rep.argmax_upper})"
                if not rep.degenerate
                else "  (degenerate: v divides k-l)"
            )
        )
        if method == "bounds" and not rep.degenerate:
            lines.append("per-divisor terms (divisor: lower-term / upper-term):")
            for d in sorted(set(rep.lower_terms) | set(rep.upper_terms)):
                lo = rep.lower_terms.get(d, "-")
                up = rep.upper_terms.get(d, "-")
                lines.append(f"  d={d}: {lo} / {up}")

    if method in ("exact", "all"):
        try:
            res = lambda_exact(g, kl, limit=_limit_for(args, "KLSF_LIMIT_EXACT"), force=args.force)
            payload["exact"] = {
                "value": res.max_size,
                "nodes_explored": res.nodes_explored,
                "witness": _members_payload(res.witness),
            }
            lines.append(
                f"exact: {res.max_size}  (witness {_format_element(res.witness)}, "
                f"{res.nodes_explored} nodes)"
            )
        except LimitExceededError as exc:
            if method == "exact":
                raise
            payload["exact"] = None
            payload["exact_note"] = str(exc)
            lines.append(f"exact: skipped ({exc})")

    if args.json:
        _emit_json(payload)
    else:
        print("\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# witness / verify

def cmd_witness(args) -> int:
    g = parse_group_spec(args.group)
    kl = _kl(args)
    w = best_witness(g, kl)
    if args.json:
        payload = {"schema": SCHEMA, "command": "witness", **witness_json(w)}
        _emit_json(payload)
        return 0
    print(f"group {_group_name(g)}, (k,l)=({kl.k},{kl.l})")
    print(f"witness size {w.size}: {_format_element(w.members)}")
    if w.divisor is not None:
        print(f"built from quotient modulus d={w.divisor}")
    base = w.base
    if base is not None and hasattr(base, "certificate") and base.certificate:
        c = base.certificate
        print(
            f"progression start {base.start}, length {base.size}; "
            f"certificate q={c.q} r={c.r} u={c.u} w={c.w}"
        )
    return 0


def cmd_verify(args) -> int:
    g = parse_group_spec(args.group)
    kl = _kl(args)
    subset = _parse_set(g, args.set)
    ok = is_kl_sum_free(subset, kl.k, kl.l)
    if ok:
        if args.json:
            _emit_json(
                {
                    "schema": SCHEMA,
                    "command": "verify",
                    "group": str(g),
                    "k": kl.k,
                    "l": kl.l,
                    "set": _members_payload(subset),
                    "sum_free": True,
                    "violation": None,
                }
            )
        else:
            print(f"{_format_element(subset)} is ({kl.k},{kl.l})-sum-free in {_group_name(g)}")
        return 0
    violation = find_violation(subset, kl.k, kl.l)
    assert violation is not None
    ktuple, ltuple = violation
    identity = (
        "+".join(str(e) for e in ktuple) + " = " + "+".join(str(e) for e in ltuple)
    )
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "verify",
                "group": str(g),
                "k": kl.k,
                "l": kl.l,
                "set": _members_payload(subset),
                "sum_free": False,
                "violation": {
                    "k_tuple": [list(e.coords) for e in ktuple],
                    "l_tuple": [list(e.coords) for e in ltuple],
                },
            }
        )
    else:
        print(
            f"{_format_element(subset)} is NOT ({kl.k},{kl.l})-sum-free in {_group_name(g)}: "
            f"{identity}"
        )
    return 1


# ---------------------------------------------------------------------------
# alpha / count / enumerate

def cmd_alpha(args) -> int:
    kl = _kl(args)
    rep = alpha_report(args.n, kl)
    payload: dict = {
        "schema": SCHEMA,
        "command": "alpha",
        "n": args.n,
        "k": kl.k,
        "l": kl.l,
        "case": rep.case_tag,
        "exact_formula": rep.exact,
        "lower": rep.lower,
        "upper": rep.upper,
        "beta_bounds": list(rep.beta_bounds),
        "gamma_bounds": list(rep.gamma_bounds),
    }
    lines = [f"longest ({kl.k},{kl.l})-sum-free progression in Z_{args.n} [case: {rep.case_tag}]"]
    if rep.exact is not None:
        lines.append(f"value: {rep.exact}")
    else:
        lines.append(f"bounds: [{rep.lower}, {rep.upper}]")
    lines.append(f"restricted-difference bounds: shared-factor {rep.beta_bounds}, coprime {rep.gamma_bounds}")
    if args.exact:
        value = alpha_exact(args.n, kl, limit=_limit_for(args, "KLSF_LIMIT_AP"), force=args.force)
        payload["exact_search"] = value
        lines.append(f"search value: {value}")
    if args.json:
        _emit_json(payload)
    else:
        print("\n".join(lines))
    return 0


def cmd_count(args) -> int:
    g = parse_group_spec(args.group)
    kl = _kl(args)
    res = count_sum_free(g, kl, limit=_limit_for(args, "KLSF_LIMIT_COUNT"), force=args.force)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "count",
                "group": str(g),
                "k": kl.k,
                "l": kl.l,
                "total": res.total,
                "by_size": {str(s): c for s, c in res.by_size.items()},
            }
        )
    else:
        print(f"{res.total} ({kl.k},{kl.l})-sum-free subsets in {_group_name(g)}")
        for s, c in res.by_size.items():
            print(f"  size {s}: {c}")
    return 0


def cmd_enumerate(args) -> int:
    g = parse_group_spec(args.group)
    kl = _kl(args)
    sets = enumerate_maximum(g, kl, limit=_limit_for(args, "KLSF_LIMIT_EXACT"), force=args.force)
    lam = sets[0].size if sets else 0
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "enumerate",
                "group": str(g),
                "k": kl.k,
                "l": kl.l,
                "max_size": lam,
                "count": len(sets),
                "sets": [_members_payload(s) for s in sets],
            }
        )
    else:
        print(f"{len(sets)} maximum ({kl.k},{kl.l})-sum-free sets of size {lam} in {_group_name(g)}:")
        for s in sets:
            print(f"  {_format_element(s)}")
    return 0


# ---------------------------------------------------------------------------
# scan

def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like 2..36, got {text!r}")
    return int(lo), int(hi)


def _scan_instances(args) -> list[GroupSpec]:
    if args.n is not None:
        lo, hi = _parse_range(args.n)
        return [make_group([m]) for m in range(max(2, lo), hi + 1)]
    lo, hi = _parse_range(args.order)
    return all_abelian_groups(hi, min_order=lo)


def _scan_row(g: GroupSpec, kl: KLParams, checks: list[str], limit, force) -> dict:
    rep = lambda_bounds_general(g, kl)
    wsize = best_witness(g, kl).size
    try:
        formula, _ = lambda_formula(g, kl)
    except FormulaUnavailableError:
        formula = None
    row: dict = {
        "group": str(g),
        "k": kl.k,
        "l": kl.l,
        "formula": formula,
        "lower": rep.lower,
        "upper": rep.upper,
        "exact": None,
        "witness_size": wsize,
        "agree": None,
    }
    try:
        exact = lambda_exact(g, kl, limit=limit, force=force).max_size
    except LimitExceededError:
        return row
    row["exact"] = exact

    results = []
    for check in checks:
        if check == "bounds":
            results.append(rep.lower <= exact <= rep.upper and wsize == rep.lower)
        elif check == "formula-vs-exact":
            if formula is not None:
                results.append(formula == exact)
        elif check == "green-ruzsa":
            if (kl.k, kl.l) == (2, 1):
                results.append(lambda_cyclic_21(g.v) * (g.n // g.v) == exact)
        elif check == "theorem16":
            if theorem16_condition(g.v, kl).holds:
                cyclic_v = make_group([g.v])
                lam_v = lambda_exact(cyclic_v, kl, limit=limit, force=force).max_size
                results.append(lam_v * (g.n // g.v) == exact)
        elif check == "lift-identity":
            cyclic_v = make_group([g.v])
            lam_v = lambda_exact(cyclic_v, kl, limit=limit, force=force).max_size
            results.append(lam_v * (g.n // g.v) == exact)
    row["agree"] = all(results) if results else True
    return row


def cmd_scan(args) -> int:
    kl = _kl(args)
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    for c in checks:
        if c not in SCAN_CHECKS:
            raise ValueError(f"unknown check {c!r}; available: {', '.join(SCAN_CHECKS)}")
    limit = _limit_for(args, "KLSF_LIMIT_EXACT")
    instances = _scan_instances(args)
    rows = [_scan_row(g, kl, checks, limit, args.force) for g in instances]
    disagreements = sum(1 for r in rows if r["agree"] is False)
    skipped = sum(1 for r in rows if r["agree"] is None)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "scan",
                "k": kl.k,
                "l": kl.l,
                "checks": checks,
                "rows": rows,
                "instances": len(rows),
                "disagreements": disagreements,
                "skipped": skipped,
            }
        )
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["group", "k", "l", "formula", "lower", "upper", "exact", "witness_size", "agree"])
        for r in rows:
            writer.writerow(
                [
                    r["group"],
                    r["k"],
                    r["l"],
                    "" if r["formula"] is None else r["formula"],
                    r["lower"],
                    r["upper"],
                    "" if r["exact"] is None else r["exact"],
                    r["witness_size"],
                    "" if r["agree"] is None else str(r["agree"]).lower(),
                ]
            )
        print(
            f"scanned {len(rows)} instances: {disagreements} disagreements, {skipped} skipped",
            file=sys.stderr,
        )
    return 1 if disagreements else 0


# ---------------------------------------------------------------------------
# parser

def _add_common(p, group=True, limit=True):
    if group:
        p.add_argument("--group", required=True, help='group spec: "10" or "2x4x8"')
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if limit:
        p.add_argument("--limit", type=int, default=None, help="override the oracle size limit")
        p.add_argument("--force", action="store_true", help="ignore the oracle size limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klsf",
        description="maximum (k,l)-sum-free sets: formulas, witnesses, exhaustive checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="maximum (k,l)-sum-free set size")
    _add_common(p)
    p.add_argument(
        "--method",
        choices=["formula", "bounds", "exact", "all"],
        default="all",
    )
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("witness", help="construct a certified witness set")
    _add_common(p, limit=False)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="check a user-supplied set")
    _add_common(p, limit=False)
    p.add_argument("--set", required=True, help='elements: "1,3,5" (cyclic) or "0:1,1:1"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("alpha", help="longest sum-free arithmetic progression in Z_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--exact", action="store_true", help="also run the progression search")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("count", help="count all (k,l)-sum-free subsets")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list all maximum (k,l)-sum-free sets")
    _add_common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("scan", help="sweep instances and cross-check values")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", default=None, help="cyclic order range, e.g. 2..36")
    src.add_argument("--order", default=None, help="with --family: order range, e.g. 2..16")
    p.add_argument("--family", choices=["all-abelian"], default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--check", default="bounds", help=f"comma list of: {', '.join(SCAN_CHECKS)}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if getattr(args, "order", None) is not None and getattr(args, "family", None) is None:
        print("error: --order requires --family all-abelian", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except LimitExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
