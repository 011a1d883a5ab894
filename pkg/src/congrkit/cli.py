"""Command-line entry point.

Monoid specs: ``T3``, ``PT2``, ``I4`` (single transformation monoids),
``T2xI2`` (products of two), ``F2@GF(3)`` (full matrix monoid) and
``F2@GF(2)xF2@GF(2)`` (products of two matrix monoids).

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Any

from .config import LATTICE_SIZE_CAP, TABLE_SIZE_CAP
from .congruence_fn import (
    class_key_fn,
    enumerate_congruences_fn,
    principal_fn,
    related_fn,
)
from .congruence_qn import class_key, congruence_chain, principal_qn, related_qn
from .landscape import (
    enumerate_landscapes,
    landscape_from_json,
    landscape_key,
    landscape_to_dict,
    validate_landscape,
)
from .matrices import parse_matrix_monoid
from .matrix_product import (
    format_matrix_pair,
    matrix_product_monoid,
    parse_matrix_pair_element,
    principal_fmfn,
)
from .oracle import (
    all_congruences,
    blocks,
    build_table,
    congruence_closure,
    is_congruence,
    partition_from_key,
)
from .product import format_product_element, parse_product_element, principal_product, product_monoid
from .render import render_landscape
from .transformations import parse_family


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Target:
    """A parsed monoid spec: which theory applies and the monoid itself."""

    kind: str  # "qn", "product", "fn" or "fmfn"
    monoid: Any
    text: str

    def parse(self, literal: str):
        if self.kind == "qn":
            return self.monoid.parse_element(literal)
        if self.kind == "fn":
            return self.monoid.parse_element(literal)
        if self.kind == "product":
            return parse_product_element(literal, self.monoid)
        return parse_matrix_pair_element(literal, self.monoid)

    def show(self, x) -> str:
        if self.kind == "product":
            return format_product_element(x)
        if self.kind == "fmfn":
            return format_matrix_pair(x)
        return f"[{x}]" if self.kind == "fn" else str(x)

    def principal(self, x, y):
        """(description, key function, predicate) for the congruence generated by (x, y)."""
        if self.kind == "qn":
            theta = principal_qn(x, y)
            return theta, lambda z: class_key(theta, z), lambda a, b: related_qn(theta, a, b)
        if self.kind == "fn":
            theta = principal_fn(x, y)
            return theta, lambda z: class_key_fn(theta, z), lambda a, b: related_fn(theta, a, b)
        desc = principal_product(x, y) if self.kind == "product" else principal_fmfn(x, y)
        return desc, desc.key, desc.related


def parse_target(text: str) -> Target:
    text = text.strip()
    try:
        if "@" in text:
            parts = text.split("x")
            if len(parts) == 1:
                return Target("fn", parse_matrix_monoid(text), text)
            if len(parts) == 2:
                left, right = (parse_matrix_monoid(p) for p in parts)
                return Target("fmfn", matrix_product_monoid(left, right), text)
        else:
            parts = text.split("x")
            if len(parts) == 1:
                return Target("qn", parse_family(text), text)
            if len(parts) == 2:
                return Target("product", product_monoid(parse_family(parts[0]), parse_family(parts[1])), text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"cannot parse monoid spec {text!r}")


def _table(target: Target, cap: int | None):
    return build_table(target.monoid, cap or TABLE_SIZE_CAP)


def _describe(target: Target, desc) -> dict:
    if target.kind in ("qn", "fn"):
        out = {"congruence": str(desc)}
        if target.kind == "fn":
            out["parameters"] = desc.to_dict()
        return out
    return {"case": desc.case, "summary": desc.summary()}


def cmd_principal(args) -> int:
    target = parse_target(args.spec)
    x, y = target.parse(args.a), target.parse(args.b)
    desc, key, _ = target.principal(x, y)
    info = _describe(target, desc)
    elements = target.monoid.elements()
    info["classes"] = len(set(map(key, elements)))
    land = None
    if target.kind == "product":
        land = desc.landscape()
        info["landscape"] = landscape_to_dict(land)
    if args.json:
        print(json.dumps(info, indent=2))
        return 0
    if "case" in info:
        print(f"case: {info['case']}")
        print(info["summary"])
    else:
        print(info["congruence"])
    print(f"classes: {info['classes']}")
    if land is not None:
        print(render_landscape(land, "matrix" if args.matrix else "diamond"), end="")
    return 0


def _enumerate(target: Target, cap: int | None) -> list:
    if target.kind == "qn":
        return congruence_chain(target.monoid)
    if target.kind == "product":
        return list(enumerate_landscapes(target.monoid.left, target.monoid.right, cap))
    if target.kind == "fn":
        return enumerate_congruences_fn(target.monoid.p, target.monoid.n)
    raise UsageError("no classification of all congruences is available for matrix products")


def cmd_enumerate(args) -> int:
    target = parse_target(args.spec)
    try:
        items = _enumerate(target, args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.count:
        print(len(items))
        return 0
    if args.json:
        if target.kind == "product":
            data = [landscape_to_dict(land) for land in items]
        elif target.kind == "fn":
            data = [c.to_dict() for c in items]
        else:
            data = [str(c) for c in items]
        print(json.dumps(data, indent=2))
        return 0
    for item in items:
        if target.kind == "product":
            print(render_landscape(item, "matrix" if args.matrix else "diamond"))
        else:
            print(item)
    return 0


def _sample_pairs(n: int, samples: int | None, seed: int) -> list[tuple[int, int]]:
    if samples is None or samples >= n * n:
        return [(i, j) for i in range(n) for j in range(n)]
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)]


def _report_mismatch(target: Target, table, i: int, j: int, oracle) -> None:
    els = table.elements
    print(f"mismatch for generating pair {target.show(els[i])} {target.show(els[j])}")
    print("oracle classes:")
    for b in blocks(oracle):
        if len(b) > 1:
            print("  " + " ".join(target.show(els[k]) for k in b))


def verify_principal(target: Target, table, samples: int | None, seed: int) -> tuple[int, int]:
    els = table.elements
    pairs = _sample_pairs(table.size, samples, seed)
    bad = 0
    for i, j in pairs:
        _, key, _ = target.principal(els[i], els[j])
        oracle = congruence_closure(table, [(i, j)])
        if partition_from_key(els, key) != oracle:
            bad += 1
            if bad == 1:
                _report_mismatch(target, table, i, j, oracle)
    return len(pairs), bad


def _enumerated_partitions(target: Target, els, cap) -> list:
    items = _enumerate(target, cap)
    if target.kind == "qn":
        return [partition_from_key(els, lambda z, c=c: class_key(c, z)) for c in items]
    if target.kind == "fn":
        return [partition_from_key(els, lambda z, c=c: class_key_fn(c, z)) for c in items]
    return [partition_from_key(els, lambda z, c=c: landscape_key(c, z)) for c in items]


def cmd_verify(args) -> int:
    target = parse_target(args.spec)
    try:
        table = _table(target, args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    els = table.elements
    failed = False
    if args.principal_sweep:
        total, bad = verify_principal(target, table, args.samples, args.seed)
        print(f"principal-sweep: {bad} mismatches over {total} generating pairs")
        failed |= bad > 0
    if args.lattice:
        formula = _enumerated_partitions(target, els, None)
        oracle = all_congruences(table, args.cap or LATTICE_SIZE_CAP)
        same = set(formula) == oracle and len(formula) == len(set(formula))
        print(f"lattice: formula count {len(formula)}, oracle count {len(oracle)}, {'equal' if same else 'DIFFERENT'}")
        failed |= not same
    if args.axioms:
        pairs = _sample_pairs(table.size, args.samples or 200, args.seed)
        bad = 0
        for i, j in pairs:
            _, key, _ = target.principal(els[i], els[j])
            part = partition_from_key(els, key)
            if (part[i] != part[j]) or not is_congruence(table, part):
                bad += 1
                if bad == 1:
                    print(f"not a congruence containing the pair: {target.show(els[i])} {target.show(els[j])}")
        print(f"axioms: {bad} failures over {len(pairs)} generated relations")
        failed |= bad > 0
    return 1 if failed else 0


def cmd_render(args) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    try:
        land = landscape_from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read landscape: {exc}") from None
    problems = validate_landscape(land)
    if problems:
        for v in problems:
            print(f"invalid landscape: {v.message}", file=sys.stderr)
        return 2
    print(render_landscape(land, "matrix" if args.matrix else "diamond"), end="")
    return 0


def cmd_oracle(args) -> int:
    target = parse_target(args.spec)
    if len(args.elements) % 2:
        raise UsageError("elements must come in pairs")
    table = _table(target, args.cap)
    idx = [table.index[target.parse(t)] for t in args.elements]
    part = congruence_closure(table, list(zip(idx[::2], idx[1::2])))
    classes = [[target.show(table.elements[k]) for k in b] for b in blocks(part)]
    if args.count:
        print(len(classes))
    elif args.json:
        print(json.dumps(classes, indent=2))
    else:
        for c in classes:
            print(" ".join(c))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="congrkit", description="Congruences on finite monoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--cap", type=int, metavar="N", help="override the table or enumeration size cap")
        p.add_argument("--matrix", action="store_true", help="row/column layout for landscapes")

    p = sub.add_parser("principal", help="describe the congruence generated by one pair")
    p.add_argument("spec")
    p.add_argument("a")
    p.add_argument("b")
    common(p)
    p.set_defaults(func=cmd_principal)

    p = sub.add_parser("enumerate", help="list every congruence")
    p.add_argument("spec")
    p.add_argument("--count", action="store_true", help="print the number only")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="compare formulas with brute-force closures")
    p.add_argument("spec")
    p.add_argument("--principal-sweep", action="store_true")
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--axioms", action="store_true")
    p.add_argument("--samples", type=int, metavar="N", help="random generating pairs instead of all")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a landscape stored as JSON ('-' reads stdin)")
    p.add_argument("file")
    p.add_argument("--matrix", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="raw congruence closure of the given pairs")
    p.add_argument("spec")
    p.add_argument("elements", nargs="*")
    p.add_argument("--count", action="store_true", help="print the number of classes only")
    common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and not (args.principal_sweep or args.lattice or args.axioms):
        print("error: choose at least one of --principal-sweep, --lattice, --axioms", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
