"""Command-line workbench ``f1hall``.

Every command builds a JSON payload (optionally memoized in a cache file) and
renders it as JSON, CSV or Markdown.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import encoding as enc
from .cache import ResultCache, cache_get_or_compute
from .canon import ZERO_KEY, key_dim, key_of, key_order, module_from_key
from .enumeration import FILTERS, classes_up_to, enumerate_modules
from .errors import F1HallError, ParseError
from .module import format_module, mask_elements, quotient, restrict, submodules

PROG = "f1hall"
DEFAULT_SEED = 0


# -- payload helpers -----------------------------------------------------------------

def _module_info(m) -> dict:
    out = {"module": format_module(m), "key": key_of(m)}
    if m.spec.ngens == 1:
        from .module import is_nilpotent
        from .forest import module_to_forest

        if is_nilpotent(m):
            out["forest"] = module_to_forest(m).code
    return out


def _collect_keys(payload) -> list:
    """Class keys mentioned anywhere in a payload (strings shaped like ``d|...``)."""
    found = set()
    stack = [payload]
    while stack:
        x = stack.pop()
        if isinstance(x, dict):
            stack.extend(x.values())
        elif isinstance(x, list):
            stack.extend(x)
        elif isinstance(x, str) and "|" in x and x.split("|", 1)[0].isdigit():
            found.add(x)
    return sorted(found)


def _report_table(payload):
    rows = []
    for c in payload["checks"]:
        rows.append([c["name"], "pass" if c["passed"] else "FAIL", c["checked"], c["failed"],
                     c["witnesses"][0] if c["witnesses"] else ""])
    return ["check", "result", "checked", "failed", "first witness"], rows


def _hall_table(terms):
    return ["key", "coeff"], [[t["key"], t["coeff"]] for t in terms]


def _spec(args):
    return enc.parse_spec(args.spec)


def _operand(spec, text, name):
    if text is None:
        raise ParseError(f"--{name} is required")
    return enc.parse_operand(spec, text)


def _max_dim(args, default):
    return default if args.max_dim is None else args.max_dim


# -- commands ------------------------------------------------------------------------

def cmd_enumerate(args):
    spec = _spec(args)
    if args.dim is None:
        raise ParseError("--dim is required")
    keys = enumerate_modules(spec, args.dim, args.filter)
    inputs = {"dim": args.dim, "filter": args.filter}

    def compute():
        return {"spec": spec.text, "dim": args.dim, "filter": args.filter, "count": len(keys),
                "classes": [{"key": k, "module": format_module(module_from_key(spec, k))} for k in keys]}
    return spec, inputs, compute, lambda p: (["key", "module"], [[c["key"], c["module"]] for c in p["classes"]])


def cmd_decompose(args):
    spec = _spec(args)
    m = _operand(spec, args.module, "module")

    def compute():
        from .module import decompose

        parts = sorted((key_of(c) for c in decompose(m)), key=key_order)
        return {"spec": spec.text, **_module_info(m), "components": [{"key": k, "dim": key_dim(k)} for k in parts]}
    return spec, {"module": format_module(m)}, compute, lambda p: (["key", "dim"], [[c["key"], c["dim"]] for c in p["components"]])


def cmd_submodules(args):
    spec = _spec(args)
    m = _operand(spec, args.module, "module")

    def compute():
        subs = []
        for s in submodules(m):
            subs.append({"mask": s, "elements": mask_elements(s),
                         "sub": key_of(restrict(m, s)), "quotient": key_of(quotient(m, s))})
        return {"spec": spec.text, **_module_info(m), "count": len(subs), "submodules": subs}
    return spec, {"module": format_module(m)}, compute, lambda p: (
        ["elements", "sub", "quotient"],
        [[" ".join(map(str, s["elements"])) or "-", s["sub"], s["quotient"]] for s in p["submodules"]])


def cmd_product(args):
    from .hall import HallElement

    spec = _spec(args)
    a, b = _operand(spec, args.left, "left"), _operand(spec, args.right, "right")

    def compute():
        prod = HallElement.of(a) * HallElement.of(b)
        return {"spec": spec.text, "left": key_of(a), "right": key_of(b), "result": enc.hall_to_json(prod)}
    return spec, {"left": key_of(a), "right": key_of(b)}, compute, lambda p: _hall_table(p["result"])


def cmd_coproduct(args):
    from .hall import HallElement, coproduct, counit

    spec = _spec(args)
    m = _operand(spec, args.module, "module")

    def compute():
        x = HallElement.of(m)
        return {"spec": spec.text, "key": key_of(m), "counit": enc.rational_text(counit(x)),
                "result": enc.tensor_to_json(coproduct(x))}
    return spec, {"key": key_of(m)}, compute, lambda p: (
        ["left", "right", "coeff"], [[t["left"], t["right"], t["coeff"]] for t in p["result"]])


def cmd_antipode(args):
    from .hall import HallElement, antipode

    spec = _spec(args)
    m = _operand(spec, args.module, "module")

    def compute():
        return {"spec": spec.text, "key": key_of(m), "result": enc.hall_to_json(antipode(HallElement.of(m)))}
    return spec, {"key": key_of(m)}, compute, lambda p: _hall_table(p["result"])


def cmd_bracket(args):
    from .hall import lie_bracket

    spec = _spec(args)
    a, b = _operand(spec, args.left, "left"), _operand(spec, args.right, "right")

    def compute():
        return {"spec": spec.text, "left": key_of(a), "right": key_of(b),
                "result": enc.hall_to_json(lie_bracket(spec, a, b))}
    return spec, {"left": key_of(a), "right": key_of(b)}, compute, lambda p: _hall_table(p["result"])


def cmd_table(args):
    from .hall import product_basis

    spec = _spec(args)
    d = _max_dim(args, 3)
    inputs = {"max_dim": d, "filter": args.filter}

    def compute():
        keys = [k for k in classes_up_to(spec, d, args.filter) if k != ZERO_KEY]
        entries = []
        for km in keys:
            for kn in keys:
                if key_dim(km) + key_dim(kn) > d:
                    continue
                pb = product_basis(spec, km, kn)
                for kr in sorted(pb, key=key_order):
                    entries.append({"left": km, "right": kn, "result": kr, "coeff": pb[kr]})
        return {"spec": spec.text, "max_dim": d, "filter": args.filter, "entries": entries}
    return spec, inputs, compute, lambda p: (
        ["left", "right", "result", "coeff"], [[e["left"], e["right"], e["result"], e["coeff"]] for e in p["entries"]])


def _suite(fn, default):
    def cmd(args):
        spec = _spec(args)
        d = _max_dim(args, default)
        return spec, {"max_dim": d, "filter": args.filter}, lambda: fn(spec, d, args.filter).to_dict(), _report_table
    return cmd


def _axioms(spec, d, f):
    from .hall import verify_hopf_axioms
    return verify_hopf_axioms(spec, d, f)


def _pbw(spec, d, f):
    from .hall import verify_pbw
    return verify_pbw(spec, d, f)


def cmd_k0(args):
    from .hall import k0_truncated

    spec = _spec(args)
    d = _max_dim(args, 3)

    def compute():
        return {"spec": spec.text, "filter": args.filter, **k0_truncated(spec, d, args.filter).to_dict()}
    return spec, {"max_dim": d, "filter": args.filter}, compute, lambda p: (
        ["class"] + [f"Z/{f}" if f else "Z" for f in p["invariant_factors"]],
        [[k] + v for k, v in p["class_images"].items()])


def cmd_classify(args):
    from .forest import CycleWithTrees, classify, module_to_graph

    spec = _spec(args)
    m = _operand(spec, args.module, "module")

    def compute():
        shape = classify(m)
        g = module_to_graph(m)
        out = {"spec": spec.text, **_module_info(m), "h1": g.h1,
               "types": [list(t) for t in g.types], "cycles": [list(c) for c in g.cycles]}
        if isinstance(shape, CycleWithTrees):
            out["shape"] = {"variant": "CycleWithTrees", "cycle_length": shape.cycle_length,
                            "attached": list(shape.attached), "depth": shape.depth}
        else:
            out["shape"] = {"variant": "NilpotentTree", "height": shape.height, "code": shape.code}
        return out
    return spec, {"module": format_module(m)}, compute, lambda p: (
        ["field", "value"], [[k, v] for k, v in p["shape"].items()])


def _forest_arg(args):
    from .forest import Forest

    if args.forest is None:
        raise ParseError("--forest is required")
    return Forest.parse(args.forest)


def cmd_cuts(args):
    from .forest import FREE1, _pieces, admissible_cuts, simple_cuts

    f = _forest_arg(args)

    def compute():
        cuts = simple_cuts(f) if args.simple else admissible_cuts(f, extended=args.extended)
        rows = []
        for c in cuts:
            lf, rt = _pieces(f, c.edges)
            rows.append({"edges": sorted(c.edges), "pruned": lf, "trunk": rt})
        return {"forest": f.code, "extended": args.extended, "simple": args.simple, "count": len(rows), "cuts": rows}
    inputs = {"forest": f.code, "extended": args.extended, "simple": args.simple}
    return FREE1, inputs, compute, lambda p: (
        ["edges", "pruned", "trunk"],
        [[" ".join(map(str, c["edges"])) or "-", c["pruned"] or "1", c["trunk"] or "1"] for c in p["cuts"]])


def cmd_kreimer(args):
    from .forest import FREE1, kreimer_coproduct

    f = _forest_arg(args)

    def compute():
        terms = [{"left": a, "right": b, "coeff": v} for (a, b), v in kreimer_coproduct(f).items()]
        return {"forest": f.code, "convention": "left = pruned part, right = trunk; '' is the empty forest",
                "result": terms}
    return FREE1, {"forest": f.code}, compute, lambda p: (
        ["left", "right", "coeff"], [[t["left"] or "1", t["right"] or "1", t["coeff"]] for t in p["result"]])


def cmd_duality(args):
    from .forest import FREE1, verify_duality

    n = args.max_vertices
    return FREE1, {"max_vertices": n}, lambda: verify_duality(n).to_dict(), _report_table


def _product_cmd(kind):
    def cmd(args):
        from .module import decompose
        from .rep import PRODUCTS

        spec = _spec(args)
        a, b = _operand(spec, args.left, "left"), _operand(spec, args.right, "right")

        def compute():
            r = PRODUCTS[kind](a, b)
            parts = sorted((key_of(c) for c in decompose(r)), key=key_order)
            return {"spec": spec.text, "product": kind, "left": key_of(a), "right": key_of(b),
                    "dim": r.dim, **_module_info(r), "components": parts}
        return spec, {"left": format_module(a), "right": format_module(b)}, compute, lambda p: (
            ["component"], [[c] for c in p["components"]])
    return cmd


def cmd_reptable(args):
    from .rep import RepElement, rep_product

    spec = _spec(args)
    d = _max_dim(args, 2)
    kind = args.kind

    def compute():
        keys = [k for k in classes_up_to(spec, d, "indecomposable") if k != ZERO_KEY]
        entries = []
        for k1 in keys:
            for k2 in keys:
                x = rep_product(RepElement.of_key(spec, k1), RepElement.of_key(spec, k2), kind)
                entries.append({"left": k1, "right": k2, "result": enc.rep_to_json(x)})
        return {"spec": spec.text, "kind": kind, "max_dim": d, "entries": entries}
    return spec, {"max_dim": d, "kind": kind}, compute, lambda p: (
        ["left", "right", "product"],
        [[e["left"], e["right"], " + ".join(f"{t['coeff']}[{t['key']}]" for t in e["result"]) or "0"] for e in p["entries"]])


def cmd_burnside(args):
    from .groups import builtin_group
    from .rep import burnside_oracle, burnside_table, verify_semisimplicity
    from .semigroup import build_group_with_zero

    g = builtin_group(args.group)
    d = _max_dim(args, 4)

    def compute():
        bt = burnside_table(g)
        cells = {f"{i},{j}": list(v) for (i, j), v in sorted(bt.cells.items())}
        return {"group": g.label, "labels": bt.labels, "dims": bt.dims, "table": bt.to_rows(), "cells": cells,
                "oracle_match": bt.cells == burnside_oracle(g),
                "semisimplicity": verify_semisimplicity(g, d).to_dict()}
    return build_group_with_zero(g), {"group": g.label, "max_dim": d}, compute, lambda p: (
        ["class"] + p["labels"], p["table"])


def cmd_paper_examples(args):
    from .forest import FREE1
    from .rep import describe_forest, paper_examples

    def compute():
        out = paper_examples().to_dict()
        for row in out["data"]["displays"]:
            for f in ("printed", "computed", "oracle"):
                row[f + "_text"] = describe_forest(row[f])
        return out

    def table(p):
        rows = []
        for r in p["data"]["displays"]:
            op = "^" if r["product"] == "smash" else "(x)"
            rows.append([f"{r['left']} {op} {r['right']}", r["printed_text"], r["computed_text"],
                         r["oracle_text"], "yes" if r["matches_printed"] else "no"])
        return ["display", "printed", "computed", "oracle", "matches printed"], rows
    return FREE1, {}, compute, table


def cmd_cache_info(args):
    return None, None, None, None


COMMANDS = {
    "enumerate": (cmd_enumerate, "list isomorphism classes of a given dimension"),
    "decompose": (cmd_decompose, "split a module into indecomposables"),
    "submodules": (cmd_submodules, "list submodules with their sub/quotient classes"),
    "product": (cmd_product, "Hall product of two classes"),
    "coproduct": (cmd_coproduct, "coproduct of a class"),
    "antipode": (cmd_antipode, "antipode of a class"),
    "bracket": (cmd_bracket, "Lie bracket of two indecomposable classes"),
    "table": (cmd_table, "structure constants up to --max-dim"),
    "axioms": (_suite(_axioms, 3), "verify the Hopf algebra axioms"),
    "pbw": (_suite(_pbw, 3), "verify the PBW basis ranks"),
    "k0": (cmd_k0, "truncated Grothendieck group"),
    "classify": (cmd_classify, "shape of an indecomposable one-generator module"),
    "cuts": (cmd_cuts, "admissible cuts of a forest"),
    "kreimer": (cmd_kreimer, "Kreimer coproduct of a forest"),
    "duality": (cmd_duality, "Hall numbers against Kreimer coefficients"),
    "smash": (_product_cmd("smash"), "smash product of two modules"),
    "tensor": (_product_cmd("tensor"), "tensor product of two modules"),
    "cartesian": (_product_cmd("cartesian"), "Cartesian product of two modules"),
    "reptable": (cmd_reptable, "Rep ring products of indecomposables"),
    "burnside": (cmd_burnside, "Burnside ring table of a built-in group"),
    "paper-examples": (cmd_paper_examples, "forest product displays, printed vs computed"),
    "cache-info": (cmd_cache_info, "summarize a cache file"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", default="free:1", help="semigroup spec (default free:1)")
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--cache", metavar="FILE", help="JSON cache file for computed results")
    common.add_argument("--max-dim", type=int, metavar="N", help="dimension bound for table-like commands")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks (default 0)")

    parser = argparse.ArgumentParser(prog=PROG, description="Hall algebras of finite pointed-set modules.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "enumerate":
            p.add_argument("--dim", type=int)
        if name in ("enumerate", "table", "axioms", "pbw", "k0"):
            p.add_argument("--filter", choices=FILTERS, default="all")
        if name in ("decompose", "submodules", "coproduct", "antipode", "classify"):
            p.add_argument("--module", help="module text 'd; t:[...]', a key, or a forest")
        if name in ("product", "bracket", "smash", "tensor", "cartesian"):
            p.add_argument("--left")
            p.add_argument("--right")
        if name in ("cuts", "kreimer"):
            p.add_argument("--forest")
        if name == "cuts":
            p.add_argument("--extended", action="store_true", help="allow cutting root edges")
            p.add_argument("--simple", action="store_true", help="single-edge cuts of a tree")
        if name == "duality":
            p.add_argument("--max-vertices", type=int, default=5)
        if name == "reptable":
            p.add_argument("--kind", choices=("smash", "tensor"), default="smash")
        if name == "burnside":
            p.add_argument("--group", default="s3")
    return parser


def render(payload, table_fn, fmt: str) -> str:
    if fmt == "json":
        return enc.dump_json(payload)
    headers, rows = table_fn(payload)
    return enc.to_csv(headers, rows) if fmt == "csv" else enc.to_markdown(headers, rows)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = ResultCache(args.cache) if args.cache else None
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.command == "cache-info":
                if cache is None:
                    raise ParseError("cache-info needs --cache FILE")
                payload = cache.info()
                text = render(payload, lambda p: (["fingerprint", "entries", "keys"],
                                                  [[s["fingerprint"], s["entries"], s["keys"]] for s in p["specs"]]),
                              args.format)
            else:
                spec, inputs, compute, table_fn = COMMANDS[args.command][0](args)
                payload = cache_get_or_compute(cache, spec.fingerprint, args.command, inputs, compute, _collect_keys)
                text = render(payload, table_fn, args.format)
        for w in caught:
            print(f"warning: {w.message}", file=stderr)
    except ParseError as exc:
        print(f"{PROG}: usage error: {exc}", file=stderr)
        return 2
    except F1HallError as exc:
        print(f"{PROG}: error: {exc}", file=stderr)
        return 1
    stdout.write(text)
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
