"""Text formats: the spec mini-language, module text, JSON payloads and tables.

Spec strings::

    free:k          free monoid on k generators
    tcong:n,0       <t> with t^n = 0
    tcong:n,m       <t> with t^n = t^m, 1 <= m < n
    tcong:n,t0      <t> with t^n = 1 (also accepted: tcong:n,t^m for any m)
    gz:zN, gz:sN    a built-in group with a zero adjoined
    gz:table@FILE   group table file
    path:@FILE      quiver file
    table@FILE      semigroup table file

Module text is ``d; g1:[...]; g2:[...]`` listing the images of 1..d.
"""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path

from .canon import key_of, module_from_key
from .errors import ParseError, SpecError
from .groups import builtin_group, make_group
from .hall import HallElement, TensorElement
from .module import AModule, format_module, validate_module
from .semigroup import (
    Quiver,
    SemigroupSpec,
    build_finite_table,
    build_free_monoid,
    build_group_with_zero,
    build_path_semigroup,
    build_t_congruence,
)

# -- semigroup specs --------------------------------------------------------------

_TCONG = re.compile(r"^(\d+),(?:(\d+)|t\^?(\d+))$")


def _read_file(path: str, text: str, offset: int) -> list[list[str]]:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc.strerror}", text, offset) from None
    lines = []
    for line in raw.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line.replace(",", " ").split())
    if not lines:
        raise ParseError(f"{path!r} is empty", text, offset)
    return lines


def _table_rows(lines, path):
    names = lines[0]
    index = {n: i for i, n in enumerate(names)}
    if len(index) != len(names):
        raise SpecError(f"{path}: element names repeat")
    rows = []
    for r, line in enumerate(lines[1:], start=2):
        try:
            rows.append([index[x] for x in line])
        except KeyError as exc:
            raise SpecError(f"{path}: line {r} uses unknown element {exc.args[0]!r}") from None
    return names, rows


def read_semigroup_table(path: str, text: str = "", offset: int = 0) -> SemigroupSpec:
    """Table file: element names on the first line, then one product row per element.

    The element named ``0`` is the zero; an element named ``1`` is the unit
    when it acts as one.
    """
    names, rows = _table_rows(_read_file(path, text, offset), path)
    if "0" not in names:
        raise SpecError(f"{path}: a semigroup table needs an element named 0")
    unit = names.index("1") if "1" in names else None
    return build_finite_table(names, rows, names.index("0"), unit, text=f"table@{path}")


def read_group_table(path: str, text: str = "", offset: int = 0):
    names, rows = _table_rows(_read_file(path, text, offset), path)
    return make_group(names, rows, label=f"table@{path}")


def read_quiver(path: str, text: str = "", offset: int = 0) -> Quiver:
    """Quiver file: ``vertices N`` then ``edge s t`` lines (1-based vertices)."""
    lines = _read_file(path, text, offset)
    n = None
    edges = []
    for words in lines:
        try:
            if words[0] == "vertices" and len(words) == 2:
                n = int(words[1])
            elif words[0] == "edge" and len(words) == 3:
                edges.append((int(words[1]), int(words[2])))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"{path}: bad quiver line {' '.join(words)!r}", text, offset) from None
    if n is None:
        raise ParseError(f"{path}: missing 'vertices N' line", text, offset)
    return Quiver(n, tuple(edges))


def parse_spec(text: str) -> SemigroupSpec:
    s = text.strip()
    if s.startswith("table@"):
        return read_semigroup_table(s[6:], text, 6)
    kind, sep, arg = s.partition(":")
    if not sep:
        raise ParseError(f"spec {text!r} needs the form kind:argument", text, len(s))
    at = len(kind) + 1
    if kind == "free":
        if not arg.isdigit():
            raise ParseError("free:k needs a positive integer", text, at)
        return build_free_monoid(int(arg))
    if kind == "tcong":
        mt = _TCONG.match(arg)
        if not mt:
            raise ParseError("tcong needs n,0 or n,m or n,t^m", text, at)
        n = int(mt.group(1))
        if mt.group(2) is not None:
            m = int(mt.group(2))
            return build_t_congruence(n, None if m == 0 else m)
        return build_t_congruence(n, int(mt.group(3)))
    if kind == "gz":
        if arg.startswith("table@"):
            return build_group_with_zero(read_group_table(arg[6:], text, at + 6))
        if not re.fullmatch(r"[zs]\d+", arg):
            raise ParseError("gz needs zN, sN or table@FILE", text, at)
        return build_group_with_zero(builtin_group(arg))
    if kind == "path":
        if not arg.startswith("@"):
            raise ParseError("path needs @FILE", text, at)
        return build_path_semigroup(read_quiver(arg[1:], text, at + 1), text=s)
    raise ParseError(f"unknown spec kind {kind!r}", text, 0)


# -- modules -----------------------------------------------------------------------

_INT = re.compile(r"\s*(\d+)\s*")
_ROW = re.compile(r"\s*([^\s:;\[\]]+)\s*:\s*\[([^\]]*)\]\s*")


def parse_module(spec: SemigroupSpec, text: str) -> AModule:
    """Parse ``d; g:[...]; ...``; a dimension-0 module may omit its rows."""
    mt = _INT.match(text)
    if not mt:
        raise ParseError("module text must start with its dimension", text, 0)
    dim = int(mt.group(1))
    pos = mt.end()
    rows = {}
    while pos < len(text):
        if text[pos] != ";":
            raise ParseError("expected ';'", text, pos)
        pos += 1
        if not text[pos:].strip():
            break
        mr = _ROW.match(text, pos)
        if not mr:
            raise ParseError("expected 'name:[images]'", text, pos)
        name, body = mr.group(1), mr.group(2)
        if name in rows:
            raise ParseError(f"generator {name!r} given twice", text, pos)
        values = []
        start = mr.start(2)
        for piece in body.split(","):
            if piece.strip():
                if not piece.strip().isdigit():
                    raise ParseError(f"bad entry {piece.strip()!r}", text, start)
                values.append(int(piece))
            start += len(piece) + 1
        rows[name] = values
        pos = mr.end()
    if dim == 0 and not rows:
        rows = {g: [] for g in spec.generators}
    return validate_module(spec, rows, dim)


def parse_operand(spec: SemigroupSpec, text: str) -> AModule:
    """A module given as module text, as a canonical key, or (one generator) as a forest."""
    s = text.strip()
    if s.startswith("(") or s == "∅":
        from .forest import Forest, forest_to_module

        return forest_to_module(Forest.parse(s), spec)
    if "|" in s:
        try:
            m = module_from_key(spec, s)
        except ValueError as exc:
            raise ParseError(f"bad module key: {exc}", text, 0) from None
        return validate_module(spec, [list(r[1:]) for r in m.rows], m.dim)
    return parse_module(spec, s)


def module_to_json(m: AModule) -> dict:
    return {
        "fingerprint": m.spec.fingerprint,
        "dim": m.dim,
        "rows": {g: list(r[1:]) for g, r in zip(m.spec.generators, m.rows)},
        "key": key_of(m),
    }


def module_from_json(spec: SemigroupSpec, data: dict) -> AModule:
    if data.get("fingerprint") not in (None, spec.fingerprint):
        raise SpecError("module JSON belongs to a different semigroup")
    return validate_module(spec, data["rows"], data["dim"])


# -- algebra elements ------------------------------------------------------------------

def rational_text(q) -> str:
    return str(Fraction(q))


def hall_to_json(x: HallElement) -> list:
    return [{"key": k, "coeff": rational_text(v)} for k, v in x.items()]


def hall_from_json(spec: SemigroupSpec, data) -> HallElement:
    return HallElement(spec, {d["key"]: Fraction(d["coeff"]) for d in data})


def tensor_to_json(x: TensorElement) -> list:
    return [{"left": a, "right": b, "coeff": rational_text(v)} for (a, b), v in x.items()]


def tensor_from_json(spec: SemigroupSpec, data) -> TensorElement:
    return TensorElement(spec, {(d["left"], d["right"]): Fraction(d["coeff"]) for d in data})


def rep_to_json(x) -> list:
    return [{"key": k, "coeff": v} for k, v in x.items()]


def rep_from_json(spec: SemigroupSpec, data):
    from .rep import RepElement

    return RepElement(spec, {d["key"]: int(d["coeff"]) for d in data})


# -- output ------------------------------------------------------------------------------

def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def to_csv(headers, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _md_cell(x) -> str:
    return str(x).replace("|", "\\|").replace("\n", " ")


def to_markdown(headers, rows) -> str:
    lines = ["| " + " | ".join(_md_cell(h) for h in headers) + " |"]
    lines.append("|" + "|".join("---" for _ in headers) + "|")
    for r in rows:
        lines.append("| " + " | ".join(_md_cell(x) for x in r) + " |")
    return "\n".join(lines) + "\n"


__all__ = [
    "parse_spec", "parse_module", "parse_operand", "format_module",
    "module_to_json", "module_from_json", "hall_to_json", "hall_from_json",
    "tensor_to_json", "tensor_from_json", "rep_to_json", "rep_from_json",
    "dump_json", "to_csv", "to_markdown", "read_semigroup_table", "read_group_table", "read_quiver",
]
