"""Plain-text file formats.

All formats ignore blank lines and lines starting with ``#``; the printers
emit the canonical form, so ``parse(print(x)) == x``.

table        first line n, then n rows of n 0-based indices (row x: x*y)
translist    first line degree d, then one image list of length d per line
cascade      TOP / BOTTOM transformation lists, then EVENTS lines
             ``name top_index dep_0 ... dep_{k-1}`` indexing the sorted
             element lists of the closed top and bottom
function     ``label -> label`` lines (optional ``# codomain: ...`` line)
relation     ``s: t1 t2 ...`` lines, one per source element (optional
             ``# target-order: n`` line; otherwise max index + 1)
elementmap   ``u -> s`` lines (optional ``# codomain-order: n`` line)
encoding     ``in label -> state`` and ``out label -> state`` lines
"""

from __future__ import annotations

from typing import Iterable

from .algebra import MulTable
from .constructions import Cascade, CascadeEvent, FiniteFunction
from .emulation import ElementMap, Encoding, Relation
from .errors import FormatError, StructuralError
from .transforms import Transformation, TransSgp, closure


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def directives(text: str) -> dict[str, str]:
    out = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if ln.startswith("#") and ":" in ln:
            key, _, value = ln[1:].partition(":")
            out[key.strip().lower()] = value.strip()
    return out


def _ints(line: str, where: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"{where}: expected integers, got {line!r}") from None


def parse_table(text: str) -> MulTable:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty table file")
    header = _ints(lines[0], "table header")
    if len(header) != 1 or header[0] < 1:
        raise FormatError("table header must be a single positive order")
    n = header[0]
    if len(lines) != n + 1:
        raise FormatError(f"table of order {n} needs {n} rows, found {len(lines) - 1}")
    rows = [_ints(ln, f"table row {i}") for i, ln in enumerate(lines[1:])]
    try:
        return MulTable(tuple(tuple(r) for r in rows))
    except StructuralError as exc:
        raise FormatError(str(exc)) from None


def format_table(table: MulTable) -> str:
    return f"{table.order}\n" + "".join(" ".join(map(str, row)) + "\n" for row in table.entries)


def parse_translist(text: str) -> tuple[int, list[Transformation]]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty transformation list")
    header = _ints(lines[0], "degree line")
    if len(header) != 1 or header[0] < 1:
        raise FormatError("first line must be a single positive degree")
    d = header[0]
    out = []
    for i, ln in enumerate(lines[1:]):
        images = _ints(ln, f"transformation {i}")
        if len(images) != d:
            raise FormatError(f"transformation {i} has {len(images)} images, expected {d}")
        try:
            out.append(Transformation(tuple(images)))
        except StructuralError as exc:
            raise FormatError(f"transformation {i}: {exc}") from None
    return d, out


def format_translist(degree: int, maps: Iterable[Transformation]) -> str:
    return f"{degree}\n" + "".join(" ".join(map(str, f.images)) + "\n" for f in maps)


def load_trans_sgp(text: str) -> TransSgp:
    d, maps = parse_translist(text)
    if not maps:
        raise FormatError("transformation list has no transformations")
    return closure(maps)


def format_trans_sgp(s: TransSgp) -> str:
    return format_translist(s.degree, s.elements)


def parse_cascade(text: str) -> Cascade:
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.upper() in ("TOP", "BOTTOM", "EVENTS"):
            current = ln.upper()
            if current in sections:
                raise FormatError(f"section {current} appears twice")
            sections[current] = []
            continue
        if current is None:
            raise FormatError(f"content before the first section: {ln!r}")
        sections[current].append(ln)
    for name in ("TOP", "BOTTOM", "EVENTS"):
        if name not in sections:
            raise FormatError(f"cascade file is missing section {name}")
    top = load_trans_sgp("\n".join(sections["TOP"]))
    bottom = load_trans_sgp("\n".join(sections["BOTTOM"]))
    events = []
    for ln in sections["EVENTS"]:
        name, *rest = ln.split()
        idx = _ints(" ".join(rest), f"event {name}")
        if len(idx) != top.degree + 1:
            raise FormatError(f"event {name} needs 1 + {top.degree} indices, got {len(idx)}")
        try:
            events.append(CascadeEvent(
                name, top.elements[idx[0]], tuple(bottom.elements[i] for i in idx[1:])))
        except IndexError:
            raise FormatError(f"event {name} references an element index out of range") from None
    try:
        return Cascade(top, bottom, tuple(events))
    except StructuralError as exc:
        raise FormatError(str(exc)) from None


def format_cascade(c: Cascade) -> str:
    top_pos = {f: i for i, f in enumerate(c.top.elements)}
    bottom_pos = {f: i for i, f in enumerate(c.bottom.elements)}
    out = ["TOP\n", format_trans_sgp(c.top), "BOTTOM\n", format_trans_sgp(c.bottom), "EVENTS\n"]
    for e in c.events:
        idx = [top_pos[e.top_part]] + [bottom_pos[d] for d in e.dependency]
        out.append(e.name + " " + " ".join(map(str, idx)) + "\n")
    return "".join(out)


def parse_function(text: str) -> FiniteFunction:
    mapping: dict[str, str] = {}
    for ln in _lines(text):
        left, sep, right = ln.partition("->")
        if not sep or not left.strip() or not right.strip():
            raise FormatError(f"expected 'label -> label', got {ln!r}")
        x, y = left.strip(), right.strip()
        if x in mapping:
            raise FormatError(f"label {x!r} is mapped twice")
        mapping[x] = y
    if not mapping:
        raise FormatError("function file has no entries")
    codomain = directives(text).get("codomain")
    try:
        return FiniteFunction.from_dict(mapping, codomain.split() if codomain else None)
    except StructuralError as exc:
        raise FormatError(str(exc)) from None


def format_function(f: FiniteFunction) -> str:
    return (f"# codomain: {' '.join(f.codomain)}\n"
            + "".join(f"{x} -> {y}\n" for x, y in f.mapping))


def parse_relation(text: str, target_order: int | None = None) -> Relation:
    entries: dict[int, list[int]] = {}
    for ln in _lines(text):
        left, sep, right = ln.partition(":")
        if not sep:
            raise FormatError(f"expected 's: t1 t2 ...', got {ln!r}")
        s = _ints(left, "relation source")
        if len(s) != 1:
            raise FormatError(f"bad relation source {left!r}")
        if s[0] in entries:
            raise FormatError(f"source {s[0]} listed twice")
        entries[s[0]] = _ints(right, f"relation images of {s[0]}")
    n = len(entries)
    if sorted(entries) != list(range(n)):
        raise FormatError("relation must list sources 0..n-1")
    declared = directives(text).get("target-order")
    if declared is not None:
        target_order = int(declared)
    if target_order is None:
        target_order = 1 + max((v for vs in entries.values() for v in vs), default=0)
    try:
        return Relation(target_order, tuple(frozenset(entries[s]) for s in range(n)))
    except StructuralError as exc:
        raise FormatError(str(exc)) from None


def format_relation(rel: Relation) -> str:
    return (f"# target-order: {rel.target_order}\n"
            + "".join(f"{s}: {' '.join(map(str, sorted(images)))}".rstrip() + "\n"
                      for s, images in enumerate(rel.image_sets)))


def parse_element_map(text: str, codomain_order: int | None = None) -> ElementMap:
    entries: dict[int, int] = {}
    for ln in _lines(text):
        left, sep, right = ln.partition("->")
        if not sep:
            raise FormatError(f"expected 'u -> s', got {ln!r}")
        u, v = _ints(left, "map source"), _ints(right, "map target")
        if len(u) != 1 or len(v) != 1:
            raise FormatError(f"bad map line {ln!r}")
        if u[0] in entries:
            raise FormatError(f"{u[0]} is mapped twice")
        entries[u[0]] = v[0]
    n = len(entries)
    if sorted(entries) != list(range(n)):
        raise FormatError("map must cover 0..n-1")
    declared = directives(text).get("codomain-order")
    if declared is not None:
        codomain_order = int(declared)
    if codomain_order is None:
        codomain_order = 1 + max(entries.values(), default=0)
    try:
        return ElementMap(tuple(entries[u] for u in range(n)), codomain_order)
    except StructuralError as exc:
        raise FormatError(str(exc)) from None


def format_element_map(mu: ElementMap) -> str:
    return (f"# codomain-order: {mu.codomain_order}\n"
            + "".join(f"{u} -> {v}\n" for u, v in enumerate(mu.images)))


def parse_encoding(text: str) -> Encoding:
    ins: dict[str, int] = {}
    outs: dict[str, int] = {}
    for ln in _lines(text):
        kind, _, rest = ln.partition(" ")
        left, sep, right = rest.partition("->")
        if kind not in ("in", "out") or not sep:
            raise FormatError(f"expected 'in|out label -> state', got {ln!r}")
        state = _ints(right, "encoded state")
        if len(state) != 1:
            raise FormatError(f"bad state in {ln!r}")
        (ins if kind == "in" else outs)[left.strip()] = state[0]
    try:
        return Encoding(ins, outs)
    except StructuralError as exc:
        raise FormatError(str(exc)) from None


def format_encoding(enc: Encoding) -> str:
    return ("".join(f"in {x} -> {v}\n" for x, v in enc.input_encode.items())
            + "".join(f"out {y} -> {v}\n" for y, v in enc.output_decode.items()))


def parse_closed_sets(text: str) -> list[tuple[int, ...]]:
    return [tuple(_ints(ln, "closed set")) for ln in _lines(text)]
