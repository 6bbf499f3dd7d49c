"""Command-line front end.

Exit codes: 0 success / property verified, 1 property fails (witness on
stdout), 2 usage or file-format error, 3 resource guard hit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra, constructions, emulation, enumeration, formats, transforms
from .errors import CompStructError, DomainError, ExtractionError, FormatError, ResourceError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _table(path: str) -> algebra.MulTable:
    return formats.parse_table(_read(path))


def _positions(spec: str) -> list[int]:
    try:
        return [int(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise FormatError(f"bad bit-position list {spec!r}") from None


def cmd_assoc(args) -> int:
    verdict = algebra.is_associative(_table(args.table))
    if verdict:
        print("associative")
        return EXIT_OK
    x, y, z = verdict.witness
    print(f"violation {x} {y} {z}")
    return EXIT_FAIL


def _index_set(items) -> str:
    return " ".join(map(str, sorted(items)))


def cmd_props(args) -> int:
    t = _table(args.table)
    e = algebra.identity_element(t)
    print(f"order: {t.order}")
    print(f"idempotents: {_index_set(algebra.idempotents(t))}".rstrip())
    print(f"resets: {_index_set(algebra.resets(t))}".rstrip())
    print(f"identity: {'none' if e is None else e}")
    return EXIT_OK


def cmd_cayley(args) -> int:
    s = algebra.cayley_embedding(_table(args.table))
    # line x is the image of element x
    sys.stdout.write(formats.format_translist(s.degree, s.generators))
    return EXIT_OK


def cmd_iso(args) -> int:
    pi = algebra.are_isomorphic(_table(args.a), _table(args.b))
    if pi is None:
        print("not isomorphic")
        return EXIT_FAIL
    print("isomorphic")
    for x, y in pi.items():
        print(f"{x} -> {y}")
    return EXIT_OK


def cmd_closure(args) -> int:
    sys.stdout.write(formats.format_trans_sgp(formats.load_trans_sgp(_read(args.trans))))
    return EXIT_OK


def cmd_fulltrans(args) -> int:
    sys.stdout.write(formats.format_trans_sgp(transforms.full_transformation_semigroup(args.n)))
    return EXIT_OK


def cmd_flipflop(args) -> int:
    sys.stdout.write(formats.format_table(constructions.flip_flop()))
    return EXIT_OK


def cmd_lookup(args) -> int:
    f = formats.parse_function(_read(args.function))
    if args.copy:
        f = constructions.disjoint_copy(f)
    table, labels = constructions.lookup_semigroup(f)
    print(f"# labels: {' '.join(labels)}")
    sys.stdout.write(formats.format_table(table))
    return EXIT_OK


def cmd_product(args) -> int:
    a, b = _table(args.a), _table(args.b)
    algebra.require_associative(a)
    algebra.require_associative(b)
    sys.stdout.write(formats.format_table(constructions.direct_product(a, b)))
    return EXIT_OK


def cmd_cascade(args) -> int:
    c = formats.parse_cascade(_read(args.cascade))
    flat = constructions.cascade_flatten(c)
    for e, g in zip(c.events, flat.generators):
        print(f"# event {e.name}: {' '.join(map(str, g.images))}")
    sys.stdout.write(formats.format_trans_sgp(flat))
    return EXIT_OK


def cmd_xor_demo(args) -> int:
    c = constructions.xor_cascade()
    ok = True
    for a in (0, 1):
        for b in (0, 1):
            bits = f"{a}{b}"
            top = constructions.XOR_TOP_STATES.index(bits)
            outs = {emulation.run_cascade(c, top, y0, ["readout"])[1] for y0 in (0, 1)}
            out = outs.pop() if len(outs) == 1 else None
            ok &= out == (a ^ b)
            print(f"{bits} -> {out if out is not None else '?'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_piggyback(args) -> int:
    degree, maps = formats.parse_translist(_read(args.trans))
    if len(maps) != 1:
        raise FormatError("piggyback expects exactly one permutation in the file")
    fixed = {}
    for item in args.fix or []:
        pos, sep, val = item.partition("=")
        if not sep or val not in ("0", "1"):
            raise FormatError(f"bad --fix {item!r}; use POS=0 or POS=1")
        fixed[int(pos)] = int(val)
    try:
        f = constructions.piggyback_extract(maps[0], _positions(args.in_bits), _positions(args.out_bits), fixed)
    except ExtractionError as exc:
        print(f"not a function: {exc}")
        return EXIT_FAIL
    sys.stdout.write(formats.format_function(f))
    return EXIT_OK


def _print_verdict(verdict) -> int:
    if verdict:
        print("ok")
        return EXIT_OK
    for clause, witness in verdict.failures or ((verdict.clause, verdict.witness),):
        print(f"fail {clause} {' '.join(map(str, witness))}".rstrip())
    return EXIT_FAIL


def cmd_check_relation(args) -> int:
    s, t = _table(args.s), _table(args.t)
    rel = formats.parse_relation(_read(args.relation), target_order=t.order)
    return _print_verdict(emulation.is_isomorphic_relation(rel, s, t))


def cmd_check_modelling(args) -> int:
    t, s = _table(args.t), _table(args.s)
    mu = formats.parse_element_map(_read(args.map), codomain_order=s.order)
    return _print_verdict(emulation.is_modelling(mu, t, s))


def cmd_divides(args) -> int:
    s = _table(args.s)
    target_text = _read(args.t)
    t = formats.parse_table(target_text) if args.target_table else formats.load_trans_sgp(target_text)
    limits = emulation.DivisionLimits(
        max_source=args.max_source, max_target=args.max_target,
        max_subsemigroups=args.max_subsemigroups, max_hom_nodes=args.max_hom_nodes)
    result = emulation.find_division(s, t, limits)
    stats = f"subsemigroups={result.subsemigroups_visited} hom-nodes={result.hom_nodes}"
    if result.witness is None:
        print(f"no division (exhaustive; {stats})")
        return EXIT_FAIL
    w = result.witness
    print(f"divides ({stats})")
    print(f"subsemigroup: {' '.join(map(str, w.subsemigroup))}")
    print("relation:")
    sys.stdout.write(formats.format_relation(w.relation))
    return EXIT_OK


def _machine_from(text: str, kind: str):
    if kind == "auto":
        kind = "cascade" if any(ln.strip().upper() == "TOP" for ln in text.splitlines()) else "table"
    if kind == "cascade":
        return formats.parse_cascade(text)
    directives = formats.directives(text)
    if kind == "table":
        labels = directives.get("labels")
        return emulation.Machine.from_table(formats.parse_table(text), labels.split() if labels else None)
    degree, maps = formats.parse_translist(text)
    names = directives.get("events")
    names = names.split() if names else [f"e{i}" for i in range(len(maps))]
    if len(names) != len(maps):
        raise FormatError("'# events:' must name every transformation")
    return emulation.Machine(degree, dict(zip(names, maps)))


def cmd_run_program(args) -> int:
    structure = _machine_from(_read(args.structure), args.kind)
    enc = formats.parse_encoding(_read(args.encode))
    program = [p.strip() for p in args.program.split(",") if p.strip()]
    if args.function:
        f = formats.parse_function(_read(args.function))
        verdict = emulation.implements_function(structure, f, enc, program)
        if verdict:
            print(f"ok {verdict.detail}")
            return EXIT_OK
        x, start, end = verdict.witness
        print(f"fail output {x} {start} {end}")
        return EXIT_FAIL
    for x, state in enc.input_encode.items():
        if isinstance(structure, constructions.Cascade):
            for y0 in range(structure.bottom.degree):
                _, y = emulation.run_cascade(structure, state, y0, program)
                print(f"{x} {y0} -> {y}")
        else:
            print(f"{x} -> {structure.run(state, program)}")
    return EXIT_OK


def cmd_enum(args) -> int:
    if (args.trans is None) == (args.fulltrans is None):
        raise _UsageError("give exactly one of a transformation file or --fulltrans N")
    if args.jobs < 1:
        raise _UsageError("--jobs must be at least 1")
    if args.fulltrans is not None:
        universe = enumeration.universe_of_full(args.fulltrans)
    else:
        universe = enumeration.ElementUniverse.from_trans(formats.load_trans_sgp(_read(args.trans)))
    raw = list(enumeration.enumerate_subsemigroups(
        universe, jobs=args.jobs, long_run=args.long_run, checkpoint=args.checkpoint))
    if args.oracle:
        oracle = enumeration.bfs_oracle_enumerate(universe, long_run=args.long_run)
        primary = {frozenset(s.members) for s in raw}
        if primary != oracle:
            missing = sorted(sorted(s) for s in oracle - primary)
            extra = sorted(sorted(s) for s in primary - oracle)
            print(f"oracle mismatch: missing {len(missing)} extra {len(extra)}")
            for s in (missing + extra)[:5]:
                print(" ".join(map(str, s)))
            return EXIT_FAIL
        print(f"oracle agrees: {len(oracle)}", file=sys.stderr)
    classes = None
    if universe.elements is not None and universe.degree <= transforms.CANONICAL_FORM_LIMIT:
        classes = list(enumeration.enumerate_up_to_conjugacy(universe, raw=raw))
    summary = f"raw {len(raw)}"
    if classes is not None:
        summary += f" classes {len(classes)}"
    print(summary, file=sys.stderr)
    if args.upto_conjugacy:
        if classes is None:
            raise _UsageError("--upto-conjugacy needs a transformation universe of degree <= 6")
        sets = classes
    else:
        sets = raw
    dist = enumeration.size_distribution(sets)
    to_stdout = [p for p in (args.histogram, args.plot_data) if p == "-"]
    if args.histogram:
        _write(args.histogram, dist.to_csv())
    if args.plot_data:
        _write(args.plot_data, dist.to_gnuplot())
    listing = "".join(s.to_line() + "\n" for s in sets)
    if args.output:
        _write(args.output, listing)
    elif not to_stdout:
        sys.stdout.write(listing)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compstruct", description="Finite computational structures as semigroups.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    verb("assoc", cmd_assoc, "check associativity of a table").add_argument("table")
    verb("props", cmd_props, "idempotents, resets and identity").add_argument("table")
    verb("cayley", cmd_cayley, "faithful transformation representation").add_argument("table")
    sp = verb("iso", cmd_iso, "search for an isomorphism between two tables")
    sp.add_argument("a")
    sp.add_argument("b")
    verb("closure", cmd_closure, "close a set of transformations").add_argument("trans")
    verb("fulltrans", cmd_fulltrans, "list the full transformation semigroup").add_argument("n", type=int)
    verb("flipflop", cmd_flipflop, "print the flip-flop table")
    sp = verb("lookup", cmd_lookup, "lookup-table semigroup of a function file")
    sp.add_argument("function")
    sp.add_argument("--copy", action="store_true", help="rename the codomain first (for X -> X maps)")
    sp = verb("product", cmd_product, "direct product of two tables")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = verb("cascade", cmd_cascade, "cascade operations")
    sp.add_argument("action", choices=["flatten"])
    sp.add_argument("cascade")
    verb("xor-demo", cmd_xor_demo, "run the reversible XOR cascade on all inputs")
    sp = verb("piggyback", cmd_piggyback, "extract a function from a permutation on bit strings")
    sp.add_argument("trans")
    sp.add_argument("--in", dest="in_bits", required=True, help="comma-separated input bit positions")
    sp.add_argument("--out", dest="out_bits", required=True, help="comma-separated output bit positions")
    sp.add_argument("--fix", action="append", metavar="POS=BIT", help="restrict starts to this bit value")
    sp = verb("check-relation", cmd_check_relation, "check an isomorphic relation S -> T")
    sp.add_argument("relation")
    sp.add_argument("s")
    sp.add_argument("t")
    sp = verb("check-modelling", cmd_check_modelling, "check a surjective homomorphism T -> S")
    sp.add_argument("map")
    sp.add_argument("t")
    sp.add_argument("s")
    sp = verb("divides", cmd_divides, "search for a division of S into T")
    sp.add_argument("s")
    sp.add_argument("t")
    sp.add_argument("--target-table", action="store_true", help="T is a table file, not a transformation list")
    sp.add_argument("--max-source", type=int, default=12)
    sp.add_argument("--max-target", type=int, default=27)
    sp.add_argument("--max-subsemigroups", type=int, default=None)
    sp.add_argument("--max-hom-nodes", type=int, default=None)
    sp = verb("run-program", cmd_run_program, "run an event word on encoded inputs")
    sp.add_argument("structure")
    sp.add_argument("--program", required=True, help="comma-separated event names")
    sp.add_argument("--encode", required=True, help="encoding file")
    sp.add_argument("--function", help="function file to verify against")
    sp.add_argument("--kind", choices=["auto", "cascade", "table", "trans"], default="auto")
    sp = verb("enum", cmd_enum, "enumerate subsemigroups")
    sp.add_argument("trans", nargs="?")
    sp.add_argument("--fulltrans", type=int, metavar="N")
    sp.add_argument("--oracle", action="store_true", help="cross-check with the independent BFS search")
    sp.add_argument("--upto-conjugacy", action="store_true")
    sp.add_argument("--histogram", metavar="CSV", help="write 'order,count' CSV ('-' for stdout)")
    sp.add_argument("--plot-data", metavar="DAT", help="write gnuplot data ('-' for stdout)")
    sp.add_argument("--output", metavar="FILE", help="write the sets here instead of stdout")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--long-run", action="store_true", help="lift the degree-3 guard")
    sp.add_argument("--checkpoint", metavar="FILE", help="resume file for long runs")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CompStructError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
