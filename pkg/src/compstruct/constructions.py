"""Named constructions: flip-flop, lookup-table semigroups, products, cascades."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra import MulTable, as_table
from .errors import DomainError, ExtractionError, StructuralError
from .transforms import (
    Transformation,
    TransSgp,
    as_transformation,
    closure,
    constant,
    identity,
)

LOOKUP_LABEL = "ℓ"
FLIP_FLOP_LABELS = ("r", "0", "1")
# top-state order of the XOR cascade, as the states are laid out left to right
XOR_TOP_STATES = ("00", "11", "01", "10")


@dataclass(frozen=True)
class FiniteFunction:
    """A total map between finite label sets.

    Domain and codomain may share labels here; :func:`lookup_semigroup`
    is where disjointness is required.
    """

    domain: tuple[str, ...]
    codomain: tuple[str, ...]
    mapping: tuple[tuple[str, str], ...]

    def __post_init__(self):
        domain, codomain = tuple(self.domain), tuple(self.codomain)
        if len(set(domain)) != len(domain) or len(set(codomain)) != len(codomain):
            raise StructuralError("labels must be distinct")
        pairs = dict(self.mapping)
        if set(pairs) != set(domain):
            missing = sorted(set(domain) - set(pairs))
            raise StructuralError(f"function is not total on its domain, missing {missing}")
        for x, y in pairs.items():
            if y not in codomain:
                raise StructuralError(f"{x} -> {y}: {y} is not in the codomain")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "mapping", tuple((x, pairs[x]) for x in domain))

    @classmethod
    def from_dict(cls, mapping: Mapping[str, str], codomain: Iterable[str] | None = None):
        domain = tuple(mapping)
        if codomain is None:
            codomain = tuple(dict.fromkeys(mapping.values()))
        return cls(domain, tuple(codomain), tuple(mapping.items()))

    def __call__(self, x: str) -> str:
        return dict(self.mapping)[x]

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)


def disjoint_copy(f: FiniteFunction, suffix: str = "'") -> FiniteFunction:
    """Rename the codomain to ``y + suffix`` so that it no longer meets the domain."""
    rename = {y: y + suffix for y in f.codomain}
    clash = set(rename.values()) & set(f.domain)
    if clash:
        raise DomainError(f"suffix {suffix!r} still collides with {sorted(clash)}")
    return FiniteFunction(
        f.domain,
        tuple(rename[y] for y in f.codomain),
        tuple((x, rename[y]) for x, y in f.mapping),
    )


def flip_flop() -> MulTable:
    """The 1-bit memory monoid with elements ordered (r, 0, 1)."""
    return MulTable(((0, 1, 2), (1, 1, 2), (2, 1, 2)))


def lookup_semigroup(f: FiniteFunction) -> tuple[MulTable, tuple[str, ...]]:
    """Resets on ``X ∪ Y`` plus one lookup element ``ℓ`` with ``xℓ = f(x)``.

    Element order is domain labels, codomain labels, then ``ℓ``.  Returns the
    table and the label of each index.
    """
    if not f.domain:
        raise DomainError("lookup semigroup needs a nonempty domain")
    overlap = set(f.domain) & set(f.codomain)
    if overlap:
        raise DomainError(
            f"domain and codomain overlap on {sorted(overlap)}; use disjoint_copy first")
    labels = f.domain + f.codomain + (LOOKUP_LABEL,)
    if LOOKUP_LABEL in f.domain or LOOKUP_LABEL in f.codomain:
        raise DomainError(f"label {LOOKUP_LABEL!r} is reserved for the lookup element")
    pos = {label: i for i, label in enumerate(labels)}
    n = len(labels)
    ell = n - 1
    in_domain = set(range(len(f.domain)))
    image = {pos[x]: pos[y] for x, y in f.mapping}
    rows = []
    for s in range(n):
        row = list(range(n))  # every non-lookup column is a reset
        row[ell] = image[s] if s in in_domain else s
        rows.append(tuple(row))
    return MulTable(tuple(rows)), labels


def direct_product(a, b) -> MulTable:
    """Componentwise product; pair ``(i, j)`` has index ``i*|b| + j``."""
    ta, tb = as_table(a).entries, as_table(b).entries
    m = len(tb)
    rows = []
    for i in range(len(ta)):
        for j in range(m):
            rows.append(tuple(ta[i][k] * m + tb[j][l] for k in range(len(ta)) for l in range(m)))
    return MulTable(tuple(rows))


@dataclass(frozen=True)
class CascadeEvent:
    name: str
    top_part: Transformation
    dependency: tuple[Transformation, ...]


@dataclass(frozen=True)
class Cascade:
    """Two-level cascade: the top acts freely, the bottom's move depends on the top state."""

    top: TransSgp
    bottom: TransSgp
    events: tuple[CascadeEvent, ...]

    def __post_init__(self):
        top_set, bottom_set = set(self.top.elements), set(self.bottom.elements)
        names = [e.name for e in self.events]
        if len(set(names)) != len(names):
            raise StructuralError("event names must be unique")
        for e in self.events:
            if e.top_part not in top_set:
                raise StructuralError(f"event {e.name}: top part is not a top element")
            if len(e.dependency) != self.top.degree:
                raise StructuralError(
                    f"event {e.name}: dependency has {len(e.dependency)} entries, "
                    f"expected one per top state ({self.top.degree})")
            for d in e.dependency:
                if d not in bottom_set:
                    raise StructuralError(f"event {e.name}: dependency entry {d} is not a bottom element")

    @property
    def degree(self) -> int:
        return self.top.degree * self.bottom.degree

    def state_index(self, top_state: int, bottom_state: int) -> int:
        return top_state * self.bottom.degree + bottom_state

    def split_state(self, index: int) -> tuple[int, int]:
        return divmod(index, self.bottom.degree)

    def event(self, name: str) -> CascadeEvent:
        for e in self.events:
            if e.name == name:
                return e
        raise DomainError(f"unknown event {name!r}")

    def event_transformations(self) -> dict[str, Transformation]:
        return {e.name: flatten_event(self, e) for e in self.events}


def flatten_event(c: Cascade, event: CascadeEvent) -> Transformation:
    k, m = c.top.degree, c.bottom.degree
    images = []
    for x in range(k):
        tx = event.top_part.images[x]
        dep = event.dependency[x].images
        for y in range(m):
            images.append(tx * m + dep[y])
    return Transformation(tuple(images))


def cascade_flatten(c: Cascade) -> TransSgp:
    """Closure of the pair-state event maps ``(x, y) -> (x·s, y·d[x])``.

    Generators are listed in event order.
    """
    if not c.events:
        raise DomainError("cascade has no events to generate from")
    gens = [flatten_event(c, e) for e in c.events]
    s = closure(gens)
    return TransSgp(s.degree, s.elements, tuple(gens))


def project_top(c: Cascade, g) -> Transformation | None:
    """First-coordinate action of a flattened map, or None if it depends on the bottom."""
    g = as_transformation(g)
    m = c.bottom.degree
    images = []
    for x in range(c.top.degree):
        tops = {g.images[x * m + y] // m for y in range(m)}
        if len(tops) != 1:
            return None
        images.append(tops.pop())
    return Transformation(tuple(images))


def xor_cascade() -> Cascade:
    """Reversible top component on (00, 11, 01, 10) with an XOR readout below."""
    t = Transformation((0, 2, 1, 3))  # swaps 11 and 01
    top = closure([t])
    r0, r1, one = constant(2, 0), constant(2, 1), identity(2)
    bottom = closure([r0, r1, one])
    select = {"0": r0, "1": r1}

    def parity(bits: str) -> str:
        return str(int(bits[0]) ^ int(bits[1]))

    readout = tuple(select[parity(state)] for state in XOR_TOP_STATES)
    events = (
        CascadeEvent("t", t, (one,) * 4),
        CascadeEvent("readout", identity(4), readout),
    )
    return Cascade(top, bottom, events)


def bit_label(index: int, width: int) -> str:
    return format(index, f"0{width}b") if width else ""


def _bit_width(size: int) -> int:
    width = size.bit_length() - 1
    if size < 1 or 1 << width != size:
        raise DomainError(f"degree {size} is not a power of two")
    return width


def piggyback_extract(perm, in_bits: Sequence[int], out_bits: Sequence[int],
                      fixed: Mapping[int, int] | None = None) -> FiniteFunction:
    """Read a function off a bijection on bit strings by watching selected bits.

    States are ``w``-bit strings, bit 0 being the leftmost character.  The
    input of the extracted function is the ``in_bits`` substring of the
    start state, restricted to starts whose ``fixed`` bits match; the output
    is the ``out_bits`` substring of where the permutation sends it.
    """
    perm = as_transformation(perm)
    if not perm.is_permutation():
        raise DomainError(f"{perm} is not a permutation")
    width = _bit_width(perm.degree)
    fixed = dict(fixed or {})
    for pos in list(in_bits) + list(out_bits) + list(fixed):
        if not 0 <= pos < width:
            raise DomainError(f"bit position {pos} outside 0..{width - 1}")
    if set(in_bits) & set(fixed):
        raise DomainError("a bit cannot be both an input and fixed")
    table: dict[str, str] = {}
    for state in range(perm.degree):
        label = bit_label(state, width)
        if any(label[pos] != str(val) for pos, val in fixed.items()):
            continue
        x = "".join(label[pos] for pos in in_bits)
        target = bit_label(perm.images[state], width)
        y = "".join(target[pos] for pos in out_bits)
        if table.setdefault(x, y) != y:
            raise ExtractionError(f"input {x} reads out both {table[x]} and {y}")
    domain = tuple(sorted(table))
    codomain = tuple(bit_label(v, len(out_bits)) for v in range(1 << len(out_bits)))
    return FiniteFunction(domain, codomain, tuple((x, table[x]) for x in domain))


def xor_embedding() -> Transformation:
    """The bijection 00->00, 01->11, 10->10, 11->01 that carries XOR and FAN-OUT."""
    return Transformation((0, 3, 2, 1))
