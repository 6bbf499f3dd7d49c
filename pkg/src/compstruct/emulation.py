"""Implementation and modelling relations between finite semigroups.

A division (isomorphic relation) ``S -> T`` sends each element of S to a
nonempty set of elements of T, respects products setwise, and never lets
two elements share an image.  A modelling ``T -> S`` is a surjective
homomorphism; inverting one gives the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import MulTable, Verdict, as_table, closure_in_table, sub_table
from .constructions import Cascade, FiniteFunction
from .enumeration import ElementUniverse, enumerate_subsemigroups
from .errors import DomainError, ResourceError, StructuralError
from .transforms import Transformation, TransSgp, as_transformation, mul_table_of


@dataclass(frozen=True)
class Relation:
    """``image_sets[s]`` is the set of target indices related to source ``s``."""

    target_order: int
    image_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(int(v) for v in s) for s in self.image_sets)
        for s, images in enumerate(sets):
            bad = [v for v in images if not 0 <= v < self.target_order]
            if bad:
                raise StructuralError(f"source {s} relates to {bad}, outside 0..{self.target_order - 1}")
        object.__setattr__(self, "image_sets", sets)

    @property
    def source_order(self) -> int:
        return len(self.image_sets)

    def __getitem__(self, s: int) -> frozenset[int]:
        return self.image_sets[s]

    @classmethod
    def identity(cls, n: int) -> Relation:
        return cls(n, tuple(frozenset([i]) for i in range(n)))


@dataclass(frozen=True)
class ElementMap:
    """A function ``T -> S`` on indices: ``images[u]`` is the image of ``u``."""

    images: tuple[int, ...]
    codomain_order: int

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        for u, v in enumerate(images):
            if not 0 <= v < self.codomain_order:
                raise StructuralError(f"{u} -> {v}: outside 0..{self.codomain_order - 1}")
        object.__setattr__(self, "images", images)

    def __call__(self, u: int) -> int:
        return self.images[u]

    def __len__(self) -> int:
        return len(self.images)


@dataclass(frozen=True)
class Encoding:
    """Injective input/output encodings of a function's labels into states."""

    input_encode: Mapping[str, int]
    output_decode: Mapping[str, int]

    def __post_init__(self):
        for name, m in (("input", self.input_encode), ("output", self.output_decode)):
            if len(set(m.values())) != len(m):
                raise StructuralError(f"{name} encoding is not one-to-one")
        object.__setattr__(self, "input_encode", dict(self.input_encode))
        object.__setattr__(self, "output_decode", dict(self.output_decode))

    @classmethod
    def label_identity(cls, f: FiniteFunction, labels: Sequence[str]) -> Encoding:
        pos = {label: i for i, label in enumerate(labels)}
        return cls({x: pos[x] for x in f.domain}, {y: pos[y] for y in f.codomain})


def is_isomorphic_relation(phi: Relation, s, t) -> Verdict:
    """Check the homomorphic, fully defined and lossless clauses, in that order.

    Every failing clause is listed in ``failures`` with its first witness:
    ``homomorphic`` -> (s1, s2, t1, t2) with ``t1*t2`` outside ``phi(s1*s2)``;
    ``fully-defined`` -> (s,); ``lossless`` -> (s1, s2, shared target).
    """
    ts, tt = as_table(s).entries, as_table(t).entries
    if phi.source_order != len(ts) or phi.target_order != len(tt):
        raise DomainError(
            f"relation is {phi.source_order}->{phi.target_order}, structures are {len(ts)}->{len(tt)}")
    failures = []
    n = len(ts)
    hom = None
    for a, b in product(range(n), repeat=2):
        allowed = phi[ts[a][b]]
        for x in sorted(phi[a]):
            for y in sorted(phi[b]):
                if tt[x][y] not in allowed:
                    hom = (a, b, x, y)
                    break
            if hom:
                break
        if hom:
            break
    if hom:
        failures.append(("homomorphic", hom))
    empty = next((a for a in range(n) if not phi[a]), None)
    if empty is not None:
        failures.append(("fully-defined", (empty,)))
    owner: dict[int, int] = {}
    clash = None
    for a in range(n):
        for x in sorted(phi[a]):
            if x in owner:
                clash = (owner[x], a, x)
                break
            owner[x] = a
        if clash:
            break
    if clash:
        failures.append(("lossless", clash))
    if not failures:
        return Verdict(True)
    clause, witness = failures[0]
    return Verdict(False, clause, witness, tuple(failures))


def is_modelling(mu: ElementMap, t, s) -> Verdict:
    """``mu: T -> S`` must be a homomorphism and onto.

    Witnesses: ``homomorphism`` -> lexicographically first pair (u, v) with
    ``mu(uv) != mu(u)mu(v)``; ``onto`` -> the smallest missed element of S.
    """
    tt, ts = as_table(t).entries, as_table(s).entries
    if len(mu) != len(tt) or mu.codomain_order != len(ts):
        raise DomainError(f"map is {len(mu)}->{mu.codomain_order}, structures are {len(tt)}->{len(ts)}")
    m = mu.images
    failures = []
    for u, v in product(range(len(tt)), repeat=2):
        if m[tt[u][v]] != ts[m[u]][m[v]]:
            failures.append(("homomorphism", (u, v)))
            break
    missed = sorted(set(range(len(ts))) - set(m))
    if missed:
        failures.append(("onto", (missed[0],)))
    if not failures:
        return Verdict(True)
    clause, witness = failures[0]
    return Verdict(False, clause, witness, tuple(failures))


def invert(rel: Relation | ElementMap) -> Relation:
    """Relational inverse.  A modelling ``T -> S`` becomes a relation ``S -> T``."""
    if isinstance(rel, ElementMap):
        sets = [set() for _ in range(rel.codomain_order)]
        for u, v in enumerate(rel.images):
            sets[v].add(u)
        return Relation(len(rel.images), tuple(frozenset(x) for x in sets))
    sets = [set() for _ in range(rel.target_order)]
    for s, images in enumerate(rel.image_sets):
        for x in images:
            sets[x].add(s)
    return Relation(rel.source_order, tuple(frozenset(x) for x in sets))


def compose_relations(first: Relation, second: Relation) -> Relation:
    """``S -> T -> V``: relate s to everything reachable through some t."""
    if first.target_order != second.source_order:
        raise DomainError("relations do not chain")
    return Relation(second.target_order, tuple(
        frozenset().union(*(second[x] for x in images)) if images else frozenset()
        for images in first.image_sets))


def generating_sequence(table) -> list[int]:
    """Greedy generators: repeatedly take the smallest element not yet generated."""
    t = as_table(table)
    gens: list[int] = []
    covered: frozenset[int] = frozenset()
    for x in range(t.order):
        if x not in covered:
            gens.append(x)
            covered = closure_in_table(t, gens)
    return gens


class _NodeBudget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise ResourceError(f"homomorphism search exceeded {self.limit} nodes")


def find_surjective_homomorphisms(u, s, max_nodes: int | None = None,
                                  _budget: _NodeBudget | None = None) -> Iterator[ElementMap]:
    """Every surjective homomorphism ``u -> s``.

    Images are chosen for u's greedy generators in turn; each choice is
    pushed through all products of already-mapped elements, and a clash
    prunes the branch.  Maps come out in lexicographic order of generator
    images.
    """
    tu, ts = as_table(u).entries, as_table(s).entries
    nu, ns = len(tu), len(ts)
    if nu < ns:
        return
    gens = generating_sequence(tu)
    budget = _budget or _NodeBudget(max_nodes)

    def extend(mapping: dict[int, int], g: int, image: int) -> dict[int, int] | None:
        mapping = dict(mapping)
        queue = [(g, image)]
        while queue:
            x, y = queue.pop()
            if x in mapping:
                if mapping[x] != y:
                    return None
                continue
            mapping[x] = y
            for w, yw in list(mapping.items()):
                queue.append((tu[x][w], ts[y][yw]))
                queue.append((tu[w][x], ts[yw][y]))
        return mapping

    def search(i: int, mapping: dict[int, int]):
        budget.tick()
        if i == len(gens):
            if len(mapping) == nu and len(set(mapping.values())) == ns:
                yield ElementMap(tuple(mapping[x] for x in range(nu)), ns)
            return
        g = gens[i]
        if g in mapping:
            yield from search(i + 1, mapping)
            return
        for image in range(ns):
            nxt = extend(mapping, g, image)
            if nxt is not None:
                yield from search(i + 1, nxt)

    for mu in search(0, {}):
        assert is_modelling(mu, tu, ts)
        yield mu


@dataclass(frozen=True)
class DivisionLimits:
    max_source: int = 12
    max_target: int = 27
    max_subsemigroups: int | None = None
    max_hom_nodes: int | None = None


@dataclass(frozen=True)
class DivisionWitness:
    """``relation`` maps S into T; ``subsemigroup`` lists the T indices of U;
    ``modelling`` maps U (in ascending index order) onto S."""

    relation: Relation
    subsemigroup: tuple[int, ...]
    modelling: ElementMap


@dataclass
class DivisionResult:
    witness: DivisionWitness | None
    subsemigroups_visited: int = 0
    hom_nodes: int = 0
    limits: DivisionLimits = field(default_factory=DivisionLimits)

    def __bool__(self) -> bool:
        return self.witness is not None


def _target_table(t) -> MulTable:
    if isinstance(t, TransSgp):
        return mul_table_of(t)
    return as_table(t)


def find_division(s, t, limits: DivisionLimits | None = None) -> DivisionResult:
    """Search for ``S ≺ T``: a subsemigroup U of T with a surjection ``U -> S``.

    Candidates U are tried by ascending size, then by sorted index tuple,
    so the first witness is the smallest.  A ``None`` witness means the
    search was exhaustive; hitting a limit raises :class:`ResourceError`.
    """
    limits = limits or DivisionLimits()
    ts = as_table(s)
    tt = _target_table(t)
    if ts.order > limits.max_source:
        raise ResourceError(f"source of order {ts.order} exceeds max_source={limits.max_source}")
    if tt.order > limits.max_target:
        raise ResourceError(f"target of order {tt.order} exceeds max_target={limits.max_target}")
    universe = ElementUniverse.from_table(tt)
    candidates = [c for c in enumerate_subsemigroups(universe, long_run=True) if len(c) >= ts.order]
    candidates.sort(key=lambda c: (len(c), c.members))
    budget = _NodeBudget(limits.max_hom_nodes)
    result = DivisionResult(None, limits=limits)
    for cand in candidates:
        result.subsemigroups_visited += 1
        if limits.max_subsemigroups is not None and result.subsemigroups_visited > limits.max_subsemigroups:
            raise ResourceError(f"division search exceeded {limits.max_subsemigroups} subsemigroups")
        u_table, members = sub_table(tt, cand.members)
        mu = next(find_surjective_homomorphisms(u_table, ts, _budget=budget), None)
        if mu is None:
            continue
        phi = Relation(tt.order, tuple(
            frozenset(members[i] for i, v in enumerate(mu.images) if v == x) for x in range(ts.order)))
        verdict = is_isomorphic_relation(phi, ts, tt)
        if not verdict:
            raise AssertionError(f"unsound division witness: {verdict.describe()}")
        result.witness = DivisionWitness(phi, members, mu)
        break
    result.hom_nodes = budget.used
    return result


@dataclass(frozen=True)
class Machine:
    """States ``0..degree-1`` driven by named events (transformations)."""

    degree: int
    events: Mapping[str, Transformation]

    def __post_init__(self):
        events = {name: as_transformation(f) for name, f in dict(self.events).items()}
        for name, f in events.items():
            if f.degree != self.degree:
                raise StructuralError(f"event {name} has degree {f.degree}, expected {self.degree}")
        object.__setattr__(self, "events", events)

    @classmethod
    def from_table(cls, table, labels: Sequence[str] | None = None) -> Machine:
        """Elements as states, each element acting by right multiplication."""
        t = as_table(table).entries
        n = len(t)
        labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        return cls(n, {labels[x]: Transformation(tuple(t[p][x] for p in range(n))) for x in range(n)})

    @classmethod
    def from_trans(cls, s: TransSgp, names: Sequence[str] | None = None) -> Machine:
        gens = s.generators if s.generators is not None else s.elements
        names = list(names) if names is not None else [f"e{i}" for i in range(len(gens))]
        return cls(s.degree, dict(zip(names, gens)))

    def run(self, state: int, program: Iterable[str]) -> int:
        for name in program:
            try:
                state = self.events[name].images[state]
            except KeyError:
                raise DomainError(f"unknown event {name!r}") from None
        return state


def run_cascade(c: Cascade, top_state: int, bottom_state: int, program: Iterable[str]) -> tuple[int, int]:
    """Apply events in order to a pair state; the top moves, the bottom follows."""
    x, y = top_state, bottom_state
    for name in program:
        event = c.event(name)
        x, y = event.top_part.images[x], event.dependency[x].images[y]
    return x, y


def implements_function(structure, f: FiniteFunction, enc: Encoding, program: Sequence[str]) -> Verdict:
    """Does running ``program`` from ``enc(x)`` land on ``enc(f(x))`` for every x?

    For a :class:`Cascade` the input picks the top state, every bottom
    start state is tried, and the output is read from the bottom state.
    Witness on failure: (input label, start state, reached state).
    """
    program = list(program)
    if isinstance(structure, Cascade):
        for name in program:
            structure.event(name)
        rows = 0
        for x in f.domain:
            top = enc.input_encode[x]
            want = enc.output_decode[f(x)]
            for y0 in range(structure.bottom.degree):
                _, y = run_cascade(structure, top, y0, program)
                rows += 1
                if y != want:
                    return Verdict(False, "output", (x, y0, y), detail=f"expected {want}")
        return Verdict(True, detail=f"{rows} rows")
    machine = structure if isinstance(structure, Machine) else Machine.from_table(structure)
    for name in program:
        if name not in machine.events:
            raise DomainError(f"unknown event {name!r}")
    for x in f.domain:
        start = enc.input_encode[x]
        end = machine.run(start, program)
        if end != enc.output_decode[f(x)]:
            return Verdict(False, "output", (x, start, end), detail=f"expected {enc.output_decode[f(x)]}")
    return Verdict(True, detail=f"{len(f.domain)} rows")
