"""Transformations of ``{0..d-1}`` and the semigroups they generate."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from .algebra import MulTable
from .errors import DomainError, ResourceError, StructuralError

FULL_LISTING_LIMIT = 8
CANONICAL_FORM_LIMIT = 6


@dataclass(frozen=True, order=True)
class Transformation:
    """A total self-map stored as its image list; ``images[p]`` is where p goes.

    Instances order lexicographically by image list.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        d = len(images)
        if d == 0:
            raise StructuralError("a transformation needs at least one point")
        for p, v in enumerate(images):
            if not 0 <= v < d:
                raise StructuralError(f"image of {p} is {v}, outside 0..{d - 1}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p]

    def __repr__(self) -> str:
        return f"Transformation({list(self.images)})"

    def is_permutation(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def rank(self) -> int:
        return len(set(self.images))

    def inverse(self) -> Transformation:
        if not self.is_permutation():
            raise DomainError("only permutations have inverses")
        inv = [0] * self.degree
        for p, v in enumerate(self.images):
            inv[v] = p
        return Transformation(tuple(inv))


def identity(degree: int) -> Transformation:
    return Transformation(tuple(range(degree)))


def constant(degree: int, value: int) -> Transformation:
    return Transformation((value,) * degree)


def as_transformation(f) -> Transformation:
    return f if isinstance(f, Transformation) else Transformation(tuple(f))


def compose(f, g) -> Transformation:
    """``f`` then ``g``: the result sends ``p`` to ``g(f(p))``."""
    f, g = as_transformation(f), as_transformation(g)
    if f.degree != g.degree:
        raise DomainError(f"degree mismatch: {f.degree} vs {g.degree}")
    gi = g.images
    return Transformation(tuple(gi[v] for v in f.images))


@dataclass(frozen=True)
class TransSgp:
    """Composition-closed set of transformations of a common degree.

    ``elements`` is sorted and duplicate free.  Use :func:`closure` to build
    one from generators; the constructor only checks degrees and ordering.
    """

    degree: int
    elements: tuple[Transformation, ...]
    generators: tuple[Transformation, ...] | None = None

    def __post_init__(self):
        elements = tuple(as_transformation(f) for f in self.elements)
        if not elements:
            raise StructuralError("a transformation semigroup needs at least one element")
        for f in elements:
            if f.degree != self.degree:
                raise StructuralError(f"element {f} does not have degree {self.degree}")
        if any(a >= b for a, b in zip(elements, elements[1:])):
            raise StructuralError("elements must be sorted and distinct")
        object.__setattr__(self, "elements", elements)
        if self.generators is not None:
            gens = tuple(as_transformation(f) for f in self.generators)
            members = set(elements)
            if any(g not in members for g in gens):
                raise StructuralError("generators must be elements")
            object.__setattr__(self, "generators", gens)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, f) -> bool:
        return as_transformation(f) in set(self.elements)

    def index(self, f) -> int:
        return self.elements.index(as_transformation(f))

    def is_closed(self) -> bool:
        members = set(self.elements)
        return all(compose(f, g) in members for f in self.elements for g in self.elements)


def closure(generators: Iterable) -> TransSgp:
    """Least composition-closed set containing ``generators`` (worklist search)."""
    gens = [as_transformation(g) for g in generators]
    if not gens:
        raise DomainError("closure needs at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise DomainError("generators must share a degree")
    gen_images = [g.images for g in gens]
    seen = {g.images for g in gens}
    frontier = list(seen)
    # right multiplication by generators reaches every product of generators
    while frontier:
        nxt = []
        for f in frontier:
            for g in gen_images:
                h = tuple(g[v] for v in f)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    unique_gens = tuple(dict.fromkeys(gens))
    return TransSgp(degree, tuple(Transformation(h) for h in sorted(seen)), unique_gens)


def full_transformation_semigroup(n: int) -> TransSgp:
    """All ``n**n`` maps of an n-point set, in lexicographic order."""
    if n < 1:
        raise DomainError("degree must be positive")
    if n > FULL_LISTING_LIMIT:
        raise ResourceError(f"refusing to list {n}**{n} transformations (limit degree {FULL_LISTING_LIMIT})")
    elements = tuple(Transformation(images) for images in product(range(n), repeat=n))
    if n == 1:
        gens = (identity(1),)
    elif n == 2:
        gens = (Transformation((1, 0)), Transformation((0, 0)))
    else:
        cycle = Transformation(tuple(range(1, n)) + (0,))
        swap = Transformation((1, 0) + tuple(range(2, n)))
        collapse = Transformation((0, 0) + tuple(range(2, n)))
        gens = (cycle, swap, collapse)
    return TransSgp(n, elements, gens)


def mul_table_of(s: TransSgp) -> MulTable:
    """Index-level table of ``s``, rows and columns in element sort order."""
    pos = {f.images: i for i, f in enumerate(s.elements)}
    images = [f.images for f in s.elements]
    rows = []
    for f in images:
        rows.append(tuple(pos[tuple(g[v] for v in f)] for g in images))
    return MulTable(tuple(rows))


def conjugate_transformation(f, p) -> Transformation:
    """Relabel the points of ``f`` by permutation ``p``: ``f'(p(x)) = p(f(x))``."""
    f, p = as_transformation(f), as_transformation(p)
    if f.degree != p.degree:
        raise DomainError(f"degree mismatch: {f.degree} vs {p.degree}")
    if not p.is_permutation():
        raise DomainError(f"{p} is not a permutation")
    out = [0] * f.degree
    for x, fx in enumerate(f.images):
        out[p.images[x]] = p.images[fx]
    return Transformation(tuple(out))


def conjugate(s: TransSgp, p) -> TransSgp:
    p = as_transformation(p)
    if p.degree != s.degree:
        raise DomainError(f"degree mismatch: {s.degree} vs {p.degree}")
    elements = tuple(sorted(conjugate_transformation(f, p) for f in s.elements))
    gens = None
    if s.generators is not None:
        gens = tuple(conjugate_transformation(g, p) for g in s.generators)
    return TransSgp(s.degree, elements, gens)


def canonical_form(s: TransSgp) -> TransSgp:
    """Lexicographically least sorted element list among all conjugates of ``s``."""
    n = s.degree
    if n > CANONICAL_FORM_LIMIT:
        raise ResourceError(f"canonical form iterates {n}! permutations; limit is degree {CANONICAL_FORM_LIMIT}")
    best = None
    for perm in permutations(range(n)):
        p = Transformation(perm)
        candidate = tuple(sorted(conjugate_transformation(f, p) for f in s.elements))
        if best is None or candidate < best:
            best = candidate
    return TransSgp(n, best)


def transformations(rows: Sequence[Sequence[int]]) -> list[Transformation]:
    return [Transformation(tuple(r)) for r in rows]
